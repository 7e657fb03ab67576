#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pwframes/filters.hpp"

using namespace pwf;

TEST_CASE("dyadic bands") {
  Band b0 = band_of(0);
  CHECK(b0.lo == doctest::Approx(0.0));
  CHECK(b0.hi == doctest::Approx(2.0));
  Band b3 = band_of(3);
  CHECK(b3.lo == doctest::Approx(4.0));
  CHECK(b3.hi == doctest::Approx(16.0));
  CHECK_THROWS_AS(band_of(-1), std::domain_error);
}

TEST_CASE("base window g") {
  CHECK(FilterBank::g(0.0) == doctest::Approx(1.0));
  CHECK(FilterBank::g(1.0) == doctest::Approx(1.0));
  CHECK(FilterBank::g(2.0) == doctest::Approx(0.0));
  CHECK(FilterBank::g(3.0) == doctest::Approx(0.0));
  for (double s = 1.0; s <= 2.0; s += 0.01) {
    const double v = FilterBank::g(s);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  // monotone on the blend interval
  for (double s = 1.0; s < 2.0; s += 0.01)
    CHECK(FilterBank::g(s + 0.01) <= FilterBank::g(s) + 1e-12);
}

TEST_CASE("band window q supported in [1/2, 2]") {
  CHECK(FilterBank::q(0.25) == doctest::Approx(0.0));
  CHECK(FilterBank::q(0.5) == doctest::Approx(0.0));
  CHECK(FilterBank::q(2.0) == doctest::Approx(0.0));
  CHECK(FilterBank::q(1.0) == doctest::Approx(1.0));
}

TEST_CASE("squares telescope to one") {
  FilterBank fb = make_filter_bank(5);
  for (double lam = 0.0; lam <= 32.0; lam += 0.037) {
    double s = 0.0;
    for (int j = 0; j <= 5; ++j) {
      const double v = fb.f(j, lam);
      s += v * v;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("filter supports") {
  FilterBank fb = make_filter_bank(4);
  // F_j vanishes outside [2^{j-1}, 2^{j+1}]
  CHECK(fb.f(2, 1.9) == doctest::Approx(0.0));
  CHECK(fb.f(2, 8.1) == doctest::Approx(0.0));
  CHECK(fb.f(2, 4.0) > 0.0);
  CHECK(fb.f(0, 0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(fb.f(5, 1.0), std::domain_error);
  CHECK_THROWS_AS(fb.f(-1, 1.0), std::domain_error);
}

TEST_CASE("smoothness at band edges") {
  // finite differences of F_2^2 near the edges stay small (C^inf cutoffs)
  FilterBank fb = make_filter_bank(3);
  const double h = 1e-4;
  for (double lam : {2.0, 8.0}) {
    const double d = (std::pow(fb.f(2, lam + h), 2) - std::pow(fb.f(2, lam - h), 2)) / (2 * h);
    CHECK(std::abs(d) < 1e-6);
  }
}
