#include "pwframes/filters.hpp"

#include <cmath>
#include <stdexcept>

namespace pwf {

namespace {
// Standard smooth step ingredient: h(t) = exp(-1/t) for t > 0, else 0.
double smooth_h(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
}  // namespace

Band band_of(int j) {
  if (j < 0) throw std::domain_error("band index must be >= 0");
  if (j == 0) return {0.0, 2.0};
  return {std::ldexp(1.0, j - 1), std::ldexp(1.0, j + 1)};
}

double FilterBank::g(double s) {
  if (s <= 1.0) return 1.0;
  if (s >= 2.0) return 0.0;
  const double a = smooth_h(2.0 - s);
  const double b = smooth_h(s - 1.0);
  return a / (a + b);
}

double FilterBank::q(double s) { return g(s) - g(2.0 * s); }

double FilterBank::f(int j, double lambda) const {
  if (j < 0 || j > j_max_) throw std::domain_error("filter index out of range");
  if (lambda < 0.0) return 0.0;
  if (j == 0) return std::sqrt(g(lambda));
  return std::sqrt(q(std::ldexp(lambda, -j)));
}

FilterBank::FilterBank(int j_max) : j_max_(j_max) {
  if (j_max < 1) throw std::invalid_argument("j_max must be >= 1");
}

FilterBank make_filter_bank(int j_max) { return FilterBank(j_max); }

}  // namespace pwf
