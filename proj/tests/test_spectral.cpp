#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "pwframes/filters.hpp"
#include "pwframes/lattice.hpp"
#include "pwframes/spectral.hpp"

using namespace pwf;

namespace {

constexpr double kPi = std::numbers::pi;

struct Setup {
  SpatialGrid g = build_spatial_grid(3.0, 96, 512);
  SpectralGrid sg = build_spectral_grid(16.0, 128, 512);
  HftOperator op{g, sg};
  Setup() { calibrate_plancherel(g, sg); }
};

Setup& setup() {
  static Setup s;
  return s;
}

// smooth bump profile on [lo, hi], 1 near the middle
double envelope(double lam, double lo, double hi) {
  const double t = (lam - lo) / (hi - lo);
  return smooth_step(4.0 * t) * smooth_step(4.0 * (1.0 - t));
}

// random spectral field with smooth lambda-envelope and low angular modes
SpectralField synth(double lo, double hi, unsigned seed) {
  auto& s = setup();
  std::mt19937 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  const int M = 4;
  std::vector<cd> coef(2 * M + 1);
  for (auto& c : coef) c = cd(N(rng), N(rng));
  SpectralField f(s.sg.size());
  for (int il = 0; il < s.sg.n_lambda; ++il) {
    const double e = envelope(s.sg.lambda[il], lo, hi);
    for (int ib = 0; ib < s.sg.n_b; ++ib) {
      cd v(0.0, 0.0);
      for (int m = -M; m <= M; ++m)
        v += coef[m + M] * std::polar(1.0, m * s.sg.b_angle(ib));
      f[s.sg.index(il, ib)] = e * v;
    }
  }
  return f;
}

}  // namespace

TEST_CASE("projection algebra") {
  auto& s = setup();
  SpectralField f = synth(0.0, 14.0, 21);
  SpectralField a = project_pw(4.0, project_pw(8.0, f, s.sg), s.sg);
  SpectralField b = project_pw(4.0, f, s.sg);
  for (size_t i = 0; i < f.size(); ++i) CHECK(a[i] == b[i]);
  // PW field is fixed by its own projection
  SpectralField g = synth(1.0, 4.0, 5);
  SpectralField pg = project_pw(4.0, g, s.sg);
  for (size_t i = 0; i < g.size(); ++i) CHECK(pg[i] == g[i]);
  // tail energy nonincreasing in omega
  double prev = 1e300;
  for (double w : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double e = best_approximation(w, f, s.sg);
    CHECK(e <= prev + 1e-15);
    prev = e;
  }
  CHECK(best_approximation(16.0, f, s.sg) == doctest::Approx(0.0));
}

TEST_CASE("multiplier acts diagonally and self-adjointly") {
  auto& s = setup();
  Multiplier half{[](double lam) { return lam <= 2.0 ? 1.0 : 0.0; }, 0.0, 2.0};
  SpectralField f = synth(0.5, 8.0, 3);
  SpectralField once = apply_multiplier(half, f, s.sg);
  SpectralField twice = apply_multiplier(half, once, s.sg);
  for (size_t i = 0; i < f.size(); ++i) CHECK(once[i] == twice[i]);

  // spatial route: <Phi f, g> = <f, Phi g> (two independent quadratures)
  Multiplier smooth{[](double lam) { return std::exp(-lam); }, 0.0, 16.0};
  SpatialField fx = s.op.inverse(synth(0.5, 10.0, 7));
  SpatialField gx = s.op.inverse(synth(1.0, 12.0, 8));
  const cd lhs = s.op.spatial_inner(apply_multiplier(smooth, fx, s.op), gx);
  const cd rhs = s.op.spatial_inner(fx, apply_multiplier(smooth, gx, s.op));
  CHECK(std::abs(lhs - rhs) < 1e-8 * std::abs(lhs));

  Multiplier wide{[](double) { return 1.0; }, 0.0, 32.0};
  CHECK_THROWS_AS(apply_multiplier(wide, f, s.sg), std::invalid_argument);
}

TEST_CASE("unitary evolution preserves the norm") {
  auto& s = setup();
  SpectralField f = synth(1.0, 9.0, 11);
  const double n0 = plancherel_norm(f, s.sg);
  SpectralField g(f.size());
  const double t = 0.73;
  for (int il = 0; il < s.sg.n_lambda; ++il) {
    const cd ph = std::polar(1.0, -t * (std::pow(s.sg.lambda[il], 2) + 0.25));
    for (int ib = 0; ib < s.sg.n_b; ++ib)
      g[s.sg.index(il, ib)] = ph * f[s.sg.index(il, ib)];
  }
  CHECK(plancherel_norm(g, s.sg) == doctest::Approx(n0).epsilon(1e-10));
}

TEST_CASE("bernstein ratio") {
  auto& s = setup();
  for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
    SpectralField f = synth(0.0, 8.0, seed);
    CHECK(bernstein_ratio(8.0, 1.0, f, s.sg) <= 1.0 + 1e-6);
    CHECK(bernstein_ratio(8.0, 2.5, f, s.sg) <= 1.0 + 1e-6);
  }
  // narrow bump at lambda0 << omega
  SpectralField f = synth(2.0, 2.5, 9);
  const double lam0 = 2.25, om = 8.0, sdeg = 1.0;
  const double expect = (lam0 * lam0 + 0.25) / (om * om + 0.25);
  CHECK(bernstein_ratio(om, sdeg, f, s.sg) ==
        doctest::Approx(expect).epsilon(0.05));
  SpectralField z(s.sg.size(), cd(0.0, 0.0));
  CHECK_THROWS_AS(bernstein_ratio(1.0, 1.0, z, s.sg), std::invalid_argument);
}

TEST_CASE("riesz residual decays and matches the scalar form") {
  auto& s = setup();
  SpectralField f = synth(0.5, 7.5, 13);
  double prev = 1e300;
  for (int K : {8, 16, 32, 64}) {
    const double res = riesz_residual(8.0, K, f, s.sg);
    CHECK(res < prev);
    prev = res;
  }
  // single-lambda field: field residual equals the scalar residual
  const int il0 = 40;
  SpectralField one(s.sg.size(), cd(0.0, 0.0));
  for (int ib = 0; ib < s.sg.n_b; ++ib)
    one[s.sg.index(il0, ib)] = cd(1.0, 0.3);
  const double rf = riesz_residual(16.0, 16, one, s.sg);
  // scalar residual is normalized by |t| at that lambda; rescale
  const double lam = s.sg.lambda[il0];
  const double rs = riesz_residual_scalar(16.0, 16, lam);
  CHECK(rf == doctest::Approx(rs).epsilon(1e-10));
  CHECK_THROWS_AS(riesz_residual(8.0, 2, f, s.sg), std::invalid_argument);
}

TEST_CASE("sobolev norm and jackson inequality") {
  auto& s = setup();
  SpectralField f = synth(1.0, 12.0, 15);
  CHECK(sobolev_norm(f, 0.0, s.sg) ==
        doctest::Approx(plancherel_norm(f, s.sg)).epsilon(1e-12));
  // monotone in s for spectrum above sqrt(3)/2
  SpectralField hi = synth(1.0, 12.0, 16);
  CHECK(sobolev_norm(hi, 1.0, s.sg) <= sobolev_norm(hi, 2.0, s.sg));
  // Jackson: E(f, omega) <= omega^{-2} ||Delta f||
  for (double om : {2.0, 4.0, 8.0}) {
    CHECK(best_approximation(om, f, s.sg) <=
          sobolev_norm(f, 2.0, s.sg) / (om * om));
  }
}

TEST_CASE("laplacian symbol against a finite-difference oracle") {
  auto& s = setup();
  // analytic bump f = exp(-a sinh^2(r/2)), sampled and pushed through the
  // symbol; compared with Delta f = ((1-|z|^2)^2/4)(f_uu + f_vv) computed
  // by central differences of the closed form
  const double a = 4.0;
  auto bump = [a](double u, double v) {
    const double rr = u * u + v * v;
    return std::exp(-a * rr / (1.0 - rr));
  };
  SpatialField f(s.g.size());
  for (int ix = 0; ix < s.g.size(); ++ix)
    f[ix] = bump(s.g.nodes[ix].u, s.g.nodes[ix].v);
  Multiplier sym{[](double lam) { return -(lam * lam + 0.25); }, 0.0, 16.0};
  SpatialField lap = apply_multiplier(sym, f, s.op);

  const double h = 1e-4;
  double worst = 0.0, scale = 0.0;
  for (int ix = 0; ix < s.g.size(); ++ix) {
    const double r = s.g.node_radius(ix);
    if (r < 0.2 || r > 1.5) continue;
    const double u = s.g.nodes[ix].u, v = s.g.nodes[ix].v;
    const double fuu =
        (bump(u + h, v) - 2.0 * bump(u, v) + bump(u - h, v)) / (h * h);
    const double fvv =
        (bump(u, v + h) - 2.0 * bump(u, v) + bump(u, v - h)) / (h * h);
    const double ref =
        std::pow(1.0 - u * u - v * v, 2) / 4.0 * (fuu + fvv);
    worst = std::max(worst, std::abs(lap[ix] - ref));
    scale = std::max(scale, std::abs(ref));
  }
  CHECK(worst / scale < 1e-2);

  // sobolev s=2 route agrees with the finite-difference norm proxy
  const SpectralField fh = s.op.forward(f);
  const double lhs = sobolev_norm(fh, 2.0, s.sg);
  const double rhs = s.op.spatial_norm(lap);
  CHECK(lhs == doctest::Approx(rhs).epsilon(2e-2));
}
