#include <doctest.h>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_legendre.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pwframes/hft.hpp"

using namespace pwf;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent route to the spherical function.
double conical_oracle(double lambda, double r) {
  return gsl_sf_conicalP_0(lambda, std::cosh(r));
}

// Mehler-Fock forward of the radial function e^{-p cosh r}:
// fhat(lambda) = 2 pi int_1^inf e^{-p x} P_{-1/2 + i lambda}(x) dx.
double mehler_fock_forward(double p, double lambda) {
  struct Params {
    double p, lambda;
  } params{p, lambda};
  auto integrand = [](double x, void* vp) {
    auto* pr = static_cast<Params*>(vp);
    return std::exp(-pr->p * x) * gsl_sf_conicalP_0(pr->lambda, x);
  };
  gsl_function F;
  F.function = integrand;
  F.params = &params;
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
  double result = 0.0, abserr = 0.0;
  gsl_integration_qagiu(&F, 1.0, 1e-12, 1e-10, 2000, ws, &result, &abserr);
  gsl_integration_workspace_free(ws);
  return 2.0 * kPi * result;
}

}  // namespace

TEST_CASE("spherical function against conical oracle") {
  gsl_set_error_handler_off();
  for (double lambda : {0.0, 0.5, 1.0, 3.0, 7.5, 15.0}) {
    for (double r : {0.1, 0.5, 1.0, 2.5, 5.0}) {
      const double mine = spherical_function(lambda, r);
      const double ref = conical_oracle(lambda, r);
      CHECK(mine == doctest::Approx(ref).epsilon(1e-9));
    }
  }
  CHECK(spherical_function(2.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("horocycle bracket basics") {
  CHECK(horocycle_bracket(Point{0.0, 0.0}, 1.3) == doctest::Approx(0.0));
  // depends only on the angle difference for points at fixed radius
  const double rho = 0.4;
  const double a1 = horocycle_bracket(Point{rho, 0.0}, 0.7);
  const double a2 =
      horocycle_bracket(Point{rho * std::cos(0.2), rho * std::sin(0.2)}, 0.9);
  CHECK(a1 == doctest::Approx(a2).epsilon(1e-12));
  CHECK_THROWS_AS(horocycle_bracket(Point{1.0, 0.0}, 0.0), std::domain_error);
}

TEST_CASE("poisson kernel has boundary mean one") {
  // (1/2pi) int e^{A(x,b)} db = 1 for any x (harmonicity of P(x, .))
  const Point x{0.55, -0.3};
  const int n = 4096;
  double mean = 0.0;
  for (int q = 0; q < n; ++q)
    mean += std::exp(horocycle_bracket(x, 2.0 * kPi * q / n));
  mean /= n;
  CHECK(mean == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("laplacian symbol") {
  CHECK(laplacian_symbol(0.0) == doctest::Approx(-0.25));
  CHECK(laplacian_symbol(2.0) == doctest::Approx(-4.25));
}

TEST_CASE("fft path matches direct quadrature") {
  SpatialGrid g = build_spatial_grid(2.0, 20, 48);
  SpectralGrid sg = build_spectral_grid(6.0, 10, 48);
  HftOperator op(g, sg);

  SpatialField f(g.size());
  for (int ix = 0; ix < g.size(); ++ix) {
    const double r = g.node_radius(ix), th = g.node_theta(ix);
    f[ix] = std::exp(-r * r) * cd(std::cos(2 * th), 0.3 * std::sin(th));
  }
  const SpectralField a = op.forward(f);
  const SpectralField b = op.forward_direct(f);
  double err = 0.0, ref = 0.0;
  for (int i = 0; i < sg.size(); ++i) {
    err = std::max(err, std::abs(a[i] - b[i]));
    ref = std::max(ref, std::abs(b[i]));
  }
  CHECK(err / ref < 1e-12);

  const SpatialField ia = op.inverse(a);
  const SpatialField ib = op.inverse_direct(a);
  err = ref = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    err = std::max(err, std::abs(ia[i] - ib[i]));
    ref = std::max(ref, std::abs(ib[i]));
  }
  CHECK(err / ref < 1e-12);
}

TEST_CASE("radial forward against mehler-fock oracle") {
  gsl_set_error_handler_off();
  // Kernel angular features at radius r have width ~e^{-r}; n_b = 4096
  // keeps the trapezoid aliasing error below 1e-9 out to r = 6, and the
  // integrand tail beyond r = 6 is ~e^{-cosh 6}, i.e. zero.
  SpatialGrid g = build_spatial_grid(6.0, 150, 4096);
  SpectralGrid sg = build_spectral_grid(8.0, 12, 4096);
  HftOperator op(g, sg);
  for (double p : {1.0, 2.0}) {
    const SpectralField fh = op.forward(radial_exp_field(g, p));
    for (int il = 0; il < sg.n_lambda; ++il) {
      const double ref = mehler_fock_forward(p, sg.lambda[il]);
      // radial input: transform is b-independent
      const cd v0 = fh[sg.index(il, 0)];
      const cd v1 = fh[sg.index(il, sg.n_b / 3)];
      CHECK(std::abs(v0 - v1) < 1e-9 * std::abs(v0));
      CHECK(std::abs(v0.imag()) < 1e-9 * std::abs(v0));
      CHECK(v0.real() == doctest::Approx(ref).epsilon(1e-7));
    }
  }
}

TEST_CASE("plancherel calibration and round trip") {
  SpatialGrid g = build_spatial_grid(3.0, 96, 512);
  SpectralGrid sg = build_spectral_grid(16.0, 128, 512);
  const double c = calibrate_plancherel(g, sg);
  CHECK(c == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(2e-3));

  HftOperator op(g, sg);
  SpatialField f(g.size());
  for (int ix = 0; ix < g.size(); ++ix) {
    const double r = g.node_radius(ix), th = g.node_theta(ix);
    // tanh(r) cos(th) is smooth across the origin; a bare cos(th) is not
    f[ix] = std::exp(-std::cosh(r)) * (1.0 + 0.5 * std::tanh(r) * std::cos(th));
  }
  const SpectralField fh = op.forward(f);
  CHECK(op.plancherel_norm(fh) ==
        doctest::Approx(op.spatial_norm(f)).epsilon(2e-3));

  const SpatialField back = op.inverse(fh);
  double err = 0.0;
  const double nrm = op.spatial_norm(f);
  SpatialField diff(f.size());
  for (size_t i = 0; i < f.size(); ++i) diff[i] = back[i] - f[i];
  err = op.spatial_norm(diff) / nrm;
  CHECK(err < 2e-3);
}

TEST_CASE("circle evaluation matches grid inversion") {
  SpatialGrid g = build_spatial_grid(3.0, 96, 512);
  SpectralGrid sg = build_spectral_grid(16.0, 128, 512);
  calibrate_plancherel(g, sg);
  HftOperator op(g, sg);
  SpatialField f(g.size());
  for (int ix = 0; ix < g.size(); ++ix) {
    const double r = g.node_radius(ix), th = g.node_theta(ix);
    f[ix] = std::exp(-std::cosh(r)) *
            (1.0 + 0.25 * std::pow(std::tanh(r), 2) * std::sin(2.0 * th));
  }
  const SpectralField fh = op.forward(f);
  const SpatialField back = op.inverse(fh);
  const int ir = 40;
  CircleEval ev = op.evaluate_circle(fh, g.radii[ir], g.n_theta);
  double err = 0.0;
  for (int q = 0; q < g.n_theta; ++q)
    err = std::max(err, std::abs(ev.values[q] - back[g.index(ir, q)]));
  CHECK(err < 1e-10);
  CHECK(ev.sup_abs > 0.0);
}

TEST_CASE("spectral csv dump") {
  SpectralGrid sg = build_spectral_grid(4.0, 6, 16);
  SpectralField f(sg.size(), cd(1.5, -2.0));
  const std::string csv = spectral_csv(f, sg);
  CHECK(csv.rfind("lambda,b,re,im\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        static_cast<long>(sg.size()) + 1);
  CHECK(csv.find("1.5,-2") != std::string::npos);
  SpectralField bad(3, cd(0.0, 0.0));
  CHECK_THROWS_AS(spectral_csv(bad, sg), std::invalid_argument);
}
