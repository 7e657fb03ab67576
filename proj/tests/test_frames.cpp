#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pwframes/frames.hpp"
#include "pwframes/spectral.hpp"

using namespace pwf;

namespace {

struct Setup {
  SpatialGrid g = build_spatial_grid(2.0, 96, 1024);
  SpectralGrid sg = build_spectral_grid(16.0, 64, 1024);
  HftOperator op{g, sg};
  FilterBank bank = make_filter_bank(3);
  FrameParams params{0.5, 0.5, 2, 1.0, 7, 64};
  FrameSystem fs;
  Setup() : fs((calibrate_plancherel(g, sg), op), bank, params) {}
};

Setup& S() {
  static Setup s;
  return s;
}

cd spec_inner(const SpectralField& a, const SpectralField& b,
              const SpectralGrid& sg) {
  cd acc(0.0, 0.0);
  for (int il = 0; il < sg.n_lambda; ++il) {
    const double w = sg.node_weight(il);
    for (int ib = 0; ib < sg.n_b; ++ib)
      acc += w * a[sg.index(il, ib)] * std::conj(b[sg.index(il, ib)]);
  }
  return acc;
}

}  // namespace

TEST_CASE("rate radius") {
  CHECK(rate_radius(0, 1.0, 1.0) == doctest::Approx(0.48507).epsilon(1e-4));
  for (int j = 3; j < 8; ++j) {
    const double ratio =
        rate_radius(j + 1, 0.5, 1.0) / rate_radius(j, 0.5, 1.0);
    CHECK(ratio == doctest::Approx(0.5).epsilon(1e-2));
  }
  CHECK_THROWS_AS(rate_radius(-1, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("sampling functionals") {
  auto& s = S();
  const BandSystem& bs = s.fs.band(0);
  SpatialField ones(s.g.size(), cd(1.0, 0.0));
  double mass = 0.0;
  for (std::size_t k = 0; k < bs.cov.cells.size(); ++k) {
    const cd p = psi_functional(k, ones, bs.cov, bs.wts, s.g);
    CHECK(std::abs(p - cd(1.0, 0.0)) < 1e-12);
    const cd a = sample_functional(k, ones, bs.cov, bs.wts, s.g);
    CHECK(std::abs(a) ==
          doctest::Approx(std::sqrt(bs.cov.measure[k])).epsilon(1e-12));
    mass += std::norm(a);
  }
  CHECK(mass == doctest::Approx(s.g.total_measure()).epsilon(1e-10));
}

TEST_CASE("theta fields") {
  auto& s = S();
  const BandSystem& bs = s.fs.band(1);
  // a (nu, k) pair listed for the cell gives a nonzero field; a partition
  // member far from the cell gives the zero field
  const int k = static_cast<int>(bs.cov.cells.size()) / 2;
  const int nu = bs.coef_nu[bs.cell_offset[k]];
  SpatialField th = s.fs.theta_field(1, nu, k);
  double norm2 = 0.0, sup = 0.0;
  for (int ix = 0; ix < s.g.size(); ++ix) {
    norm2 += s.g.weights[ix] * std::norm(th[ix]);
    sup = std::max(sup, std::abs(th[ix]));
    if (std::abs(th[ix]) > 0.0)
      CHECK(hyp_distance(s.g.nodes[ix], bs.lat.centers[k]) < bs.r / 2.0);
  }
  CHECK(norm2 > 0.0);
  // scale bound: values are at most sqrt(|U_k|)/|U_k|_psi
  CHECK(sup <= bs.scale[k] * (1.0 + 1e-12));

  int far = -1;
  for (int n2 = 0; n2 < s.fs.pu().n_parts; ++n2) {
    if (hyp_distance(s.fs.pu().lat.centers[n2], bs.lat.centers[k]) >
        s.fs.pu().lambda_pu / 2.0 + bs.r) {
      far = n2;
      break;
    }
  }
  REQUIRE(far >= 0);
  SpatialField zero = s.fs.theta_field(1, far, k);
  for (const cd& v : zero) CHECK(v == cd(0.0, 0.0));
}

TEST_CASE("atoms are exactly bandlimited") {
  auto& s = S();
  for (int j = 0; j <= 2; ++j) {
    const BandSystem& bs = s.fs.band(j);
    const int k = static_cast<int>(bs.cov.cells.size()) / 3;
    const int nu = bs.coef_nu[bs.cell_offset[k]];
    FrameAtom a = s.fs.atom(j, nu, k);
    CHECK(a.norm > 0.0);
    double out_of_band = 0.0;
    for (int il = 0; il < s.sg.n_lambda; ++il) {
      const double lam = s.sg.lambda[il];
      if (lam >= a.band.lo && lam <= a.band.hi) continue;
      const double w = s.sg.node_weight(il);
      for (int ib = 0; ib < s.sg.n_b; ++ib)
        out_of_band += w * std::norm(a.spec[s.sg.index(il, ib)]);
    }
    CHECK(out_of_band <= 1e-10 * a.norm * a.norm);
  }
}

TEST_CASE("analyze agrees with direct atom inner products") {
  auto& s = S();
  SpectralField f = random_bandlimited_field(s.op, 0.0, 4.0, 4, 3);
  CoefficientSet c = s.fs.analyze(f);
  CHECK(static_cast<int>(c.values.size()) == s.fs.n_coefficients());
  for (int flat : {0, s.fs.n_coefficients() / 2, s.fs.n_coefficients() - 1}) {
    const FrameIndex ix = s.fs.index_of(flat);
    FrameAtom a = s.fs.atom(ix.j, ix.nu, ix.k);
    const cd direct = spec_inner(f, a.spec, s.sg);
    CHECK(std::abs(c.values[flat] - direct) <=
          1e-8 * std::max(1.0, std::abs(direct)));
  }
  // linearity
  CoefficientSet c2 = s.fs.analyze(f);
  for (auto& v : c2.values) CHECK(v == c.values[&v - c2.values.data()]);
}

TEST_CASE("frame operator is self-adjoint and positive") {
  auto& s = S();
  SpectralField f = random_bandlimited_field(s.op, 0.0, 4.0, 3, 11);
  SpectralField g = random_bandlimited_field(s.op, 0.0, 4.0, 3, 12);
  const SpectralField Sf = s.fs.frame_apply(f);
  const SpectralField Sg = s.fs.frame_apply(g);
  const cd a = spec_inner(Sf, g, s.sg);
  const cd b = spec_inner(f, Sg, s.sg);
  CHECK(std::abs(a - b) < 1e-8 * std::abs(a));
  const cd q = spec_inner(Sf, f, s.sg);
  CHECK(q.real() > 0.0);
  CHECK(std::abs(q.imag()) < 1e-10 * q.real());
  // <Sf, f> equals the coefficient mass
  CHECK(q.real() ==
        doctest::Approx(s.fs.analyze(f).sum_sq()).epsilon(1e-10));
}

TEST_CASE("rayleigh quotients are scale-invariant and near one") {
  auto& s = S();
  SpectralField f = random_bandlimited_field(s.op, 0.0, 4.0, 4, 21);
  const double r1 = s.fs.rayleigh(f);
  for (auto& v : f) v *= cd(0.0, 3.0);
  const double r2 = s.fs.rayleigh(f);
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
  CHECK(r1 > 0.2);
  CHECK(r1 < 1.8);
  SpectralField z(s.sg.size(), cd(0.0, 0.0));
  CHECK_THROWS_AS(s.fs.rayleigh(z), std::invalid_argument);
}

TEST_CASE("reconstruction error contracts") {
  auto& s = S();
  SpectralField f = frame_span_field(s.fs, 8, 31);
  CoefficientSet c = s.fs.analyze(f);
  std::vector<double> errs;
  SpectralField rec = reconstruct(s.fs, c, 12, &errs, &f);
  const double n0 = plancherel_norm(f, s.sg);
  CHECK(errs.back() / n0 < 1e-4);
  CHECK(errs.back() < errs.front());
  // zero coefficients reconstruct the zero field
  CoefficientSet zc;
  zc.values.assign(s.fs.n_coefficients(), cd(0.0, 0.0));
  SpectralField zero = reconstruct(s.fs, zc, 3);
  CHECK(plancherel_norm(zero, s.sg) == doctest::Approx(0.0));
}

TEST_CASE("decay profile is finite and tabulated") {
  auto& s = S();
  const BandSystem& bs = s.fs.band(1);
  const int k = 0;
  const int nu = bs.coef_nu[bs.cell_offset[k]];
  FrameAtom a = s.fs.atom(1, nu, k);
  auto rows = decay_profile(s.op, a, 2, 5.0);
  CHECK(rows.size() == 5);
  for (const auto& row : rows) {
    CHECK(std::isfinite(row.sup_abs));
    CHECK(std::isfinite(row.weighted));
    CHECK(row.sup_abs >= 0.0);
  }
  CHECK_THROWS_AS(decay_profile(s.op, a, 9, 5.0), std::invalid_argument);
}

TEST_CASE("serialization helpers") {
  auto& s = S();
  const SpectralField f = frame_span_field(s.fs, 2, 5);
  const CoefficientSet c = s.fs.analyze(f);

  const std::string cj = coefficients_json(s.fs, c);
  CHECK(cj.find("\"sum_sq\"") != std::string::npos);
  CHECK(cj.find("\"nu\"") != std::string::npos);
  CoefficientSet wrong;
  wrong.values.assign(3, cd(0.0, 0.0));
  CHECK_THROWS_AS(coefficients_json(s.fs, wrong), std::invalid_argument);

  const FrameBoundsReport fb = frame_bounds(s.fs, 10, 11);
  const std::string bj = frame_bounds_json(fb);
  CHECK(bj.find("\"min_ratio\"") != std::string::npos);
  CHECK(bj.find("\"band_max\"") != std::string::npos);

  const BandSystem& bs = s.fs.band(1);
  const FrameAtom atom = s.fs.atom(1, bs.coef_nu[0], 0);
  const std::string ac = atom_csv(s.op, atom);
  CHECK(ac.rfind("r,theta,re,im\n", 0) == 0);
  CHECK(std::count(ac.begin(), ac.end(), '\n') ==
        static_cast<long>(s.g.size()) + 1);
}
