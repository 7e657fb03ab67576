#include "pwframes/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pwf {

namespace {

// weighted l2 norm of g(lambda) * fhat for a scalar complex gain g
template <typename Gain>
double gained_norm(const SpectralField& f, const SpectralGrid& sg, Gain&& g) {
  double acc = 0.0;
  for (int il = 0; il < sg.n_lambda; ++il) {
    const double w = sg.node_weight(il);
    const double a = std::norm(g(sg.lambda[il]));
    double row = 0.0;
    for (int ib = 0; ib < sg.n_b; ++ib) row += std::norm(f[sg.index(il, ib)]);
    acc += w * a * row;
  }
  return std::sqrt(acc);
}

// truncated Riesz series evaluated at symbol value t, |t| <= sigma
cd riesz_series(double sigma, int k_terms, double t) {
  double s = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= k_terms; ++k) {
    const double h = k - 0.5;
    s += sign * std::sin(h * std::numbers::pi * t / sigma) / (h * h);
    sign = -sign;
  }
  return cd(0.0, 2.0 * sigma / (std::numbers::pi * std::numbers::pi) * s);
}

}  // namespace

SpectralField apply_multiplier(const Multiplier& m, const SpectralField& f,
                               const SpectralGrid& sg) {
  if (m.hi > sg.lambda_max * (1.0 + 1e-12))
    throw std::invalid_argument("multiplier support exceeds the spectral grid");
  SpectralField out(f.size(), cd(0.0, 0.0));
  for (int il = 0; il < sg.n_lambda; ++il) {
    const double lam = sg.lambda[il];
    if (lam < m.lo || lam > m.hi) continue;
    const double v = m.profile(lam);
    if (v == 0.0) continue;
    for (int ib = 0; ib < sg.n_b; ++ib)
      out[sg.index(il, ib)] = v * f[sg.index(il, ib)];
  }
  return out;
}

SpatialField apply_multiplier(const Multiplier& m, const SpatialField& f,
                              const HftOperator& op) {
  return op.inverse(apply_multiplier(m, op.forward(f), op.sgrid()));
}

SpectralField project_pw(double omega, const SpectralField& f,
                         const SpectralGrid& sg) {
  SpectralField out(f.size(), cd(0.0, 0.0));
  for (int il = 0; il < sg.n_lambda; ++il) {
    if (sg.lambda[il] > omega) break;
    for (int ib = 0; ib < sg.n_b; ++ib)
      out[sg.index(il, ib)] = f[sg.index(il, ib)];
  }
  return out;
}

double bernstein_ratio(double omega, double s, const SpectralField& f,
                       const SpectralGrid& sg) {
  const double nrm = plancherel_norm(f, sg);
  if (nrm < 1e-300) throw std::invalid_argument("zero field");
  const double num = gained_norm(
      f, sg, [s](double lam) { return std::pow(lam * lam + 0.25, s); });
  return num / (std::pow(omega * omega + 0.25, s) * nrm);
}

double riesz_residual(double omega, int k_terms, const SpectralField& f,
                      const SpectralGrid& sg) {
  if (k_terms < 4) throw std::invalid_argument("k_terms must be >= 4");
  const double sigma = omega * omega + 0.25;
  const double den = gained_norm(
      f, sg, [](double lam) { return lam * lam + 0.25; });
  if (den < 1e-300) return 0.0;
  const double num = gained_norm(f, sg, [&](double lam) {
    const double t = -(lam * lam + 0.25);
    return cd(0.0, t) - riesz_series(sigma, k_terms, t);
  });
  return num / den;
}

double riesz_residual_scalar(double omega, int k_terms, double lambda) {
  if (k_terms < 4) throw std::invalid_argument("k_terms must be >= 4");
  const double sigma = omega * omega + 0.25;
  const double t = -(lambda * lambda + 0.25);
  return std::abs(cd(0.0, t) - riesz_series(sigma, k_terms, t)) /
         std::abs(t);
}

double best_approximation(double omega, const SpectralField& f,
                          const SpectralGrid& sg) {
  double acc = 0.0;
  for (int il = 0; il < sg.n_lambda; ++il) {
    if (sg.lambda[il] <= omega) continue;
    const double w = sg.node_weight(il);
    for (int ib = 0; ib < sg.n_b; ++ib) acc += w * std::norm(f[sg.index(il, ib)]);
  }
  return std::sqrt(acc);
}

double sobolev_norm(const SpectralField& f, double s, const SpectralGrid& sg) {
  if (s < 0.0) throw std::invalid_argument("order must be nonnegative");
  return gained_norm(
      f, sg, [s](double lam) { return std::pow(lam * lam + 0.25, s / 2.0); });
}

}  // namespace pwf
