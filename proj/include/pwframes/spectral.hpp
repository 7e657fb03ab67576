#pragma once

#include <functional>

#include "pwframes/hft.hpp"

// Multiplier calculus Phi(Delta): operators that act diagonally on the
// transform side as F(lambda, b) -> Phi(lambda) F(lambda, b). The
// high-precision checks (Bernstein, Riesz, best approximation, Sobolev)
// work directly on spectral representations; spatial wrappers go through
// one forward/inverse transform pair.
namespace pwf {

struct Multiplier {
  std::function<double(double)> profile;
  double lo = 0.0;  // declared support [lo, hi]
  double hi = 0.0;
};

// Pointwise action on the transform side; support must fit in the grid.
SpectralField apply_multiplier(const Multiplier& m, const SpectralField& f,
                               const SpectralGrid& sg);

// inverse_hft(Phi . forward_hft(f))
SpatialField apply_multiplier(const Multiplier& m, const SpatialField& f,
                              const HftOperator& op);

// Sharp cutoff to [0, omega]: the orthogonal projection onto PW_omega.
SpectralField project_pw(double omega, const SpectralField& f,
                         const SpectralGrid& sg);

// ||Delta^s f|| / ((omega^2 + 1/4)^s ||f||); <= 1 for f in PW_omega.
double bernstein_ratio(double omega, double s, const SpectralField& f,
                       const SpectralGrid& sg);

// Relative residual ||i Delta f - R_K f|| / ||Delta f|| of the truncated
// interpolation series R_K = (sigma/pi^2) sum_{|k|<=K} (-1)^{k-1}
// (k-1/2)^{-2} e^{i(pi/sigma)(k-1/2) Delta}, sigma = omega^2 + 1/4.
double riesz_residual(double omega, int k_terms, const SpectralField& f,
                      const SpectralGrid& sg);

// Scalar form of the same residual at a single spectral point lambda.
double riesz_residual_scalar(double omega, int k_terms, double lambda);

// E(f, omega) = ||f - project_pw(omega, f)|| (attained by the cutoff).
double best_approximation(double omega, const SpectralField& f,
                          const SpectralGrid& sg);

// ||(lambda^2 + 1/4)^{s/2} fhat|| in the Plancherel metric.
double sobolev_norm(const SpectralField& f, double s, const SpectralGrid& sg);

}  // namespace pwf
