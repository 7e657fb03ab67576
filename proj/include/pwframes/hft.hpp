#pragma once

#include <memory>
#include <vector>

#include "pwframes/geometry.hpp"

// Helgason-Fourier analysis on the disk. Points pair with boundary
// frequencies (lambda, b) through the horocycle waves
// e^{(i lambda + 1/2) A(x,b)}, A(x,b) = log of the Poisson kernel.
// Forward/inverse transforms are quadrature sums over the spatial and
// spectral grids; when the boundary grid matches the angular grid the
// b-sums collapse to circular convolutions and are done with FFTs.
namespace pwf {

using SpatialField = std::vector<cd>;   // values on SpatialGrid nodes
using SpectralField = std::vector<cd>;  // values on (lambda, b), lambda-major

// A(x, b) for b = e^{i b_angle}: log((1-|x|^2)/|x - b|^2).
double horocycle_bracket(Point p, double b_angle);

// Symbol of the Laplace-Beltrami operator: -(lambda^2 + 1/4).
double laplacian_symbol(double lambda);

// Conical (Mehler) function P_{-1/2+i lambda}(cosh r); equals the
// spherical function phi_lambda(r), normalized to 1 at r = 0.
double spherical_function(double lambda, double r);

struct SpectralGrid {
  double lambda_max = 0.0;
  int n_lambda = 0;
  int n_b = 0;
  std::vector<double> lambda;    // Gauss-Legendre nodes on [0, lambda_max]
  std::vector<double> lambda_w;
  double plancherel_const = 0.0;  // global factor in front of lambda*tanh(pi*lambda)

  int size() const { return n_lambda * n_b; }
  int index(int il, int ib) const { return il * n_b + ib; }
  double b_angle(int ib) const;
  // Plancherel density p(lambda) = plancherel_const * lambda * tanh(pi*lambda).
  double density(double lam) const;
  // quadrature weight of spectral node (il, ib): p(lambda) * w_lambda / n_b
  double node_weight(int il) const;
};

SpectralGrid build_spectral_grid(double lambda_max, int n_lambda, int n_b);

double plancherel_norm(const SpectralField& f, const SpectralGrid& sg);

struct CircleEval {
  double sup_abs = 0.0;
  std::vector<cd> values;  // samples at uniform angles
};

class HftOperator {
 public:
  // Grids are borrowed; they must outlive the operator. When
  // sgrid.n_b == grid.n_theta and the kernel table fits in memory it is
  // precomputed once, otherwise kernels are rebuilt per transform.
  HftOperator(const SpatialGrid& grid, const SpectralGrid& sgrid);
  ~HftOperator();

  HftOperator(const HftOperator&) = delete;
  HftOperator& operator=(const HftOperator&) = delete;

  const SpatialGrid& grid() const { return *grid_; }
  const SpectralGrid& sgrid() const { return *sgrid_; }

  SpectralField forward(const SpatialField& f) const;
  SpatialField inverse(const SpectralField& f) const;

  // Reference O(n_lambda * n_b * N) quadrature path; supports any n_b.
  SpectralField forward_direct(const SpatialField& f) const;
  SpatialField inverse_direct(const SpectralField& f) const;

  // Pointwise inversion on the circle of hyperbolic radius r, using a
  // boundary grid upsampled enough to resolve the Poisson peak at r.
  CircleEval evaluate_circle(const SpectralField& f, double r,
                             int n_values = 64) const;

  double spatial_norm(const SpatialField& f) const;
  cd spatial_inner(const SpatialField& f, const SpatialField& g) const;
  double plancherel_norm(const SpectralField& f) const;

 private:
  struct Impl;
  const SpatialGrid* grid_;
  const SpectralGrid* sgrid_;
  std::unique_ptr<Impl> impl_;
};

// Fixes sgrid.plancherel_const by least-squares matching of spatial and
// spectral norms over the radial family e^{-p cosh r}, p in {1, 2, 4}.
// Returns the calibrated constant.
double calibrate_plancherel(const SpatialGrid& grid, SpectralGrid& sgrid);

// e^{-p cosh r} sampled on the grid.
SpatialField radial_exp_field(const SpatialGrid& grid, double p);

// Diagnostic dump, one "lambda,b,re,im" row per spectral node.
std::string spectral_csv(const SpectralField& f, const SpectralGrid& sg);

}  // namespace pwf
