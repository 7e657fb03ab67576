#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pwframes/geometry.hpp"

// Discrete carrier of the sampling machinery: maximal separated point sets
// on the truncated disk, disjoint node covers around them, smoothed cell
// weights, and a plateau partition of unity. All sets live at grid-node
// resolution; cell integrals are sums against the grid measure.
namespace pwf {

struct Lattice {
  double r = 0.0;               // nominal spacing; centers are r/2-separated
  int multiplicity_bound = 64;  // configured cap on the cover height
  std::vector<int> center_nodes;
  std::vector<Point> centers;
  int empirical_multiplicity = 0;  // measured height of {B(x_i, r)}
};

// Greedy maximal r/2-separated subset of grid nodes; candidate order is a
// seeded shuffle, so the result is deterministic given (grid, seed).
Lattice build_lattice(double r, const SpatialGrid& grid, unsigned seed,
                      int multiplicity_bound = 64);

struct Cover {
  double r = 0.0;
  std::vector<int> cell_of;             // node -> cell index
  std::vector<std::vector<int>> cells;  // cell -> node indices
  std::vector<double> measure;          // |U_k|
  int n_flagged = 0;  // nodes outside every B(x_k, r/2), assigned to nearest
  double total_measure = 0.0;
};

// Node-resolution version of the recursive cell construction:
// a node in some B(x_i, r/4) belongs to cell i; otherwise to the
// lowest-index center closer than r/2; otherwise to the nearest center
// (counted in n_flagged).
Cover build_cover(const Lattice& lat, const SpatialGrid& grid);

struct Weights {
  double eps = 0.0;            // final mollification width
  double measure_ratio = 0.0;  // max_k |U_k| / |U_k|_psi
  std::vector<std::vector<double>> psi;  // aligned with Cover::cells
  std::vector<double> measure_psi;       // |U_k|_psi
  std::vector<std::vector<Point>> rim;   // nearby complement nodes per cell
};

// psi_k = eta(dist(x, complement of U_k)/eps) with the exp(-1/t) smooth
// step; eps is halved until max_k |U_k|/|U_k|_psi <= 1 + delta.
Weights build_weights(const Cover& cov, const SpatialGrid& grid, double delta,
                      double eps0);

// Off-grid evaluation of psi_k via the stored rim points (used when a cell
// function must be re-quadratured on a different grid).
double psi_value(const Weights& wts, int k, Point x);

struct PartitionOfUnity {
  double lambda_pu = 0.0;
  double width = 0.0;  // transition width of the plateau bumps
  Lattice lat;
  int n_parts = 0;
  // node -> list of (nu, phi_nu(node)) with phi_nu(node) > 0
  std::vector<std::vector<std::pair<int, double>>> node_terms;
};

// chi_nu = plateau bump of B(y_nu, lambda_pu/2) over a lambda_pu-lattice
// {y_nu}; phi_nu = chi_nu / sqrt(sum_mu chi_mu^2), so sum_nu phi_nu^2 = 1
// (the square normalization keeps frame analysis nearly Parseval).
PartitionOfUnity build_partition_of_unity(double lambda_pu,
                                          const SpatialGrid& grid,
                                          unsigned seed);

// Off-grid evaluation of {phi_nu(x)} (sparse, squares normalized to 1).
std::vector<std::pair<int, double>> pu_values(const PartitionOfUnity& pu,
                                              Point x);

// Smooth step: 0 for t <= 0, 1 for t >= 1, C^inf monotone between.
double smooth_step(double t);

// Enumerate grid nodes within hyperbolic distance R of a point, exactly
// (per-row angular windows); calls fn(node_index, distance).
void ball_scan(const SpatialGrid& grid, Point center, double R,
               const std::function<void(int, double)>& fn);

// Serialized lattice/cover dump: centers, r, assignment, |U_k|, |U_k|_psi.
std::string lattice_json(const Lattice& lat, const Cover& cov,
                         const Weights& wts);

}  // namespace pwf
