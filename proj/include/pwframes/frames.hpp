#pragma once

#include <optional>
#include <vector>

#include "pwframes/filters.hpp"
#include "pwframes/hft.hpp"
#include "pwframes/lattice.hpp"

// Frame machinery: average-sampling functionals over the cell covers, the
// localized functions theta_{nu,k} = (sqrt(|U_k|)/|U_k|_psi) psi_k phi_nu,
// and the bandlimited atoms Theta_{nu;j,k} = F_j(Delta) theta. Atoms are
// never materialized in bulk: analysis factors through one multiplier
// application per band followed by local cell sums, synthesis through the
// transposed assembly, so the full frame operator costs O(J) transforms.
namespace pwf {

struct FrameIndex {
  int j = 0;   // band
  int nu = 0;  // partition member
  int k = 0;   // cell within the band-j lattice
};

struct FrameAtom {
  FrameIndex idx;
  Band band;
  SpectralField spec;  // exact spectral representation (F_j-masked)
  double norm = 0.0;
};

struct CoefficientSet {
  std::vector<cd> values;  // flat, in FrameSystem coefficient order
  double sum_sq() const;
};

// r_j = a0 delta^{1/2} (2^{2j+2} + 1/4)^{-1/2}
double rate_radius(int j, double delta, double a0);

// Psi_k(F) = (1/|U_k|_psi) int_{U_k} F psi_k dmu
cd psi_functional(int k, const SpatialField& f, const Cover& cov,
                  const Weights& wts, const SpatialGrid& grid);

// A_k(F) = sqrt(|U_k|) Psi_k(F)
cd sample_functional(int k, const SpatialField& f, const Cover& cov,
                     const Weights& wts, const SpatialGrid& grid);

// Random field with smooth lambda-envelope supported in [lo, hi] and
// angular modes |m| <= m_max; deterministic given the seed. The raw
// spectral draw is alternately localized to a ball inside the truncation
// radius and re-projected onto the band, so the result is exactly
// bandlimited with negligible energy outside the grid (the truncated
// domain cannot represent, let alone sample, the rest).
SpectralField random_bandlimited_field(const HftOperator& op, double lo,
                                       double hi, int m_max, unsigned seed);

struct FrameParams {
  double delta = 0.5;
  double a0 = 1.0;
  int j_max = 3;
  double lambda_pu = 1.0;
  unsigned seed = 1;
  int multiplicity_bound = 64;
};

struct BandSystem {
  int j = 0;
  double r = 0.0;
  Lattice lat;
  Cover cov;
  Weights wts;
  std::vector<double> scale;       // sqrt(|U_k|)/|U_k|_psi per cell
  std::vector<int> cell_offset;    // cell -> first coefficient slot (band-local)
  std::vector<int> coef_nu;        // flattened nu lists per cell
  int n_coef = 0;
};

class FrameSystem {
 public:
  FrameSystem(const HftOperator& op, const FilterBank& bank, FrameParams p);

  const FrameParams& params() const { return params_; }
  const PartitionOfUnity& pu() const { return pu_; }
  const BandSystem& band(int j) const { return bands_.at(j); }
  int n_coefficients() const { return n_coef_; }
  FrameIndex index_of(int flat) const;

  // c_{nu;j,k} = <f, Theta_{nu;j,k}> = <F_j(Delta) f, theta_{nu;j,k}>
  CoefficientSet analyze(const SpectralField& fhat) const;
  // sum of c * Theta, returned spectrally
  SpectralField synthesize(const CoefficientSet& c) const;
  // frame operator S f
  SpectralField frame_apply(const SpectralField& fhat) const;

  // sum |c|^2 / ||f||^2
  double rayleigh(const SpectralField& fhat) const;
  // per band: coefficient mass of band j over ||F_j(Delta) f||^2
  std::vector<double> band_ratios(const SpectralField& fhat) const;

  // theta_{nu,k} sampled on the operator's grid
  SpatialField theta_field(int j, int nu, int k) const;
  // bandlimited atom with its exact spectral representation
  FrameAtom atom(int j, int nu, int k) const;
  // theta re-quadratured on a different grid via the off-grid evaluations
  // (used by the truncation-stability scan)
  SpatialField theta_field_on(int j, int nu, int k,
                              const SpatialGrid& other) const;

  const HftOperator& op() const { return *op_; }
  const FilterBank& bank() const { return *bank_; }

 private:
  const HftOperator* op_;
  const FilterBank* bank_;
  FrameParams params_;
  PartitionOfUnity pu_;
  std::vector<BandSystem> bands_;
  std::vector<int> band_offset_;  // band -> first global coefficient slot
  int n_coef_ = 0;
};

struct FrameBoundsReport {
  double min_ratio = 0.0, max_ratio = 0.0;
  std::vector<double> ratios;                   // per trial field
  std::vector<double> band_min, band_max;       // per band extremes
  bool pass = false;
};

// Rayleigh quotients over n_trials seeded random fields bandlimited to
// [0, 2^j_max]; PASS iff all (global and per-band) ratios lie in
// [1 - delta - tol, 1 + delta + tol].
FrameBoundsReport frame_bounds(const FrameSystem& fs, int n_trials,
                               unsigned seed, double tol = 0.05);

// Frame-algorithm iteration f_{n+1} = f_n + P(Sf - S f_n) with P the
// cutoff to [0, 2^j_max], where the truncated filter bank is a partition
// of unity and the frame bounds hold; contraction factor <= delta.
// err_curve receives per-iteration errors (against truth when given,
// otherwise successive differences). Throws if the error grows twice in a
// row (failed frame bounds).
SpectralField reconstruct(const FrameSystem& fs, const CoefficientSet& c,
                          int n_iter, std::vector<double>* err_curve = nullptr,
                          const SpectralField* truth = nullptr);

// Unit-norm random field in the span of the frame atoms: a random
// bandlimited draw passed m times through the projected frame operator
// P S, which damps the modes the truncated grid cannot represent.
SpectralField frame_span_field(const FrameSystem& fs, int m_power,
                               unsigned seed);

struct DecayRow {
  double r = 0.0;
  double sup_abs = 0.0;   // sup over the circle of radius r
  double weighted = 0.0;  // sup * (1+r)^N / phi_0(r)
};

// Schwartz-decay profile of an atom on circles r = 1 .. r_top
std::vector<DecayRow> decay_profile(const HftOperator& op,
                                    const FrameAtom& atom, int N,
                                    double r_top);

// Coefficients with their (j, nu, k) indices as JSON.
std::string coefficients_json(const FrameSystem& fs, const CoefficientSet& c);

// Frame-bounds report as JSON.
std::string frame_bounds_json(const FrameBoundsReport& rep);

// Atom samples on the operator's grid, one "r,theta,re,im" row per node.
std::string atom_csv(const HftOperator& op, const FrameAtom& atom);

// Largest a0 in [2^-6, 2] whose frame_bounds report passes, by bisection.
double calibrate_a0(const HftOperator& op, const FilterBank& bank,
                    FrameParams p, int n_trials, unsigned seed);

}  // namespace pwf
