#pragma once

#include <string>
#include <vector>

#include "pwframes/filters.hpp"
#include "pwframes/frames.hpp"
#include "pwframes/hft.hpp"

namespace pwf {

// Parameters of the Besov scale B^alpha_{2,q}: smoothness alpha > 0,
// summation exponent q in {1, 2} or q = 0 meaning the supremum (l^inf),
// and the dyadic range 0..j_max.
struct BesovParams {
  double alpha = 1.0;
  int q = 2;  // 1, 2, or 0 for the supremum norm
  int j_max = 3;
};

// ||f|| + l^q over k = 0..j_max of 2^{k alpha} E(f, 2^k), where E is the
// best approximation error from PW_{2^k}.
double besov_norm_bestapprox(const SpectralField& f, const BesovParams& p,
                             const SpectralGrid& sg);

// l^q over j = 0..j_max of 2^{j alpha} ||F_j(Delta) f||.
double besov_norm_lp(const SpectralField& f, const BesovParams& p,
                     const FilterBank& bank, const SpectralGrid& sg);

// Per-band l^2 coefficient mass, then weighted l^q across bands:
// (sum_j 2^{j alpha q} (sum_{nu,k} |c|^2)^{q/2})^{1/q}.
double besov_norm_frame(const CoefficientSet& c, const BesovParams& p,
                        const FrameSystem& fs);

// Spectral mass fraction above 2^{j_max} (dyadic truncation error).
double besov_tail_mass(const SpectralField& f, const BesovParams& p,
                       const SpectralGrid& sg);

struct BesovRow {
  int field_id = 0;
  double bestapprox = 0.0;
  double lp = 0.0;
  double frame = 0.0;
  double ratio_ba_lp = 0.0;
  double ratio_frame_lp = 0.0;
  double ratio_ba_frame = 0.0;
  double tail_mass = 0.0;
};

struct EquivalenceReport {
  std::vector<BesovRow> rows;
  double c_max = 0.0;  // max over all pairwise ratios and their inverses
  bool pass = false;   // all ratios within [1/c_bound, c_bound]
};

// Three-norm equivalence table over the given fields (>= 5 required).
// PASS iff every pairwise ratio lies in [1/c_bound, c_bound].
EquivalenceReport equivalence_report(const std::vector<SpectralField>& fields,
                                     const BesovParams& p,
                                     const FrameSystem& fs,
                                     double c_bound = 10.0);

std::string equivalence_csv(const EquivalenceReport& rep);

}  // namespace pwf
