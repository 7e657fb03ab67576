#include "pwframes/besov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pwframes/spectral.hpp"

namespace pwf {

namespace {

void check_params(const BesovParams& p) {
  if (p.alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  if (p.q != 0 && p.q != 1 && p.q != 2)
    throw std::invalid_argument("q must be 1, 2, or 0 (supremum)");
  if (p.j_max < 1) throw std::invalid_argument("j_max must be >= 1");
}

// l^q accumulation of a term list; q = 0 is the supremum.
double lq(const std::vector<double>& terms, int q) {
  double acc = 0.0;
  for (double t : terms) {
    if (q == 0)
      acc = std::max(acc, t);
    else if (q == 1)
      acc += t;
    else
      acc += t * t;
  }
  return q == 2 ? std::sqrt(acc) : acc;
}

}  // namespace

double besov_norm_bestapprox(const SpectralField& f, const BesovParams& p,
                             const SpectralGrid& sg) {
  check_params(p);
  std::vector<double> terms(p.j_max + 1);
  for (int k = 0; k <= p.j_max; ++k)
    terms[k] = std::pow(2.0, k * p.alpha) *
               best_approximation(std::ldexp(1.0, k), f, sg);
  return plancherel_norm(f, sg) + lq(terms, p.q);
}

double besov_norm_lp(const SpectralField& f, const BesovParams& p,
                     const FilterBank& bank, const SpectralGrid& sg) {
  check_params(p);
  if (bank.j_max() < p.j_max)
    throw std::invalid_argument("filter bank shorter than j_max");
  std::vector<double> terms(p.j_max + 1);
  for (int j = 0; j <= p.j_max; ++j) {
    Multiplier m{[&bank, j](double lam) { return bank.f(j, lam); },
                 band_of(j).lo, band_of(j).hi};
    terms[j] = std::pow(2.0, j * p.alpha) *
               plancherel_norm(apply_multiplier(m, f, sg), sg);
  }
  return lq(terms, p.q);
}

double besov_norm_frame(const CoefficientSet& c, const BesovParams& p,
                        const FrameSystem& fs) {
  check_params(p);
  if (fs.params().j_max != p.j_max)
    throw std::invalid_argument("coefficients built with a different j_max");
  if (static_cast<int>(c.values.size()) != fs.n_coefficients())
    throw std::invalid_argument("coefficient count mismatch");
  std::vector<double> terms(p.j_max + 1);
  int off = 0;
  for (int j = 0; j <= p.j_max; ++j) {
    double mass = 0.0;
    for (int i = 0; i < fs.band(j).n_coef; ++i)
      mass += std::norm(c.values[off + i]);
    off += fs.band(j).n_coef;
    terms[j] = std::pow(2.0, j * p.alpha) * std::sqrt(mass);
  }
  return lq(terms, p.q);
}

double besov_tail_mass(const SpectralField& f, const BesovParams& p,
                       const SpectralGrid& sg) {
  check_params(p);
  const double n = plancherel_norm(f, sg);
  if (n == 0.0) return 0.0;
  const double e = best_approximation(std::ldexp(1.0, p.j_max), f, sg);
  return (e * e) / (n * n);
}

EquivalenceReport equivalence_report(const std::vector<SpectralField>& fields,
                                     const BesovParams& p,
                                     const FrameSystem& fs, double c_bound) {
  check_params(p);
  if (fields.size() < 5)
    throw std::invalid_argument("equivalence report needs >= 5 fields");
  const SpectralGrid& sg = fs.op().sgrid();
  EquivalenceReport rep;
  rep.c_max = 0.0;
  auto ratio = [](double a, double b) { return b == 0.0 ? 0.0 : a / b; };
  for (std::size_t i = 0; i < fields.size(); ++i) {
    BesovRow row;
    row.field_id = static_cast<int>(i);
    row.bestapprox = besov_norm_bestapprox(fields[i], p, sg);
    row.lp = besov_norm_lp(fields[i], p, fs.bank(), sg);
    row.frame = besov_norm_frame(fs.analyze(fields[i]), p, fs);
    row.ratio_ba_lp = ratio(row.bestapprox, row.lp);
    row.ratio_frame_lp = ratio(row.frame, row.lp);
    row.ratio_ba_frame = ratio(row.bestapprox, row.frame);
    row.tail_mass = besov_tail_mass(fields[i], p, sg);
    for (double r : {row.ratio_ba_lp, row.ratio_frame_lp, row.ratio_ba_frame})
      if (r > 0.0) rep.c_max = std::max({rep.c_max, r, 1.0 / r});
    rep.rows.push_back(row);
  }
  rep.pass = rep.c_max > 0.0 && rep.c_max <= c_bound;
  return rep;
}

std::string equivalence_csv(const EquivalenceReport& rep) {
  std::ostringstream os;
  os << "field_id,bestapprox,lp,frame,ba_over_lp,frame_over_lp,ba_over_frame,"
        "tail_mass\n";
  os.precision(12);
  for (const BesovRow& r : rep.rows)
    os << r.field_id << ',' << r.bestapprox << ',' << r.lp << ',' << r.frame
       << ',' << r.ratio_ba_lp << ',' << r.ratio_frame_lp << ','
       << r.ratio_ba_frame << ',' << r.tail_mass << '\n';
  return os.str();
}

}  // namespace pwf
