#include "pwframes/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "pwframes/spectral.hpp"

namespace pwf {

namespace {
constexpr double kPi = std::numbers::pi;
}

double CoefficientSet::sum_sq() const {
  double s = 0.0;
  for (const cd& v : values) s += std::norm(v);
  return s;
}

double rate_radius(int j, double delta, double a0) {
  if (j < 0 || delta <= 0.0 || delta > 1.0 || a0 <= 0.0)
    throw std::invalid_argument("bad rate parameters");
  return a0 * std::sqrt(delta) / std::sqrt(std::ldexp(4.0, 2 * j) + 0.25);
}

cd psi_functional(int k, const SpatialField& f, const Cover& cov,
                  const Weights& wts, const SpatialGrid& grid) {
  if (wts.measure_psi[k] <= 0.0)
    throw std::invalid_argument("cell has zero weighted measure");
  cd acc(0.0, 0.0);
  const auto& nodes = cov.cells[k];
  for (std::size_t i = 0; i < nodes.size(); ++i)
    acc += grid.weights[nodes[i]] * wts.psi[k][i] * f[nodes[i]];
  return acc / wts.measure_psi[k];
}

cd sample_functional(int k, const SpatialField& f, const Cover& cov,
                     const Weights& wts, const SpatialGrid& grid) {
  return std::sqrt(cov.measure[k]) * psi_functional(k, f, cov, wts, grid);
}

SpectralField random_bandlimited_field(const HftOperator& op, double lo,
                                       double hi, int m_max, unsigned seed) {
  const SpectralGrid& sg = op.sgrid();
  const SpatialGrid& grid = op.grid();
  if (!(0.0 <= lo && lo < hi && hi <= sg.lambda_max))
    throw std::invalid_argument("band outside the spectral grid");
  std::mt19937 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  std::uniform_real_distribution<double> U(0.0, 2.0 * kPi);
  const int P = 3;  // smooth lambda-modulation harmonics
  std::vector<cd> cm(2 * m_max + 1);
  std::vector<std::vector<double>> amp(cm.size()), pha(cm.size());
  for (std::size_t i = 0; i < cm.size(); ++i) {
    cm[i] = cd(N(rng), N(rng));
    for (int p = 0; p <= P; ++p) {
      amp[i].push_back(N(rng) / (1.0 + p));
      pha[i].push_back(U(rng));
    }
  }
  SpectralField f(sg.size(), cd(0.0, 0.0));
  for (int il = 0; il < sg.n_lambda; ++il) {
    const double lam = sg.lambda[il];
    if (lam < lo || lam > hi) continue;
    const double t = (lam - lo) / (hi - lo);
    const double env = smooth_step(4.0 * t) * smooth_step(4.0 * (1.0 - t));
    if (env == 0.0) continue;
    for (std::size_t i = 0; i < cm.size(); ++i) {
      double mod = 0.0;
      for (int p = 0; p <= P; ++p)
        mod += amp[i][p] * std::cos(p * kPi * t + pha[i][p]);
      const cd a = env * mod * cm[i];
      if (a == cd(0.0, 0.0)) continue;
      const int m = static_cast<int>(i) - m_max;
      for (int ib = 0; ib < sg.n_b; ++ib)
        f[sg.index(il, ib)] += a * std::polar(1.0, m * sg.b_angle(ib));
    }
  }

  // smooth radial cutoff well inside the truncation radius
  const double r_loc = 0.65 * grid.r_max;
  const double w_loc = 0.25 * grid.r_max;
  std::vector<double> chi(grid.n_r);
  for (int ir = 0; ir < grid.n_r; ++ir)
    chi[ir] = smooth_step((r_loc + w_loc - grid.radii[ir]) / w_loc);

  for (int pass = 0; pass < 6; ++pass) {
    SpatialField x = op.inverse(f);
    for (int ir = 0; ir < grid.n_r; ++ir)
      for (int iq = 0; iq < grid.n_theta; ++iq) x[grid.index(ir, iq)] *= chi[ir];
    f = op.forward(x);
    for (int il = 0; il < sg.n_lambda; ++il) {
      const double lam = sg.lambda[il];
      if (lam >= lo && lam <= hi) continue;
      for (int ib = 0; ib < sg.n_b; ++ib) f[sg.index(il, ib)] = cd(0.0, 0.0);
    }
  }
  return f;
}

FrameSystem::FrameSystem(const HftOperator& op, const FilterBank& bank,
                         FrameParams p)
    : op_(&op), bank_(&bank), params_(p) {
  if (p.j_max < 0 || p.j_max > bank.j_max())
    throw std::invalid_argument("j_max exceeds the filter bank");
  if (std::ldexp(2.0, p.j_max) > op.sgrid().lambda_max)
    throw std::invalid_argument("top band exceeds the spectral grid");
  const SpatialGrid& grid = op.grid();
  pu_ = build_partition_of_unity(p.lambda_pu, grid, p.seed);

  for (int j = 0; j <= p.j_max; ++j) {
    BandSystem bs;
    bs.j = j;
    bs.r = rate_radius(j, p.delta, p.a0);
    bs.lat = build_lattice(bs.r, grid, p.seed + 101 * j + 1,
                           p.multiplicity_bound);
    bs.cov = build_cover(bs.lat, grid);
    bs.wts = build_weights(bs.cov, grid, p.delta, bs.r / 8.0);
    const int K = static_cast<int>(bs.cov.cells.size());
    bs.scale.resize(K);
    bs.cell_offset.resize(K + 1);
    for (int k = 0; k < K; ++k) {
      bs.scale[k] = std::sqrt(bs.cov.measure[k]) / bs.wts.measure_psi[k];
      bs.cell_offset[k] = bs.n_coef;
      // partition members overlapping the cell
      std::vector<int> nus;
      for (int ix : bs.cov.cells[k])
        for (const auto& [nu, v] : pu_.node_terms[ix])
          if (std::find(nus.begin(), nus.end(), nu) == nus.end())
            nus.push_back(nu);
      std::sort(nus.begin(), nus.end());
      for (int nu : nus) bs.coef_nu.push_back(nu);
      bs.n_coef += static_cast<int>(nus.size());
    }
    bs.cell_offset[K] = bs.n_coef;
    band_offset_.push_back(n_coef_);
    n_coef_ += bs.n_coef;
    bands_.push_back(std::move(bs));
  }
  band_offset_.push_back(n_coef_);
}

FrameIndex FrameSystem::index_of(int flat) const {
  for (int j = 0; j <= params_.j_max; ++j) {
    if (flat >= band_offset_[j + 1]) continue;
    const BandSystem& bs = bands_[j];
    const int local = flat - band_offset_[j];
    const auto it = std::upper_bound(bs.cell_offset.begin(),
                                     bs.cell_offset.end(), local);
    const int k = static_cast<int>(it - bs.cell_offset.begin()) - 1;
    return FrameIndex{j, bs.coef_nu[local], k};
  }
  throw std::out_of_range("coefficient index");
}

CoefficientSet FrameSystem::analyze(const SpectralField& fhat) const {
  const SpatialGrid& grid = op_->grid();
  const SpectralGrid& sg = op_->sgrid();
  CoefficientSet c;
  c.values.assign(n_coef_, cd(0.0, 0.0));
  SpectralField band_hat(sg.size());
  for (int j = 0; j <= params_.j_max; ++j) {
    const BandSystem& bs = bands_[j];
    for (int il = 0; il < sg.n_lambda; ++il) {
      const double fj = bank_->f(j, sg.lambda[il]);
      for (int ib = 0; ib < sg.n_b; ++ib)
        band_hat[sg.index(il, ib)] = fj * fhat[sg.index(il, ib)];
    }
    const SpatialField fj = op_->inverse(band_hat);
    cd* out = c.values.data() + band_offset_[j];
    const int K = static_cast<int>(bs.cov.cells.size());
    for (int k = 0; k < K; ++k) {
      const auto& nodes = bs.cov.cells[k];
      const int off = bs.cell_offset[k];
      const int nn = bs.cell_offset[k + 1] - off;
      const int* nus = bs.coef_nu.data() + off;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const int ix = nodes[i];
        const cd v = grid.weights[ix] * bs.wts.psi[k][i] * fj[ix];
        for (const auto& [nu, phi] : pu_.node_terms[ix]) {
          const int* pos = std::find(nus, nus + nn, nu);
          out[off + (pos - nus)] += phi * v;
        }
      }
      for (int t = 0; t < nn; ++t) out[off + t] *= bs.scale[k];
    }
  }
  return c;
}

SpectralField FrameSystem::synthesize(const CoefficientSet& c) const {
  if (static_cast<int>(c.values.size()) != n_coef_)
    throw std::invalid_argument("coefficient count mismatch");
  const SpatialGrid& grid = op_->grid();
  const SpectralGrid& sg = op_->sgrid();
  SpectralField total(sg.size(), cd(0.0, 0.0));
  SpatialField assembled(grid.size());
  for (int j = 0; j <= params_.j_max; ++j) {
    const BandSystem& bs = bands_[j];
    std::fill(assembled.begin(), assembled.end(), cd(0.0, 0.0));
    const cd* in = c.values.data() + band_offset_[j];
    const int K = static_cast<int>(bs.cov.cells.size());
    for (int k = 0; k < K; ++k) {
      const auto& nodes = bs.cov.cells[k];
      const int off = bs.cell_offset[k];
      const int nn = bs.cell_offset[k + 1] - off;
      const int* nus = bs.coef_nu.data() + off;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const int ix = nodes[i];
        cd acc(0.0, 0.0);
        for (const auto& [nu, phi] : pu_.node_terms[ix]) {
          const int* pos = std::find(nus, nus + nn, nu);
          acc += phi * in[off + (pos - nus)];
        }
        assembled[ix] += bs.scale[k] * bs.wts.psi[k][i] * acc;
      }
    }
    const SpectralField ahat = op_->forward(assembled);
    for (int il = 0; il < sg.n_lambda; ++il) {
      const double fj = bank_->f(j, sg.lambda[il]);
      if (fj == 0.0) continue;
      for (int ib = 0; ib < sg.n_b; ++ib)
        total[sg.index(il, ib)] += fj * ahat[sg.index(il, ib)];
    }
  }
  return total;
}

SpectralField FrameSystem::frame_apply(const SpectralField& fhat) const {
  return synthesize(analyze(fhat));
}

double FrameSystem::rayleigh(const SpectralField& fhat) const {
  const double n = plancherel_norm(fhat, op_->sgrid());
  if (n < 1e-12) throw std::invalid_argument("degenerate field");
  return analyze(fhat).sum_sq() / (n * n);
}

std::vector<double> FrameSystem::band_ratios(const SpectralField& fhat) const {
  const SpectralGrid& sg = op_->sgrid();
  const CoefficientSet c = analyze(fhat);
  std::vector<double> out;
  for (int j = 0; j <= params_.j_max; ++j) {
    double mass = 0.0;
    for (int i = band_offset_[j]; i < band_offset_[j + 1]; ++i)
      mass += std::norm(c.values[i]);
    double band_norm_sq = 0.0;
    for (int il = 0; il < sg.n_lambda; ++il) {
      const double fj = bank_->f(j, sg.lambda[il]);
      if (fj == 0.0) continue;
      const double w = sg.node_weight(il) * fj * fj;
      for (int ib = 0; ib < sg.n_b; ++ib)
        band_norm_sq += w * std::norm(fhat[sg.index(il, ib)]);
    }
    out.push_back(band_norm_sq > 1e-24 ? mass / band_norm_sq : 0.0);
  }
  return out;
}

SpatialField FrameSystem::theta_field(int j, int nu, int k) const {
  const SpatialGrid& grid = op_->grid();
  const BandSystem& bs = bands_.at(j);
  SpatialField out(grid.size(), cd(0.0, 0.0));
  const auto& nodes = bs.cov.cells.at(k);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const int ix = nodes[i];
    for (const auto& [n2, phi] : pu_.node_terms[ix])
      if (n2 == nu) out[ix] = bs.scale[k] * bs.wts.psi[k][i] * phi;
  }
  return out;
}

SpatialField FrameSystem::theta_field_on(int j, int nu, int k,
                                         const SpatialGrid& other) const {
  const BandSystem& bs = bands_.at(j);
  const Point xk = bs.lat.centers.at(k);
  // centers whose half balls can reach the scan region; needed to decide
  // cell membership of off-grid points by the same rule build_cover uses
  // (disjoint quarter balls first, then the lowest-index half ball)
  std::vector<std::pair<int, Point>> nearby;
  for (int k2 = 0; k2 < static_cast<int>(bs.lat.centers.size()); ++k2)
    if (hyp_distance(bs.lat.centers[k2], xk) < bs.r + 1e-12)
      nearby.emplace_back(k2, bs.lat.centers[k2]);
  SpatialField out(other.size(), cd(0.0, 0.0));
  ball_scan(other, xk, bs.r / 2.0, [&](int ix, double) {
    const Point x = other.nodes[ix];
    int owner = -1, first_half = std::numeric_limits<int>::max();
    for (const auto& [k2, c2] : nearby) {
      const double d = hyp_distance(x, c2);
      if (d < bs.r / 4.0) {
        owner = k2;
        break;
      }
      if (d < bs.r / 2.0) first_half = std::min(first_half, k2);
    }
    if (owner < 0) owner = first_half;
    if (owner != k) return;
    const double psi = psi_value(bs.wts, k, x);
    if (psi <= 0.0) return;
    for (const auto& [n2, phi] : pu_values(pu_, x))
      if (n2 == nu) out[ix] = bs.scale[k] * psi * phi;
  });
  return out;
}

FrameAtom FrameSystem::atom(int j, int nu, int k) const {
  const SpectralGrid& sg = op_->sgrid();
  FrameAtom a;
  a.idx = FrameIndex{j, nu, k};
  a.band = band_of(j);
  a.spec = op_->forward(theta_field(j, nu, k));
  for (int il = 0; il < sg.n_lambda; ++il) {
    const double fj = bank_->f(j, sg.lambda[il]);
    for (int ib = 0; ib < sg.n_b; ++ib) a.spec[sg.index(il, ib)] *= fj;
  }
  a.norm = plancherel_norm(a.spec, sg);
  return a;
}

FrameBoundsReport frame_bounds(const FrameSystem& fs, int n_trials,
                               unsigned seed, double tol) {
  if (n_trials < 10) throw std::invalid_argument("need n_trials >= 10");
  const FrameParams& p = fs.params();
  const SpectralGrid& sg = fs.op().sgrid();
  const double top = std::ldexp(1.0, p.j_max);
  FrameBoundsReport rep;
  rep.min_ratio = 1e300;
  rep.max_ratio = 0.0;
  rep.band_min.assign(p.j_max + 1, 1e300);
  rep.band_max.assign(p.j_max + 1, 0.0);
  for (int t = 0; t < n_trials; ++t) {
    SpectralField f;
    for (unsigned s = seed + 977u * t;; ++s) {
      f = random_bandlimited_field(fs.op(), 0.0, top, 4, s);
      if (plancherel_norm(f, sg) > 1e-12) break;
    }
    rep.ratios.push_back(fs.rayleigh(f));
    rep.min_ratio = std::min(rep.min_ratio, rep.ratios.back());
    rep.max_ratio = std::max(rep.max_ratio, rep.ratios.back());
    const std::vector<double> br = fs.band_ratios(f);
    for (int j = 0; j <= p.j_max; ++j) {
      if (br[j] <= 0.0) continue;  // band empty for this field
      rep.band_min[j] = std::min(rep.band_min[j], br[j]);
      rep.band_max[j] = std::max(rep.band_max[j], br[j]);
    }
  }
  const double lo = 1.0 - p.delta - tol, hi = 1.0 + p.delta + tol;
  rep.pass = rep.min_ratio >= lo && rep.max_ratio <= hi;
  for (int j = 0; j <= p.j_max; ++j)
    rep.pass = rep.pass && rep.band_min[j] >= lo && rep.band_max[j] <= hi;
  return rep;
}

SpectralField reconstruct(const FrameSystem& fs, const CoefficientSet& c,
                          int n_iter, std::vector<double>* err_curve,
                          const SpectralField* truth) {
  const SpectralGrid& sg = fs.op().sgrid();
  const double top = std::ldexp(1.0, fs.params().j_max);
  auto project = [&](SpectralField g) {
    return project_pw(top, g, sg);
  };
  const SpectralField sf = project(fs.synthesize(c));
  SpectralField fn = sf;
  if (err_curve) err_curve->clear();
  const double floor = 1e-13 * plancherel_norm(sf, sg);
  double prev_err = -1.0;
  int grew = 0;
  for (int it = 0; it < n_iter; ++it) {
    const SpectralField sfn = project(fs.frame_apply(fn));
    SpectralField next(fn.size());
    SpectralField step(fn.size());
    for (std::size_t i = 0; i < fn.size(); ++i) {
      step[i] = sf[i] - sfn[i];
      next[i] = fn[i] + step[i];
    }
    double err;
    if (truth) {
      SpectralField diff(fn.size());
      for (std::size_t i = 0; i < fn.size(); ++i) diff[i] = next[i] - (*truth)[i];
      err = plancherel_norm(diff, sg);
    } else {
      err = plancherel_norm(step, sg);
    }
    if (err_curve) err_curve->push_back(err);
    if (prev_err >= 0.0 && err > prev_err && err > floor) {
      if (++grew >= 2)
        throw std::runtime_error(
            "frame algorithm diverging: frame bounds do not hold");
    } else {
      grew = 0;
    }
    prev_err = err;
    fn = std::move(next);
  }
  return fn;
}

SpectralField frame_span_field(const FrameSystem& fs, int m_power,
                               unsigned seed) {
  const SpectralGrid& sg = fs.op().sgrid();
  const double top = std::ldexp(1.0, fs.params().j_max);
  SpectralField f = random_bandlimited_field(fs.op(), 0.0, top, 4, seed);
  for (int i = 0; i < m_power; ++i)
    f = project_pw(top, fs.frame_apply(f), sg);
  const double n0 = plancherel_norm(f, sg);
  if (n0 < 1e-12)
    throw std::runtime_error("frame span field degenerated to zero");
  for (auto& v : f) v /= n0;
  return f;
}

std::vector<DecayRow> decay_profile(const HftOperator& op,
                                    const FrameAtom& atom, int N,
                                    double r_top) {
  if (N < 0 || N > 4) throw std::invalid_argument("N must be in [0, 4]");
  std::vector<DecayRow> rows;
  for (double r = 1.0; r <= r_top + 1e-9; r += 1.0) {
    DecayRow row;
    row.r = r;
    row.sup_abs = op.evaluate_circle(atom.spec, r, 8).sup_abs;
    row.weighted = row.sup_abs * std::pow(1.0 + r, N) /
                   spherical_function(0.0, r);
    rows.push_back(row);
  }
  return rows;
}

double calibrate_a0(const HftOperator& op, const FilterBank& bank,
                    FrameParams p, int n_trials, unsigned seed) {
  auto passes = [&](double a0) {
    p.a0 = a0;
    FrameSystem fs(op, bank, p);
    return frame_bounds(fs, n_trials, seed).pass;
  };
  double lo = std::ldexp(1.0, -6), hi = 2.0;
  if (passes(hi)) return hi;
  if (!passes(lo))
    throw std::runtime_error("no admissible a0 in [2^-6, 2]");
  for (int it = 0; it < 7; ++it) {
    const double mid = std::sqrt(lo * hi);
    (passes(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::string coefficients_json(const FrameSystem& fs,
                              const CoefficientSet& c) {
  if (static_cast<int>(c.values.size()) != fs.n_coefficients())
    throw std::invalid_argument("coefficient count mismatch");
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < fs.n_coefficients(); ++i) {
    const FrameIndex idx = fs.index_of(i);
    rows.push_back({{"j", idx.j},
                    {"nu", idx.nu},
                    {"k", idx.k},
                    {"re", c.values[i].real()},
                    {"im", c.values[i].imag()}});
  }
  return nlohmann::json{{"n", fs.n_coefficients()},
                        {"sum_sq", c.sum_sq()},
                        {"coefficients", rows}}
      .dump();
}

std::string frame_bounds_json(const FrameBoundsReport& rep) {
  return nlohmann::json{{"min_ratio", rep.min_ratio},
                        {"max_ratio", rep.max_ratio},
                        {"ratios", rep.ratios},
                        {"band_min", rep.band_min},
                        {"band_max", rep.band_max},
                        {"pass", rep.pass}}
      .dump();
}

std::string atom_csv(const HftOperator& op, const FrameAtom& atom) {
  const SpatialField f = op.inverse(atom.spec);
  const SpatialGrid& grid = op.grid();
  std::ostringstream out;
  out.precision(12);
  out << "r,theta,re,im\n";
  for (int ix = 0; ix < grid.size(); ++ix)
    out << grid.node_radius(ix) << ',' << grid.node_theta(ix) << ','
        << f[ix].real() << ',' << f[ix].imag() << '\n';
  return out.str();
}

}  // namespace pwf
