#include "pwframes/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace pwf {

namespace {
constexpr double kPi = std::numbers::pi;

double smooth_h(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = smooth_h(t), b = smooth_h(1.0 - t);
  return a / (a + b);
}

void ball_scan(const SpatialGrid& grid, Point center, double R,
               const std::function<void(int, double)>& fn) {
  const double rc = hyp_radius(center);
  const double tc = std::atan2(center.v, center.u);
  const double h = 2.0 * kPi / grid.n_theta;
  for (int ir = 0; ir < grid.n_r; ++ir) {
    const double r = grid.radii[ir];
    if (std::abs(r - rc) > R) continue;
    // cosh d = cosh r cosh rc - sinh r sinh rc cos(dtheta) <= cosh R
    const double den = std::sinh(r) * std::sinh(rc);
    double dmax;
    if (den < 1e-300) {
      dmax = kPi;
    } else {
      const double cosv = (std::cosh(r) * std::cosh(rc) - std::cosh(R)) / den;
      if (cosv <= -1.0)
        dmax = kPi;
      else if (cosv >= 1.0)
        dmax = 0.0;
      else
        dmax = std::acos(cosv);
    }
    dmax = std::min(kPi, dmax * (1.0 + 1e-12) + 1e-14);
    int q_lo, q_hi;
    if (2.0 * dmax >= 2.0 * kPi - h) {
      q_lo = 0;
      q_hi = grid.n_theta - 1;
    } else {
      q_lo = static_cast<int>(std::ceil((tc - dmax) / h));
      q_hi = static_cast<int>(std::floor((tc + dmax) / h));
      if (q_hi - q_lo + 1 > grid.n_theta) {
        q_lo = 0;
        q_hi = grid.n_theta - 1;
      }
    }
    for (int q = q_lo; q <= q_hi; ++q) {
      const int iq = ((q % grid.n_theta) + grid.n_theta) % grid.n_theta;
      const int ix = grid.index(ir, iq);
      const double d = hyp_distance(center, grid.nodes[ix]);
      if (d <= R) fn(ix, d);
    }
  }
}

namespace {

// Separated-set acceleration: accepted centers bucketed by radial band of
// width r/2; within each band, ordered by polar angle. Only the band of a
// query point and its two neighbors can hold a point closer than r/2, and
// the admissible angle window follows from the exact equal-radius distance
// d(rho0, rho0, dtheta) = 2 asinh(sinh(rho0) sin(dtheta/2)).
struct BandIndex {
  double band_w;
  std::vector<std::multimap<double, int>> bands;

  BandIndex(double r, double r_max) : band_w(r / 2.0) {
    bands.resize(static_cast<std::size_t>(r_max / band_w) + 2);
  }

  int band_of(double rho) const {
    return std::min<int>(bands.size() - 1, static_cast<int>(rho / band_w));
  }

  void insert(double rho, double theta, int id) {
    bands[band_of(rho)].emplace(theta, id);
  }

  // visit ids that could be within r/2 of (rho, theta)
  template <typename F>
  void visit_near(double rho, double theta, double r, F&& f) const {
    const int b = band_of(rho);
    for (int db = -1; db <= 1; ++db) {
      const int bb = b + db;
      if (bb < 0 || bb >= static_cast<int>(bands.size())) continue;
      const auto& m = bands[bb];
      if (m.empty()) continue;
      const double rho0 = std::min(b, bb) * band_w;
      double dmax = kPi;
      const double s0 = std::sinh(rho0);
      if (s0 > 0.0) {
        const double ratio = std::sinh(r / 4.0) / s0;
        if (ratio < 1.0) dmax = 2.0 * std::asin(ratio) * (1.0 + 1e-9);
      }
      if (dmax >= kPi - 1e-12) {
        for (const auto& [th, id] : m) f(id);
        continue;
      }
      for (double shift : {0.0, 2.0 * kPi, -2.0 * kPi}) {
        auto lo = m.lower_bound(theta - dmax + shift);
        auto hi = m.upper_bound(theta + dmax + shift);
        for (auto it = lo; it != hi; ++it) f(it->second);
      }
    }
  }
};

}  // namespace

Lattice build_lattice(double r, const SpatialGrid& grid, unsigned seed,
                      int multiplicity_bound) {
  if (r <= 0.0) throw std::invalid_argument("lattice spacing must be positive");

  std::vector<int> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  Lattice lat;
  lat.r = r;
  lat.multiplicity_bound = multiplicity_bound;
  BandIndex idx(r, grid.r_max);
  for (int ix : order) {
    const Point p = grid.nodes[ix];
    const double rho = hyp_radius(p);
    const double theta = std::atan2(p.v, p.u);
    bool ok = true;
    idx.visit_near(rho, theta, r, [&](int id) {
      if (ok && hyp_distance(p, lat.centers[id]) < r / 2.0) ok = false;
    });
    if (!ok) continue;
    idx.insert(rho, theta, static_cast<int>(lat.centers.size()));
    lat.center_nodes.push_back(ix);
    lat.centers.push_back(p);
  }
  if (lat.centers.empty()) throw std::runtime_error("lattice admits no center");

  // empirical height of the cover {B(x_i, r)}
  std::vector<int> cnt(grid.size(), 0);
  for (const Point& c : lat.centers)
    ball_scan(grid, c, r, [&](int ix, double) { ++cnt[ix]; });
  lat.empirical_multiplicity = *std::max_element(cnt.begin(), cnt.end());
  return lat;
}

Cover build_cover(const Lattice& lat, const SpatialGrid& grid) {
  const double r = lat.r;
  const int n = grid.size();
  const int K = static_cast<int>(lat.centers.size());

  std::vector<int> quarter(n, -1);
  std::vector<int> first_half(n, K);
  for (int k = 0; k < K; ++k) {
    ball_scan(grid, lat.centers[k], r / 2.0, [&](int ix, double d) {
      if (d < r / 4.0) quarter[ix] = k;
      if (d < r / 2.0) first_half[ix] = std::min(first_half[ix], k);
    });
  }

  Cover cov;
  cov.r = r;
  cov.cell_of.assign(n, -1);
  cov.cells.resize(K);
  cov.measure.assign(K, 0.0);
  for (int ix = 0; ix < n; ++ix) {
    int k = quarter[ix] >= 0 ? quarter[ix] : first_half[ix];
    if (k == K) {  // outside every half ball: nearest center, flagged
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < K; ++j) {
        const double d = hyp_distance(grid.nodes[ix], lat.centers[j]);
        if (d < best) {
          best = d;
          k = j;
        }
      }
      ++cov.n_flagged;
    }
    cov.cell_of[ix] = k;
    cov.cells[k].push_back(ix);
    cov.measure[k] += grid.weights[ix];
    cov.total_measure += grid.weights[ix];
  }
  return cov;
}

Weights build_weights(const Cover& cov, const SpatialGrid& grid, double delta,
                      double eps0) {
  if (delta <= 0.0 || delta >= 1.0 || eps0 <= 0.0)
    throw std::invalid_argument("need 0 < delta < 1 and eps0 > 0");
  const int K = static_cast<int>(cov.cells.size());
  const int nt = grid.n_theta;

  // rim of each cell: complement nodes in a bounding window, used both for
  // the distance-to-complement values and for off-grid re-evaluation
  std::vector<std::vector<Point>> rim(K);
  std::vector<std::vector<double>> dist(K);
  for (int k = 0; k < K; ++k) {
    const auto& nodes = cov.cells[k];
    if (nodes.empty()) continue;
    const int ir0 = nodes[0] / nt, iq0 = nodes[0] % nt;
    int rlo = 0, rhi = 0, qlo = 0, qhi = 0;
    for (int ix : nodes) {
      const int dr = ix / nt - ir0;
      int dq = ix % nt - iq0;
      if (dq > nt / 2) dq -= nt;
      if (dq < -nt / 2) dq += nt;
      rlo = std::min(rlo, dr);
      rhi = std::max(rhi, dr);
      qlo = std::min(qlo, dq);
      qhi = std::max(qhi, dq);
    }
    for (int margin = 2; rim[k].empty(); margin *= 2) {
      for (int ir = std::max(0, ir0 + rlo - margin);
           ir <= std::min(grid.n_r - 1, ir0 + rhi + margin); ++ir) {
        const int span = qhi - qlo + 2 * margin;
        for (int dq = qlo - margin; dq <= qhi + margin; ++dq) {
          if (span >= nt && dq > qlo - margin + nt - 1) break;
          const int iq = ((iq0 + dq) % nt + nt) % nt;
          const int ix = grid.index(ir, iq);
          if (cov.cell_of[ix] != k) rim[k].push_back(grid.nodes[ix]);
        }
      }
      if (ir0 + rlo - margin <= 0 && ir0 + rhi + margin >= grid.n_r - 1 &&
          qhi - qlo + 2 * margin >= nt)
        break;  // cell rims the whole grid; no complement exists
    }
    dist[k].reserve(nodes.size());
    for (int ix : nodes) {
      double d = std::numeric_limits<double>::infinity();
      for (const Point& p : rim[k])
        d = std::min(d, hyp_distance(grid.nodes[ix], p));
      dist[k].push_back(d);
    }
  }

  Weights w;
  w.rim = std::move(rim);
  for (double eps = eps0;; eps /= 2.0) {
    w.eps = eps;
    w.psi.assign(K, {});
    w.measure_psi.assign(K, 0.0);
    w.measure_ratio = 0.0;
    for (int k = 0; k < K; ++k) {
      const auto& nodes = cov.cells[k];
      w.psi[k].resize(nodes.size());
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double v = smooth_step(dist[k][i] / eps);
        w.psi[k][i] = v;
        w.measure_psi[k] += grid.weights[nodes[i]] * v;
      }
      if (w.measure_psi[k] <= 0.0)
        throw std::runtime_error("cell " + std::to_string(k) +
                                 " has vanishing weighted measure");
      w.measure_ratio =
          std::max(w.measure_ratio, cov.measure[k] / w.measure_psi[k]);
    }
    if (w.measure_ratio <= 1.0 + delta) break;
    if (eps < 1e-12)
      throw std::runtime_error(
          "cannot meet the measure condition; thinnest offending cell " +
          std::to_string(static_cast<int>(
              std::max_element(w.measure_psi.begin(), w.measure_psi.end()) -
              w.measure_psi.begin())));
  }
  return w;
}

double psi_value(const Weights& wts, int k, Point x) {
  const auto& rim = wts.rim[k];
  if (rim.empty()) return 1.0;
  double d = std::numeric_limits<double>::infinity();
  for (const Point& p : rim) d = std::min(d, hyp_distance(x, p));
  return smooth_step(d / wts.eps);
}

PartitionOfUnity build_partition_of_unity(double lambda_pu,
                                          const SpatialGrid& grid,
                                          unsigned seed) {
  if (lambda_pu <= 0.0 || lambda_pu > grid.r_max)
    throw std::invalid_argument("pu radius outside (0, R_max]");
  PartitionOfUnity pu;
  pu.lambda_pu = lambda_pu;
  pu.width = lambda_pu / 8.0;
  pu.lat = build_lattice(lambda_pu, grid, seed);
  pu.n_parts = static_cast<int>(pu.lat.centers.size());
  pu.node_terms.resize(grid.size());
  for (int nu = 0; nu < pu.n_parts; ++nu) {
    // support 0.55*lambda: the covering radius is lambda/2, so the worst
    // node still sees chi = smooth_step(0.4) from its nearest center
    ball_scan(grid, pu.lat.centers[nu], 0.55 * lambda_pu, [&](int ix, double d) {
      const double chi = smooth_step((0.55 * lambda_pu - d) / pu.width);
      if (chi > 0.0) pu.node_terms[ix].emplace_back(nu, chi);
    });
  }
  // square normalization: sum_nu phi_nu^2 = 1 everywhere, which is what
  // keeps the frame nearly Parseval on the bump overlaps
  for (int ix = 0; ix < grid.size(); ++ix) {
    double ss = 0.0;
    for (auto& [nu, chi] : pu.node_terms[ix]) ss += chi * chi;
    if (ss <= 0.0)
      throw std::runtime_error("partition cover gap at node " +
                               std::to_string(ix) +
                               "; enlarge the bump plateau");
    const double inv = 1.0 / std::sqrt(ss);
    for (auto& [nu, chi] : pu.node_terms[ix]) chi *= inv;
  }
  return pu;
}

std::vector<std::pair<int, double>> pu_values(const PartitionOfUnity& pu,
                                              Point x) {
  std::vector<std::pair<int, double>> out;
  double s = 0.0;
  for (int nu = 0; nu < pu.n_parts; ++nu) {
    const double d = hyp_distance(x, pu.lat.centers[nu]);
    if (d >= 0.55 * pu.lambda_pu) continue;
    const double chi = smooth_step((0.55 * pu.lambda_pu - d) / pu.width);
    if (chi > 0.0) out.emplace_back(nu, chi), s += chi;
  }
  if (s <= 0.0) throw std::runtime_error("partition cover gap off-grid");
  double ss = 0.0;
  for (auto& [nu, chi] : out) ss += chi * chi;
  const double inv = 1.0 / std::sqrt(ss);
  for (auto& [nu, chi] : out) chi *= inv;
  return out;
}

std::string lattice_json(const Lattice& lat, const Cover& cov,
                         const Weights& wts) {
  nlohmann::json j;
  j["r"] = lat.r;
  j["multiplicity"] = lat.empirical_multiplicity;
  auto& cs = j["centers"] = nlohmann::json::array();
  for (const Point& p : lat.centers) cs.push_back({p.u, p.v});
  j["assignment"] = cov.cell_of;
  j["cell_measure"] = cov.measure;
  j["cell_measure_weighted"] = wts.measure_psi;
  j["n_flagged"] = cov.n_flagged;
  return j.dump(2);
}

}  // namespace pwf
