#include "pwframes/hft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pwf {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kRho = 0.5;

// Largest kernel table we are willing to hold (complex entries).
constexpr std::size_t kKernelCacheLimit = 120u * 1000u * 1000u;
}  // namespace

double horocycle_bracket(Point p, double b_angle) {
  const double rr = p.u * p.u + p.v * p.v;
  if (rr >= 1.0) throw std::domain_error("point outside the disk");
  const double bu = std::cos(b_angle), bv = std::sin(b_angle);
  const double du = p.u - bu, dv = p.v - bv;
  return std::log((1.0 - rr) / (du * du + dv * dv));
}

double laplacian_symbol(double lambda) { return -(lambda * lambda + 0.25); }

double spherical_function(double lambda, double r) {
  if (r < 0.0) throw std::domain_error("negative radius");
  if (r < 1e-12) return 1.0;
  // P_{-1/2+il}(cosh r) = (sqrt(2)/pi) int_0^r cos(l t)/sqrt(cosh r - cosh t) dt
  // with t = r - s^2 to remove the endpoint singularity, and
  // cosh r - cosh t = 2 sinh(r - s^2/2) sinh(s^2/2).
  const double smax = std::sqrt(r);
  int n = std::max(48, static_cast<int>(lambda * r) + 48);
  n = std::min(n, 4096);
  std::vector<double> x, w;
  gauss_legendre(n, 0.0, smax, x, w);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = x[i];
    const double t = r - s * s;
    const double den = 2.0 * std::sinh(r - 0.5 * s * s) * std::sinh(0.5 * s * s);
    acc += w[i] * 2.0 * s * std::cos(lambda * t) / std::sqrt(den);
  }
  return std::numbers::sqrt2 / kPi * acc;
}

double SpectralGrid::b_angle(int ib) const { return 2.0 * kPi * ib / n_b; }

double SpectralGrid::density(double lam) const {
  return plancherel_const * lam * std::tanh(kPi * lam);
}

double SpectralGrid::node_weight(int il) const {
  return density(lambda[il]) * lambda_w[il] / n_b;
}

SpectralGrid build_spectral_grid(double lambda_max, int n_lambda, int n_b) {
  if (lambda_max <= 0.0 || n_lambda < 4 || n_b < 4)
    throw std::invalid_argument("bad spectral grid parameters");
  SpectralGrid sg;
  sg.lambda_max = lambda_max;
  sg.n_lambda = n_lambda;
  sg.n_b = n_b;
  sg.plancherel_const = 1.0 / (2.0 * kPi);  // replaced by calibration
  gauss_legendre(n_lambda, 0.0, lambda_max, sg.lambda, sg.lambda_w);
  return sg;
}

double plancherel_norm(const SpectralField& f, const SpectralGrid& sg) {
  double acc = 0.0;
  for (int il = 0; il < sg.n_lambda; ++il) {
    const double w = sg.node_weight(il);
    double row = 0.0;
    for (int ib = 0; ib < sg.n_b; ++ib) row += std::norm(f[sg.index(il, ib)]);
    acc += w * row;
  }
  return std::sqrt(acc);
}

// ---------------------------------------------------------------------------

struct HftOperator::Impl {
  int n_theta = 0;
  int n_half = 0;
  bool fft_path = false;    // n_b == n_theta
  bool cached = false;      // kernel mode table resident
  std::vector<cd> khat;     // [il][ir][m], m = 0..n_half (even in m)
  fftw_plan plan_fwd = nullptr;   // length n_theta, FFTW_FORWARD
  fftw_plan plan_bwd = nullptr;
  std::map<int, std::pair<fftw_plan, fftw_plan>> eval_plans;  // by length
  std::vector<char> nonzero_row;  // scratch

  ~Impl() {
    if (plan_fwd) fftw_destroy_plan(plan_fwd);
    if (plan_bwd) fftw_destroy_plan(plan_bwd);
    for (auto& [len, p] : eval_plans) {
      fftw_destroy_plan(p.first);
      fftw_destroy_plan(p.second);
    }
  }

  std::size_t khat_index(int il, int ir, int m, int n_r) const {
    return (static_cast<std::size_t>(il) * n_r + ir) * (n_half + 1) + m;
  }
};

namespace {

fftw_plan make_plan(int n, int sign) {
  std::vector<cd> tmp(n);
  return fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(tmp.data()),
                          reinterpret_cast<fftw_complex*>(tmp.data()), sign,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
}

void run_plan(fftw_plan p, cd* in, cd* out) {
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in),
                   reinterpret_cast<fftw_complex*>(out));
}

// K(alpha) = exp((rho - i*lambda) * A(r, alpha)) sampled on n uniform angles.
void kernel_samples(double lambda, double rho_disk, int n, cd* out) {
  const double c1 = 1.0 - rho_disk * rho_disk;
  for (int q = 0; q < n; ++q) {
    const double alpha = 2.0 * kPi * q / n;
    const double a = std::log(
        c1 / (1.0 + rho_disk * rho_disk - 2.0 * rho_disk * std::cos(alpha)));
    out[q] = std::polar(std::exp(kRho * a), -lambda * a);
  }
}

}  // namespace

HftOperator::HftOperator(const SpatialGrid& grid, const SpectralGrid& sgrid)
    : grid_(&grid), sgrid_(&sgrid), impl_(std::make_unique<Impl>()) {
  impl_->n_theta = grid.n_theta;
  impl_->n_half = grid.n_theta / 2;
  impl_->fft_path = (sgrid.n_b == grid.n_theta);
  impl_->plan_fwd = make_plan(grid.n_theta, FFTW_FORWARD);
  impl_->plan_bwd = make_plan(grid.n_theta, FFTW_BACKWARD);

  if (impl_->fft_path) {
    const std::size_t entries = static_cast<std::size_t>(sgrid.n_lambda) *
                                grid.n_r * (impl_->n_half + 1);
    if (entries <= kKernelCacheLimit) {
      impl_->khat.resize(entries);
      std::vector<cd> buf(grid.n_theta);
      for (int il = 0; il < sgrid.n_lambda; ++il) {
        for (int ir = 0; ir < grid.n_r; ++ir) {
          const double rho = std::tanh(grid.radii[ir] / 2.0);
          kernel_samples(sgrid.lambda[il], rho, grid.n_theta, buf.data());
          run_plan(impl_->plan_fwd, buf.data(), buf.data());
          for (int m = 0; m <= impl_->n_half; ++m)
            impl_->khat[impl_->khat_index(il, ir, m, grid.n_r)] = buf[m];
        }
      }
      impl_->cached = true;
    }
  }
}

HftOperator::~HftOperator() = default;

SpectralField HftOperator::forward(const SpatialField& f) const {
  if (!impl_->fft_path) return forward_direct(f);
  const auto& g = *grid_;
  const auto& sg = *sgrid_;
  const int n = g.n_theta, nh = impl_->n_half;
  if (static_cast<int>(f.size()) != g.size())
    throw std::invalid_argument("field size does not match grid");

  // Mode coefficients of the rows of f; all-zero rows are skipped later,
  // which makes transforms of localized fields cheap.
  std::vector<cd> rows(static_cast<std::size_t>(g.n_r) * n);
  std::vector<char> live(g.n_r, 0);
  for (int ir = 0; ir < g.n_r; ++ir) {
    const cd* src = f.data() + static_cast<std::size_t>(ir) * n;
    bool any = false;
    for (int q = 0; q < n; ++q)
      if (src[q] != cd(0.0, 0.0)) { any = true; break; }
    live[ir] = any;
    if (any)
      run_plan(impl_->plan_fwd, const_cast<cd*>(src),
               rows.data() + static_cast<std::size_t>(ir) * n);
  }

  SpectralField out(sg.size());
  std::vector<cd> acc(n), kbuf(n);
  const double dtheta = 2.0 * kPi / n;
  for (int il = 0; il < sg.n_lambda; ++il) {
    std::fill(acc.begin(), acc.end(), cd(0.0, 0.0));
    for (int ir = 0; ir < g.n_r; ++ir) {
      if (!live[ir]) continue;
      const cd* frow = rows.data() + static_cast<std::size_t>(ir) * n;
      const double wr = g.radial_w[ir];
      const cd* kh;
      if (impl_->cached) {
        kh = impl_->khat.data() + impl_->khat_index(il, ir, 0, g.n_r);
      } else {
        const double rho = std::tanh(g.radii[ir] / 2.0);
        kernel_samples(sg.lambda[il], rho, n, kbuf.data());
        run_plan(impl_->plan_fwd, kbuf.data(), kbuf.data());
        kh = kbuf.data();
      }
      // khat is even in m, so khat[(n-m)%n] = khat[m]; with the cached
      // half-spectrum index via min(m, n-m).
      for (int m = 0; m <= nh; ++m) {
        const cd k = kh[m];
        acc[m] += wr * frow[m] * k;
        if (m != 0 && m != nh) acc[n - m] += wr * frow[n - m] * k;
      }
    }
    cd* dst = out.data() + static_cast<std::size_t>(il) * n;
    run_plan(impl_->plan_bwd, acc.data(), dst);
    const double scale = dtheta / n;
    for (int q = 0; q < n; ++q) dst[q] *= scale;
  }
  return out;
}

SpatialField HftOperator::inverse(const SpectralField& f) const {
  if (!impl_->fft_path) return inverse_direct(f);
  const auto& g = *grid_;
  const auto& sg = *sgrid_;
  const int n = g.n_theta, nh = impl_->n_half;
  if (static_cast<int>(f.size()) != sg.size())
    throw std::invalid_argument("field size does not match spectral grid");

  std::vector<cd> acc(static_cast<std::size_t>(g.n_r) * n, cd(0.0, 0.0));
  std::vector<cd> frow(n), kbuf(n);
  for (int il = 0; il < sg.n_lambda; ++il) {
    const cd* src = f.data() + static_cast<std::size_t>(il) * n;
    bool any = false;
    for (int q = 0; q < n; ++q)
      if (src[q] != cd(0.0, 0.0)) { any = true; break; }
    if (!any) continue;
    run_plan(impl_->plan_fwd, const_cast<cd*>(src), frow.data());
    const double c = sg.node_weight(il);
    for (int ir = 0; ir < g.n_r; ++ir) {
      const cd* kh;
      if (impl_->cached) {
        kh = impl_->khat.data() + impl_->khat_index(il, ir, 0, g.n_r);
      } else {
        const double rho = std::tanh(g.radii[ir] / 2.0);
        kernel_samples(sg.lambda[il], rho, n, kbuf.data());
        run_plan(impl_->plan_fwd, kbuf.data(), kbuf.data());
        kh = kbuf.data();
      }
      cd* dst = acc.data() + static_cast<std::size_t>(ir) * n;
      for (int m = 0; m <= nh; ++m) {
        const cd kc = std::conj(kh[m]);
        dst[m] += c * frow[m] * kc;
        if (m != 0 && m != nh) dst[n - m] += c * frow[n - m] * kc;
      }
    }
  }

  SpatialField out(g.size());
  for (int ir = 0; ir < g.n_r; ++ir) {
    cd* row = out.data() + static_cast<std::size_t>(ir) * n;
    run_plan(impl_->plan_bwd, acc.data() + static_cast<std::size_t>(ir) * n, row);
    const double scale = 1.0 / n;
    for (int q = 0; q < n; ++q) row[q] *= scale;
  }
  return out;
}

SpectralField HftOperator::forward_direct(const SpatialField& f) const {
  const auto& g = *grid_;
  const auto& sg = *sgrid_;
  SpectralField out(sg.size(), cd(0.0, 0.0));
  for (int il = 0; il < sg.n_lambda; ++il) {
    const double lam = sg.lambda[il];
    for (int ib = 0; ib < sg.n_b; ++ib) {
      const double b = sg.b_angle(ib);
      cd acc(0.0, 0.0);
      for (int ix = 0; ix < g.size(); ++ix) {
        if (f[ix] == cd(0.0, 0.0)) continue;
        const double a = horocycle_bracket(g.nodes[ix], b);
        acc += f[ix] * g.weights[ix] * std::polar(std::exp(kRho * a), -lam * a);
      }
      out[sg.index(il, ib)] = acc;
    }
  }
  return out;
}

SpatialField HftOperator::inverse_direct(const SpectralField& f) const {
  const auto& g = *grid_;
  const auto& sg = *sgrid_;
  SpatialField out(g.size(), cd(0.0, 0.0));
  for (int il = 0; il < sg.n_lambda; ++il) {
    const double lam = sg.lambda[il];
    const double c = sg.node_weight(il);
    for (int ib = 0; ib < sg.n_b; ++ib) {
      const cd v = f[sg.index(il, ib)];
      if (v == cd(0.0, 0.0)) continue;
      const double b = sg.b_angle(ib);
      for (int ix = 0; ix < g.size(); ++ix) {
        const double a = horocycle_bracket(g.nodes[ix], b);
        out[ix] += c * v * std::polar(std::exp(kRho * a), lam * a);
      }
    }
  }
  return out;
}

CircleEval HftOperator::evaluate_circle(const SpectralField& f, double r,
                                        int n_values) const {
  const auto& sg = *sgrid_;
  const int nb = sg.n_b;
  // Boundary upsampling: the Poisson peak at radius r has angular width
  // ~e^{-r}; keep ~48 sample points across it.
  int n_eval = nb;
  const double want = 48.0 * std::exp(r);
  while (n_eval < want && n_eval < (1 << 20)) n_eval *= 2;

  auto it = impl_->eval_plans.find(n_eval);
  if (it == impl_->eval_plans.end()) {
    it = impl_->eval_plans
             .emplace(n_eval, std::make_pair(make_plan(n_eval, FFTW_FORWARD),
                                             make_plan(n_eval, FFTW_BACKWARD)))
             .first;
  }
  fftw_plan plan_f = it->second.first;
  fftw_plan plan_b = it->second.second;

  const double rho = std::tanh(r / 2.0);
  std::vector<cd> kev(n_eval), acc(n_eval, cd(0.0, 0.0)), frow(nb);
  for (int il = 0; il < sg.n_lambda; ++il) {
    const cd* src = f.data() + static_cast<std::size_t>(il) * nb;
    bool any = false;
    for (int q = 0; q < nb; ++q)
      if (src[q] != cd(0.0, 0.0)) { any = true; break; }
    if (!any) continue;
    std::copy(src, src + nb, frow.begin());
    run_plan(impl_->plan_fwd, frow.data(), frow.data());

    kernel_samples(sg.lambda[il], rho, n_eval, kev.data());
    run_plan(plan_f, kev.data(), kev.data());
    const double c = sg.node_weight(il);
    for (int m = 0; m < n_eval; ++m) {
      const cd kc = std::conj(kev[(n_eval - m) % n_eval]);
      acc[m] += c * frow[m % nb] * kc;
    }
  }
  run_plan(plan_b, acc.data(), acc.data());

  CircleEval ev;
  ev.values.resize(n_values);
  const double scale = 1.0 / n_eval;
  for (int p = 0; p < n_eval; ++p) {
    acc[p] *= scale;
    ev.sup_abs = std::max(ev.sup_abs, std::abs(acc[p]));
  }
  const int stride = std::max(1, n_eval / n_values);
  for (int i = 0; i < n_values; ++i) ev.values[i] = acc[(i * stride) % n_eval];
  return ev;
}

double HftOperator::spatial_norm(const SpatialField& f) const {
  double acc = 0.0;
  for (int ix = 0; ix < grid_->size(); ++ix)
    acc += grid_->weights[ix] * std::norm(f[ix]);
  return std::sqrt(acc);
}

cd HftOperator::spatial_inner(const SpatialField& f, const SpatialField& g) const {
  cd acc(0.0, 0.0);
  for (int ix = 0; ix < grid_->size(); ++ix)
    acc += grid_->weights[ix] * f[ix] * std::conj(g[ix]);
  return acc;
}

double HftOperator::plancherel_norm(const SpectralField& f) const {
  return pwf::plancherel_norm(f, *sgrid_);
}

SpatialField radial_exp_field(const SpatialGrid& grid, double p) {
  SpatialField f(grid.size());
  for (int ir = 0; ir < grid.n_r; ++ir) {
    const cd v = std::exp(-p * std::cosh(grid.radii[ir]));
    for (int iq = 0; iq < grid.n_theta; ++iq) f[grid.index(ir, iq)] = v;
  }
  return f;
}

double calibrate_plancherel(const SpatialGrid& grid, SpectralGrid& sgrid) {
  HftOperator op(grid, sgrid);
  double num = 0.0, den = 0.0;
  for (double p : {1.0, 2.0, 4.0}) {
    const SpatialField f = radial_exp_field(grid, p);
    const SpectralField fh = op.forward(f);
    // Spectral energy with the density's lambda-profile but unit constant.
    double s = 0.0;
    for (int il = 0; il < sgrid.n_lambda; ++il) {
      const double w = sgrid.lambda[il] * std::tanh(kPi * sgrid.lambda[il]) *
                       sgrid.lambda_w[il] / sgrid.n_b;
      for (int ib = 0; ib < sgrid.n_b; ++ib)
        s += w * std::norm(fh[sgrid.index(il, ib)]);
    }
    const double n2 = std::pow(op.spatial_norm(f), 2);
    num += s * n2;
    den += s * s;
  }
  sgrid.plancherel_const = num / den;
  return sgrid.plancherel_const;
}

std::string spectral_csv(const SpectralField& f, const SpectralGrid& sg) {
  if (static_cast<int>(f.size()) != sg.size())
    throw std::invalid_argument("field does not match the spectral grid");
  std::ostringstream out;
  out.precision(12);
  out << "lambda,b,re,im\n";
  for (int il = 0; il < sg.n_lambda; ++il)
    for (int ib = 0; ib < sg.n_b; ++ib) {
      const cd v = f[sg.index(il, ib)];
      out << sg.lambda[il] << ',' << sg.b_angle(ib) << ',' << v.real() << ','
          << v.imag() << '\n';
    }
  return out.str();
}

}  // namespace pwf
