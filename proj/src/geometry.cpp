#include "pwframes/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pwf {

namespace {
constexpr double kPi = std::numbers::pi;

void require_in_disk(Point p) {
  if (p.u * p.u + p.v * p.v >= 1.0)
    throw std::domain_error("point on or outside the unit circle");
}
}  // namespace

double hyp_distance(Point p, Point q) {
  require_in_disk(p);
  require_in_disk(q);
  const double du = p.u - q.u, dv = p.v - q.v;
  const double num = du * du + dv * dv;
  const double dp = 1.0 - (p.u * p.u + p.v * p.v);
  const double dq = 1.0 - (q.u * q.u + q.v * q.v);
  return std::acosh(1.0 + 2.0 * num / (dp * dq));
}

double hyp_radius(Point p) {
  require_in_disk(p);
  return 2.0 * std::atanh(std::hypot(p.u, p.v));
}

double ball_volume(double R) {
  if (R < 0.0) throw std::domain_error("negative ball radius");
  // 2*pi*(cosh R - 1), with expm1-style care near 0.
  return 4.0 * kPi * std::sinh(R / 2) * std::sinh(R / 2);
}

Point apply_isometry(const Isometry& t, Point p) {
  require_in_disk(p);
  const cd z = to_complex(p);
  const cd img = std::polar(1.0, t.phi) * (z + t.w) / (1.0 + std::conj(t.w) * z);
  return to_point(img);
}

Isometry compose(const Isometry& a, const Isometry& b) {
  // a(b(z)) is again of the canonical form e^{i psi}(z + w)/(1 + conj(w) z).
  const cd e2 = std::polar(1.0, b.phi);
  const cd alpha = e2 + a.w * std::conj(b.w);
  const cd beta = e2 * b.w + a.w;
  Isometry r;
  r.w = beta / alpha;
  r.phi = a.phi - b.phi + 2.0 * std::arg(alpha);
  return r;
}

double SpatialGrid::node_theta(int idx) const {
  return 2.0 * kPi * (idx % n_theta) / n_theta;
}

double SpatialGrid::total_measure() const {
  double s = 0.0;
  for (double w : radial_w) s += w;
  return s * 2.0 * kPi;
}

SpatialGrid build_spatial_grid(double r_max, int n_r, int n_theta) {
  if (r_max <= 0.0) throw std::invalid_argument("r_max must be positive");
  if (n_r < 8 || n_theta < 8) throw std::invalid_argument("need n_r >= 8 and n_theta >= 8");

  SpatialGrid g;
  g.r_max = r_max;
  g.n_r = n_r;
  g.n_theta = n_theta;
  gauss_legendre(n_r, 0.0, r_max, g.radii, g.radial_w);
  for (int i = 0; i < n_r; ++i) g.radial_w[i] *= std::sinh(g.radii[i]);

  g.nodes.resize(g.size());
  g.weights.resize(g.size());
  const double dtheta = 2.0 * kPi / n_theta;
  for (int ir = 0; ir < n_r; ++ir) {
    const double rho = std::tanh(g.radii[ir] / 2.0);
    for (int iq = 0; iq < n_theta; ++iq) {
      const double th = dtheta * iq;
      g.nodes[g.index(ir, iq)] = {rho * std::cos(th), rho * std::sin(th)};
      g.weights[g.index(ir, iq)] = g.radial_w[ir] * dtheta;
    }
  }
  return g;
}

void gauss_legendre(int n, double a, double b,
                    std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  // Newton iteration on Legendre polynomials, standard symmetric rule.
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    x[i] = xm - xl * z;
    x[n - 1 - i] = xm + xl * z;
    w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

}  // namespace pwf
