#pragma once

#include <complex>
#include <vector>

// Poincare disk model of the hyperbolic plane (curvature -1):
// metric 4|dz|^2/(1-|z|^2)^2, measure sinh(r) dr dtheta in geodesic
// polar coordinates about the origin.
namespace pwf {

using cd = std::complex<double>;

struct Point {
  double u = 0.0;
  double v = 0.0;
};

inline cd to_complex(Point p) { return {p.u, p.v}; }
inline Point to_point(cd z) { return {z.real(), z.imag()}; }

// Geodesic distance between two points of the open disk.
// Throws std::domain_error if an argument lies on or outside the unit circle.
double hyp_distance(Point p, Point q);

// Distance from the origin: 2 artanh|z|.
double hyp_radius(Point p);

// Volume of a geodesic ball of radius R: 2*pi*(cosh R - 1).
double ball_volume(double R);

// Disk automorphism z -> e^{i phi} (z + w) / (1 + conj(w) z).
struct Isometry {
  cd w;         // image of the origin before rotation, |w| < 1
  double phi = 0.0;
};

Point apply_isometry(const Isometry& t, Point p);
Isometry compose(const Isometry& a, const Isometry& b);  // a after b

// Tensor quadrature grid in geodesic polar coordinates: Gauss-Legendre
// radial nodes on [0, r_max] weighted by sinh(r), uniform angles.
// Node (ir, iq) has linear index ir * n_theta + iq.
struct SpatialGrid {
  double r_max = 0.0;
  int n_r = 0;
  int n_theta = 0;
  std::vector<double> radii;      // n_r, increasing
  std::vector<double> radial_w;   // Gauss weight * sinh(r), n_r
  std::vector<Point> nodes;       // n_r * n_theta
  std::vector<double> weights;    // radial_w * 2*pi/n_theta

  int size() const { return n_r * n_theta; }
  int index(int ir, int iq) const { return ir * n_theta + iq; }
  double node_radius(int idx) const { return radii[idx / n_theta]; }
  double node_theta(int idx) const;
  double total_measure() const;
};

SpatialGrid build_spatial_grid(double r_max, int n_r, int n_theta);

// Gauss-Legendre rule on [a, b].
void gauss_legendre(int n, double a, double b,
                    std::vector<double>& x, std::vector<double>& w);

}  // namespace pwf
