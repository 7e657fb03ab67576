#pragma once

#include <utility>
#include <vector>

// Littlewood-Paley filter bank: a smooth cutoff g with g = 1 on [0,1],
// g = 0 beyond 2, the difference profile Q(s) = g(s) - g(2s), and the
// dyadic square-root filters F_0 = sqrt(g), F_j(l) = sqrt(Q(2^-j l)),
// which satisfy sum_j F_j(l)^2 = 1.
namespace pwf {

struct Band {
  double lo = 0.0;
  double hi = 0.0;
};

// [2^{j-1}, 2^{j+1}] for j >= 1 and [0, 2] for j = 0.
Band band_of(int j);

class FilterBank {
 public:
  explicit FilterBank(int j_max);

  int j_max() const { return j_max_; }

  static double g(double s);
  static double q(double s);  // g(s) - g(2s)
  double f(int j, double lambda) const;

 private:
  int j_max_;
};

FilterBank make_filter_bank(int j_max);

}  // namespace pwf
