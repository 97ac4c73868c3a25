#pragma once

#include <functional>

#include "polarsym/common.hpp"
#include "polarsym/report.hpp"
#include "polarsym/spherefn.hpp"

namespace polarsym {

// Positive function on the ball B_R stored as m concentric shells at radii
// r_j = j R / m, all sharing one angular grid, plus the center value. Every
// origin-through reflection maps each shell onto itself, so separability
// tests never mix radii.
class BallFn {
 public:
  BallFn(double R, std::vector<SphereFn> shells, double center_value);
  static BallFn from_function(double R, int m, int n_lat, int n_lon,
                              const std::function<double(const Vec3&)>& f);

  double radius() const { return R_; }
  int shell_count() const { return static_cast<int>(shells_.size()); }
  double shell_radius(int s) const { return R_ * (s + 1) / shells_.size(); }
  const SphereFn& shell(int s) const { return shells_[s]; }
  double center_value() const { return center_; }
  double max_value() const { return max_; }
  double min_value() const { return min_; }

 private:
  double R_;
  std::vector<SphereFn> shells_;
  double center_;
  double max_, min_;
};

// One global branch per half-space: the sign pattern of u(sx) - u(x) must be
// consistent across all shells simultaneously.
SeparabilityReport is_separable_ball(const BallFn& u, int n_halfspaces, double eps,
                                     std::uint64_t seed);

// Per-shell cap analysis; constant shells are unconstrained, the remaining
// shell axes must be pairwise collinear. All shells constant means Radial.
AxisReport ball_axis(const BallFn& u, double eps);

// Product construction g(x_N) h(|x|) from sampled profiles: g nonincreasing
// on [-R, R], h on [0, R], both linearly interpolated.
BallFn make_separable_ball(const std::vector<double>& g_samples,
                           const std::vector<double>& h_samples, double R, int m, int n_lat,
                           int n_lon);

}  // namespace polarsym
