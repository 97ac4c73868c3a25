#pragma once

#include "polarsym/common.hpp"
#include "polarsym/geometry.hpp"
#include "polarsym/report.hpp"

namespace polarsym {

// Positive function sampled at the n equispaced angles theta_j = 2 pi j / n.
// n is even so that every node-axis and midpoint-axis reflection maps the
// node set onto itself.
class CircleFn {
 public:
  explicit CircleFn(std::vector<double> values);

  int n() const { return static_cast<int>(values_.size()); }
  double theta(int j) const { return 2.0 * kPi * j / n(); }
  double value(int j) const { return values_[j]; }
  const std::vector<double>& values() const { return values_; }
  double max_value() const { return max_; }
  double min_value() const { return min_; }

  // Periodic linear interpolation in theta.
  double interp(double theta) const;

 private:
  std::vector<double> values_;
  double max_, min_;
};

// Axially symmetric test function: half_profile holds samples of a
// nonincreasing positive profile on [0, pi] (linear interpolation), mirrored
// around the axis angle alpha0.
CircleFn make_axial_circle(int n, double alpha0, const std::vector<double>& half_profile);

// Extremal structure of a separable nonconstant function: the near-max and
// near-min node sets are single arcs, centered at alpha0 and alpha0 + pi.
struct ExtremalArcs {
  double alpha0;  // max-arc center, in [0, 2 pi)
  double theta1;  // max-arc half-angle
  double theta2;  // min-arc half-angle
};

// The 2 n grid-preserving reflection lines through the origin, listed as
// half-spaces at angles alpha = pi k / n, k = 0 .. 2n-1 (each geometric line
// appears with both orientations).
std::vector<HalfSpace> circle_reflections(int n_nodes);

// Tests every grid-preserving reflection. Differences within eps * max(v)
// count as equal and satisfy both branches. On failure the witness is the
// most decisive violating line (largest two-sided margin; ties to the
// smallest angle).
SeparabilityReport is_separable_circle(const CircleFn& v, double eps);

// Interpolation mode: checks n_alpha arbitrary reflection angles using
// periodic linear interpolation; eps must absorb the interpolation error.
SeparabilityReport is_separable_circle_interp(const CircleFn& v, int n_alpha, double eps);

ExtremalArcs extremal_arcs(const CircleFn& v, double eps);

AxisReport circle_axis_and_profile(const CircleFn& v, double eps);

}  // namespace polarsym
