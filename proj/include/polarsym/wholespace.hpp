#pragma once

#include <functional>
#include <optional>

#include "polarsym/common.hpp"
#include "polarsym/geometry.hpp"
#include "polarsym/report.hpp"
#include "polarsym/spherefn.hpp"

namespace polarsym {

// Positive function on R^3 analyzed inside the ball B_{R_max}. The evaluator
// is a callable contract (closed-form fixtures, or a sampled grid wrapped in
// trilinear interpolation). decay_hint asserts liminf_{|x|->inf} u = 0; it is
// an input flag, not something samples can verify.
class FieldFn {
 public:
  FieldFn(std::function<double(const Vec3&)> eval, double r_max, bool decay_hint)
      : eval_(std::move(eval)), r_max_(r_max), decay_hint_(decay_hint) {}

  double operator()(const Vec3& x) const { return eval_(x); }
  double r_max() const { return r_max_; }
  bool decay_hint() const { return decay_hint_; }

 private:
  std::function<double(const Vec3&)> eval_;
  double r_max_;
  bool decay_hint_;
};

// General half-spaces (arbitrary offset |c| <= R_max), n_samples points per
// half-space drawn in H cap B_{R_max}.
SeparabilityReport is_separable_field(const FieldFn& u, int n_halfspaces, int n_samples,
                                      double eps, std::uint64_t seed);

// Samples u on the sphere of given radius around x and extracts the symmetry
// axis of the restriction; RadialProbe when that sphere is constant.
AxisLine axis_through_point(const FieldFn& u, const Vec3& x, double probe_radius, double eps);

// axis_through_point with the probe-radius ladder 0.5, 1, 2, 4.
AxisLine axis_through_point_auto(const FieldFn& u, const Vec3& x, double eps);

enum class EvenClassification { Nonincreasing, PeriodicType, Indeterminate };

struct EvenMonotoneReport {
  bool eq8_holds = true;                  // no reflection point with both strict signs
  std::optional<double> witness_alpha;    // a violating reflection point
  bool k_nonzero = false;                 // exact reflection equality away from 0
  bool nonincreasing = false;             // on [0, X], within eps
  EvenClassification classification = EvenClassification::Indeterminate;
  double eps_abs = 0.0;
};

// One-sided comparison analysis of an even sampled function on a uniform
// grid over [-X, X] (odd sample count). Reflection points run over nodes and
// midpoints. decay_hint && eq8 && not monotone throws MonotonicityError.
EvenMonotoneReport even_monotone_check(const std::vector<double>& values, double x_extent,
                                       bool decay_hint, double eps);

struct RadialProfileResult {
  Vec3 center;
  ProfileSamples profile;
};

// Center via global maximizer of a Cartesian scan (3-point quadratic
// refinement per coordinate), then per-radius constancy and profile
// monotonicity around it. Requires decay_hint.
RadialProfileResult radial_center_and_profile(const FieldFn& u, double eps, int scan_n = 33);

struct FieldClassification {
  SymmetryKind kind = SymmetryKind::Radial;
  Vec3 center = Vec3::Zero();
  Vec3 direction = Vec3::Zero();
  bool inconsistent = false;  // separable + decay but no radial structure found
  std::string note;
};

FieldClassification classify_field(const FieldFn& u, double eps, std::uint64_t seed);

// Closed-form fixtures selectable by name: radial_bump, tanh_slab, two_bumps,
// lorentz_center, exp_decay, gaussian.
FieldFn named_field_fixture(const std::string& name);

}  // namespace polarsym
