#pragma once

#include <optional>
#include <string>

#include "polarsym/common.hpp"
#include "polarsym/geometry.hpp"

namespace polarsym {

// A concrete violation of the one-sided comparison: two locations where
// u(sx) - u(x) takes strictly opposite signs for the same half-space.
struct SeparabilityWitness {
  Vec normal;
  double offset = 0.0;
  Vec point_pos;  // where the reflected difference is strictly positive
  Vec point_neg;
  double diff_pos = 0.0;
  double diff_neg = 0.0;
  std::string detail;
};

struct SeparabilityReport {
  bool separable = true;
  std::optional<SeparabilityWitness> witness;
  std::size_t halfspaces_tested = 0;
  double eps_abs = 0.0;

  explicit operator bool() const { return separable; }
};

enum class SymmetryKind { Constant, Radial, Axial };

const char* symmetry_kind_name(SymmetryKind k);

struct ProfileSamples {
  std::vector<double> param;  // angle from the axis, or radius
  std::vector<double> value;
};

// Classification of a separable function plus the residuals backing it.
struct AxisReport {
  SymmetryKind kind = SymmetryKind::Constant;

  // Axial verdicts
  Vec axis;                 // unit direction toward the max side
  double alpha0 = 0.0;      // circle only: max-arc center angle
  double cap_height_max = 1.0;   // h1
  double cap_height_min = -1.0;  // h2
  ProfileSamples profile;

  // Radial verdicts
  Vec center;

  // Ball verdicts: meridian profile per shell, innermost first
  std::vector<ProfileSamples> shell_profiles;

  // Residuals (relative to max |u| unless noted)
  double mirror_residual = 0.0;
  double monotonicity_residual = 0.0;
  double lat_spread = 0.0;
  double antipodality_deg = 0.0;   // angle(max axis, -min axis)
  double collinearity_deg = 0.0;   // ball: max pairwise shell-axis angle
  bool constant_by_antipodal = false;
};

}  // namespace polarsym
