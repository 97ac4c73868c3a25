#pragma once

#include <functional>

#include "polarsym/circlefn.hpp"
#include "polarsym/common.hpp"
#include "polarsym/geometry.hpp"
#include "polarsym/report.hpp"

namespace polarsym {

// Positive function on the unit sphere sampled on a latitude-longitude grid:
// colatitudes theta_i = pi i/(n_lat-1) with single nodes at both poles,
// longitudes lambda_j = 2 pi j/n_lon (n_lon even). The grid is closed under
// every meridian-plane reflection and the equatorial reflection, and each
// node carries its cell solid angle as quadrature weight.
class SphereFn {
 public:
  SphereFn(int n_lat, int n_lon, std::vector<double> values);
  static SphereFn from_function(int n_lat, int n_lon,
                                const std::function<double(const Vec3&)>& f);

  int n_lat() const { return n_lat_; }
  int n_lon() const { return n_lon_; }
  std::size_t node_count() const { return values_.size(); }

  double colat(int i) const { return kPi * i / (n_lat_ - 1); }
  double lon(int j) const { return 2.0 * kPi * j / n_lon_; }

  bool is_pole_row(int i) const { return i == 0 || i == n_lat_ - 1; }
  std::size_t index(int i, int j) const;
  double value(int i, int j) const { return values_[index(i, j)]; }
  const std::vector<double>& values() const { return values_; }
  Vec3 node(int i, int j) const;
  double row_weight(int i) const;  // solid angle per node of row i

  double max_value() const { return max_; }
  double min_value() const { return min_; }

  // Bilinear interpolation in (colat, lon); rows adjacent to a pole blend
  // against the single pole value.
  double interp_angles(double colat, double lon) const;
  double interp_dir(const Vec3& unit) const;

 private:
  int n_lat_, n_lon_;
  std::vector<double> values_;
  double max_, min_;
};

// Affine 2-plane in R^3; the spanning pair is orthonormalized on construction.
struct Plane2 {
  Plane2(const Vec3& base, const Vec3& span1, const Vec3& span2);
  Vec3 base, u1, u2;
};

// Restriction of u to the circle V cap S^2, sampled at n_circle uniform
// angles by bilinear interpolation. The angular origin of the frame is the
// projection of u's global max direction onto V when that projection is
// nonzero. n_circle == 0 picks n_lon.
CircleFn restrict_to_circle(const SphereFn& u, const Plane2& v, int n_circle = 0);

// Exact meridian/equator reflections plus n_halfspaces seeded random
// origin-through planes (reflected values by interpolation).
SeparabilityReport is_separable_sphere(const SphereFn& u, int n_halfspaces, double eps,
                                       std::uint64_t seed);

// Cap structure of a separable function: axis toward the max cap, cap
// heights h1 > h2, per-ring constancy and the meridian profile.
AxisReport sphere_caps_and_axis(const SphereFn& u, double eps);

// One-sided comparison direction fixed by the max-cap axis location
// relative to H (axis in H, outside cl(H), or on the boundary).
bool corollary_direction_check(const SphereFn& u, const Vec3& axis_max, const HalfSpace& h,
                               double eps);

// Relative bilinear interpolation error estimate from discrete second
// differences; used to widen tolerances for interpolated comparisons.
double interp_error_bound(const SphereFn& u);

// Rotation taking the unit vector a to the north pole e3.
Mat3 rotation_to_pole(const Vec3& a);

namespace detail {

// Running extrema of the reflected differences u(sx) - u(x) over one side of
// a reflection plane; shared by the sphere and ball separability scans.
struct ReflectionScan {
  double max_pos = 0.0, max_neg = 0.0;
  Vec3 p_pos = Vec3::Zero(), p_neg = Vec3::Zero();
  void feed(double d, const Vec3& x) {
    if (d > max_pos) {
      max_pos = d;
      p_pos = x;
    }
    if (-d > max_neg) {
      max_neg = -d;
      p_neg = x;
    }
  }
  bool violates(double eps_abs) const { return max_pos > eps_abs && max_neg > eps_abs; }
};

// Grid-exact meridian reflection at alpha = pi m / n_lon.
void scan_meridian(const SphereFn& u, int m, ReflectionScan& s);
Vec3 meridian_normal(const SphereFn& u, int m);
// Grid-exact equatorial reflection.
void scan_equator(const SphereFn& u, ReflectionScan& s);
// Arbitrary origin-through plane; reflected values by interpolation.
void scan_halfspace_interp(const SphereFn& u, const HalfSpace& h, ReflectionScan& s);

}  // namespace detail

}  // namespace polarsym
