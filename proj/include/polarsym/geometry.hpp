#pragma once

#include "polarsym/common.hpp"

namespace polarsym {

// Open half-space {x : n.x > c} with unit normal n; carries the reflection
// across its boundary hyperplane.
class HalfSpace {
 public:
  HalfSpace(Vec normal, double offset);
  HalfSpace(const Vec3& normal, double offset) : HalfSpace(Vec(normal), offset) {}

  const Vec& normal() const { return normal_; }
  double offset() const { return offset_; }
  int dim() const { return static_cast<int>(normal_.size()); }
  bool through_origin() const { return offset_ == 0.0; }

  double signed_distance(const Vec& x) const { return normal_.dot(x) - offset_; }
  bool contains(const Vec& x) const { return signed_distance(x) > 0.0; }

  Vec reflect(const Vec& x) const { return x - 2.0 * signed_distance(x) * normal_; }

  Vec3 reflect3(const Vec3& x) const {
    const double d = normal_[0] * x[0] + normal_[1] * x[1] + normal_[2] * x[2] - offset_;
    return x - 2.0 * d * Vec3(normal_[0], normal_[1], normal_[2]);
  }

 private:
  Vec normal_;
  double offset_;
};

// Spherical cap {x in S^{N-1} : x.axis >= height}.
struct Cap {
  Vec3 axis;
  double height;
};

struct AxisLine {
  Vec base;
  Vec direction;  // unit
};

// Inversion across the sphere of radius R: R^2 x / |x|^2. |x||dual| = R^2.
Vec dual_point(const Vec& x, double R);
Vec3 dual_point(const Vec3& x, double R);

enum class HullKind { Affine, Convex };

// Membership of q in the affine or convex hull of the point set. The convex
// case is a small feasibility problem (least squares over the probability
// simplex, tolerance 1e-9 on the constraints).
bool hull_membership(const std::vector<Vec>& points, const Vec& q, HullKind kind);

}  // namespace polarsym
