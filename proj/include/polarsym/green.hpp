#pragma once

#include <cstdint>
#include <utility>

#include "polarsym/common.hpp"
#include "polarsym/geometry.hpp"

namespace polarsym {

// Dirichlet Green's function of -Laplace on the ball B_R (dimension N >= 3):
//
//   G(x,y) = 1/|y-x|^{N-2} - 1/((|x|/R)|y-dual(x)|)^{N-2}
//
// evaluated through the symmetric form
//   (|x||y-dual(x)|)^2 = |x|^2|y|^2 - 2R^2 x.y + R^4,
// which is exact at x = 0 (limit 1/|y|^{N-2} - 1/R^{N-2}) and makes the
// x<->y symmetry explicit. Coincident and nearly coincident nodes use the
// equal-volume cell average of the singular term, so the kernel stays usable
// as a quadrature weight.
class GreenKernel {
 public:
  GreenKernel(double R, int dim, double diag_radius);

  double radius() const { return R_; }
  int dim() const { return dim_; }
  double diag_radius() const { return diag_radius_; }

  // Value for x, y in cl(B_R); throws OutsideBall otherwise. Pairs closer
  // than diag_radius/2 (including x == y) take the regularized singular term.
  double operator()(const Vec& x, const Vec& y) const;
  double eval3(const Vec3& x, const Vec3& y) const;

  // Cell average of r^{2-N} over the ball of radius diag_radius
  // (3/(2 diag_radius) in dimension 3).
  double regularized_singular_term() const;

  // |G(x,y) - G(sx,sy)| and |G(x,sy) - G(sx,y)| for H through the origin.
  std::pair<double, double> reflection_equalities(const Vec3& x, const Vec3& y,
                                                  const HalfSpace& h) const;

  // G(x,y) - G(sx,y); requires x, y in H (PointsNotInH otherwise).
  double monotonicity_margin(const Vec3& x, const Vec3& y, const HalfSpace& h) const;

  // The quantity at2*b2 - a2*bt2 from the distance comparison underlying the
  // monotonicity proof, both directly and through its closed-form expansion.
  double distance_comparison_direct(const Vec3& x, const Vec3& y, const HalfSpace& h) const;
  double distance_comparison_closed(const Vec3& x, const Vec3& y, const HalfSpace& h) const;

 private:
  double value(double r2, double s) const;
  double R_;
  int dim_;
  double diag_radius_;
};

struct GreenAuditReport {
  std::size_t draws = 0;
  double max_equality_residual = 0.0;   // relative, both identities
  double min_monotonicity_margin = 0.0; // relative, >= -1e-12 expected
  double max_distance_identity_residual = 0.0;  // direct vs closed form, relative
  double min_distance_direct = 0.0;     // scaled direct quantity, >= -1e-12 expected
  double min_ratio_margin = 0.0;        // second-step ratio bound margin
  double min_image_growth = 0.0;        // bt - b >= 0 margin, relative
};

// Randomized sweep of the kernel identities and inequalities on B_R, N = 3.
GreenAuditReport audit_green(double R, std::size_t draws, std::uint64_t seed);

}  // namespace polarsym
