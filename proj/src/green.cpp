#include "polarsym/green.hpp"

#include <algorithm>
#include <cmath>

#include "polarsym/kernels.hpp"

namespace polarsym {

namespace {

double norm_check(const Vec& x, double R) {
  const double n = x.norm();
  if (n > R * (1.0 + 1e-12)) fail(Errc::OutsideBall, "point outside the ball");
  return n;
}

// |x|^2 |y - dual(x)|^2 scaled so it is finite at x = 0.
double image_metric(double x2, double y2, double xy, double R) {
  const double R2 = R * R;
  return x2 * y2 - 2.0 * R2 * xy + R2 * R2;
}

}  // namespace

GreenKernel::GreenKernel(double R, int dim, double diag_radius)
    : R_(R), dim_(dim), diag_radius_(diag_radius) {
  if (R <= 0.0) fail(Errc::Precondition, "ball radius must be positive");
  if (dim < 3) fail(Errc::Precondition, "kernel requires dimension >= 3");
  if (diag_radius <= 0.0) fail(Errc::Precondition, "diag_radius must be positive");
}

double GreenKernel::regularized_singular_term() const {
  if (dim_ >= 5) fail(Errc::Precondition, "cell-average regularization needs dim < 5");
  // mean of r^{2-N} over a ball of radius a: 3 a^{2-N} / (5-N)
  return 3.0 * std::pow(diag_radius_, 2.0 - dim_) / (5.0 - dim_);
}

double GreenKernel::value(double r2, double s) const {
  const double half = 0.5 * (dim_ - 2);
  double singular;
  if (r2 < 0.25 * diag_radius_ * diag_radius_)
    singular = regularized_singular_term();
  else
    singular = std::pow(r2, -half);
  return singular - std::pow(R_ * R_ / s, half);
}

double GreenKernel::operator()(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_) fail(Errc::DimensionError, "kernel argument dimension");
  norm_check(x, R_);
  norm_check(y, R_);
  const double r2 = (y - x).squaredNorm();
  const double s = image_metric(x.squaredNorm(), y.squaredNorm(), x.dot(y), R_);
  return value(r2, s);
}

double GreenKernel::eval3(const Vec3& x, const Vec3& y) const {
  if (dim_ != 3) fail(Errc::DimensionError, "eval3 requires a dimension-3 kernel");
  if (x.squaredNorm() > R_ * R_ * (1.0 + 1e-12) || y.squaredNorm() > R_ * R_ * (1.0 + 1e-12))
    fail(Errc::OutsideBall, "point outside the ball");
  const double r2 = (y - x).squaredNorm();
  if (r2 < 0.25 * diag_radius_ * diag_radius_) {
    const double s = image_metric(x.squaredNorm(), y.squaredNorm(), x.dot(y), R_);
    return regularized_singular_term() - R_ / std::sqrt(s);
  }
  // Same code path as the assembly kernels, so single evaluations round
  // identically to matrix entries.
  double out;
  const double p[3] = {x[0], x[1], x[2]};
  const double qx = y[0], qy = y[1], qz = y[2];
  kernels::green3_batch(R_, p, &qx, &qy, &qz, 1, &out);
  return out;
}

std::pair<double, double> GreenKernel::reflection_equalities(const Vec3& x, const Vec3& y,
                                                             const HalfSpace& h) const {
  if (!h.through_origin()) fail(Errc::Precondition, "reflection identities need 0 in dH");
  const Vec3 sx = h.reflect3(x);
  const Vec3 sy = h.reflect3(y);
  const double g = eval3(x, y);
  const double e1 = std::abs(g - eval3(sx, sy));
  const double e2 = std::abs(eval3(x, sy) - eval3(sx, y));
  return {e1, e2};
}

double GreenKernel::monotonicity_margin(const Vec3& x, const Vec3& y,
                                        const HalfSpace& h) const {
  if (!h.through_origin()) fail(Errc::Precondition, "monotonicity needs 0 in dH");
  Vec xg(3), yg(3);
  xg << x[0], x[1], x[2];
  yg << y[0], y[1], y[2];
  if (!h.contains(xg) || !h.contains(yg)) fail(Errc::PointsNotInH, "points must lie in H");
  return eval3(x, y) - eval3(h.reflect3(x), y);
}

double GreenKernel::distance_comparison_direct(const Vec3& x, const Vec3& y,
                                               const HalfSpace& h) const {
  const Vec3 sx = h.reflect3(x);
  const double a2 = (y - x).squaredNorm();
  const double at2 = (y - sx).squaredNorm();
  const double R2 = R_ * R_;
  const double b2 = image_metric(x.squaredNorm(), y.squaredNorm(), x.dot(y), R_) / R2;
  const double bt2 = image_metric(sx.squaredNorm(), y.squaredNorm(), sx.dot(y), R_) / R2;
  return at2 * b2 - a2 * bt2;
}

double GreenKernel::distance_comparison_closed(const Vec3& x, const Vec3& y,
                                               const HalfSpace& h) const {
  const Vec3 sx = h.reflect3(x);
  const double x2 = x.squaredNorm();
  const double y2 = y.squaredNorm();
  const double R2 = R_ * R_;
  return (2.0 * x2 / R2) * (R2 / x2 - 1.0) * (R2 - y2) * (y.dot(x) - y.dot(sx));
}

GreenAuditReport audit_green(double R, std::size_t draws, std::uint64_t seed) {
  GreenKernel kernel(R, 3, 1e-3 * R);
  GreenAuditReport rep;
  rep.draws = draws;
  rep.min_monotonicity_margin = std::numeric_limits<double>::infinity();
  rep.min_distance_direct = std::numeric_limits<double>::infinity();
  rep.min_ratio_margin = std::numeric_limits<double>::infinity();
  rep.min_image_growth = std::numeric_limits<double>::infinity();

  const std::size_t chunk = 4096;
  const std::size_t nchunks = (draws + chunk - 1) / chunk;
  std::vector<GreenAuditReport> partial(nchunks, rep);

  Rng master(seed);
  parallel_for_chunks(draws, chunk, [&](std::size_t i0, std::size_t i1) {
    const std::size_t ci = i0 / chunk;
    GreenAuditReport& p = partial[ci];
    Rng rng = master.fork(ci);
    for (std::size_t i = i0; i < i1; ++i) {
      const Vec3 n = rng.unit3();
      const HalfSpace h(Vec3(n), 0.0);
      Vec3 x = rng.in_ball3(R);
      Vec3 y = rng.in_ball3(R);
      // fold both points into H for the one-sided checks
      if (x.dot(n) < 0.0) x = h.reflect3(x);
      if (y.dot(n) < 0.0) y = h.reflect3(y);
      if ((x - y).norm() < 1e-6 * R) continue;

      const double g = kernel.eval3(x, y);
      const double scale = 1.0 + std::abs(g);
      const auto [e1, e2] = kernel.reflection_equalities(x, y, h);
      p.max_equality_residual = std::max(p.max_equality_residual, std::max(e1, e2) / scale);

      if (x.dot(n) > 0.0 && y.dot(n) > 0.0) {
        p.min_monotonicity_margin =
            std::min(p.min_monotonicity_margin, kernel.monotonicity_margin(x, y, h) / scale);
      }

      const double direct = kernel.distance_comparison_direct(x, y, h);
      const double closed = kernel.distance_comparison_closed(x, y, h);
      const double dscale = std::max({std::abs(direct), std::abs(closed), 1e-30});
      p.max_distance_identity_residual =
          std::max(p.max_distance_identity_residual, std::abs(direct - closed) / dscale);
      p.min_distance_direct = std::min(p.min_distance_direct, direct / (R * R * R * R));

      // second-step bounds: (bt-at)/(b-a) <= at/a (N=3 exponents) and bt >= b
      const Vec3 sx = h.reflect3(x);
      const double a = (y - x).norm();
      const double at = (y - sx).norm();
      const double b = std::sqrt(image_metric(x.squaredNorm(), y.squaredNorm(), x.dot(y), R)) / R;
      const double bt =
          std::sqrt(image_metric(sx.squaredNorm(), y.squaredNorm(), sx.dot(y), R)) / R;
      p.min_image_growth = std::min(p.min_image_growth, (bt - b) / (1.0 + b));
      if (std::abs(b - a) > 1e-9 * (1.0 + b)) {
        const double lhs = (bt - at) / (b - a);
        const double rhs = at / a;
        p.min_ratio_margin = std::min(p.min_ratio_margin, (rhs - lhs) / (1.0 + rhs));
      }
    }
  });

  for (const auto& p : partial) {
    rep.max_equality_residual = std::max(rep.max_equality_residual, p.max_equality_residual);
    rep.min_monotonicity_margin = std::min(rep.min_monotonicity_margin, p.min_monotonicity_margin);
    rep.max_distance_identity_residual =
        std::max(rep.max_distance_identity_residual, p.max_distance_identity_residual);
    rep.min_distance_direct = std::min(rep.min_distance_direct, p.min_distance_direct);
    rep.min_ratio_margin = std::min(rep.min_ratio_margin, p.min_ratio_margin);
    rep.min_image_growth = std::min(rep.min_image_growth, p.min_image_growth);
  }
  return rep;
}

}  // namespace polarsym
