#include "polarsym/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace polarsym {

HalfSpace::HalfSpace(Vec normal, double offset) : normal_(std::move(normal)), offset_(offset) {
  const double n = normal_.norm();
  if (std::abs(n - 1.0) > 1e-9) fail(Errc::DimensionError, "half-space normal is not unit length");
  normal_ /= n;  // small drift is removed, large drift was rejected above
  if (!normal_.allFinite() || !std::isfinite(offset_))
    fail(Errc::DimensionError, "half-space has non-finite entries");
}

Vec dual_point(const Vec& x, double R) {
  const double n2 = x.squaredNorm();
  if (n2 == 0.0) fail(Errc::DualOfCenter, "dual point of the ball center is undefined");
  return (R * R / n2) * x;
}

Vec3 dual_point(const Vec3& x, double R) {
  const double n2 = x.squaredNorm();
  if (n2 == 0.0) fail(Errc::DualOfCenter, "dual point of the ball center is undefined");
  return (R * R / n2) * x;
}

namespace {

// Euclidean projection onto the probability simplex (sort-based).
Vec project_simplex(Vec v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  int rho = 0;
  for (int i = 0; i < n; ++i) {
    css += u[i];
    const double t = (css - 1.0) / (i + 1);
    if (u[i] - t > 0.0) {
      rho = i + 1;
      theta = t;
    }
  }
  (void)rho;
  for (int i = 0; i < n; ++i) v[i] = std::max(0.0, v[i] - theta);
  return v;
}

}  // namespace

bool hull_membership(const std::vector<Vec>& points, const Vec& q, HullKind kind) {
  if (points.empty()) fail(Errc::DimensionError, "empty point set");
  const int dim = static_cast<int>(q.size());
  for (const auto& p : points)
    if (p.size() != dim) fail(Errc::DimensionError, "point dimension mismatch");

  const int m = static_cast<int>(points.size());
  const double scale = 1.0 + q.norm();
  const double tol = 1e-9;

  if (kind == HullKind::Affine) {
    // q - p0 must lie in span{p_i - p0}.
    Eigen::MatrixXd A(dim, m - 1);
    for (int i = 1; i < m; ++i) A.col(i - 1) = points[i] - points[0];
    const Vec rhs = q - points[0];
    if (m == 1) return rhs.norm() <= tol * scale;
    const Vec lam = A.colPivHouseholderQr().solve(rhs);
    return (A * lam - rhs).norm() <= tol * scale;
  }

  // Convex: min ||P lam - q||^2 over the simplex, projected gradient.
  Eigen::MatrixXd P(dim, m);
  for (int i = 0; i < m; ++i) P.col(i) = points[i];
  Vec lam = Vec::Constant(m, 1.0 / m);
  const Eigen::MatrixXd G = P.transpose() * P;
  const double lip = std::max(1e-30, G.operatorNorm());
  const Vec Ptq = P.transpose() * q;
  const double step = 1.0 / lip;
  double best = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 2000; ++it) {
    const Vec r = P * lam - q;
    const double rn = r.norm();
    best = std::min(best, rn);
    if (rn <= 0.5 * tol * scale) break;
    lam = project_simplex(lam - step * (G * lam - Ptq));
  }
  return best <= tol * scale;
}

}  // namespace polarsym
