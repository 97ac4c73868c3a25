#include "polarsym/spherefn.hpp"

#include <algorithm>
#include <cmath>

namespace polarsym {

namespace {

constexpr double kSideTol = 1e-12;

double wrap_2pi(double a) {
  a = std::fmod(a, 2.0 * kPi);
  return a < 0.0 ? a + 2.0 * kPi : a;
}

double angle_between(const Vec3& a, const Vec3& b) {
  const double c = std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0);
  return std::acos(c);
}

Vec to_vec(const Vec3& x) {
  Vec v(3);
  v << x[0], x[1], x[2];
  return v;
}

}  // namespace

SphereFn::SphereFn(int n_lat, int n_lon, std::vector<double> values)
    : n_lat_(n_lat), n_lon_(n_lon), values_(std::move(values)) {
  if (n_lat < 3) fail(Errc::GridError, "sphere grid needs n_lat >= 3");
  if (n_lon < 4 || n_lon % 2 != 0) fail(Errc::GridError, "sphere grid needs even n_lon >= 4");
  const std::size_t expected = 2 + static_cast<std::size_t>(n_lat - 2) * n_lon;
  if (values_.size() != expected) fail(Errc::GridError, "sphere value count mismatch");
  for (double v : values_)
    if (!(v > 0.0) || !std::isfinite(v)) fail(Errc::PositivityError, "sphere values must be positive");
  auto [mn, mx] = std::minmax_element(values_.begin(), values_.end());
  min_ = *mn;
  max_ = *mx;
}

SphereFn SphereFn::from_function(int n_lat, int n_lon,
                                 const std::function<double(const Vec3&)>& f) {
  std::vector<double> vals;
  vals.reserve(2 + static_cast<std::size_t>(n_lat - 2) * n_lon);
  vals.push_back(f(Vec3(0, 0, 1)));
  for (int i = 1; i < n_lat - 1; ++i) {
    const double theta = kPi * i / (n_lat - 1);
    const double st = std::sin(theta), ct = std::cos(theta);
    for (int j = 0; j < n_lon; ++j) {
      const double lam = 2.0 * kPi * j / n_lon;
      vals.push_back(f(Vec3(st * std::cos(lam), st * std::sin(lam), ct)));
    }
  }
  vals.push_back(f(Vec3(0, 0, -1)));
  return SphereFn(n_lat, n_lon, std::move(vals));
}

std::size_t SphereFn::index(int i, int j) const {
  if (i == 0) return 0;
  if (i == n_lat_ - 1) return values_.size() - 1;
  j = ((j % n_lon_) + n_lon_) % n_lon_;
  return 1 + static_cast<std::size_t>(i - 1) * n_lon_ + j;
}

Vec3 SphereFn::node(int i, int j) const {
  const double theta = colat(i);
  const double lam = lon(j);
  const double st = std::sin(theta);
  return Vec3(st * std::cos(lam), st * std::sin(lam), std::cos(theta));
}

double SphereFn::row_weight(int i) const {
  const double d = kPi / (n_lat_ - 1);
  if (is_pole_row(i)) return 2.0 * kPi * (1.0 - std::cos(0.5 * d));
  const double theta = colat(i);
  return (std::cos(theta - 0.5 * d) - std::cos(theta + 0.5 * d)) * (2.0 * kPi / n_lon_);
}

double SphereFn::interp_angles(double colat, double lon) const {
  colat = std::clamp(colat, 0.0, kPi);
  const double t = colat / (kPi / (n_lat_ - 1));
  int i0 = std::min(static_cast<int>(t), n_lat_ - 2);
  const double fi = t - i0;

  const double s = wrap_2pi(lon) / (2.0 * kPi / n_lon_);
  const int j0 = static_cast<int>(s) % n_lon_;
  const double fj = s - static_cast<int>(s);

  auto row_at = [&](int i) {
    if (is_pole_row(i)) return values_[index(i, 0)];
    return value(i, j0) * (1.0 - fj) + value(i, j0 + 1) * fj;
  };
  return row_at(i0) * (1.0 - fi) + row_at(i0 + 1) * fi;
}

double SphereFn::interp_dir(const Vec3& x) const {
  const double r = x.norm();
  const double colat = std::acos(std::clamp(x[2] / r, -1.0, 1.0));
  const double lon = std::atan2(x[1], x[0]);
  return interp_angles(colat, lon);
}

double interp_error_bound(const SphereFn& u) {
  // (h^2/8) |f''| per direction, with second derivatives estimated by the
  // largest discrete second difference.
  double d2_lat = 0.0, d2_lon = 0.0;
  for (int i = 1; i < u.n_lat() - 1; ++i) {
    for (int j = 0; j < u.n_lon(); ++j) {
      const double up = (i - 1 == 0) ? u.value(0, 0) : u.value(i - 1, j);
      const double dn = (i + 1 == u.n_lat() - 1) ? u.value(u.n_lat() - 1, 0) : u.value(i + 1, j);
      d2_lat = std::max(d2_lat, std::abs(up - 2.0 * u.value(i, j) + dn));
      d2_lon = std::max(d2_lon,
                        std::abs(u.value(i, j - 1) - 2.0 * u.value(i, j) + u.value(i, j + 1)));
    }
  }
  return 0.125 * (d2_lat + d2_lon) / u.max_value();
}

Plane2::Plane2(const Vec3& b, const Vec3& span1, const Vec3& span2) : base(b) {
  u1 = span1.normalized();
  Vec3 w = span2 - span2.dot(u1) * u1;
  if (w.norm() < 1e-12) fail(Errc::DimensionError, "plane spanning vectors are collinear");
  u2 = w.normalized();
}

CircleFn restrict_to_circle(const SphereFn& u, const Plane2& v, int n_circle) {
  if (n_circle == 0) n_circle = u.n_lon();
  // Closest point of the plane to the origin and the slice circle.
  const Vec3 p = v.base - v.base.dot(v.u1) * v.u1 - v.base.dot(v.u2) * v.u2;
  const double d = p.norm();
  if (d >= 1.0 - 1e-12) fail(Errc::TangentOrEmpty, "plane does not cut the sphere in a circle");
  const double rho = std::sqrt(1.0 - d * d);

  // Angular origin: projection of the global max direction when usable.
  Vec3 xmax;
  {
    double best = -1.0;
    for (int i = 0; i < u.n_lat(); ++i) {
      const int jmax = u.is_pole_row(i) ? 1 : u.n_lon();
      for (int j = 0; j < jmax; ++j) {
        if (u.value(i, j) > best) {
          best = u.value(i, j);
          xmax = u.node(i, j);
        }
      }
    }
  }
  const Vec3 g = xmax.dot(v.u1) * v.u1 + xmax.dot(v.u2) * v.u2;
  const Vec3 f1 = (g.norm() > 1e-9) ? Vec3(g.normalized()) : v.u1;
  const Vec3 nrm = v.u1.cross(v.u2).normalized();
  const Vec3 f2 = nrm.cross(f1).normalized();

  std::vector<double> vals(n_circle);
  for (int k = 0; k < n_circle; ++k) {
    const double t = 2.0 * kPi * k / n_circle;
    vals[k] = u.interp_dir(p + rho * (std::cos(t) * f1 + std::sin(t) * f2));
  }
  return CircleFn(std::move(vals));
}

namespace detail {

void scan_meridian(const SphereFn& u, int m, ReflectionScan& s) {
  const int n_lon = u.n_lon();
  for (int i = 1; i < u.n_lat() - 1; ++i) {
    for (int j = 0; j < n_lon; ++j) {
      const int side = ((2 * j - m) % (2 * n_lon) + 2 * n_lon) % (2 * n_lon);
      if (side <= 0 || side >= n_lon) continue;
      const double d = u.value(i, ((m - j) % n_lon + n_lon) % n_lon) - u.value(i, j);
      s.feed(d, u.node(i, j));
    }
  }
}

Vec3 meridian_normal(const SphereFn& u, int m) {
  const double alpha = kPi * m / u.n_lon();
  return Vec3(-std::sin(alpha), std::cos(alpha), 0.0);
}

void scan_equator(const SphereFn& u, ReflectionScan& s) {
  const int n_lat = u.n_lat();
  for (int i = 0; i < n_lat; ++i) {
    if (2 * i >= n_lat - 1) break;  // strict upper side only
    const int jmax = u.is_pole_row(i) ? 1 : u.n_lon();
    for (int j = 0; j < jmax; ++j)
      s.feed(u.value(n_lat - 1 - i, j) - u.value(i, j), u.node(i, j));
  }
}

void scan_halfspace_interp(const SphereFn& u, const HalfSpace& h, ReflectionScan& s) {
  const Vec3 n(h.normal()[0], h.normal()[1], h.normal()[2]);
  for (int i = 0; i < u.n_lat(); ++i) {
    const int jmax = u.is_pole_row(i) ? 1 : u.n_lon();
    for (int j = 0; j < jmax; ++j) {
      const Vec3 x = u.node(i, j);
      if (x.dot(n) <= kSideTol) continue;
      s.feed(u.interp_dir(h.reflect3(x)) - u.value(i, j), x);
    }
  }
}

}  // namespace detail

namespace {

using detail::ReflectionScan;

struct Candidate {
  ReflectionScan scan;
  Vec3 normal;
  std::string detail;
};

SeparabilityReport collect_verdict(std::vector<Candidate> candidates, double eps_abs) {
  SeparabilityReport rep;
  rep.eps_abs = eps_abs;
  rep.halfspaces_tested = candidates.size();
  int best = -1;
  double best_strength = -1.0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto& s = candidates[c].scan;
    if (!s.violates(eps_abs)) continue;
    const double strength = std::min(s.max_pos, s.max_neg);
    if (strength > best_strength * (1.0 + 1e-15)) {
      best_strength = strength;
      best = static_cast<int>(c);
    }
  }
  if (best >= 0) {
    const auto& c = candidates[best];
    rep.separable = false;
    SeparabilityWitness w;
    w.normal = to_vec(c.normal);
    w.offset = 0.0;
    w.point_pos = to_vec(c.scan.p_pos);
    w.point_neg = to_vec(c.scan.p_neg);
    w.diff_pos = c.scan.max_pos;
    w.diff_neg = -c.scan.max_neg;
    w.detail = c.detail;
    rep.witness = w;
  }
  return rep;
}

std::vector<Candidate> sphere_candidates(const SphereFn& u, int n_halfspaces,
                                         std::uint64_t seed) {
  std::vector<Candidate> out;
  const int n_lon = u.n_lon();
  // Meridian planes at alpha = pi m / n_lon; the scanned side is the
  // longitude band (alpha, alpha + pi).
  for (int m = 0; m < n_lon; ++m) {
    Candidate c;
    c.normal = detail::meridian_normal(u, m);
    c.detail = "meridian m=" + std::to_string(m);
    detail::scan_meridian(u, m, c.scan);
    out.push_back(std::move(c));
  }
  {
    Candidate c;
    c.normal = Vec3(0, 0, 1);
    c.detail = "equator";
    detail::scan_equator(u, c.scan);
    out.push_back(std::move(c));
  }
  Rng rng(seed);
  for (int k = 0; k < n_halfspaces; ++k) {
    Candidate c;
    c.normal = rng.unit3();
    c.detail = "random k=" + std::to_string(k);
    detail::scan_halfspace_interp(u, HalfSpace(c.normal, 0.0), c.scan);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

SeparabilityReport is_separable_sphere(const SphereFn& u, int n_halfspaces, double eps,
                                       std::uint64_t seed) {
  return collect_verdict(sphere_candidates(u, n_halfspaces, seed), eps * u.max_value());
}

Mat3 rotation_to_pole(const Vec3& a) {
  const Vec3 e3(0, 0, 1);
  const Vec3 v = a.cross(e3);
  const double c = a.dot(e3);
  if (v.norm() < 1e-14) {
    if (c > 0) return Mat3::Identity();
    Mat3 r;
    r << 1, 0, 0, 0, -1, 0, 0, 0, -1;  // half turn about e1
    return r;
  }
  Mat3 vx;
  vx << 0, -v[2], v[1], v[2], 0, -v[0], -v[1], v[0], 0;
  return Mat3::Identity() + vx + vx * vx / (1.0 + c);
}

namespace {

// Weighted direction of the high (or low) side. Smooth positive-part value
// weights keep the estimate stable for both point peaks and plateau caps.
Vec3 side_axis(const SphereFn& u, bool max_side) {
  const double range = u.max_value() - u.min_value();
  const double thr = max_side ? u.max_value() - 0.05 * range : u.min_value() + 0.05 * range;
  Vec3 acc = Vec3::Zero();
  double total = 0.0;
  for (int i = 0; i < u.n_lat(); ++i) {
    const int jmax = u.is_pole_row(i) ? 1 : u.n_lon();
    const double w = u.row_weight(i);
    for (int j = 0; j < jmax; ++j) {
      const double excess = max_side ? u.value(i, j) - thr : thr - u.value(i, j);
      if (excess <= 0.0) continue;
      acc += w * excess * u.node(i, j);
      total += w * excess;
    }
  }
  if (acc.norm() <= 1e-12 * total)
    fail(Errc::CapFitError, "degenerate axis estimate: extremal mass has no direction");
  return acc.normalized();
}

struct RingStats {
  double spread_rel = 0.0;      // max in-ring spread / max value
  double mono_residual = 0.0;   // max profile increase / max value
  ProfileSamples profile;       // ring means from the axis pole
};

RingStats ring_stats_exact(const SphereFn& u, bool flip) {
  RingStats rs;
  for (int k = 0; k < u.n_lat(); ++k) {
    const int i = flip ? u.n_lat() - 1 - k : k;
    double rmin = u.value(i, 0), rmax = u.value(i, 0), mean = 0.0;
    const int jmax = u.is_pole_row(i) ? 1 : u.n_lon();
    for (int j = 0; j < jmax; ++j) {
      const double x = u.value(i, j);
      rmin = std::min(rmin, x);
      rmax = std::max(rmax, x);
      mean += x;
    }
    rs.spread_rel = std::max(rs.spread_rel, (rmax - rmin) / u.max_value());
    rs.profile.param.push_back(kPi * k / (u.n_lat() - 1));
    rs.profile.value.push_back(mean / jmax);
  }
  for (std::size_t k = 1; k < rs.profile.value.size(); ++k)
    rs.mono_residual = std::max(
        rs.mono_residual, (rs.profile.value[k] - rs.profile.value[k - 1]) / u.max_value());
  return rs;
}

RingStats ring_stats_rotated(const SphereFn& u, const Vec3& axis) {
  const Mat3 q = rotation_to_pole(axis);
  const Mat3 qt = q.transpose();
  RingStats rs;
  for (int i = 0; i < u.n_lat(); ++i) {
    const double theta = kPi * i / (u.n_lat() - 1);
    const int jmax = (i == 0 || i == u.n_lat() - 1) ? 1 : u.n_lon();
    double rmin = 0.0, rmax = 0.0, mean = 0.0;
    for (int j = 0; j < jmax; ++j) {
      const double lam = 2.0 * kPi * j / u.n_lon();
      const Vec3 dir(std::sin(theta) * std::cos(lam), std::sin(theta) * std::sin(lam),
                     std::cos(theta));
      const double x = u.interp_dir(qt * dir);
      if (j == 0) rmin = rmax = x;
      rmin = std::min(rmin, x);
      rmax = std::max(rmax, x);
      mean += x;
    }
    rs.spread_rel = std::max(rs.spread_rel, (rmax - rmin) / u.max_value());
    rs.profile.param.push_back(theta);
    rs.profile.value.push_back(mean / jmax);
  }
  for (std::size_t k = 1; k < rs.profile.value.size(); ++k)
    rs.mono_residual = std::max(
        rs.mono_residual, (rs.profile.value[k] - rs.profile.value[k - 1]) / u.max_value());
  return rs;
}

}  // namespace

AxisReport sphere_caps_and_axis(const SphereFn& u, double eps) {
  AxisReport rep;
  const double eps_abs = eps * u.max_value();
  if (u.max_value() - u.min_value() <= eps_abs) {
    rep.kind = SymmetryKind::Constant;
    return rep;
  }

  const Vec3 a = side_axis(u, true);
  const Vec3 b = side_axis(u, false);
  rep.kind = SymmetryKind::Axial;
  rep.axis = to_vec(a);
  rep.antipodality_deg = angle_between(a, -b) * 180.0 / kPi;

  const double grid_step = std::max(kPi / (u.n_lat() - 1), 2.0 * kPi / u.n_lon());
  if (rep.antipodality_deg > 2.0 * grid_step * 180.0 / kPi)
    fail(Errc::CapFitError, "min-cap axis is not antipodal to the max-cap axis");

  // Cap heights from the near-extremal sets along the fitted axis.
  double h1 = 1.0, h2 = -1.0;
  for (int i = 0; i < u.n_lat(); ++i) {
    const int jmax = u.is_pole_row(i) ? 1 : u.n_lon();
    for (int j = 0; j < jmax; ++j) {
      const double t = u.node(i, j).dot(a);
      if (u.value(i, j) >= u.max_value() - eps_abs) h1 = std::min(h1, t);
      if (u.value(i, j) <= u.min_value() + eps_abs) h2 = std::max(h2, t);
    }
  }
  if (!(h1 > h2)) fail(Errc::CapFitError, "max cap does not sit above the min cap");
  rep.cap_height_max = h1;
  rep.cap_height_min = h2;

  // Every node inside the fitted cap (with angular slack for the axis
  // estimate) must reach the threshold.
  const double slack = 3.0 * grid_step;
  const double cap_ang = std::acos(std::clamp(h1, -1.0, 1.0));
  for (int i = 0; i < u.n_lat(); ++i) {
    const int jmax = u.is_pole_row(i) ? 1 : u.n_lon();
    for (int j = 0; j < jmax; ++j) {
      if (u.value(i, j) >= u.max_value() - eps_abs) continue;
      if (angle_between(u.node(i, j), a) <= cap_ang - slack)
        fail(Errc::CapFitError, "near-max set is not a spherical cap");
    }
  }

  // Ring constancy and the meridian profile; exact rows when the axis is the
  // grid pole, resampled rings otherwise.
  const bool north = angle_between(a, Vec3(0, 0, 1)) <= 1e-9;
  const bool south = angle_between(a, Vec3(0, 0, -1)) <= 1e-9;
  RingStats rs;
  double gate = eps;
  if (north || south) {
    rs = ring_stats_exact(u, south);
  } else {
    rs = ring_stats_rotated(u, a);
    // Resampled rings carry bilinear error plus axis-estimate wobble
    // proportional to the latitudinal slope.
    double slope_rel = 0.0;
    for (int i = 0; i < u.n_lat() - 1; ++i)
      for (int j = 0; j < u.n_lon(); ++j)
        slope_rel = std::max(slope_rel, std::abs(u.value(i + 1, j) - u.value(i, j)));
    slope_rel /= (kPi / (u.n_lat() - 1)) * u.max_value();
    gate = std::max(eps, 4.0 * interp_error_bound(u) + 4.0 * grid_step * grid_step * slope_rel);
  }
  rep.lat_spread = rs.spread_rel;
  rep.monotonicity_residual = rs.mono_residual;
  rep.profile = std::move(rs.profile);
  if (rep.lat_spread > gate) fail(Errc::NotSeparable, "function is not constant on rings");
  if (rep.monotonicity_residual > gate)
    fail(Errc::NotSeparable, "meridian profile is not nonincreasing");
  return rep;
}

bool corollary_direction_check(const SphereFn& u, const Vec3& axis_max, const HalfSpace& h,
                               double eps) {
  if (!h.through_origin()) fail(Errc::Precondition, "half-space must pass through the origin");
  const Vec3 n(h.normal()[0], h.normal()[1], h.normal()[2]);
  const double s = axis_max.dot(n);
  const double eps_abs = eps * u.max_value();
  const double boundary_tol = 1e-9;

  double max_d = 0.0, min_d = 0.0;
  for (int i = 0; i < u.n_lat(); ++i) {
    const int jmax = u.is_pole_row(i) ? 1 : u.n_lon();
    for (int j = 0; j < jmax; ++j) {
      const Vec3 x = u.node(i, j);
      if (x.dot(n) <= kSideTol) continue;
      const double d = u.interp_dir(h.reflect3(x)) - u.value(i, j);
      max_d = std::max(max_d, d);
      min_d = std::min(min_d, d);
    }
  }
  if (s > boundary_tol) return max_d <= eps_abs;     // u >= u o sigma on H
  if (s < -boundary_tol) return min_d >= -eps_abs;   // u <= u o sigma on H
  return std::max(max_d, -min_d) <= eps_abs;         // axis on dH: equality
}

}  // namespace polarsym
