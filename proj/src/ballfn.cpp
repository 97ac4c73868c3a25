#include "polarsym/ballfn.hpp"

#include <algorithm>
#include <cmath>

namespace polarsym {

namespace {

Vec to_vec(const Vec3& x) {
  Vec v(3);
  v << x[0], x[1], x[2];
  return v;
}

double lerp_table(const std::vector<double>& samples, double lo, double hi, double x) {
  const double t = (x - lo) / (hi - lo) * (samples.size() - 1);
  const int i = std::clamp(static_cast<int>(t), 0, static_cast<int>(samples.size()) - 2);
  const double f = t - i;
  return samples[i] * (1.0 - f) + samples[i + 1] * f;
}

}  // namespace

BallFn::BallFn(double R, std::vector<SphereFn> shells, double center_value)
    : R_(R), shells_(std::move(shells)), center_(center_value) {
  if (R <= 0.0) fail(Errc::Precondition, "ball radius must be positive");
  if (shells_.empty()) fail(Errc::GridError, "ball needs at least one shell");
  if (!(center_ > 0.0)) fail(Errc::PositivityError, "center value must be positive");
  max_ = center_;
  min_ = center_;
  for (const auto& s : shells_) {
    if (s.n_lat() != shells_[0].n_lat() || s.n_lon() != shells_[0].n_lon())
      fail(Errc::GridError, "all shells must share one angular grid");
    max_ = std::max(max_, s.max_value());
    min_ = std::min(min_, s.min_value());
  }
}

BallFn BallFn::from_function(double R, int m, int n_lat, int n_lon,
                             const std::function<double(const Vec3&)>& f) {
  std::vector<SphereFn> shells;
  shells.reserve(m);
  for (int s = 0; s < m; ++s) {
    const double r = R * (s + 1) / m;
    shells.push_back(
        SphereFn::from_function(n_lat, n_lon, [&](const Vec3& dir) { return f(r * dir); }));
  }
  return BallFn(R, std::move(shells), f(Vec3::Zero()));
}

SeparabilityReport is_separable_ball(const BallFn& u, int n_halfspaces, double eps,
                                     std::uint64_t seed) {
  using detail::ReflectionScan;
  const double eps_abs = eps * u.max_value();
  const int m_shells = u.shell_count();
  const SphereFn& grid = u.shell(0);

  struct Candidate {
    ReflectionScan scan;
    Vec3 normal;
    std::string detail;
    int shell_pos = -1, shell_neg = -1;
  };

  // One scan per half-space; each shell feeds the same accumulator so the
  // branch choice is global over the ball.
  auto scan_all_shells = [&](Candidate& c, const std::function<void(const SphereFn&,
                                                                    ReflectionScan&)>& scan1) {
    for (int s = 0; s < m_shells; ++s) {
      ReflectionScan local;
      scan1(u.shell(s), local);
      const double r = u.shell_radius(s);
      if (local.max_pos > c.scan.max_pos) {
        c.scan.max_pos = local.max_pos;
        c.scan.p_pos = r * local.p_pos;
        c.shell_pos = s;
      }
      if (local.max_neg > c.scan.max_neg) {
        c.scan.max_neg = local.max_neg;
        c.scan.p_neg = r * local.p_neg;
        c.shell_neg = s;
      }
    }
  };

  std::vector<Candidate> candidates;
  for (int m = 0; m < grid.n_lon(); ++m) {
    Candidate c;
    c.normal = detail::meridian_normal(grid, m);
    c.detail = "meridian m=" + std::to_string(m);
    scan_all_shells(c, [m](const SphereFn& s, ReflectionScan& r) { detail::scan_meridian(s, m, r); });
    candidates.push_back(std::move(c));
  }
  {
    Candidate c;
    c.normal = Vec3(0, 0, 1);
    c.detail = "equator";
    scan_all_shells(c, [](const SphereFn& s, ReflectionScan& r) { detail::scan_equator(s, r); });
    candidates.push_back(std::move(c));
  }
  Rng rng(seed);
  for (int k = 0; k < n_halfspaces; ++k) {
    Candidate c;
    c.normal = rng.unit3();
    const HalfSpace h(c.normal, 0.0);
    c.detail = "random k=" + std::to_string(k);
    scan_all_shells(
        c, [&h](const SphereFn& s, ReflectionScan& r) { detail::scan_halfspace_interp(s, h, r); });
    candidates.push_back(std::move(c));
  }

  SeparabilityReport rep;
  rep.eps_abs = eps_abs;
  rep.halfspaces_tested = candidates.size();
  int best = -1;
  double best_strength = -1.0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (!candidates[c].scan.violates(eps_abs)) continue;
    const double strength = std::min(candidates[c].scan.max_pos, candidates[c].scan.max_neg);
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
    w.detail = c.detail + " shells " + std::to_string(c.shell_pos) + "," +
               std::to_string(c.shell_neg);
    rep.witness = w;
  }
  return rep;
}

AxisReport ball_axis(const BallFn& u, double eps) {
  const SphereFn& grid = u.shell(0);
  const double step_deg =
      std::max(kPi / (grid.n_lat() - 1), 2.0 * kPi / grid.n_lon()) * 180.0 / kPi;
  const double tol_deg = std::max(2.0, 3.0 * step_deg);

  AxisReport rep;
  std::vector<int> axial_shells;
  std::vector<Vec3> axes;
  for (int s = 0; s < u.shell_count(); ++s) {
    const SphereFn& sh = u.shell(s);
    if (sh.max_value() - sh.min_value() <= eps * sh.max_value()) {
      rep.shell_profiles.emplace_back();  // constant shell: no profile
      continue;
    }
    AxisReport shell_rep = sphere_caps_and_axis(sh, eps);
    axes.emplace_back(shell_rep.axis[0], shell_rep.axis[1], shell_rep.axis[2]);
    axial_shells.push_back(s);
    rep.shell_profiles.push_back(std::move(shell_rep.profile));
    rep.antipodality_deg = std::max(rep.antipodality_deg, shell_rep.antipodality_deg);
    rep.lat_spread = std::max(rep.lat_spread, shell_rep.lat_spread);
    rep.monotonicity_residual =
        std::max(rep.monotonicity_residual, shell_rep.monotonicity_residual);
  }

  if (axes.empty()) {
    rep.kind = SymmetryKind::Radial;
    rep.center = Vec::Zero(3);
    return rep;
  }

  for (std::size_t i = 0; i < axes.size(); ++i) {
    for (std::size_t j = i + 1; j < axes.size(); ++j) {
      const double ang =
          std::acos(std::clamp(axes[i].dot(axes[j]), -1.0, 1.0)) * 180.0 / kPi;
      rep.collinearity_deg = std::max(rep.collinearity_deg, ang);
      if (ang > tol_deg)
        fail(Errc::AxisMismatch, "shell axes disagree: shells " +
                                     std::to_string(axial_shells[i]) + " and " +
                                     std::to_string(axial_shells[j]));
    }
  }

  Vec3 dir = Vec3::Zero();
  for (const auto& a : axes) dir += a;
  rep.kind = SymmetryKind::Axial;
  rep.axis = to_vec(dir.normalized());
  return rep;
}

BallFn make_separable_ball(const std::vector<double>& g_samples,
                           const std::vector<double>& h_samples, double R, int m, int n_lat,
                           int n_lon) {
  if (g_samples.size() < 2 || h_samples.size() < 2)
    fail(Errc::Precondition, "profiles need at least two samples");
  for (std::size_t i = 1; i < g_samples.size(); ++i)
    if (g_samples[i] > g_samples[i - 1] + 1e-12)
      fail(Errc::MonotonicityError, "axial profile g must be nonincreasing");
  for (double g : g_samples)
    if (!(g > 0.0)) fail(Errc::PositivityError, "axial profile g must be positive");
  for (double h : h_samples)
    if (h < 0.0) fail(Errc::PositivityError, "radial profile h must be nonnegative");

  auto g_at = [&](double t) { return lerp_table(g_samples, -R, R, t); };
  auto h_at = [&](double r) { return lerp_table(h_samples, 0.0, R, r); };
  return BallFn::from_function(R, m, n_lat, n_lon, [&](const Vec3& x) {
    return g_at(x[2]) * h_at(x.norm());
  });
}

}  // namespace polarsym
