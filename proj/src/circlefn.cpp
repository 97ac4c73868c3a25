#include "polarsym/circlefn.hpp"

#include <algorithm>
#include <cmath>

namespace polarsym {

namespace {

double wrap_2pi(double a) {
  a = std::fmod(a, 2.0 * kPi);
  return a < 0.0 ? a + 2.0 * kPi : a;
}

double wrap_pm_pi(double a) {
  a = wrap_2pi(a);
  return a >= kPi ? a - 2.0 * kPi : a;
}

}  // namespace

CircleFn::CircleFn(std::vector<double> values) : values_(std::move(values)) {
  const int n = static_cast<int>(values_.size());
  if (n < 8 || n % 2 != 0) fail(Errc::GridError, "circle grid needs an even node count >= 8");
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(Errc::PositivityError, "circle values must be positive");
  }
  auto [mn, mx] = std::minmax_element(values_.begin(), values_.end());
  min_ = *mn;
  max_ = *mx;
}

double CircleFn::interp(double theta) const {
  const double step = 2.0 * kPi / n();
  const double t = wrap_2pi(theta) / step;
  const int j = static_cast<int>(t);
  const double f = t - j;
  return values_[j % n()] * (1.0 - f) + values_[(j + 1) % n()] * f;
}

CircleFn make_axial_circle(int n, double alpha0, const std::vector<double>& half_profile) {
  if (half_profile.size() < 2) fail(Errc::Precondition, "half profile needs >= 2 samples");
  for (std::size_t i = 1; i < half_profile.size(); ++i)
    if (half_profile[i] > half_profile[i - 1] + 1e-12)
      fail(Errc::MonotonicityError, "half profile must be nonincreasing");
  auto prof = [&](double t) {
    const double s = t / kPi * (half_profile.size() - 1);
    const int i = std::min<int>(static_cast<int>(s), static_cast<int>(half_profile.size()) - 2);
    const double f = s - i;
    return half_profile[i] * (1.0 - f) + half_profile[i + 1] * f;
  };
  std::vector<double> vals(n);
  for (int j = 0; j < n; ++j)
    vals[j] = prof(std::abs(wrap_pm_pi(2.0 * kPi * j / n - alpha0)));
  return CircleFn(std::move(vals));
}

std::vector<HalfSpace> circle_reflections(int n_nodes) {
  if (n_nodes <= 0 || n_nodes % 2 != 0) fail(Errc::GridError, "node count must be even");
  std::vector<HalfSpace> out;
  out.reserve(2 * n_nodes);
  for (int k = 0; k < 2 * n_nodes; ++k) {
    const double alpha = kPi * k / n_nodes;
    Vec normal(2);
    normal << -std::sin(alpha), std::cos(alpha);
    out.emplace_back(std::move(normal), 0.0);
  }
  return out;
}

namespace {

// Signed differences v(l_alpha x) - v(x) on the open half-circle for the
// grid line alpha = pi k / n. Node j reflects to (k - j) mod n; node j lies
// strictly on the upper side iff (2j - k) mod 2n is in (0, n).
struct LineScan {
  double max_pos = 0.0;
  double max_neg = 0.0;  // magnitude of the most negative difference
  int j_pos = -1;
  int j_neg = -1;
};

LineScan scan_line(const CircleFn& v, int k) {
  const int n = v.n();
  LineScan s;
  for (int j = 0; j < n; ++j) {
    const int m = ((2 * j - k) % (2 * n) + 2 * n) % (2 * n);
    if (m <= 0 || m >= n) continue;
    const double d = v.value(((k - j) % n + n) % n) - v.value(j);
    if (d > s.max_pos) {
      s.max_pos = d;
      s.j_pos = j;
    }
    if (-d > s.max_neg) {
      s.max_neg = -d;
      s.j_neg = j;
    }
  }
  return s;
}

bool line_violates(const CircleFn& v, int k, double eps_abs) {
  const int n = v.n();
  bool pos = false, neg = false;
  for (int j = 0; j < n; ++j) {
    const int m = ((2 * j - k) % (2 * n) + 2 * n) % (2 * n);
    if (m <= 0 || m >= n) continue;
    const double d = v.value(((k - j) % n + n) % n) - v.value(j);
    pos = pos || d > eps_abs;
    neg = neg || d < -eps_abs;
    if (pos && neg) return true;
  }
  return false;
}

Vec node_point(const CircleFn& v, int j) {
  Vec p(2);
  p << std::cos(v.theta(j)), std::sin(v.theta(j));
  return p;
}

SeparabilityWitness strongest_witness(const CircleFn& v, double eps_abs) {
  const int n = v.n();
  int best_k = -1;
  double best_strength = -1.0;
  LineScan best{};
  for (int k = 0; k < n; ++k) {
    const LineScan s = scan_line(v, k);
    if (s.max_pos <= eps_abs || s.max_neg <= eps_abs) continue;
    const double strength = std::min(s.max_pos, s.max_neg);
    if (strength > best_strength + 1e-15 * (1.0 + best_strength)) {
      best_strength = strength;
      best_k = k;
      best = s;
    }
  }
  const double alpha = kPi * best_k / n;
  SeparabilityWitness w;
  w.normal = Vec(2);
  w.normal << -std::sin(alpha), std::cos(alpha);
  w.offset = 0.0;
  w.point_pos = node_point(v, best.j_pos);
  w.point_neg = node_point(v, best.j_neg);
  w.diff_pos = best.max_pos;
  w.diff_neg = -best.max_neg;
  w.detail = "alpha=" + std::to_string(alpha) + " nodes " + std::to_string(best.j_pos) + "," +
             std::to_string(best.j_neg);
  return w;
}

}  // namespace

SeparabilityReport is_separable_circle(const CircleFn& v, double eps) {
  const double eps_abs = eps * v.max_value();
  SeparabilityReport rep;
  rep.eps_abs = eps_abs;
  rep.halfspaces_tested = static_cast<std::size_t>(v.n());
  for (int k = 0; k < v.n(); ++k) {
    if (line_violates(v, k, eps_abs)) {
      rep.separable = false;
      rep.witness = strongest_witness(v, eps_abs);
      break;
    }
  }
  return rep;
}

SeparabilityReport is_separable_circle_interp(const CircleFn& v, int n_alpha, double eps) {
  const double eps_abs = eps * v.max_value();
  const double golden = 0.6180339887498949;
  SeparabilityReport rep;
  rep.eps_abs = eps_abs;
  rep.halfspaces_tested = static_cast<std::size_t>(n_alpha);
  for (int i = 0; i < n_alpha; ++i) {
    const double alpha = kPi * std::fmod(i * golden, 1.0);
    double max_pos = 0.0, max_neg = 0.0;
    Vec p_pos, p_neg;
    for (int j = 0; j < v.n(); ++j) {
      const double rel = wrap_2pi(v.theta(j) - alpha);
      if (rel <= 1e-12 || rel >= kPi - 1e-12) continue;
      const double d = v.interp(2.0 * alpha - v.theta(j)) - v.value(j);
      if (d > max_pos) {
        max_pos = d;
        p_pos = node_point(v, j);
      }
      if (-d > max_neg) {
        max_neg = -d;
        p_neg = node_point(v, j);
      }
    }
    if (max_pos > eps_abs && max_neg > eps_abs) {
      rep.separable = false;
      SeparabilityWitness w;
      w.normal = Vec(2);
      w.normal << -std::sin(alpha), std::cos(alpha);
      w.offset = 0.0;
      w.point_pos = p_pos;
      w.point_neg = p_neg;
      w.diff_pos = max_pos;
      w.diff_neg = -max_neg;
      w.detail = "interp alpha=" + std::to_string(alpha);
      rep.witness = w;
      break;
    }
  }
  return rep;
}

namespace {

struct Arc {
  int start = 0;   // first node index of the run
  int length = 0;  // node count
};

// The near-extremal node set must form one cyclic run.
Arc single_run(const std::vector<char>& in_set, const char* which) {
  const int n = static_cast<int>(in_set.size());
  int runs = 0;
  Arc arc;
  for (int j = 0; j < n; ++j) {
    if (in_set[j] && !in_set[(j + n - 1) % n]) {
      ++runs;
      arc.start = j;
    }
  }
  if (runs != 1)
    fail(Errc::NotSeparable, std::string("near-") + which + " node set is not a single arc");
  for (int j = arc.start; in_set[j % n]; ++j) ++arc.length;
  return arc;
}

struct ArcStructure {
  Arc max_arc, min_arc;
  int k_max, k_min;  // center angles as multiples of pi/n
};

ArcStructure arc_structure(const CircleFn& v, double eps) {
  const int n = v.n();
  const double eps_abs = eps * v.max_value();
  if (v.max_value() - v.min_value() <= eps_abs)
    fail(Errc::ConstantFunction, "function is constant at this tolerance");

  std::vector<char> near_max(n), near_min(n);
  for (int j = 0; j < n; ++j) {
    near_max[j] = v.value(j) >= v.max_value() - eps_abs;
    near_min[j] = v.value(j) <= v.min_value() + eps_abs;
  }
  ArcStructure s;
  s.max_arc = single_run(near_max, "max");
  s.min_arc = single_run(near_min, "min");
  s.k_max = (2 * s.max_arc.start + s.max_arc.length - 1) % (2 * n);
  s.k_min = (2 * s.min_arc.start + s.min_arc.length - 1) % (2 * n);

  const double gap = std::abs(
      wrap_pm_pi(kPi * s.k_min / n - kPi * s.k_max / n - kPi));
  if (gap > 2.0 * kPi / n + 1e-9)
    fail(Errc::NotSeparable, "extremal arc centers are not antipodal");
  return s;
}

}  // namespace

ExtremalArcs extremal_arcs(const CircleFn& v, double eps) {
  const ArcStructure s = arc_structure(v, eps);
  ExtremalArcs arcs;
  arcs.alpha0 = wrap_2pi(kPi * s.k_max / v.n());
  arcs.theta1 = kPi * (s.max_arc.length - 1) / v.n();
  arcs.theta2 = kPi * (s.min_arc.length - 1) / v.n();
  if (arcs.theta1 + arcs.theta2 >= kPi)
    fail(Errc::NotSeparable, "extremal arcs cover a half circle");
  return arcs;
}

AxisReport circle_axis_and_profile(const CircleFn& v, double eps) {
  const int n = v.n();
  const double eps_abs = eps * v.max_value();
  AxisReport rep;

  if (v.max_value() - v.min_value() <= eps_abs) {
    rep.kind = SymmetryKind::Constant;
    return rep;
  }

  const SeparabilityReport sep = is_separable_circle(v, eps);
  if (!sep.separable)
    fail(Errc::NotSeparable, "not separable: " + sep.witness->detail);

  // Antipodally equal separable functions are constant.
  bool antipodal = true;
  for (int j = 0; j < n / 2 && antipodal; ++j)
    antipodal = std::abs(v.value(j) - v.value(j + n / 2)) <= eps_abs;
  if (antipodal) {
    rep.kind = SymmetryKind::Constant;
    rep.constant_by_antipodal = true;
    return rep;
  }

  const ArcStructure s = arc_structure(v, eps);
  const int k0 = s.k_max;
  rep.kind = SymmetryKind::Axial;
  rep.alpha0 = wrap_2pi(kPi * k0 / n);
  rep.axis = Vec(2);
  rep.axis << std::cos(rep.alpha0), std::sin(rep.alpha0);
  rep.cap_height_max = std::cos(kPi * (s.max_arc.length - 1) / n);
  rep.cap_height_min = -std::cos(kPi * (s.min_arc.length - 1) / n);

  double mirror = 0.0;
  for (int j = 0; j < n; ++j)
    mirror = std::max(mirror, std::abs(v.value(((k0 - j) % n + n) % n) - v.value(j)));
  rep.mirror_residual = mirror / v.max_value();
  if (mirror > eps_abs) fail(Errc::NotSeparable, "no mirror symmetry about the extremal axis");

  // Meridian profile from the max-arc center; half-step start when the
  // center falls between nodes.
  const double step = 2.0 * kPi / n;
  double increase = 0.0;
  if (k0 % 2 == 0) {
    const int j0 = k0 / 2;
    for (int i = 0; i <= n / 2; ++i) {
      rep.profile.param.push_back(i * step);
      rep.profile.value.push_back(v.value((j0 + i) % n));
    }
  } else {
    const int j0 = (k0 + 1) / 2;
    for (int i = 0; i < n / 2; ++i) {
      rep.profile.param.push_back((i + 0.5) * step);
      rep.profile.value.push_back(v.value((j0 + i) % n));
    }
  }
  for (std::size_t i = 1; i < rep.profile.value.size(); ++i)
    increase = std::max(increase, rep.profile.value[i] - rep.profile.value[i - 1]);
  rep.monotonicity_residual = increase / v.max_value();
  if (increase > eps_abs) fail(Errc::NotSeparable, "meridian profile is not nonincreasing");
  return rep;
}

}  // namespace polarsym
