#include "polarsym/wholespace.hpp"

#include <algorithm>
#include <cmath>

namespace polarsym {

namespace {

Vec to_vec(const Vec3& x) {
  Vec v(3);
  v << x[0], x[1], x[2];
  return v;
}

}  // namespace

SeparabilityReport is_separable_field(const FieldFn& u, int n_halfspaces, int n_samples,
                                      double eps, std::uint64_t seed) {
  struct Draw {
    Vec3 normal;
    double offset;
    std::vector<Vec3> points;        // in H
    std::vector<double> val, rval;   // u(x), u(sigma x)
  };

  Rng rng(seed);
  std::vector<Draw> draws(n_halfspaces);
  double vmax = 0.0;
  for (auto& d : draws) {
    d.normal = rng.unit3();
    d.offset = rng.uniform(-u.r_max(), u.r_max());
    const HalfSpace h(d.normal, d.offset);
    long attempts = 64L * n_samples;
    while (static_cast<int>(d.points.size()) < n_samples && attempts-- > 0) {
      const Vec3 x = rng.in_ball3(u.r_max());
      if (x.dot(d.normal) - d.offset <= 1e-12) continue;
      d.points.push_back(x);
      d.val.push_back(u(x));
      d.rval.push_back(u(h.reflect3(x)));
      vmax = std::max({vmax, std::abs(d.val.back()), std::abs(d.rval.back())});
    }
  }

  SeparabilityReport rep;
  rep.eps_abs = eps * vmax;
  rep.halfspaces_tested = draws.size();
  int best = -1;
  double best_strength = -1.0;
  detail::ReflectionScan best_scan;
  for (std::size_t k = 0; k < draws.size(); ++k) {
    detail::ReflectionScan s;
    for (std::size_t i = 0; i < draws[k].points.size(); ++i)
      s.feed(draws[k].rval[i] - draws[k].val[i], draws[k].points[i]);
    if (!s.violates(rep.eps_abs)) continue;
    const double strength = std::min(s.max_pos, s.max_neg);
    if (strength > best_strength * (1.0 + 1e-15)) {
      best_strength = strength;
      best = static_cast<int>(k);
      best_scan = s;
    }
  }
  if (best >= 0) {
    rep.separable = false;
    SeparabilityWitness w;
    w.normal = to_vec(draws[best].normal);
    w.offset = draws[best].offset;
    w.point_pos = to_vec(best_scan.p_pos);
    w.point_neg = to_vec(best_scan.p_neg);
    w.diff_pos = best_scan.max_pos;
    w.diff_neg = -best_scan.max_neg;
    w.detail = "halfspace k=" + std::to_string(best);
    rep.witness = w;
  }
  return rep;
}

AxisLine axis_through_point(const FieldFn& u, const Vec3& x, double probe_radius, double eps) {
  const SphereFn probe = SphereFn::from_function(
      33, 64, [&](const Vec3& dir) { return u(x + probe_radius * dir); });
  if (probe.max_value() - probe.min_value() <= eps * probe.max_value())
    fail(Errc::RadialProbe, "probe sphere is constant at this tolerance");
  const AxisReport caps = sphere_caps_and_axis(probe, eps);
  AxisLine line;
  line.base = to_vec(x);
  line.direction = caps.axis;
  return line;
}

AxisLine axis_through_point_auto(const FieldFn& u, const Vec3& x, double eps) {
  const double ladder[] = {0.5, 1.0, 2.0, 4.0};
  for (double r : ladder) {
    try {
      return axis_through_point(u, x, r, eps);
    } catch (const Error& e) {
      if (e.code() != Errc::RadialProbe) throw;
    }
  }
  fail(Errc::RadialProbe, "all probe radii gave constant spheres");
}

EvenMonotoneReport even_monotone_check(const std::vector<double>& values, double x_extent,
                                       bool decay_hint, double eps) {
  const int n = static_cast<int>(values.size());
  if (n < 5 || n % 2 == 0) fail(Errc::GridError, "even grid needs an odd sample count >= 5");
  const int big_m = (n - 1) / 2;  // index of x = 0
  double vmax = *std::max_element(values.begin(), values.end());
  EvenMonotoneReport rep;
  rep.eps_abs = eps * vmax;

  for (int j = 0; j <= big_m; ++j)
    if (std::abs(values[big_m + j] - values[big_m - j]) > rep.eps_abs)
      fail(Errc::NotEven, "samples are not even about 0");

  // Reflection points alpha = a * (step/2), nodes and midpoints in [0, X).
  for (int a = 0; a < 2 * big_m; ++a) {
    bool pos = false, neg = false;
    const int j_begin = (a % 2 == 0) ? big_m + a / 2 + 1 : big_m + (a + 1) / 2;
    for (int j = j_begin; j <= 2 * big_m; ++j) {
      const int mirror = a + 2 * big_m - j;
      const double d = values[j] - values[mirror];
      pos = pos || d > rep.eps_abs;
      neg = neg || d < -rep.eps_abs;
    }
    if (pos && neg) {
      rep.eq8_holds = false;
      if (!rep.witness_alpha) rep.witness_alpha = a * (x_extent / big_m) / 2.0;
    } else if (!pos && !neg && a > 0) {
      rep.k_nonzero = true;
    }
  }

  rep.nonincreasing = true;
  for (int j = big_m; j < 2 * big_m; ++j)
    if (values[j + 1] - values[j] > rep.eps_abs) rep.nonincreasing = false;

  if (rep.eq8_holds && rep.nonincreasing)
    rep.classification = EvenClassification::Nonincreasing;
  else if (rep.k_nonzero && !decay_hint)
    rep.classification = EvenClassification::PeriodicType;
  else
    rep.classification = EvenClassification::Indeterminate;

  if (decay_hint && rep.eq8_holds && !rep.nonincreasing)
    fail(Errc::MonotonicityError,
         "one-sided comparisons hold and decay is asserted, but the samples increase");
  return rep;
}

RadialProfileResult radial_center_and_profile(const FieldFn& u, double eps, int scan_n) {
  if (!u.decay_hint())
    fail(Errc::Precondition, "radial recovery requires the decay hint");

  // Coarse global maximizer over the cube, then a quadratic fit around it.
  const double extent = u.r_max();
  const double step = 2.0 * extent / (scan_n - 1);
  Vec3 best = Vec3::Zero();
  double fbest = -1.0;
  for (int i = 0; i < scan_n; ++i) {
    for (int j = 0; j < scan_n; ++j) {
      for (int k = 0; k < scan_n; ++k) {
        const Vec3 x(-extent + i * step, -extent + j * step, -extent + k * step);
        const double f = u(x);
        if (f > fbest) {
          fbest = f;
          best = x;
        }
      }
    }
  }
  Vec3 center = best;
  for (int d = 0; d < 3; ++d) {
    Vec3 e = Vec3::Zero();
    e[d] = step;
    const double fm = u(best - e), fp = u(best + e);
    const double denom = fm - 2.0 * fbest + fp;
    if (denom < 0.0) {
      double delta = 0.5 * (fm - fp) / denom;
      center[d] = best[d] + std::clamp(delta, -0.5, 0.5) * step;
    }
  }

  // Constancy on spheres around the center, and the radial profile.
  RadialProfileResult res;
  res.center = center;
  const double r_span = 0.95 * (extent - center.norm());
  if (r_span <= 0.0) fail(Errc::NotRadial, "center too close to the analysis boundary");
  const int n_r = 24;
  const double f0 = u(center);
  res.profile.param.push_back(0.0);
  res.profile.value.push_back(f0);
  double prev = f0;
  for (int l = 1; l <= n_r; ++l) {
    const double r = r_span * l / n_r;
    double smin = 0.0, smax = 0.0, mean = 0.0;
    int count = 0;
    for (int i = 0; i < 17; ++i) {
      const double th = kPi * i / 16;
      const int jmax = (i == 0 || i == 16) ? 1 : 32;
      for (int j = 0; j < jmax; ++j) {
        const double lam = 2.0 * kPi * j / 32;
        const Vec3 dir(std::sin(th) * std::cos(lam), std::sin(th) * std::sin(lam),
                       std::cos(th));
        const double f = u(center + r * dir);
        if (count == 0) smin = smax = f;
        smin = std::min(smin, f);
        smax = std::max(smax, f);
        mean += f;
        ++count;
      }
    }
    if ((smax - smin) > eps * fbest)
      fail(Errc::NotRadial, "sphere at r=" + std::to_string(r) + " is not constant");
    mean /= count;
    res.profile.param.push_back(r);
    res.profile.value.push_back(mean);
    if (mean - prev > eps * fbest)
      fail(Errc::NotRadial, "radial profile increases at r=" + std::to_string(r));
    prev = mean;
  }
  return res;
}

FieldClassification classify_field(const FieldFn& u, double eps, std::uint64_t seed) {
  FieldClassification out;
  const SeparabilityReport sep = is_separable_field(u, 128, 256, eps, seed);
  if (!sep.separable) fail(Errc::NotSeparable, "field is not separable: " + sep.witness->detail);

  if (u.decay_hint()) {
    try {
      const RadialProfileResult r = radial_center_and_profile(u, std::max(eps, 0.02));
      out.kind = SymmetryKind::Radial;
      out.center = r.center;
      return out;
    } catch (const Error& e) {
      if (e.code() != Errc::NotRadial) throw;
      // Separable with decay must be radial; anything else is inconsistent.
      out.inconsistent = true;
      out.note = "separable with decay but no radial structure";
      return out;
    }
  }
  try {
    const AxisLine line = axis_through_point_auto(u, Vec3::Zero(), eps);
    out.kind = SymmetryKind::Axial;
    out.direction = Vec3(line.direction[0], line.direction[1], line.direction[2]);
  } catch (const Error& e) {
    if (e.code() != Errc::RadialProbe) throw;
    out.kind = SymmetryKind::Constant;
    out.note = "all probe spheres constant";
  }
  return out;
}

FieldFn named_field_fixture(const std::string& name) {
  if (name == "radial_bump")
    return FieldFn(
        [](const Vec3& x) {
          return std::exp(-x.squaredNorm()) + 0.01 * std::exp(-x.squaredNorm() / 100.0);
        },
        8.0, true);
  if (name == "tanh_slab")
    return FieldFn([](const Vec3& x) { return 2.0 + std::tanh(-x[2]); }, 8.0, false);
  if (name == "two_bumps")
    return FieldFn(
        [](const Vec3& x) {
          const Vec3 c(4, 0, 0);
          return 1.0 / (1.0 + x.squaredNorm()) + 0.5 / (1.0 + (x - c).squaredNorm());
        },
        8.0, true);
  if (name == "lorentz_center")
    return FieldFn(
        [](const Vec3& x) {
          const Vec3 c(1, 2, 0);
          return 1.0 / (1.0 + (x - c).squaredNorm());
        },
        8.0, true);
  if (name == "exp_decay")
    return FieldFn([](const Vec3& x) { return std::exp(-x.norm()); }, 8.0, true);
  if (name == "gaussian")
    return FieldFn([](const Vec3& x) { return std::exp(-x.squaredNorm()); }, 8.0, true);
  fail(Errc::ParseError, "unknown field fixture: " + name);
}

}  // namespace polarsym
