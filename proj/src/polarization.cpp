#include "polarsym/polarization.hpp"

#include <algorithm>
#include <cmath>

#include "polarsym/kernels.hpp"

namespace polarsym {

void PairedGrid::push_pair(const Vec3& x, const Vec3& sx, double w) {
  const std::size_t i = pts_.size();
  pts_.push_back(x);
  pts_.push_back(sx);
  w_.push_back(w);
  w_.push_back(w);
  mirror_.push_back(i + 1);
  mirror_.push_back(i);
  h_side_.push_back(1);
  h_side_.push_back(0);
}

void PairedGrid::push_fixed(const Vec3& x, double w) {
  pts_.push_back(x);
  w_.push_back(w);
  mirror_.push_back(pts_.size() - 1);
  h_side_.push_back(0);
}

void PairedGrid::finalize() {
  xs_.resize(pts_.size());
  ys_.resize(pts_.size());
  zs_.resize(pts_.size());
  for (std::size_t i = 0; i < pts_.size(); ++i) {
    xs_[i] = pts_[i][0];
    ys_[i] = pts_[i][1];
    zs_[i] = pts_[i][2];
  }
}

PairedGrid PairedGrid::random(const HalfSpace& h, double R, int n_pairs, std::uint64_t seed) {
  if (h.dim() != 3 || !h.through_origin())
    fail(Errc::UnpairedGrid, "paired grids need an origin-through half-space in R^3");
  PairedGrid g(h, R);
  Rng rng(seed);
  const Vec3 n(h.normal()[0], h.normal()[1], h.normal()[2]);
  const double w = (4.0 / 3.0) * kPi * R * R * R / (2.0 * n_pairs);
  while (static_cast<int>(g.pts_.size()) < 2 * n_pairs) {
    Vec3 x = rng.in_ball3(R);
    const double d = x.dot(n);
    if (std::abs(d) < 1e-9 * R) continue;  // too close to the plane to pair cleanly
    if (d < 0.0) x = h.reflect3(x);
    g.push_pair(x, h.reflect3(x), w);
  }
  g.finalize();
  return g;
}

PairedGrid PairedGrid::from_points(const HalfSpace& h, double R, const std::vector<Vec3>& h_side,
                                   const std::vector<double>& weights, double plane_tol) {
  if (h.dim() != 3 || !h.through_origin())
    fail(Errc::UnpairedGrid, "paired grids need an origin-through half-space in R^3");
  if (h_side.size() != weights.size()) fail(Errc::UnpairedGrid, "weight count mismatch");
  PairedGrid g(h, R);
  const Vec3 n(h.normal()[0], h.normal()[1], h.normal()[2]);
  for (std::size_t i = 0; i < h_side.size(); ++i) {
    const double d = h_side[i].dot(n);
    if (d < -plane_tol) fail(Errc::UnpairedGrid, "point lies strictly outside H");
    if (h_side[i].norm() > R * (1.0 + 1e-12)) fail(Errc::OutsideBall, "point outside the ball");
    if (d <= plane_tol)
      g.push_fixed(h_side[i], weights[i]);
    else
      g.push_pair(h_side[i], h.reflect3(h_side[i]), weights[i]);
  }
  g.finalize();
  return g;
}

DenseKernel kernel_matrix(const PairedGrid& grid, const GreenKernel& kernel) {
  const std::size_t n = grid.size();
  DenseKernel k;
  k.n = n;
  k.a.resize(n * n);
  const double R = kernel.radius();
  const double near2 = 0.25 * kernel.diag_radius() * kernel.diag_radius();
  const double reg = kernel.regularized_singular_term();
  const double* xs = grid.xs().data();
  const double* ys = grid.ys().data();
  const double* zs = grid.zs().data();

  parallel_for_chunks(n, 32, [&](std::size_t r0, std::size_t r1) {
    for (std::size_t i = r0; i < r1; ++i) {
      const double p[3] = {xs[i], ys[i], zs[i]};
      double* row = k.a.data() + i * n;
      kernels::green3_batch(R, p, xs, ys, zs, n, row);
      // regularize coincident and nearly coincident pairs
      for (std::size_t j = 0; j < n; ++j) {
        const double dx = p[0] - xs[j], dy = p[1] - ys[j], dz = p[2] - zs[j];
        const double r2 = dx * dx + dy * dy + dz * dz;
        if (r2 < near2) {
          const double x2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
          const double y2 = xs[j] * xs[j] + ys[j] * ys[j] + zs[j] * zs[j];
          const double pq = p[0] * xs[j] + p[1] * ys[j] + p[2] * zs[j];
          const double s = x2 * y2 - 2.0 * R * R * pq + R * R * R * R;
          row[j] = reg - R / std::sqrt(s);
        }
      }
    }
  });
  return k;
}

std::vector<double> polarize(const PairedGrid& grid, const std::vector<double>& u) {
  if (u.size() != grid.size()) fail(Errc::UnpairedGrid, "value count does not match the grid");
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const std::size_t m = grid.mirror(i);
    if (m == i)
      out[i] = u[i];
    else if (grid.h_side(i))
      out[i] = std::max(u[i], u[m]);
    else
      out[i] = std::min(u[i], u[m]);
  }
  return out;
}

Partition partition(const PairedGrid& grid, const std::vector<double>& u, double tie_eps) {
  if (u.size() != grid.size()) fail(Errc::UnpairedGrid, "value count does not match the grid");
  Partition p;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!grid.h_side(i)) continue;
    if (u[i] >= u[grid.mirror(i)] - tie_eps)
      p.a_side.push_back(i);
    else
      p.b_side.push_back(i);
  }
  return p;
}

double nonlocal_d(const PairedGrid& grid, const DenseKernel& k, const std::vector<double>& u,
                  double p) {
  const std::size_t n = grid.size();
  if (u.size() != n || k.n != n) fail(Errc::UnpairedGrid, "size mismatch");
  std::vector<double> e(n), ke(n);
  kernels::pow_batch(u.data(), p, n, e.data());
  std::vector<double> we(n);
  for (std::size_t i = 0; i < n; ++i) we[i] = grid.weight(i) * e[i];
  kernels::matvec(k.a.data(), n, n, we.data(), ke.data());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) d += grid.weight(i) * e[i] * ke[i];
  return d;
}

DDecomposition decompose_d_difference(const PairedGrid& grid, const DenseKernel& k,
                                      const std::vector<double>& u, double p) {
  const std::size_t n = grid.size();
  if (u.size() != n || k.n != n) fail(Errc::UnpairedGrid, "size mismatch");

  const std::vector<double> v = polarize(grid, u);
  std::vector<double> up(n), vp(n);
  kernels::pow_batch(u.data(), p, n, up.data());
  kernels::pow_batch(v.data(), p, n, vp.data());

  // Quadrant of each node: the quadrant of its pair (fixed points count as
  // the >= side, consistent with the tie rule).
  std::vector<char> b_class(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t hi = grid.h_side(i) ? i : grid.mirror(i);
    b_class[i] = u[hi] < u[grid.mirror(hi)] - 1e-12;
  }

  DDecomposition out;
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = grid.weight(i);
    const double* row = k.a.data() + i * n;
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const double term = grid.weight(j) * row[j] * (vp[i] * vp[j] - up[i] * up[j]);
      acc[2 * b_class[i] + b_class[j]] += term;
    }
    out.i1 += wi * acc[0];
    out.i2 += wi * acc[1];
    out.i3 += wi * acc[2];
    out.i4 += wi * acc[3];
  }
  return out;
}

double weighted_l2_sq(const PairedGrid& grid, const std::vector<double>& u) {
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) s += grid.weight(i) * u[i] * u[i];
  return s;
}

}  // namespace polarsym
