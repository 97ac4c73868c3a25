#pragma once

#include <cstdint>

#include "polarsym/common.hpp"
#include "polarsym/geometry.hpp"
#include "polarsym/green.hpp"

namespace polarsym {

// Node set in B_R closed under the reflection of one origin-through
// half-space, stored as matched (x, sigma x) pairs plus optional fixed points
// on the boundary plane. Paired nodes carry equal quadrature weights, which
// makes the discrete polarization inequality exact rather than approximate.
class PairedGrid {
 public:
  // n_pairs uniform draws in H cap B_R, mirrored; equal weights summing to
  // the ball volume.
  static PairedGrid random(const HalfSpace& h, double R, int n_pairs, std::uint64_t seed);

  // Explicit H-side points with weights; points within plane_tol of the
  // boundary plane become fixed points.
  static PairedGrid from_points(const HalfSpace& h, double R, const std::vector<Vec3>& h_side,
                                const std::vector<double>& weights, double plane_tol = 1e-12);

  std::size_t size() const { return pts_.size(); }
  const Vec3& point(std::size_t i) const { return pts_[i]; }
  double weight(std::size_t i) const { return w_[i]; }
  std::size_t mirror(std::size_t i) const { return mirror_[i]; }
  bool h_side(std::size_t i) const { return h_side_[i]; }
  bool fixed(std::size_t i) const { return mirror_[i] == i; }
  const HalfSpace& halfspace() const { return h_; }
  double radius() const { return R_; }

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  const std::vector<double>& zs() const { return zs_; }

 private:
  PairedGrid(HalfSpace h, double R) : h_(std::move(h)), R_(R) {}
  void push_pair(const Vec3& x, const Vec3& sx, double w);
  void push_fixed(const Vec3& x, double w);
  void finalize();

  HalfSpace h_;
  double R_;
  std::vector<Vec3> pts_;
  std::vector<double> w_;
  std::vector<std::size_t> mirror_;
  std::vector<char> h_side_;
  std::vector<double> xs_, ys_, zs_;
};

// Dense kernel matrix over the grid nodes (row-major, symmetric); pairs
// closer than diag_radius/2 take the regularized value.
struct DenseKernel {
  std::size_t n = 0;
  std::vector<double> a;
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

DenseKernel kernel_matrix(const PairedGrid& grid, const GreenKernel& kernel);

// Larger value on the H side of every pair; fixed points unchanged.
std::vector<double> polarize(const PairedGrid& grid, const std::vector<double>& u);

// H-side indices split by u(x) >= u(sigma x) (ties within tie_eps go to the
// first set, matching the >= in the definition).
struct Partition {
  std::vector<std::size_t> a_side, b_side;
};
Partition partition(const PairedGrid& grid, const std::vector<double>& u,
                    double tie_eps = 1e-12);

// D(u) = sum_ij w_i w_j G_ij u_i^p u_j^p.
double nonlocal_d(const PairedGrid& grid, const DenseKernel& k, const std::vector<double>& u,
                  double p);

// The four quadrant sums of D(u^H) - D(u) split by the partition: A*A and
// B*B vanish (the first identically, the second through the kernel
// reflection identities) and the cross quadrants are nonnegative.
struct DDecomposition {
  double i1 = 0, i2 = 0, i3 = 0, i4 = 0;
  double sum() const { return i1 + i2 + i3 + i4; }
};
DDecomposition decompose_d_difference(const PairedGrid& grid, const DenseKernel& k,
                                      const std::vector<double>& u, double p);

double weighted_l2_sq(const PairedGrid& grid, const std::vector<double>& u);

}  // namespace polarsym
