#include <cmath>

#include "polarsym/kernels.hpp"

// Reference backend. The 4-way striping and fma usage match the AVX2 lane
// layout so both backends round identically.

namespace polarsym::kernels {
namespace {

void green3_scalar(double R, const double p[3], const double* qx, const double* qy,
                   const double* qz, std::size_t n, double* out) {
  const double px = p[0], py = p[1], pz = p[2];
  const double x2 = std::fma(px, px, std::fma(py, py, pz * pz));
  const double R2 = R * R;
  const double twoR2 = 2.0 * R2;
  const double R4 = R2 * R2;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = px - qx[i];
    const double dy = py - qy[i];
    const double dz = pz - qz[i];
    const double r2 = std::fma(dx, dx, std::fma(dy, dy, dz * dz));
    const double y2 = std::fma(qx[i], qx[i], std::fma(qy[i], qy[i], qz[i] * qz[i]));
    const double pq = std::fma(px, qx[i], std::fma(py, qy[i], pz * qz[i]));
    const double s = std::fma(x2, y2, std::fma(-twoR2, pq, R4));
    out[i] = 1.0 / std::sqrt(r2) - R / std::sqrt(s);
  }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
  const std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    acc0 = std::fma(a[i + 0], b[i + 0], acc0);
    acc1 = std::fma(a[i + 1], b[i + 1], acc1);
    acc2 = std::fma(a[i + 2], b[i + 2], acc2);
    acc3 = std::fma(a[i + 3], b[i + 3], acc3);
  }
  double sum = (acc0 + acc2) + (acc1 + acc3);
  for (std::size_t i = n4; i < n; ++i) sum = std::fma(a[i], b[i], sum);
  return sum;
}

void square_scalar(const double* a, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * a[i];
}

}  // namespace

namespace detail {
const Ops scalar_ops = {green3_scalar, dot_scalar, square_scalar};
}  // namespace detail

}  // namespace polarsym::kernels
