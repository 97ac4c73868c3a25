#include "polarsym/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace polarsym::kernels {
namespace {

__attribute__((target("avx2,fma"))) void green3_avx2(double R, const double p[3],
                                                     const double* qx, const double* qy,
                                                     const double* qz, std::size_t n,
                                                     double* out) {
  const double px = p[0], py = p[1], pz = p[2];
  const double x2 = std::fma(px, px, std::fma(py, py, pz * pz));
  const double R2 = R * R;
  const double R4 = R2 * R2;

  const __m256d vpx = _mm256_set1_pd(px);
  const __m256d vpy = _mm256_set1_pd(py);
  const __m256d vpz = _mm256_set1_pd(pz);
  const __m256d vx2 = _mm256_set1_pd(x2);
  const __m256d vR = _mm256_set1_pd(R);
  const __m256d vmR2x2 = _mm256_set1_pd(-2.0 * R2);
  const __m256d vR4 = _mm256_set1_pd(R4);
  const __m256d vone = _mm256_set1_pd(1.0);

  const std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d x = _mm256_loadu_pd(qx + i);
    const __m256d y = _mm256_loadu_pd(qy + i);
    const __m256d z = _mm256_loadu_pd(qz + i);

    const __m256d dx = _mm256_sub_pd(vpx, x);
    const __m256d dy = _mm256_sub_pd(vpy, y);
    const __m256d dz = _mm256_sub_pd(vpz, z);
    const __m256d r2 =
        _mm256_fmadd_pd(dx, dx, _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dz, dz)));

    const __m256d y2 =
        _mm256_fmadd_pd(x, x, _mm256_fmadd_pd(y, y, _mm256_mul_pd(z, z)));
    const __m256d pq =
        _mm256_fmadd_pd(vpx, x, _mm256_fmadd_pd(vpy, y, _mm256_mul_pd(vpz, z)));
    const __m256d s = _mm256_fmadd_pd(vx2, y2, _mm256_fmadd_pd(vmR2x2, pq, vR4));

    const __m256d g = _mm256_sub_pd(_mm256_div_pd(vone, _mm256_sqrt_pd(r2)),
                                    _mm256_div_pd(vR, _mm256_sqrt_pd(s)));
    _mm256_storeu_pd(out + i, g);
  }
  if (n4 < n) detail::scalar_ops.green3(R, p, qx + n4, qy + n4, qz + n4, n - n4, out + n4);
}

__attribute__((target("avx2,fma"))) double dot_avx2(const double* a, const double* b,
                                                    std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  // (acc0+acc2) + (acc1+acc3), matching the scalar combine order.
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  double sum = _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
  for (std::size_t i = n4; i < n; ++i) sum = std::fma(a[i], b[i], sum);
  return sum;
}

__attribute__((target("avx2,fma"))) void square_avx2(const double* a, std::size_t n,
                                                     double* out) {
  const std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d x = _mm256_loadu_pd(a + i);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(x, x));
  }
  for (std::size_t i = n4; i < n; ++i) out[i] = a[i] * a[i];
}

}  // namespace

namespace detail {
const Ops avx2_ops = {green3_avx2, dot_avx2, square_avx2};
}  // namespace detail

}  // namespace polarsym::kernels

#else  // non-x86: AVX2 entries alias the scalar reference

namespace polarsym::kernels::detail {
const Ops avx2_ops = scalar_ops;
}  // namespace polarsym::kernels::detail

#endif
