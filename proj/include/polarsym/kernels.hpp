#pragma once

#include <cstddef>

namespace polarsym::kernels {

// Data-parallel inner loops used by the kernel matrix assembly, the nonlocal
// matvec, and the audit sweeps. Scalar reference implementations and AVX2
// variants are selected once at startup; POLARSYM_SIMD=scalar|avx2|auto
// overrides the cpuid choice, and force_backend() does the same in-process.
//
// The scalar variants mirror the SIMD lane structure (4-way striped
// accumulators, fused multiply-adds), so both backends produce identical
// results on identical inputs; the equivalence suite asserts this.

enum class Backend { Scalar, Avx2 };

Backend active_backend();
const char* backend_name(Backend b);
bool backend_supported(Backend b);
void force_backend(Backend b);
void reset_backend();

// out[i] = G(p, q_i) for the dimension-3 ball kernel on B_R:
//   G = 1/|p-q| - R/sqrt(|p|^2|q|^2 - 2R^2 p.q + R^4).
// The second form of the image term is exact for all p (including p = 0) and
// keeps G symmetric in its arguments. Coincident / near-coincident pairs are
// NOT handled here; callers postprocess them with the quadrature diagonal rule.
void green3_batch(double R, const double p[3], const double* qx, const double* qy,
                  const double* qz, std::size_t n, double* out);

// Dense row-major matvec out = m * v; parallel over rows.
void matvec(const double* m, std::size_t rows, std::size_t cols, const double* v,
            double* out);

// Deterministic striped dot product (single thread).
double dot(const double* a, const double* b, std::size_t n);

void square(const double* a, std::size_t n, double* out);

// out[i] = a[i]^p for a >= 0; p == 2 takes the square fast path.
void pow_batch(const double* a, double p, std::size_t n, double* out);

namespace detail {

struct Ops {
  void (*green3)(double, const double*, const double*, const double*, const double*,
                 std::size_t, double*);
  double (*dot)(const double*, const double*, std::size_t);
  void (*square)(const double*, std::size_t, double*);
};

extern const Ops scalar_ops;
extern const Ops avx2_ops;

}  // namespace detail

}  // namespace polarsym::kernels
