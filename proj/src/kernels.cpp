#include "polarsym/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "polarsym/common.hpp"

namespace polarsym::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend env_backend() {
  if (const char* env = std::getenv("POLARSYM_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
    if (std::strcmp(env, "avx2") == 0) {
      if (!cpu_has_avx2()) throw std::runtime_error("POLARSYM_SIMD=avx2: cpu lacks avx2/fma");
      return Backend::Avx2;
    }
  }
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<int> g_forced{-1};  // -1 auto, else Backend value

Backend current() {
  int f = g_forced.load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Backend>(f);
  static const Backend b = env_backend();
  return b;
}

const detail::Ops& ops() {
  return current() == Backend::Avx2 ? detail::avx2_ops : detail::scalar_ops;
}

}  // namespace

Backend active_backend() { return current(); }

const char* backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool backend_supported(Backend b) { return b == Backend::Scalar || cpu_has_avx2(); }

void force_backend(Backend b) {
  if (!backend_supported(b)) throw std::runtime_error("unsupported simd backend");
  g_forced.store(static_cast<int>(b), std::memory_order_relaxed);
}

void reset_backend() { g_forced.store(-1, std::memory_order_relaxed); }

void green3_batch(double R, const double p[3], const double* qx, const double* qy,
                  const double* qz, std::size_t n, double* out) {
  ops().green3(R, p, qx, qy, qz, n, out);
}

double dot(const double* a, const double* b, std::size_t n) { return ops().dot(a, b, n); }

void square(const double* a, std::size_t n, double* out) { ops().square(a, n, out); }

void pow_batch(const double* a, double p, std::size_t n, double* out) {
  if (p == 2.0) {
    square(a, n, out);
    return;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(a[i], p);
}

void matvec(const double* m, std::size_t rows, std::size_t cols, const double* v,
            double* out) {
  const auto& o = ops();
  parallel_for_chunks(rows, 64, [&](std::size_t r0, std::size_t r1) {
    for (std::size_t r = r0; r < r1; ++r) out[r] = o.dot(m + r * cols, v, cols);
  });
}

}  // namespace polarsym::kernels
