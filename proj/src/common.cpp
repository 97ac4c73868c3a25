#include "polarsym/common.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace polarsym {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DimensionError: return "DimensionError";
    case Errc::GridError: return "GridError";
    case Errc::ConstantFunction: return "ConstantFunction";
    case Errc::NotSeparable: return "NotSeparable";
    case Errc::CapFitError: return "CapFitError";
    case Errc::AxisMismatch: return "AxisMismatch";
    case Errc::TangentOrEmpty: return "TangentOrEmpty";
    case Errc::DualOfCenter: return "DualOfCenter";
    case Errc::OutsideBall: return "OutsideBall";
    case Errc::PointsNotInH: return "PointsNotInH";
    case Errc::UnpairedGrid: return "UnpairedGrid";
    case Errc::MonotonicityError: return "MonotonicityError";
    case Errc::PositivityError: return "PositivityError";
    case Errc::NotEven: return "NotEven";
    case Errc::NotRadial: return "NotRadial";
    case Errc::RadialProbe: return "RadialProbe";
    case Errc::ZeroFunction: return "ZeroFunction";
    case Errc::DegenerateD: return "DegenerateD";
    case Errc::CollapseToZero: return "CollapseToZero";
    case Errc::Precondition: return "Precondition";
    case Errc::IoError: return "IoError";
    case Errc::ParseError: return "ParseError";
  }
  return "UnknownError";
}

namespace {

int env_thread_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("POLARSYM_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return std::min(n, hw);
  }
  return hw;
}

std::atomic<int> g_thread_override{0};

}  // namespace

int thread_count() {
  int o = g_thread_override.load(std::memory_order_relaxed);
  return o > 0 ? o : env_thread_count();
}

void set_thread_count(int n) { g_thread_override.store(n, std::memory_order_relaxed); }

void parallel_for_chunks(std::size_t n, std::size_t chunk,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (chunk == 0) chunk = 1;
  const std::size_t nchunks = (n + chunk - 1) / chunk;
  const int nthreads = std::min<std::size_t>(thread_count(), nchunks);
  if (nthreads <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c)
      fn(c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= nchunks) break;
      fn(c * chunk, std::min(n, (c + 1) * chunk));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nthreads - 1);
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace polarsym
