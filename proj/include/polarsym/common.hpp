#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace polarsym {

using Vec = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

constexpr double kPi = 3.14159265358979323846;

// Typed failure conditions named by the operation contracts.
enum class Errc {
  DimensionError,
  GridError,
  ConstantFunction,
  NotSeparable,
  CapFitError,
  AxisMismatch,
  TangentOrEmpty,
  DualOfCenter,
  OutsideBall,
  PointsNotInH,
  UnpairedGrid,
  MonotonicityError,
  PositivityError,
  NotEven,
  NotRadial,
  RadialProbe,
  ZeroFunction,
  DegenerateD,
  CollapseToZero,
  Precondition,
  IoError,
  ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// Deterministic splitmix64-based generator. std::mt19937 is avoided because
// the standard distributions are implementation-defined; every draw here is
// reproducible from the seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Marsaglia polar method; no cached state so forked streams stay independent.
  double normal() {
    for (;;) {
      double u = 2.0 * uniform01() - 1.0;
      double v = 2.0 * uniform01() - 1.0;
      double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }

  Vec3 unit3() {
    for (;;) {
      Vec3 g(normal(), normal(), normal());
      double n = g.norm();
      if (n > 1e-12) return g / n;
    }
  }

  Vec unit(int dim) {
    for (;;) {
      Vec g(dim);
      for (int i = 0; i < dim; ++i) g[i] = normal();
      double n = g.norm();
      if (n > 1e-12) return g / n;
    }
  }

  Vec3 in_ball3(double radius) {
    for (;;) {
      Vec3 p(uniform(-radius, radius), uniform(-radius, radius), uniform(-radius, radius));
      if (p.squaredNorm() < radius * radius) return p;
    }
  }

  // Independent substream; used to derive per-task seeds from a master seed.
  Rng fork(std::uint64_t salt) const {
    Rng r(state_ ^ (0x632be59bd9b4e019ULL * (salt + 1)));
    r.next();
    return r;
  }

 private:
  std::uint64_t state_;
};

// Thread pool facade. Thread count comes from POLARSYM_THREADS (capped by
// hardware), overridable in-process for tests.
int thread_count();
void set_thread_count(int n);  // n <= 0 restores the environment default

// Runs fn(begin, end) over [0, n) split into contiguous chunks. Each chunk is
// processed by exactly one worker; outputs indexed by position are
// deterministic regardless of the thread count.
void parallel_for_chunks(std::size_t n, std::size_t chunk,
                         const std::function<void(std::size_t, std::size_t)>& fn);

inline bool nearly_equal(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace polarsym
