// Shared small pieces: warning sink, deterministic RNG, error types.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qheat {

inline constexpr double kPi = 3.14159265358979323846;

// Non-fatal diagnostics (CFL violations, hierarchy ordering, degenerate
// rescales). Operations take an optional sink; a null sink drops messages.
struct Warnings {
  std::vector<std::string> messages;

  void add(std::string msg) { messages.push_back(std::move(msg)); }
  bool empty() const { return messages.empty(); }
};

inline void warn(Warnings* sink, std::string msg) {
  if (sink) sink->add(std::move(msg));
}

// splitmix64 with a portable uniform-double mapping; std::uniform_*
// distributions are implementation-defined and would break byte-exact
// golden files.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return std::ldexp(static_cast<double>(next_u64() >> 11), -53); }

  // uniform in [-1, 1)
  double next_symmetric() { return 2.0 * next_double() - 1.0; }

  // uniform integer in [0, n)
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

// Iterative norm estimation that ran out of iterations; carries the best
// estimate seen and the relative residual at that point.
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double best, double resid)
      : std::runtime_error(what), best_estimate(best), residual(resid) {}
  double best_estimate;
  double residual;
};

struct PostSelectionError : std::runtime_error {
  explicit PostSelectionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qheat
