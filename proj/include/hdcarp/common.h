#ifndef HDCARP_COMMON_H
#define HDCARP_COMMON_H

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hdcarp {

// Absolute tolerance for comparing times and loads.
inline constexpr double kTimeTol = 1e-9;

// Raised for contract violations and unrecoverable failures. Expected
// data problems (invalid instances, infeasible solutions) are reported as
// violation lists instead.
class Fault : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Variant { P, U };

Variant parse_variant(std::string_view s);
std::string_view to_string(Variant v);

// Seeded pseudo-random stream. Distribution mappings are implemented here
// instead of using <random> distributions so that results do not depend
// on the standard library vendor.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  // Uniform in [lo, hi], inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Independent stream keyed by (seed, a, b). Used to give every worker of
  // a parallel loop its own reproducible generator.
  static Rng derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace hdcarp

#endif
