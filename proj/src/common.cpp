#include "hdcarp/common.h"

namespace hdcarp {

Variant parse_variant(std::string_view s) {
  if (s == "P" || s == "p") {
    return Variant::P;
  }
  if (s == "U" || s == "u") {
    return Variant::U;
  }
  throw Fault("unknown variant '" + std::string(s) + "'");
}

std::string_view to_string(Variant v) { return v == Variant::P ? "P" : "U"; }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) {
    throw Fault("Rng::below: empty range");
  }
  // Rejection sampling on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v = engine_();
  while (v >= limit) {
    v = engine_();
  }
  return v % n;
}

Rng Rng::derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return Rng(splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0x632be59bd9b4e019ULL)));
}

}  // namespace hdcarp
