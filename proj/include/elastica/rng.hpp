#pragma once

// Seeded random streams. The engine is std::mt19937_64 (its output sequence
// is fixed by the standard); the seed is scrambled with SplitMix64 and
// normals come from our own Box-Muller transform, because the standard
// distributions are implementation-defined.

#include <cstdint>
#include <random>

namespace elastica {

std::uint64_t splitmix64(std::uint64_t& state);

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal.
  double normal();
  /// Independent child stream; advances this one.
  Rng split();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace elastica
