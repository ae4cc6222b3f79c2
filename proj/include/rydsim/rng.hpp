#pragma once

#include <cstdint>
#include <random>

namespace rydsim {

// splitmix64 finalizer; also used to derive per-trajectory stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Seed of stream `stream` under `master`:
//   splitmix64(splitmix64(master) ^ (stream * 0x9E3779B97F4A7C15)).
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t master, std::uint64_t stream) : engine_(stream_seed(master, stream)) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rydsim
