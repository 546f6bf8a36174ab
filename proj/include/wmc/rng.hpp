#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace wmc {

// Identifies one independent Gaussian stream. Streams are derived
// statelessly from the key, so results do not depend on how work is split
// across threads.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t trajectory_index = 0;
  std::uint32_t axis_index = 0;
};

// SplitMix64 finaliser; a bijective avalanche mix of a 64-bit word.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives a sub-seed, e.g. one per row of a time sweep.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) noexcept {
  return mix64(mix64(seed) ^ mix64(salt + 0x632be59bd9b4e019ULL));
}

// Standard-normal generator over std::mt19937_64 (whose output sequence is
// fixed by the standard) with a Box-Muller transform, so sequences are
// reproducible across standard libraries.
class GaussianStream {
 public:
  explicit GaussianStream(const StreamKey& key);

  double next();
  void fill(std::span<double> out, double stddev);

 private:
  double uniform_open();  // (0, 1)

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// `count` independent draws from N(0, variance), deterministic in `key`.
std::vector<double> gaussian_sequence(const StreamKey& key, std::size_t count, double variance);

}  // namespace wmc
