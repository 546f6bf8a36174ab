#include "wmc/rng.hpp"

#include <cmath>
#include <numbers>

#include "wmc/error.hpp"

namespace wmc {

namespace {

std::uint64_t key_hash(const StreamKey& key) {
  std::uint64_t h = mix64(key.seed);
  h = mix64(h ^ key.trajectory_index);
  h = mix64(h ^ (static_cast<std::uint64_t>(key.axis_index) << 32 | 0x5bd1e995ULL));
  return h;
}

}  // namespace

GaussianStream::GaussianStream(const StreamKey& key) : engine_(key_hash(key)) {}

double GaussianStream::uniform_open() {
  // 53 random mantissa bits, offset by half an ulp so 0 is never returned.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform_open()));
  const double phi = 2.0 * std::numbers::pi * uniform_open();
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

void GaussianStream::fill(std::span<double> out, double stddev) {
  for (auto& x : out) x = stddev * next();
}

std::vector<double> gaussian_sequence(const StreamKey& key, std::size_t count, double variance) {
  if (!(variance > 0.0)) throw Error(ErrorCode::InvalidParameter, "variance: must be > 0");
  std::vector<double> out(count);
  GaussianStream stream(key);
  stream.fill(out, std::sqrt(variance));
  return out;
}

}  // namespace wmc
