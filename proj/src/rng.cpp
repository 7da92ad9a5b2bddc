#include "shopfloor/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace shopfloor {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) noexcept : seed_(seed) {
  std::uint64_t sm = seed;
  for (auto& word : s_) word = splitmix64(sm);
}

std::uint64_t RngStream::derive_seed(std::uint64_t base_seed,
                                     std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t state = base_seed;
  std::uint64_t acc = splitmix64(state);
  for (std::uint64_t index : path) {
    state = acc ^ (index * 0xd1b54a32d192ed03ULL + 0x8bb84b93962eacc9ULL);
    acc = splitmix64(state);
  }
  return acc;
}

RngStream RngStream::derive(std::uint64_t base_seed,
                            std::initializer_list<std::uint64_t> path) noexcept {
  return RngStream(derive_seed(base_seed, path));
}

std::uint64_t RngStream::next_u64() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double sample_triangular(RngStream& rng, double min, double mode, double max) {
  if (!(min <= mode && mode <= max)) {
    throw std::invalid_argument("triangular parameters must satisfy min <= mode <= max, got (" +
                                std::to_string(min) + ", " + std::to_string(mode) + ", " +
                                std::to_string(max) + ")");
  }
  const double width = max - min;
  if (width == 0.0) return min;
  const double u = rng.uniform();
  const double split = (mode - min) / width;
  double x;
  if (u < split) {
    x = min + std::sqrt(u * width * (mode - min));
  } else {
    x = max - std::sqrt((1.0 - u) * width * (max - mode));
  }
  // Guard the last ulp; sqrt rounding may step outside [min, max].
  if (x < min) x = min;
  if (x > max) x = max;
  return x;
}

double sample_exponential(RngStream& rng, double rate_per_hour) {
  if (!(rate_per_hour > 0.0)) {
    throw std::invalid_argument("exponential rate must be positive, got " +
                                std::to_string(rate_per_hour));
  }
  return -std::log(rng.uniform_open()) * (60.0 / rate_per_hour);
}

bool bernoulli(RngStream& rng, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("probability must lie in [0, 1], got " + std::to_string(p));
  }
  return rng.uniform() < p;
}

}  // namespace shopfloor
