#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace shopfloor {

/// Name of the generator recorded in run metadata.
inline constexpr std::string_view kGeneratorName = "xoshiro256**/splitmix64";

/// splitmix64 step; used for seeding and for stream derivation.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Per-replication random stream (xoshiro256**).
///
/// Streams are keyed by a base seed plus a path of indices, e.g.
/// (condition, replication). The same key always yields the same variate
/// sequence, and all variates are produced by integer arithmetic plus IEEE
/// double operations so sequences are identical across platforms.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) noexcept;

  /// Stream for (base_seed, path...). Each path element is mixed through
  /// splitmix64 so neighbouring indices give unrelated states.
  static RngStream derive(std::uint64_t base_seed,
                          std::initializer_list<std::uint64_t> path) noexcept;

  /// Seed value that `derive` would use for this key; recorded in outputs.
  static std::uint64_t derive_seed(std::uint64_t base_seed,
                                   std::initializer_list<std::uint64_t> path) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Uniform on (0, 1); never returns 0.
  double uniform_open() noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

/// Standard triangular variate via inverse CDF. Throws std::invalid_argument
/// unless min <= mode <= max.
double sample_triangular(RngStream& rng, double min, double mode, double max);

/// Exponential interarrival time in minutes for a rate given per hour.
double sample_exponential(RngStream& rng, double rate_per_hour);

bool bernoulli(RngStream& rng, double p);

}  // namespace shopfloor
