#pragma once

#include <concepts>
#include <cstdint>
#include <random>

namespace elemental {

/// SplitMix64 finaliser. Used only to derive seeds; the draws themselves come
/// from mt19937_64, whose output sequence is fixed by the C++ standard.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of the child stream for (parent seed, task index).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t task) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(task + 0x632BE59BD9B4E019ULL));
}

/// Anything that hands out uniform draws on the open interval (0, 1).
template <typename T>
concept UniformSource = requires(T& t) {
  { t.uniform_open() } -> std::convertible_to<double>;
};

/// Deterministic random stream. Identical seeds give identical sequences on
/// every conforming platform: the engine is mt19937_64 and the conversion to
/// double is done here rather than through std::uniform_real_distribution.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  /// Stream for task `task` of the experiment seeded with `seed`.
  static RandomStream child(std::uint64_t seed, std::uint64_t task) {
    return RandomStream(derive_seed(seed, task));
  }

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on (0, 1): the midpoints of a 2^-53 grid, so 0 and 1 never occur.
  double uniform_open() {
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
  }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

static_assert(UniformSource<RandomStream>);

}  // namespace elemental
