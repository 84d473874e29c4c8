#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace spca::rng {

// Counter-based generator: every draw is a pure function of (key, index), so
// streams can be split, replayed, and evaluated in any order. The mixer is
// the splitmix64 finalizer over key + (index + 1) * kStep.
constexpr std::uint64_t kStep = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t value(std::uint64_t key, std::uint64_t index) {
  std::uint64_t z = key + (index + 1) * kStep;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Derives an independent child key; child draws do not collide with draws
// made directly under the parent key for the same small indices.
constexpr std::uint64_t split(std::uint64_t key, std::uint64_t stream) {
  return value(key, stream);
}

// Uniform draw in [0, 1) built from the top 53 bits.
inline double uniform(std::uint64_t key, std::uint64_t index) {
  return static_cast<double>(value(key, index) >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller; draw i consumes raw values 2i and 2i+1.
// The first uniform is shifted into (0, 1] so the log never sees zero.
inline double gaussian(std::uint64_t key, std::uint64_t index) {
  const double u1 =
      (static_cast<double>(value(key, 2 * index) >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(value(key, 2 * index + 1) >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Sequential convenience over the indexed draws. Keep one draw kind per
// stream; mixing kinds reuses raw indices, split a child key instead.
class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}

  double uniform() { return rng::uniform(key_, next_++); }
  double gaussian() { return rng::gaussian(key_, next_++); }

 private:
  std::uint64_t key_;
  std::uint64_t next_ = 0;
};

}  // namespace spca::rng
