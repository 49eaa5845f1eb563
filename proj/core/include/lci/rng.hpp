#pragma once

#include <cstdint>
#include <limits>

namespace lci {

// Identifies one reproducible random stream. Workers running in parallel must
// use distinct stream ids; substream() derives child ids deterministically.
struct RngConfig {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  RngConfig substream(std::uint64_t index) const;

  friend bool operator==(const RngConfig&, const RngConfig&) = default;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Counter-based generator: the k-th output of a stream is mix64(key + k*gamma),
// so any (seed, stream) pair reproduces the same sequence bit for bit.
// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(const RngConfig& config);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    counter_ += kGamma;
    return mix64(key_ + counter_);
  }

  // Uniform double in [0, 1) from the top 53 bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace lci
