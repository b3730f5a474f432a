#pragma once

#include <cstdint>

namespace grenander::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer. Bijective on uint64, good avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Stream key for replication r at sample size n. Pure function of its
// arguments, so results do not depend on scheduling or worker count.
// This formula is part of the reproducibility contract; do not change it
// without bumping the output format.
inline std::uint64_t stream_key(std::uint64_t base_seed, std::uint64_t n,
                                std::uint64_t rep) {
  std::uint64_t k = mix64(base_seed ^ kGolden);
  k = mix64(k ^ (n + 0xA0761D6478BD642Full));
  k = mix64(k ^ (rep + 0xE7037ED1A0B428DBull));
  return k;
}

// Independent lane within a stream (e.g. the X and Y samples of a
// convolution replication).
inline std::uint64_t substream(std::uint64_t key, std::uint64_t lane) {
  return mix64(key ^ (lane + 0x8BB84B93962EACC9ull));
}

// Counter-based generator: draw i is mix64(key + (i+1)*golden), i.e.
// SplitMix64 with jump-ahead. State is just (key, counter).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGolden); }

  // Uniform on the open interval (0,1): 53-bit lattice offset by half a step,
  // so 0 and 1 are never returned and inverse-CDF sampling stays in-domain.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace grenander::rng
