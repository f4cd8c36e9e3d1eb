#pragma once

#include <cstdint>

namespace weaksup {

// SplitMix64 finalizer. Used both inside the generator and standalone to
// derive per-instance stream seeds.
constexpr std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
  z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += UINT64_C(0x9E3779B97F4A7C15);
    return splitmix64_finalize(state_);
  }

  // Uniform in [0, 1) with a 53-bit mantissa.
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Identifies one categorical draw. The uniform stream is a pure function of
// (seed, instance_index, annotator_index), so results never depend on
// iteration order or thread count.
struct RngKey {
  std::uint64_t seed = 0;
  std::uint64_t instance_index = 0;
  std::uint64_t annotator_index = 0;

  std::uint64_t stream_seed() const {
    return seed ^ splitmix64_finalize((instance_index << 32) + annotator_index);
  }

  SplitMix64 stream() const { return SplitMix64(stream_seed()); }
};

}  // namespace weaksup
