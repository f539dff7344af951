#pragma once

#include <cstdint>
#include <random>

namespace tailtest {

// One reproducible stream of uniforms, identified by (seed, stream index).
// Distinct indices give independently seeded engines, so work split across
// threads by stream index is reproducible regardless of scheduling.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_index);

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() noexcept {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tailtest
