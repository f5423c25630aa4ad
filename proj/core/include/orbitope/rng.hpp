#pragma once

// Counter-based random numbers: the stream for (seed, index) is a pure
// function of both, so samples can be generated on any thread in any order.

#include <cstdint>

namespace orbitope {

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform on (0, 1).
  double uniform();
  /// Standard normal via Box-Muller; pairs are cached.
  double normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace orbitope
