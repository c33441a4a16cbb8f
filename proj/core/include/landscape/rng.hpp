#pragma once

#include <array>
#include <cstdint>

namespace landscape {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// A block is a pure function of (key, counter), so any draw can be
// addressed directly: substream identity goes into the high counter
// word and the draw index into the low one.  Output is reproducible
// regardless of which thread asks for which substream.
struct Philox4x32 {
  static constexpr std::uint32_t kMultA = 0xD2511F53u;
  static constexpr std::uint32_t kMultB = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeylA = 0x9E3779B9u;
  static constexpr std::uint32_t kWeylB = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::uint64_t key,
                                            std::uint64_t counter_hi,
                                            std::uint64_t counter_lo) {
    std::uint32_t c0 = static_cast<std::uint32_t>(counter_lo);
    std::uint32_t c1 = static_cast<std::uint32_t>(counter_lo >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(counter_hi);
    std::uint32_t c3 = static_cast<std::uint32_t>(counter_hi >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMultA) * c0;
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMultB) * c2;
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      const std::uint32_t n3 = lo0;
      c0 = n0; c1 = n1; c2 = n2; c3 = n3;
      k0 += kWeylA;
      k1 += kWeylB;
    }
    return {c0, c1, c2, c3};
  }
};

// Stream of uniforms addressed by (seed, stream).  Each block yields two
// 64-bit words; doubles use the top 53 bits.
class SubstreamRng {
 public:
  SubstreamRng(std::uint64_t seed, std::uint64_t stream)
      : key_(seed), stream_(stream) {}

  std::uint64_t next_u64() {
    if (avail_ == 0) {
      const auto b = Philox4x32::block(key_, stream_, block_index_++);
      buf_[0] = (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
      buf_[1] = (static_cast<std::uint64_t>(b[2]) << 32) | b[3];
      avail_ = 2;
    }
    return buf_[--avail_];
  }

  // Uniform on [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

 private:
  std::uint64_t key_;
  std::uint64_t stream_;
  std::uint64_t block_index_ = 0;
  std::uint64_t buf_[2] = {0, 0};
  int avail_ = 0;
};

}  // namespace landscape
