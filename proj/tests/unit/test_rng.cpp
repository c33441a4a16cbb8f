#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>

#include "landscape/rng.hpp"

using namespace landscape;

// Known-answer vectors for philox4x32-10 from the Random123 distribution
// (kat_vectors): counter words c0..c3, key words k0,k1 -> output x0..x3.
TEST_CASE("philox4x32-10 known-answer vectors") {
  {
    // all-zero counter and key
    const auto out = Philox4x32::block(0, 0, 0);
    CHECK(out[0] == 0x6627e8d5u);
    CHECK(out[1] == 0xe169c58du);
    CHECK(out[2] == 0xbc57ac4cu);
    CHECK(out[3] == 0x9b00dbd8u);
  }
  {
    // all-ones counter and key
    const auto out = Philox4x32::block(0xffffffffffffffffull, 0xffffffffffffffffull,
                                       0xffffffffffffffffull);
    CHECK(out[0] == 0x408f276du);
    CHECK(out[1] == 0x41c83b0eu);
    CHECK(out[2] == 0xa20bc7c6u);
    CHECK(out[3] == 0x6d5451fdu);
  }
  {
    // pi digits: counter {243f6a88, 85a308d3, 13198a2e, 03707344},
    // key {a4093822, 299f31d0}
    const std::uint64_t ctr_lo = (0x85a308d3ull << 32) | 0x243f6a88ull;
    const std::uint64_t ctr_hi = (0x03707344ull << 32) | 0x13198a2eull;
    const std::uint64_t key = (0x299f31d0ull << 32) | 0xa4093822ull;
    const auto out = Philox4x32::block(key, ctr_hi, ctr_lo);
    CHECK(out[0] == 0xd16cfe09u);
    CHECK(out[1] == 0x94fdccebu);
    CHECK(out[2] == 0x5001e420u);
    CHECK(out[3] == 0x24126ea1u);
  }
}

TEST_CASE("substreams are deterministic and independent of interleaving") {
  SubstreamRng a(42, 7);
  SubstreamRng b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  // reading stream 3 must not perturb stream 7
  SubstreamRng c(42, 7);
  SubstreamRng other(42, 3);
  SubstreamRng d(42, 7);
  for (int i = 0; i < 50; ++i) {
    (void)other.next_u64();
    CHECK(c.next_u64() == d.next_u64());
  }
}

TEST_CASE("different seeds and streams give different sequences") {
  SubstreamRng a(1, 0), b(2, 0), c(1, 1);
  int equal_ab = 0, equal_ac = 0;
  for (int i = 0; i < 64; ++i) {
    const auto x = a.next_u64();
    if (x == b.next_u64()) ++equal_ab;
    if (x == c.next_u64()) ++equal_ac;
  }
  CHECK(equal_ab == 0);
  CHECK(equal_ac == 0);
}

TEST_CASE("uniform doubles: range and moments") {
  SubstreamRng rng(123, 0);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum_sq += u * u;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  // 4-sigma bands
  CHECK(std::abs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(var - 1.0 / 12.0) < 4.0 * std::sqrt(1.0 / 180.0 / n));
}
