#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "rng.hpp"

using tbp::Rng;

// Reference blocks for the keyed permutation, frozen from the generator's
// published test vectors. If these fail nothing else downstream is trustworthy.
TEST_CASE("known-answer blocks") {
  const auto zero = tbp::detail::philox4x32_10({0, 0, 0, 0}, {0, 0});
  CHECK(zero[0] == 0x6627e8d5u);
  CHECK(zero[1] == 0xe169c58du);
  CHECK(zero[2] == 0xbc57ac4cu);
  CHECK(zero[3] == 0x9b00dbd8u);

  const auto ones = tbp::detail::philox4x32_10(
      {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
      {0xffffffffu, 0xffffffffu});
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);

  const auto pi = tbp::detail::philox4x32_10(
      {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
      {0xa4093822u, 0x299f31d0u});
  CHECK(pi[0] == 0xd16cfe09u);
  CHECK(pi[1] == 0x94fdccebu);
  CHECK(pi[2] == 0x5001e420u);
  CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("streams reproduce and differ") {
  Rng a(123, 7);
  Rng b(123, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng c(123, 8);
  Rng d(124, 7);
  int same_c = 0, same_d = 0;
  Rng a2(123, 7);
  for (int i = 0; i < 1000; ++i) {
    const uint64_t x = a2.next_u64();
    if (x == c.next_u64()) ++same_c;
    if (x == d.next_u64()) ++same_d;
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
}

TEST_CASE("distinct streams look independent") {
  Rng a(99, 0);
  Rng b(99, 1);
  const int n = 10000;
  double sum_ab = 0, sum_a = 0, sum_b = 0, sum_aa = 0, sum_bb = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.next_double();
    const double y = b.next_double();
    sum_a += x;
    sum_b += y;
    sum_aa += x * x;
    sum_bb += y * y;
    sum_ab += x * y;
  }
  const double cov = sum_ab / n - (sum_a / n) * (sum_b / n);
  const double var_a = sum_aa / n - (sum_a / n) * (sum_a / n);
  const double var_b = sum_bb / n - (sum_b / n) * (sum_b / n);
  const double corr = cov / std::sqrt(var_a * var_b);
  CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("uniform doubles") {
  Rng rng(2024, 0);
  const int n = 100000;
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_double();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    // exactly 53 bits of resolution
    REQUIRE(u * 9007199254740992.0 == std::floor(u * 9007199254740992.0));
    sum += u;
  }
  const double se = std::sqrt(1.0 / 12.0 / n);
  CHECK(std::abs(sum / n - 0.5) < 5 * se);
}

TEST_CASE("normal draws: moments and word alignment") {
  Rng rng(31337, 4);
  const int n = 100000;
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.next_normal();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean) < 5.0 / std::sqrt(double(n)));
  // var of the sample variance of a normal is ~2/n
  CHECK(std::abs(var - 1.0) < 5.0 * std::sqrt(2.0 / n));

  // one normal consumes exactly two words: the stream stays aligned
  Rng lhs(5, 9);
  Rng rhs(5, 9);
  lhs.next_normal();
  rhs.next_u64();
  rhs.next_u64();
  for (int i = 0; i < 16; ++i) CHECK(lhs.next_u64() == rhs.next_u64());
}

TEST_CASE("next_index is uniform") {
  Rng rng(7, 0);
  const int n = 100000;
  std::vector<int> counts(10, 0);
  for (int i = 0; i < n; ++i) counts[rng.next_index(10)]++;
  for (const int c : counts) {
    CHECK(std::abs(double(c) / n - 0.1) < 0.005);
  }
  Rng one(7, 1);
  for (int i = 0; i < 100; ++i) CHECK(one.next_index(1) == 0);
}
