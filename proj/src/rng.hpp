#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace tbp {

namespace detail {
// One Philox4x32-10 block. Exposed so known-answer tests can pin the
// permutation directly.
std::array<uint32_t, 4> philox4x32_10(std::array<uint32_t, 4> ctr,
                                      std::array<uint32_t, 2> key);
}  // namespace detail

/// Counter-based PRNG (Philox4x32-10).
///
/// A stream is addressed by (seed, stream_id). The seed is the cipher key and
/// the stream id occupies the upper 64 bits of the 128-bit counter, so two
/// distinct stream ids index disjoint counter ranges of the same keyed
/// permutation. Replication r of a Monte Carlo run owns stream
/// (master_seed, r) and reproduces identically in isolation, in any order,
/// on any thread.
class Rng {
 public:
  Rng(uint64_t seed, uint64_t stream_id) : seed_(seed), stream_(stream_id) {}

  uint64_t next_u64();

  /// Uniform on [0,1) with 53-bit resolution.
  double next_double();

  /// Standard normal (Box-Muller, cosine branch). Consumes exactly two
  /// 64-bit words per call; nothing is cached across calls.
  double next_normal();

  /// Uniform on {0, ..., bound-1}; bound >= 1.
  size_t next_index(size_t bound);

  uint64_t seed() const { return seed_; }
  uint64_t stream_id() const { return stream_; }

 private:
  uint64_t seed_;
  uint64_t stream_;
  uint64_t counter_ = 0;
  uint64_t spare_ = 0;
  bool has_spare_ = false;
};

}  // namespace tbp
