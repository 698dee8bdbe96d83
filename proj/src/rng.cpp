#include "rng.hpp"

#include <cmath>
#include <numbers>

namespace tbp {
namespace detail {
namespace {

constexpr uint32_t kMul0 = 0xD2511F53u;
constexpr uint32_t kMul1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;

}  // namespace

std::array<uint32_t, 4> philox4x32_10(std::array<uint32_t, 4> ctr,
                                      std::array<uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round != 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const uint64_t p0 = uint64_t(kMul0) * ctr[0];
    const uint64_t p1 = uint64_t(kMul1) * ctr[2];
    ctr = {uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], uint32_t(p1),
           uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], uint32_t(p0)};
  }
  return ctr;
}

}  // namespace detail

uint64_t Rng::next_u64() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const auto b = detail::philox4x32_10(
      {uint32_t(counter_), uint32_t(counter_ >> 32), uint32_t(stream_),
       uint32_t(stream_ >> 32)},
      {uint32_t(seed_), uint32_t(seed_ >> 32)});
  ++counter_;
  spare_ = uint64_t(b[2]) | (uint64_t(b[3]) << 32);
  has_spare_ = true;
  return uint64_t(b[0]) | (uint64_t(b[1]) << 32);
}

double Rng::next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

double Rng::next_normal() {
  // First uniform shifted into (0,1] so the log stays finite.
  const double u = double((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double v = double(next_u64() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

size_t Rng::next_index(size_t bound) {
  return size_t((static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
}

}  // namespace tbp
