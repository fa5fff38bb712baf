#pragma once

// Counter-based random streams (Philox4x32-10).  Every (seed, stream) pair
// addresses an independent, reproducible sequence; streams never overlap and
// draws are independent of thread scheduling by construction.

#include <array>
#include <cmath>
#include <cstdint>

namespace ftsm::rng {

struct Philox4x32 {
  static constexpr std::uint32_t kM0 = 0xD2511F53u;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kW0 = 0x9E3779B9u;
  static constexpr std::uint32_t kW1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> x,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * x[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * x[2];
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      x = {hi1 ^ x[1] ^ key[0], lo1, hi0 ^ x[3] ^ key[1], lo0};
      key[0] += kW0;
      key[1] += kW1;
    }
    return x;
  }
};

// Labels partition the per-replication stream space; labels 0-5 are consumed
// by the series drivers, 16+ by verification internals.
enum : std::uint32_t {
  kStreamGamma = 0,
  kStreamExp = 1,
  kStreamUnif = 2,
  kStreamV = 3,
  kStreamTimes = 4,
  kStreamTail = 5,
  kStreamBootstrap = 16,
};

constexpr std::uint64_t stream_id(std::uint64_t rep, std::uint32_t label) {
  return (rep << 8) | label;
}

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  std::uint32_t next_u32() {
    if (idx_ == 4) refill();
    return buf_[idx_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  // Uniform on (0, 1] with 53-bit resolution; never returns 0, so logs are safe.
  double next_u01() { return 1.0 - static_cast<double>(next_u64() >> 11) * 0x1p-53; }

  double next_exp() { return -std::log(next_u01()); }

  // Standard normal via Box-Muller; draws come in deterministic pairs.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_u01();
    const double u2 = next_u01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  void refill() {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    buf_ = Philox4x32::block(ctr, key_);
    ++block_;
    idx_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int idx_ = 4;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ftsm::rng
