#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace icim {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A stream is
/// identified by (seed, trial, stream); draws walk the low counter word, so
/// every trial owns an independent, reproducible substream.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;
  using result_type = std::uint64_t;

  static constexpr const char* name() { return "philox4x32-10"; }

  Philox4x32(std::uint64_t seed, std::uint64_t trial, std::uint32_t stream = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        ctr_{0, stream, static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)} {}

  static Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (used_ == 2) refill();
    const result_type v = (std::uint64_t{buf_[2 * used_]} << 32) | buf_[2 * used_ + 1];
    ++used_;
    return v;
  }

  /// Uniform on (0, 1) with 53 random bits; never returns 0 or 1.
  double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  void refill() {
    buf_ = block(ctr_, key_);
    ++ctr_[0];
    used_ = 0;
  }

  Key key_;
  Counter ctr_;
  Counter buf_{};
  int used_ = 2;
};

}  // namespace icim
