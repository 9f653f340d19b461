#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace lrfield {

// Philox2x64-10 counter-based generator (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3").  A block cipher over a 128-bit counter with
// a 64-bit key: output depends only on (key, counter), so streams can be
// split by construction instead of by jumping.
//
// Stream layout used throughout the project: the 128-bit counter is
// (stream, block).  `stream` identifies an independent substream (see
// make_stream_id), `block` counts 128-bit blocks drawn from it.
struct Philox2x64 {
  static constexpr std::uint64_t kMul = 0xD2B74407B1CE6E93ULL;
  static constexpr std::uint64_t kKeyBump = 0x9E3779B97F4A7C15ULL;

  static void round(std::uint64_t& c0, std::uint64_t& c1, std::uint64_t k) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(kMul) * c0;
    const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
    const std::uint64_t lo = static_cast<std::uint64_t>(prod);
    c0 = hi ^ k ^ c1;
    c1 = lo;
  }

  // Encrypts (ctr0, ctr1) under `key`; returns two 64-bit words.
  static void block(std::uint64_t key, std::uint64_t ctr0, std::uint64_t ctr1,
                    std::uint64_t& out0, std::uint64_t& out1) {
    std::uint64_t k = key;
    for (int i = 0; i < 10; ++i) {
      round(ctr0, ctr1, k);
      k += kKeyBump;
    }
    out0 = ctr0;
    out1 = ctr1;
  }
};

// Packs the coordinates of a replication into a 64-bit stream id:
// [experiment:16][outer:8][r index:8][replication:32].
inline std::uint64_t make_stream_id(std::uint32_t experiment, std::uint32_t outer,
                                    std::uint32_t r_index, std::uint32_t replication) {
  return (static_cast<std::uint64_t>(experiment & 0xFFFFu) << 48) |
         (static_cast<std::uint64_t>(outer & 0xFFu) << 40) |
         (static_cast<std::uint64_t>(r_index & 0xFFu) << 32) |
         static_cast<std::uint64_t>(replication);
}

// One independent stream of variates.  Cheap to construct; all state is a
// counter, so identical (seed, stream) pairs replay identical sequences
// regardless of what other streams do.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : key_(seed), stream_(stream) {}

  std::uint64_t next_u64() {
    if (!have_word_) {
      Philox2x64::block(key_, stream_, block_++, word_, spare_);
      have_word_ = true;
      return word_;
    }
    have_word_ = false;
    return spare_;
  }

  // Uniform on (0, 1]; never returns 0 so log() is safe.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
  }

  double normal() {
    if (have_normal_) {
      have_normal_ = false;
      return spare_normal_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_normal_ = rad * std::sin(ang);
    have_normal_ = true;
    return rad * std::cos(ang);
  }

  std::uint64_t stream() const { return stream_; }
  std::uint64_t seed() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::uint64_t word_ = 0, spare_ = 0;
  bool have_word_ = false;
  double spare_normal_ = 0.0;
  bool have_normal_ = false;
};

}  // namespace lrfield
