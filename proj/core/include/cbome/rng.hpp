#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

namespace cbome {

// Labels for independent random substreams. Every consumer draws from its
// own (kind, unit, iteration) stream, so results do not depend on the order
// in which particles or threads happen to ask for numbers.
enum class Draw : uint32_t {
  kInitPosition = 1,
  kStepNoise = 2,
  kSharedStepNoise = 3,
  kBatchShuffle = 4,
  kDiscard = 5,
  kRestartKick = 6,
  kObjectiveConstants = 7,
  kRunSeed = 8,
  kCloudSample = 9,
  kTrialSubset = 10,
};

namespace detail {

// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
// Counter-based: the output block is a pure function of (counter, key).
inline std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> ctr,
                                          std::array<uint32_t, 2> key) {
  constexpr uint32_t kMul0 = 0xD2511F53u;
  constexpr uint32_t kMul1 = 0xCD9E8D57u;
  constexpr uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr uint32_t kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const uint64_t p0 = static_cast<uint64_t>(kMul0) * ctr[0];
    const uint64_t p1 = static_cast<uint64_t>(kMul1) * ctr[2];
    const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32);
    const uint32_t lo0 = static_cast<uint32_t>(p0);
    const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32);
    const uint32_t lo1 = static_cast<uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

}  // namespace detail

// Sequential view of one substream. Cheap to construct; all draws are a
// deterministic function of (seed, kind, unit, iteration, position).
class Stream {
 public:
  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller on the open-interval uniforms.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(angle);
    have_cached_ = true;
    return r * std::cos(angle);
  }

  void fill_normal(std::span<double> out) {
    for (double& v : out) v = normal();
  }

  void fill_uniform(std::span<double> out) {
    for (double& v : out) v = uniform();
  }

  // Uniform integer in [0, bound). Multiply-shift map; the bias is
  // bound/2^64 and irrelevant at the bounds used here.
  uint64_t below(uint64_t bound) {
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(next_u64()) * bound;
    return static_cast<uint64_t>(wide >> 64);
  }

 private:
  friend class RngStream;

  Stream(std::array<uint32_t, 2> key, uint32_t kind, uint32_t unit,
         uint32_t iteration)
      : key_(key), kind_(kind), unit_(unit), iteration_(iteration) {}

  uint64_t next_u64() {
    if (word_ == 0) {
      block_vals_ = detail::philox4x32(
          {static_cast<uint32_t>(block_), unit_, iteration_, kind_}, key_);
      ++block_;
      word_ = 2;
      return (static_cast<uint64_t>(block_vals_[0]) << 32) | block_vals_[1];
    }
    word_ = 0;
    return (static_cast<uint64_t>(block_vals_[2]) << 32) | block_vals_[3];
  }

  std::array<uint32_t, 2> key_;
  uint32_t kind_;
  uint32_t unit_;
  uint32_t iteration_;
  uint32_t block_ = 0;
  int word_ = 0;
  std::array<uint32_t, 4> block_vals_{};
  double cached_ = 0.0;
  bool have_cached_ = false;
};

// Root of all randomness for one run. Copyable; carries only the seed.
class RngStream {
 public:
  RngStream() = default;
  explicit RngStream(uint64_t seed) : seed_(seed) {}

  uint64_t seed() const { return seed_; }

  Stream stream(Draw kind, uint32_t unit = 0, uint32_t iteration = 0) const {
    return Stream({static_cast<uint32_t>(seed_),
                   static_cast<uint32_t>(seed_ >> 32)},
                  static_cast<uint32_t>(kind), unit, iteration);
  }

  // Deterministic child seed, e.g. one per run in a batch.
  uint64_t derive(uint64_t salt) const {
    const auto block = detail::philox4x32(
        {static_cast<uint32_t>(salt), static_cast<uint32_t>(salt >> 32), 0,
         static_cast<uint32_t>(Draw::kRunSeed)},
        {static_cast<uint32_t>(seed_), static_cast<uint32_t>(seed_ >> 32)});
    return (static_cast<uint64_t>(block[0]) << 32) | block[1];
  }

 private:
  uint64_t seed_ = 0;
};

}  // namespace cbome
