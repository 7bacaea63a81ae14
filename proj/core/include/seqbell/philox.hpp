// Copyright 2026 The seqbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>

namespace seqbell {

/// Philox4x64-10 block function (Salmon et al., SC'11). Stateless: the
/// output depends only on (counter, key), which makes it trivially
/// splittable across threads.
class Philox4x64 {
 public:
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  static constexpr int kRounds = 10;

  static Counter block(Counter ctr, Key key) noexcept {
    for (int r = 0; r < kRounds; ++r) {
      if (r > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      ctr = round(ctr, key);
    }
    return ctr;
  }

 private:
  static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

  static void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                      std::uint64_t& lo) noexcept {
    __extension__ using u128 = unsigned __int128;
    const u128 p = static_cast<u128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
  }

  static Counter round(const Counter& c, const Key& k) noexcept {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit_interval(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Random stream for one Monte Carlo trial, addressed by
/// (seed, shard, trial-in-shard). Each call to next_block() consumes one
/// Philox block; the stream never shares state with any other trial.
class TrialStream {
 public:
  /// Distinguishes this generator's key space from other uses of the seed.
  static constexpr std::uint64_t kStreamTag = 0x73657162656c6c31ULL;

  TrialStream(std::uint64_t seed, std::uint64_t shard,
              std::uint64_t trial) noexcept
      : key_{seed, kStreamTag}, ctr_{trial, shard, 0, 0} {}

  Philox4x64::Counter next_block() noexcept {
    auto out = Philox4x64::block(ctr_, key_);
    ++ctr_[2];
    return out;
  }

  std::uint64_t blocks_drawn() const noexcept { return ctr_[2]; }

 private:
  Philox4x64::Key key_;
  Philox4x64::Counter ctr_;
};

}  // namespace seqbell
