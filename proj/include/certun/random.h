// Copyright 2026 The certun Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CERTUN_RANDOM_H_
#define CERTUN_RANDOM_H_

#include <array>
#include <cstdint>
#include <optional>

namespace certun {

// Philox4x32-10 block function: one 128-bit counter, 64-bit key.
std::array<uint32_t, 4> Philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key);

// Counter-based random stream. The key is the master seed and the high half
// of the counter is the stream id, so streams never overlap and any stream
// can be reconstructed from (seed, stream) alone.
class Rng {
 public:
  Rng(uint64_t seed, uint64_t stream);

  uint32_t NextU32();
  uint64_t NextU64();
  // Uniform on (0, 1); never returns 0 or 1.
  double Uniform();
  // Standard normal via Box–Muller; the second variate is kept for the
  // next call.
  double Normal();
  // Uniform on [0, bound). Requires bound > 0.
  uint64_t UniformInt(uint64_t bound);

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

 private:
  void Refill();

  uint64_t seed_;
  uint64_t stream_;
  uint64_t block_ = 0;
  std::array<uint32_t, 4> buffer_{};
  int next_ = 4;
  std::optional<double> spare_normal_;
};

// Stream ids for the independent purposes within one trial.
enum class StreamPurpose : uint64_t {
  kInit = 0,
  kLearn = 1,
  kUnlearn = 2,
  kRequest = 3,
  kReplacement = 4,
  kData = 5,
  kRetrain = 6,
};

// Stream id for (trial, purpose): trial·16 + purpose.
uint64_t TrialStream(uint64_t trial, StreamPurpose purpose);

}  // namespace certun

#endif  // CERTUN_RANDOM_H_
