//
// Copyright 2026 The Corrgauss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef CORRGAUSS_RANDOMNESS_H_
#define CORRGAUSS_RANDOMNESS_H_

#include <cstdint>
#include <optional>
#include <random>

namespace corrgauss {

// 64-bit avalanche mix (the SplitMix64 finalizer). Frozen: changing it
// changes every seeded output.
std::uint64_t Mix64(std::uint64_t x);

// Deterministic Gaussian sample stream.
//
// The generator is std::mt19937_64 seeded with
//   Mix64(base_seed ^ Mix64(stream_id + 0x9e3779b97f4a7c15)).
// Uniforms take the top 53 bits of one generator output. Normal variates
// come from the Marsaglia polar transform; each accepted pair yields two
// variates and the second is cached for the next call.
//
// A stream has a single owner. Hand distinct streams to distinct threads.
class RngStream {
 public:
  RngStream(std::uint64_t base_seed, std::uint64_t stream_id);

  std::uint64_t base_seed() const { return base_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Child stream keyed by this stream's identity and `child_id`. Pure: does
  // not touch this stream's state.
  RngStream Derive(std::uint64_t child_id) const;

  // Uniform on [0, 1).
  double NextUniform();
  double NextStandardNormal();

  // One draw from N(mean, variance). Throws kNegativeVariance for variance
  // below zero or non-finite arguments. A zero variance returns `mean`
  // exactly but still consumes a variate.
  double Gaussian(double mean, double variance);

 private:
  std::uint64_t base_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

RngStream MakeStream(std::uint64_t base_seed, std::uint64_t stream_id);

}  // namespace corrgauss

#endif  // CORRGAUSS_RANDOMNESS_H_
