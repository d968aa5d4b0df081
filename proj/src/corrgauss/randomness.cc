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

#include "corrgauss/randomness.h"

#include <cmath>

#include "corrgauss/error.h"

namespace corrgauss {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

std::uint64_t Mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t base_seed, std::uint64_t stream_id)
    : base_seed_(base_seed),
      stream_id_(stream_id),
      engine_(Mix64(base_seed ^ Mix64(stream_id + kGolden))) {}

RngStream RngStream::Derive(std::uint64_t child_id) const {
  return RngStream(Mix64(base_seed_ ^ Mix64(stream_id_ ^ kGolden)) + kGolden,
                   child_id);
}

double RngStream::NextUniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::NextStandardNormal() {
  if (spare_) {
    double z = *spare_;
    spare_.reset();
    return z;
  }
  double u, v, s;
  do {
    u = 2.0 * NextUniform() - 1.0;
    v = 2.0 * NextUniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  return u * factor;
}

double RngStream::Gaussian(double mean, double variance) {
  if (!std::isfinite(mean) || !std::isfinite(variance) || variance < 0.0) {
    throw Error(ErrorCode::kNegativeVariance,
                "variance must be finite and nonnegative");
  }
  const double z = NextStandardNormal();
  if (variance == 0.0) return mean;
  return mean + std::sqrt(variance) * z;
}

RngStream MakeStream(std::uint64_t base_seed, std::uint64_t stream_id) {
  return RngStream(base_seed, stream_id);
}

}  // namespace corrgauss
