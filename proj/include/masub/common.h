// Copyright 2026 The Authors.
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

#ifndef MASUB_COMMON_H_
#define MASUB_COMMON_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace masub {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidAction,
  kCapability,
  kConnectivity,
  kValidation,
  kDomain,
  kDegenerate,
  kGeneration,
  kDimensionMismatch,
  kConfig,
  kComparison,
};

std::string_view ErrorCodeName(ErrorCode code);

// All recoverable failures in the library are reported with this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Every random draw goes through an explicitly seeded stream of this type.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
// Independent of the standard library's distribution implementations, so
// streams replay identically across toolchains.
inline double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n).
int UniformIndex(Rng& rng, int n);

// Derives an independent stream from a master seed and a stream label.
Rng MakeStream(std::uint64_t master_seed, std::uint64_t stream_id);

// Exhaustive 2^n enumeration is allowed up to this many elements.
inline constexpr int kDefaultExactThreshold = 12;
inline constexpr int kMaxExactThreshold = 20;

}  // namespace masub

#endif  // MASUB_COMMON_H_
