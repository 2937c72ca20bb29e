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

#include "masub/common.h"

#include <cstdint>
#include <random>

namespace masub {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kInvalidAction:
      return "invalid-action";
    case ErrorCode::kCapability:
      return "capability";
    case ErrorCode::kConnectivity:
      return "connectivity";
    case ErrorCode::kValidation:
      return "validation";
    case ErrorCode::kDomain:
      return "domain";
    case ErrorCode::kDegenerate:
      return "degenerate-distribution";
    case ErrorCode::kGeneration:
      return "generation";
    case ErrorCode::kDimensionMismatch:
      return "dimension-mismatch";
    case ErrorCode::kConfig:
      return "config";
    case ErrorCode::kComparison:
      return "comparison";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

int UniformIndex(Rng& rng, int n) {
  if (n <= 0) throw Error(ErrorCode::kInvalidArgument, "empty index range");
  // Multiply-shift on 53 bits; bias is below 2^-40 for the sizes used here.
  int k = static_cast<int>(UniformUnit(rng) * n);
  return k < n ? k : n - 1;
}

Rng MakeStream(std::uint64_t master_seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  return Rng(seq);
}

}  // namespace masub
