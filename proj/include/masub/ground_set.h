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

#ifndef MASUB_GROUND_SET_H_
#define MASUB_GROUND_SET_H_

#include <span>
#include <vector>

namespace masub {

// The action universe {0, ..., n-1} partitioned into one non-empty block per
// agent. Block i lists the actions agent i may take, in increasing order.
class GroundSet {
 public:
  // Contiguous blocks: agent 0 owns the first sizes[0] actions, and so on.
  static GroundSet FromBlockSizes(std::span<const int> sizes);
  // owner[a] is the agent that owns action a.
  static GroundSet FromOwners(std::span<const int> owner, int num_agents);

  int size() const { return static_cast<int>(owner_.size()); }
  int num_agents() const { return static_cast<int>(blocks_.size()); }
  int owner(int action) const;
  std::span<const int> block(int agent) const;
  bool Contains(int action) const { return action >= 0 && action < size(); }

  // Throws kInvalidAction if any index is outside the ground set or repeated.
  void ValidateSet(std::span<const int> set) const;

  bool operator==(const GroundSet& other) const {
    return owner_ == other.owner_;
  }

 private:
  GroundSet() = default;

  std::vector<int> owner_;
  std::vector<std::vector<int>> blocks_;
};

}  // namespace masub

#endif  // MASUB_GROUND_SET_H_
