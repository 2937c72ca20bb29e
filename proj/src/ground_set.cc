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

#include "masub/ground_set.h"

#include <string>
#include <vector>

#include "masub/common.h"

namespace masub {

GroundSet GroundSet::FromBlockSizes(std::span<const int> sizes) {
  std::vector<int> owner;
  for (int i = 0; i < static_cast<int>(sizes.size()); ++i) {
    if (sizes[i] <= 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "agent " + std::to_string(i) + " has an empty action block");
    }
    owner.insert(owner.end(), sizes[i], i);
  }
  return FromOwners(owner, static_cast<int>(sizes.size()));
}

GroundSet GroundSet::FromOwners(std::span<const int> owner, int num_agents) {
  if (num_agents <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "ground set needs an agent");
  }
  GroundSet g;
  g.owner_.assign(owner.begin(), owner.end());
  g.blocks_.resize(num_agents);
  for (int a = 0; a < g.size(); ++a) {
    if (owner[a] < 0 || owner[a] >= num_agents) {
      throw Error(ErrorCode::kInvalidArgument,
                  "action " + std::to_string(a) + " has no valid owner");
    }
    g.blocks_[owner[a]].push_back(a);
  }
  for (int i = 0; i < num_agents; ++i) {
    if (g.blocks_[i].empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "agent " + std::to_string(i) + " has an empty action block");
    }
  }
  return g;
}

int GroundSet::owner(int action) const {
  if (!Contains(action)) {
    throw Error(ErrorCode::kInvalidAction,
                "action " + std::to_string(action) + " out of range");
  }
  return owner_[action];
}

std::span<const int> GroundSet::block(int agent) const {
  if (agent < 0 || agent >= num_agents()) {
    throw Error(ErrorCode::kInvalidArgument,
                "agent " + std::to_string(agent) + " out of range");
  }
  return blocks_[agent];
}

void GroundSet::ValidateSet(std::span<const int> set) const {
  std::vector<char> seen(size(), 0);
  for (int a : set) {
    if (!Contains(a)) {
      throw Error(ErrorCode::kInvalidAction,
                  "action " + std::to_string(a) + " out of range");
    }
    if (seen[a]) {
      throw Error(ErrorCode::kInvalidAction,
                  "action " + std::to_string(a) + " repeated");
    }
    seen[a] = 1;
  }
}

}  // namespace masub
