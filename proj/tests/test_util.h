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

#ifndef MASUB_TESTS_TEST_UTIL_H_
#define MASUB_TESTS_TEST_UTIL_H_

#include <vector>

#include "gtest/gtest.h"
#include "masub/common.h"

using Vec = std::vector<double>;

// Expects `statement` to throw masub::Error with the given code.
#define EXPECT_ERROR_CODE(statement, expected_code)            \
  do {                                                         \
    bool caught = false;                                       \
    try {                                                      \
      statement;                                               \
    } catch (const ::masub::Error& e) {                        \
      caught = true;                                           \
      EXPECT_EQ(e.code(), expected_code) << e.what();          \
    }                                                          \
    EXPECT_TRUE(caught) << "no masub::Error from " #statement; \
  } while (0)

#endif  // MASUB_TESTS_TEST_UTIL_H_
