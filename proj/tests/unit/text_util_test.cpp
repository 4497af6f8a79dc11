// Copyright 2026 The biomine Authors.
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

#include "biomine/text_util.hpp"

#include <gtest/gtest.h>

namespace biomine::text {
namespace {

TEST(TextUtilTest, DecodesAndEncodesUtf8) {
  const std::string s = "aé€😀";
  const auto cps = decode(s);
  ASSERT_EQ(cps.size(), 4u);
  EXPECT_EQ(cps[1], U'é');
  EXPECT_EQ(cps[3], U'\U0001F600');
  EXPECT_EQ(encode(cps), s);
  EXPECT_EQ(length(s), 4u);
}

TEST(TextUtilTest, InvalidBytesBecomeReplacementCharacters) {
  const std::string s = "a\xC3";  // truncated two-byte sequence
  const auto cps = decode(s);
  ASSERT_EQ(cps.size(), 2u);
  EXPECT_EQ(cps[1], U'�');
  EXPECT_EQ(decode("\xFF\x41").back(), U'A');
}

TEST(TextUtilTest, CaseMapping) {
  EXPECT_EQ(to_lower("ÉL Dijo ÀÇ"), "él dijo àç");
  EXPECT_EQ(to_upper(U'ł'), U'Ł');
  EXPECT_TRUE(is_upper(U'Ñ'));
  EXPECT_FALSE(is_upper(U'ñ'));
  EXPECT_TRUE(is_letter(U'ß'));
  EXPECT_FALSE(is_letter(U'7'));
  EXPECT_TRUE(is_digit(U'7'));
}

TEST(TextUtilTest, WhitespaceHelpers) {
  EXPECT_EQ(trim("  a b \t\n"), "a b");
  EXPECT_EQ(trim("   "), "");
  EXPECT_EQ(collapse_whitespace("  a \n\t b  "), "a b");
  EXPECT_TRUE(is_space(U' '));
  const auto parts = split("a\tb\t\tc", '\t');
  ASSERT_EQ(parts.size(), 4u);
  EXPECT_EQ(parts[2], "");
  EXPECT_TRUE(starts_with_ci("#REDIRECT [[X]]", "#redirect"));
  EXPECT_FALSE(starts_with_ci("#RED", "#redirect"));
}

}  // namespace
}  // namespace biomine::text
