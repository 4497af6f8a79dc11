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

#ifndef BIOMINE_TEXT_UTIL_HPP_
#define BIOMINE_TEXT_UTIL_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Small UTF-8 helpers. Case mapping covers ASCII, Latin-1 and the
// alternating upper/lower pairs of Latin Extended-A, which is what
// European Wikipedia titles and prose need.
namespace biomine::text {

// Decodes the code point starting at s[pos] and advances pos. Invalid
// sequences decode as U+FFFD and consume one byte.
char32_t next_code_point(std::string_view s, std::size_t& pos);
void append_utf8(std::string& out, char32_t cp);

std::vector<char32_t> decode(std::string_view s);
std::string encode(const std::vector<char32_t>& cps);

// Number of code points.
std::size_t length(std::string_view s);

bool is_upper(char32_t cp);
bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_space(char32_t cp);
char32_t to_lower(char32_t cp);
char32_t to_upper(char32_t cp);

std::string to_lower(std::string_view s);

std::string_view trim(std::string_view s);
// Trims and collapses internal runs of whitespace to one ASCII space.
std::string collapse_whitespace(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);

bool starts_with_ci(std::string_view s, std::string_view prefix);

}  // namespace biomine::text

#endif  // BIOMINE_TEXT_UTIL_HPP_
