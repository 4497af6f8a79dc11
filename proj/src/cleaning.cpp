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

#include "biomine/cleaning.hpp"

#include <algorithm>
#include <unordered_set>

#include "biomine/text_util.hpp"

namespace biomine {

const char* length_unit_name(LengthUnit unit) {
  return unit == LengthUnit::kTokens ? "tokens" : "characters";
}

LengthUnit parse_length_unit(std::string_view name) {
  if (name == "characters" || name == "chars") return LengthUnit::kCharacters;
  if (name == "tokens") return LengthUnit::kTokens;
  throw InvalidArgument("unknown length unit '" + std::string(name) + "'");
}

void CleaningConfig::validate() const {
  if (!(max_length_ratio > 0.0 && max_length_ratio < 10.0)) {
    throw InvalidArgument("max length ratio must be in (0, 10)");
  }
}

const char* decision_code(FilterDecision decision) {
  switch (decision) {
    case FilterDecision::kKeep:
      return "keep";
    case FilterDecision::kDropLengthRatio:
      return "length_ratio";
    case FilterDecision::kDropEmptyMember:
      return "empty_member";
  }
  return "keep";
}

std::size_t measure_length(std::string_view input, LengthUnit unit) {
  const std::string_view trimmed = text::trim(input);
  if (unit == LengthUnit::kCharacters) return text::length(trimmed);
  std::size_t tokens = 0;
  bool in_token = false;
  std::size_t pos = 0;
  while (pos < trimmed.size()) {
    const bool space = text::is_space(text::next_code_point(trimmed, pos));
    if (!space && !in_token) ++tokens;
    in_token = !space;
  }
  return tokens;
}

FilterDecision length_ratio_filter(std::span<const std::string> texts,
                                   const CleaningConfig& config) {
  if (texts.size() < 2) {
    throw InvalidArgument("length_ratio_filter needs at least two texts");
  }
  std::size_t shortest = SIZE_MAX;
  std::size_t longest = 0;
  for (const auto& t : texts) {
    const std::size_t length = measure_length(t, config.length_unit);
    if (length == 0) return FilterDecision::kDropEmptyMember;
    shortest = std::min(shortest, length);
    longest = std::max(longest, length);
  }
  // Integer lengths against a decimal ratio: allow for the rounding of
  // (1 + r) so that 120 vs 100 at r = 0.2 sits exactly on the bound.
  const double bound = (1.0 + config.max_length_ratio) * static_cast<double>(shortest);
  const double slack = 1e-9 * static_cast<double>(shortest);
  const double excess = static_cast<double>(longest) - bound;
  const bool over = config.inclusive_boundary ? excess >= -slack : excess > slack;
  return over ? FilterDecision::kDropLengthRatio : FilterDecision::kKeep;
}

std::vector<TupleWithTexts> dedupe_tuples(std::vector<TupleWithTexts> tuples) {
  std::unordered_set<std::string> seen;
  std::vector<TupleWithTexts> kept;
  kept.reserve(tuples.size());
  for (auto& tuple : tuples) {
    // Language codes and texts never contain these separators.
    std::string key;
    for (const auto& [language, t] : tuple.texts) {
      key.append(language);
      key.push_back('\x1f');
      key.append(t);
      key.push_back('\x1e');
    }
    if (seen.insert(std::move(key)).second) kept.push_back(std::move(tuple));
  }
  return kept;
}

void write_rejection(std::ostream& out, FilterDecision decision,
                     const AlignedTuple& tuple) {
  out << decision_code(decision) << '\t' << to_string(tuple.pivot);
  for (const auto& [language, member] : tuple.per_language) {
    out << '\t' << to_string(member.ref);
  }
  out << '\n';
}

}  // namespace biomine
