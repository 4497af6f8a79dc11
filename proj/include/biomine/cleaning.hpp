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

#ifndef BIOMINE_CLEANING_HPP_
#define BIOMINE_CLEANING_HPP_

#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biomine/common.hpp"
#include "biomine/mining.hpp"

namespace biomine {

enum class LengthUnit { kCharacters, kTokens };

const char* length_unit_name(LengthUnit unit);
LengthUnit parse_length_unit(std::string_view name);

struct CleaningConfig {
  double max_length_ratio = 0.20;
  LengthUnit length_unit = LengthUnit::kCharacters;
  // When set, a tuple exactly at (1 + ratio) x shortest is dropped too.
  bool inclusive_boundary = false;

  void validate() const;
};

enum class FilterDecision { kKeep, kDropLengthRatio, kDropEmptyMember };

// Reason code used in the rejected-tuple audit log.
const char* decision_code(FilterDecision decision);

// Length of trimmed text in the configured unit (code points or
// whitespace-separated tokens).
std::size_t measure_length(std::string_view text, LengthUnit unit);

// Drops the tuple when its longest member exceeds (1 + ratio) times its
// shortest. Needs at least two texts (InvalidArgument otherwise).
FilterDecision length_ratio_filter(std::span<const std::string> texts,
                                   const CleaningConfig& config);

// An aligned tuple with the text of every member, pivot included.
struct TupleWithTexts {
  AlignedTuple tuple;
  std::map<LanguageCode, std::string> texts;
};

// Drops tuples whose full multilingual text equals an earlier tuple's.
std::vector<TupleWithTexts> dedupe_tuples(std::vector<TupleWithTexts> tuples);

// One audit line: "<code><TAB><pivot ref>[<TAB><lang ref>...]".
void write_rejection(std::ostream& out, FilterDecision decision,
                     const AlignedTuple& tuple);

}  // namespace biomine

#endif  // BIOMINE_CLEANING_HPP_
