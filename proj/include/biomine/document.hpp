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

#ifndef BIOMINE_DOCUMENT_HPP_
#define BIOMINE_DOCUMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biomine/common.hpp"

namespace biomine {

struct Segment {
  std::size_t id = 0;  // 1-based, contiguous within a document
  std::string text;

  bool operator==(const Segment&) const = default;
};

// One biography in one language. Documents of the same biography share
// the docid (the pivot title) and have the same number of segments.
struct DocumentRecord {
  std::string docid;
  std::uint64_t wpid = 0;
  LanguageCode language;
  std::optional<std::string> topic;  // "C1".."C9"
  GenderLabel gender = GenderLabel::kUnknown;
  std::string title;
  std::vector<Segment> segments;

  bool operator==(const DocumentRecord&) const = default;
};

bool is_valid_topic(std::string_view topic);

// Invariant violations of a single record; empty when valid.
std::vector<std::string> document_problems(const DocumentRecord& document);

// Renumbers segment ids 1..n in their current order.
void renumber_segments(DocumentRecord& document);

}  // namespace biomine

#endif  // BIOMINE_DOCUMENT_HPP_
