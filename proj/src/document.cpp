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

#include "biomine/document.hpp"

#include "biomine/text_util.hpp"

namespace biomine {
namespace {

// XML 1.0 forbids most C0 control characters, even escaped.
bool has_forbidden_control(std::string_view s) {
  for (unsigned char c : s) {
    if (c < 0x20 && c != '\t' && c != '\n' && c != '\r') return true;
  }
  return false;
}

bool has_line_break(std::string_view s) {
  return s.find_first_of("\r\n") != std::string_view::npos;
}

}  // namespace

bool is_valid_topic(std::string_view topic) {
  return topic.size() == 2 && topic[0] == 'C' && topic[1] >= '1' &&
         topic[1] <= '9';
}

std::vector<std::string> document_problems(const DocumentRecord& document) {
  std::vector<std::string> problems;
  const std::string where = "document '" + document.docid + "' (" +
                            document.language + "): ";
  if (document.docid.empty() || text::trim(document.docid) != document.docid) {
    problems.push_back(where + "docid must be non-empty and trimmed");
  }
  if (document.language.empty()) problems.push_back(where + "missing language");
  if (document.title.empty() || text::trim(document.title) != document.title) {
    problems.push_back(where + "title must be non-empty and trimmed");
  }
  if (document.topic && !is_valid_topic(*document.topic)) {
    problems.push_back(where + "topic '" + *document.topic + "' is not C1..C9");
  }
  for (const std::string* field : {&document.docid, &document.title}) {
    if (has_forbidden_control(*field) || has_line_break(*field)) {
      problems.push_back(where + "control character in attribute or title");
    }
  }
  for (std::size_t i = 0; i < document.segments.size(); ++i) {
    const auto& segment = document.segments[i];
    if (segment.id != i + 1) {
      problems.push_back(where + "segment ids are not contiguous from 1 (found " +
                         std::to_string(segment.id) + " at position " +
                         std::to_string(i + 1) + ")");
      break;
    }
    if (segment.text.empty() || text::trim(segment.text) != segment.text) {
      problems.push_back(where + "segment " + std::to_string(segment.id) +
                         " is empty or untrimmed");
    }
    if (has_forbidden_control(segment.text) || has_line_break(segment.text)) {
      problems.push_back(where + "segment " + std::to_string(segment.id) +
                         " contains a control character or line break");
    }
  }
  return problems;
}

void renumber_segments(DocumentRecord& document) {
  for (std::size_t i = 0; i < document.segments.size(); ++i) {
    document.segments[i].id = i + 1;
  }
}

}  // namespace biomine
