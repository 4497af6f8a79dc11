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

#ifndef BIOMINE_ARTICLE_INDEX_HPP_
#define BIOMINE_ARTICLE_INDEX_HPP_

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "biomine/common.hpp"
#include "biomine/dump.hpp"
#include "biomine/wikitext.hpp"

namespace biomine {

// Pivot title -> (language, title) for every non-pivot language.
struct TitleMapping {
  LanguageCode pivot;
  std::vector<LanguageCode> targets;
  std::map<std::string, std::vector<std::pair<LanguageCode, std::string>>>
      entries;

  std::size_t size() const { return entries.size(); }
};

struct CompleteEntry {
  std::string pivot_title;
  // One article per configured language, pivot first, then targets in
  // configuration order.
  std::vector<ArticleKey> articles;
  std::vector<std::uint64_t> wpids;
};

struct CompleteEntrySet {
  std::vector<LanguageCode> languages;  // pivot first
  std::vector<CompleteEntry> entries;   // ordered by pivot title

  std::size_t size() const { return entries.size(); }
};

// Counts reported after resolution and selection.
struct IndexSummary {
  std::size_t input_titles = 0;
  std::size_t linked_titles = 0;
  std::size_t complete_entries = 0;
  // Per target language: pivot pages that carry a link to it.
  std::map<LanguageCode, std::size_t> linked_per_language;
  // Per language: articles retrieved for mapped entries.
  std::map<LanguageCode, std::size_t> retrieved_per_language;
};

// Builds the mapping from pivot-language pages. A page gets an entry only
// if it links to every target language. Pages whose language differs from
// the first page's raise InvalidArgument.
TitleMapping resolve_interlanguage(const std::vector<RawPage>& pivot_pages,
                                   const std::vector<LanguageCode>& targets,
                                   IndexSummary* summary = nullptr);

// Keeps mapping entries for which every language's article was retrieved.
// The result does not depend on the order of `retrieved`.
CompleteEntrySet select_complete_entries(
    const TitleMapping& mapping, const std::vector<ArticleText>& retrieved,
    IndexSummary* summary = nullptr);

void write_summary(std::ostream& out, const IndexSummary& summary);

}  // namespace biomine

#endif  // BIOMINE_ARTICLE_INDEX_HPP_
