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

#ifndef BIOMINE_WIKITEXT_HPP_
#define BIOMINE_WIKITEXT_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biomine/common.hpp"

namespace biomine {

struct RawPage;

// Canonical form of a page or category title: underscores become spaces,
// whitespace runs collapse to one space, surrounding whitespace is trimmed
// and the first character is upper-cased (MediaWiki's first-letter rule).
std::string normalize_title(std::string_view title);

// True for prefixes that denote another Wikipedia edition in an
// interlanguage link ("es" in [[es:Título]]).
bool is_language_code(std::string_view prefix);

struct PageLinks {
  std::vector<std::string> categories;  // normalized, deduplicated
  std::vector<std::pair<LanguageCode, std::string>> langlinks;  // one per language
};

// Collects category and interlanguage links from raw wikitext. Links inside
// comments and <nowiki> are ignored.
PageLinks scan_links(std::string_view wikitext);

struct ArticleText {
  ArticleKey key;
  std::uint64_t wpid = 0;
  std::string plain_text;
  // Non-fatal problems found while stripping (unbalanced braces, ...).
  std::vector<std::string> warnings;
};

// Rule-based reduction of wikitext to plain prose. Templates, tables,
// references, HTML tags, file links, category and interlanguage links are
// removed; internal links collapse to their label; bold/italic quotes and
// headings are dropped. Paragraphs are separated by '\n'. Idempotent.
std::string strip_markup(std::string_view wikitext,
                         std::vector<std::string>* warnings = nullptr);

ArticleText strip_wikitext(const RawPage& page);

}  // namespace biomine

#endif  // BIOMINE_WIKITEXT_HPP_
