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

#ifndef BIOMINE_SEGMENTER_HPP_
#define BIOMINE_SEGMENTER_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "biomine/common.hpp"
#include "biomine/wikitext.hpp"

namespace biomine {

struct Sentence {
  ArticleKey article;
  std::size_t index = 0;  // 0-based, contiguous within the article
  std::string text;       // trimmed, single-line

  SentenceRef ref() const { return {article.language, article.title, index}; }
};

// Rule-based sentence splitter.
//
// A boundary is placed after a run of [.?!] (plus any closing quotes or
// brackets) that is followed by whitespace and then an upper-case letter or
// a digit, optionally behind an opening quote or inverted mark. A single
// period is not a boundary when the token before it is a listed
// abbreviation for the article language or a one-letter upper-case
// initial. Line breaks are always boundaries. Pieces shorter than
// kMinSentenceLength code points are dropped.
class SentenceSegmenter {
 public:
  static constexpr std::size_t kMinSentenceLength = 3;

  // Starts with the abbreviation lists compiled into the library.
  SentenceSegmenter();

  // Replaces the list for one language. Lines are tokens without the final
  // period; '#' starts a comment line.
  void set_abbreviations(const LanguageCode& language, std::string_view list);
  void load_abbreviations(const LanguageCode& language,
                          const std::filesystem::path& path);
  // Loads every "<language>.txt" file in a directory.
  void load_directory(const std::filesystem::path& dir);

  bool is_abbreviation(const LanguageCode& language,
                       std::string_view token) const;

  std::vector<std::string> split(std::string_view text,
                                 const LanguageCode& language) const;
  std::vector<Sentence> segment(const ArticleText& article) const;

 private:
  std::map<LanguageCode, std::set<std::string, std::less<>>> abbreviations_;
};

// Segments with the default SentenceSegmenter.
std::vector<Sentence> segment_sentences(const ArticleText& article);

}  // namespace biomine

#endif  // BIOMINE_SEGMENTER_HPP_
