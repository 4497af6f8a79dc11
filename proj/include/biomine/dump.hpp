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

#ifndef BIOMINE_DUMP_HPP_
#define BIOMINE_DUMP_HPP_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "biomine/common.hpp"

namespace biomine {

// One main-namespace article as found in a MediaWiki XML export.
struct RawPage {
  std::string title;  // normalized
  std::uint64_t wpid = 0;
  LanguageCode language;
  std::string wikitext;
  std::vector<std::string> categories;
  std::vector<std::pair<LanguageCode, std::string>> langlinks;
};

// Which pages of a dump to keep. A page matches if its title is in
// `titles` OR its categories contain `category` (both compared after
// normalize_title), or unconditionally when `match_all` is set.
class PageSelector {
 public:
  static PageSelector all();
  static PageSelector by_titles(const std::vector<std::string>& titles);
  static PageSelector by_category(const std::string& category);

  void add_title(const std::string& title);
  void set_category(const std::string& category);

  bool empty() const { return !match_all_ && titles_.empty() && !category_; }
  // True when a page with this title may match before its text is seen.
  bool needs_text(const std::string& normalized_title) const;
  bool matches(const std::string& normalized_title,
               const std::vector<std::string>& categories) const;

 private:
  bool match_all_ = false;
  std::unordered_set<std::string> titles_;
  std::optional<std::string> category_;
};

// Pull parser over a MediaWiki export stream. Pages are produced one at a
// time; memory stays bounded by the largest page plus one read chunk.
// Pages outside namespace 0 and redirects are skipped.
class PageStream {
 public:
  PageStream(std::istream& in, PageSelector selector, LanguageCode language);
  ~PageStream();
  PageStream(const PageStream&) = delete;
  PageStream& operator=(const PageStream&) = delete;

  // Next selected page, or nullopt at a well-formed end of stream.
  // Throws StreamError (malformed/truncated XML) or InputError (read or
  // decompression failure).
  std::optional<RawPage> next();

  std::uint64_t bytes_consumed() const;
  std::uint64_t pages_seen() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Opens a dump file, transparently decompressing gzip, bzip2, xz or zstd
// detected by magic bytes. Throws InputError if the file cannot be opened.
std::unique_ptr<std::istream> open_dump(const std::filesystem::path& path);

// Convenience wrapper: invokes fn(RawPage&&) for every selected page.
template <typename Fn>
void stream_pages(std::istream& in, const PageSelector& selector,
                  const LanguageCode& language, Fn&& fn) {
  PageStream stream(in, selector, language);
  while (auto page = stream.next()) fn(std::move(*page));
}

// Title list: one title per line, UTF-8. Blank lines and lines starting
// with '#' are ignored; titles are normalized.
std::vector<std::string> load_title_list(const std::filesystem::path& path);

}  // namespace biomine

#endif  // BIOMINE_DUMP_HPP_
