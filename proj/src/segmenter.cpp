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

#include "biomine/segmenter.hpp"

#include <fstream>
#include <sstream>

#include "biomine/resources.hpp"
#include "biomine/text_util.hpp"

namespace biomine {
namespace {

bool is_terminal(char32_t cp) { return cp == '.' || cp == '?' || cp == '!'; }

bool is_closer(char32_t cp) {
  switch (cp) {
    case '"':
    case '\'':
    case ')':
    case ']':
    case 0x2019:  // ’
    case 0x201D:  // ”
    case 0xBB:    // »
      return true;
    default:
      return false;
  }
}

bool is_opener(char32_t cp) {
  switch (cp) {
    case '"':
    case '\'':
    case '(':
    case '[':
    case 0x2018:  // ‘
    case 0x201C:  // “
    case 0xAB:    // «
    case 0xBF:    // ¿
    case 0xA1:    // ¡
      return true;
    default:
      return false;
  }
}

}  // namespace

SentenceSegmenter::SentenceSegmenter() {
  for (const auto& language : resources::abbreviation_languages()) {
    set_abbreviations(language, resources::abbreviations(language));
  }
}

void SentenceSegmenter::set_abbreviations(const LanguageCode& language,
                                          std::string_view list) {
  auto& entries = abbreviations_[language];
  entries.clear();
  for (std::string_view line : text::split(list, '\n')) {
    line = text::trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (line.back() == '.') line.remove_suffix(1);
    if (!line.empty()) entries.emplace(line);
  }
}

void SentenceSegmenter::load_abbreviations(const LanguageCode& language,
                                           const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open abbreviation list " + path.string());
  std::ostringstream content;
  content << in.rdbuf();
  set_abbreviations(language, content.str());
}

void SentenceSegmenter::load_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::directory_iterator it(dir, ec);
  if (ec) throw InputError("cannot read abbreviation directory " + dir.string());
  for (const auto& entry : it) {
    if (entry.path().extension() == ".txt") {
      load_abbreviations(entry.path().stem().string(), entry.path());
    }
  }
}

bool SentenceSegmenter::is_abbreviation(const LanguageCode& language,
                                        std::string_view token) const {
  // Strip opening punctuation glued to the token: "(Dr".
  std::size_t pos = 0;
  while (pos < token.size()) {
    std::size_t next = pos;
    if (!is_opener(text::next_code_point(token, next))) break;
    pos = next;
  }
  token.remove_prefix(pos);
  if (token.empty()) return false;

  std::size_t first_end = 0;
  const char32_t first = text::next_code_point(token, first_end);
  if (first_end == token.size() && text::is_upper(first)) return true;

  const auto it = abbreviations_.find(language);
  return it != abbreviations_.end() && it->second.count(token) > 0;
}

std::vector<std::string> SentenceSegmenter::split(
    std::string_view input, const LanguageCode& language) const {
  std::vector<std::string> sentences;
  const auto emit = [&](std::string_view piece) {
    std::string sentence = text::collapse_whitespace(piece);
    if (text::length(sentence) >= kMinSentenceLength) {
      sentences.push_back(std::move(sentence));
    }
  };

  for (std::string_view line : text::split(input, '\n')) {
    std::size_t start = 0;
    std::size_t pos = 0;
    while (pos < line.size()) {
      const std::size_t terminal_at = pos;
      const char32_t cp = text::next_code_point(line, pos);
      if (!is_terminal(cp)) continue;

      // Extend over the terminal run and any closers.
      bool only_period = cp == '.';
      std::size_t run_end = pos;
      while (run_end < line.size()) {
        std::size_t next = run_end;
        const char32_t c = text::next_code_point(line, next);
        if (is_terminal(c)) {
          only_period = false;
        } else if (!is_closer(c)) {
          break;
        }
        run_end = next;
      }

      // Need whitespace, then an optional opener, then upper-case or digit.
      std::size_t look = run_end;
      bool saw_space = false;
      char32_t c = 0;
      while (look < line.size()) {
        std::size_t next = look;
        c = text::next_code_point(line, next);
        if (!text::is_space(c)) break;
        saw_space = true;
        look = next;
      }
      if (!saw_space || look >= line.size()) {
        pos = run_end;
        continue;
      }
      std::size_t after_openers = look;
      while (after_openers < line.size()) {
        std::size_t next = after_openers;
        c = text::next_code_point(line, next);
        if (!is_opener(c)) break;
        after_openers = next;
      }
      if (!(text::is_upper(c) || text::is_digit(c))) {
        pos = run_end;
        continue;
      }

      if (only_period && run_end == pos) {
        std::size_t token_start = terminal_at;
        while (token_start > start) {
          // Walk back to the previous ASCII space; multi-byte spaces are rare
          // enough inside a token not to matter here.
          const char prev = line[token_start - 1];
          if (prev == ' ' || prev == '\t') break;
          --token_start;
        }
        const std::string_view token =
            line.substr(token_start, terminal_at - token_start);
        if (is_abbreviation(language, token)) {
          pos = run_end;
          continue;
        }
      }

      emit(line.substr(start, run_end - start));
      start = look;
      pos = look;
    }
    if (start < line.size()) emit(line.substr(start));
  }
  return sentences;
}

std::vector<Sentence> SentenceSegmenter::segment(
    const ArticleText& article) const {
  std::vector<Sentence> sentences;
  for (std::string& piece : split(article.plain_text, article.key.language)) {
    Sentence sentence;
    sentence.article = article.key;
    sentence.index = sentences.size();
    sentence.text = std::move(piece);
    sentences.push_back(std::move(sentence));
  }
  return sentences;
}

std::vector<Sentence> segment_sentences(const ArticleText& article) {
  static const SentenceSegmenter segmenter;
  return segmenter.segment(article);
}

}  // namespace biomine
