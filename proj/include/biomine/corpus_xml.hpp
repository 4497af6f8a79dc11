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

#ifndef BIOMINE_CORPUS_XML_HPP_
#define BIOMINE_CORPUS_XML_HPP_

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "biomine/common.hpp"
#include "biomine/document.hpp"

namespace biomine {

// Document-level corpus file for one language:
//
//   <?xml version="1.0" encoding="UTF-8"?>
//   <corpus language="en">
//   <doc docid="..." wpid="..." language="en" topic="C6" gender="Female">
//   <title>...</title>
//   <seg id="1">...</seg>
//   </doc>
//   </corpus>
//
// Documents are written in docid order; topic is omitted when absent.
// Every record is validated before the first byte is written
// (ValidationError). Returns the number of bytes written.
std::uint64_t write_corpus_xml(const std::vector<DocumentRecord>& documents,
                               const LanguageCode& language, std::ostream& sink);

std::string corpus_xml_string(const std::vector<DocumentRecord>& documents,
                              const LanguageCode& language);

// Reads a corpus file. A file of bare <doc> elements without a root is
// accepted. Attribute values, titles and segments are trimmed. Throws
// ParseError for malformed XML or a missing docid, wpid, language or gender.
std::vector<DocumentRecord> read_corpus_xml(std::istream& source);
std::vector<DocumentRecord> read_corpus_xml_string(const std::string& xml);

struct GenderStats {
  std::size_t documents = 0;
  std::size_t sentences = 0;
  std::size_t words = 0;
  std::size_t vocabulary = 0;
  double avg_sentences_per_doc = 0.0;
  double avg_words_per_doc = 0.0;
};

struct CorpusStats {
  LanguageCode language;
  std::map<GenderLabel, GenderStats> by_gender;  // F and M always present

  const GenderStats& at(GenderLabel gender) const;
};

// Words are whitespace-separated tokens with leading and trailing
// punctuation removed; the vocabulary is the set of lower-cased words.
// Only documents in `language` are counted.
CorpusStats compute_stats(const std::vector<DocumentRecord>& documents,
                          const LanguageCode& language);

// Aligned text table with one F/M column pair per language, rows
// Documents / Sentences / Average sent/doc / Words / Average words/doc /
// Vocabulary. Averages are printed with one decimal.
std::string format_stats_report(const std::vector<CorpusStats>& stats);

}  // namespace biomine

#endif  // BIOMINE_CORPUS_XML_HPP_
