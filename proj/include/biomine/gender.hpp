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

#ifndef BIOMINE_GENDER_HPP_
#define BIOMINE_GENDER_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "biomine/common.hpp"
#include "biomine/document.hpp"
#include "biomine/wikitext.hpp"

namespace biomine {

struct PronounLexicon {
  LanguageCode language;
  std::set<std::string, std::less<>> feminine;
  std::set<std::string, std::less<>> masculine;

  // Throws InvalidArgument if a set is empty or the sets overlap.
  void validate() const;
};

// Lexicons for several languages, parsed from "language<TAB>F|M<TAB>token"
// lines.
class LexiconSet {
 public:
  // The lexicons compiled from data/pronouns.tsv.
  static LexiconSet defaults();
  static LexiconSet parse(std::string_view tsv);
  static LexiconSet load(const std::filesystem::path& path);

  // nullptr when the language has no lexicon.
  const PronounLexicon* find(const LanguageCode& language) const;
  std::vector<LanguageCode> languages() const;

 private:
  std::map<LanguageCode, PronounLexicon> lexicons_;
};

struct PronounCounts {
  std::size_t feminine = 0;
  std::size_t masculine = 0;
};

PronounCounts count_pronouns(std::string_view text, const PronounLexicon& lexicon);

// Pronoun-max rule on the article text: the gender with strictly more
// lexicon hits wins, a tie (including 0-0) is Unknown. Throws
// InvalidArgument when the lexicon is for another language.
GenderLabel classify_gender(const ArticleText& article, const PronounLexicon& lexicon);

enum class BalanceMode { kSentence, kDocument, kOff };

const char* balance_mode_name(BalanceMode mode);
BalanceMode parse_balance_mode(std::string_view name);

struct BalanceConfig {
  BalanceMode mode = BalanceMode::kSentence;
  std::uint64_t seed = 20200511;
};

// Equalizes Female and Male content by seeded uniform removal from the
// majority gender: segments in sentence mode (emptied documents are
// dropped), whole documents in document mode. Unknown documents pass
// through untouched. The selection depends only on docids, segment counts
// and the seed, so each language file of a parallel corpus receives the
// same removals. Surviving documents keep their input order and have their
// segments renumbered from 1.
std::vector<DocumentRecord> balance_corpus(std::vector<DocumentRecord> documents,
                                           const BalanceConfig& config);

}  // namespace biomine

#endif  // BIOMINE_GENDER_HPP_
