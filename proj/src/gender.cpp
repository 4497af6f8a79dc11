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

#include "biomine/gender.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "biomine/resources.hpp"
#include "biomine/text_util.hpp"

namespace biomine {
namespace {

// Unbiased draw from [0, bound). std::uniform_int_distribution is not
// specified bit-for-bit, so reproducibility across toolchains needs this.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

// Chooses `count` distinct positions out of [0, population) uniformly.
std::vector<bool> sample_removals(std::size_t population, std::size_t count,
                                  std::uint64_t seed) {
  std::vector<std::size_t> pool(population);
  std::iota(pool.begin(), pool.end(), 0);
  std::mt19937_64 rng(seed);
  std::vector<bool> removed(population, false);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + uniform_below(rng, population - i);
    std::swap(pool[i], pool[j]);
    removed[pool[i]] = true;
  }
  return removed;
}

// Document indices ordered by docid (ties by input position).
std::vector<std::size_t> docid_order(const std::vector<DocumentRecord>& docs) {
  std::vector<std::size_t> order(docs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return docs[a].docid < docs[b].docid;
  });
  return order;
}

}  // namespace

void PronounLexicon::validate() const {
  if (feminine.empty() || masculine.empty()) {
    throw InvalidArgument("pronoun lexicon for '" + language +
                          "' needs feminine and masculine tokens");
  }
  for (const auto& token : feminine) {
    if (masculine.count(token)) {
      throw InvalidArgument("pronoun '" + token + "' listed as both F and M for '" +
                            language + "'");
    }
  }
}

LexiconSet LexiconSet::defaults() { return parse(resources::pronoun_lexicon()); }

LexiconSet LexiconSet::parse(std::string_view tsv) {
  LexiconSet set;
  std::size_t line_number = 0;
  for (std::string_view line : text::split(tsv, '\n')) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty() || text::trim(line).front() == '#') continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != 3) {
      throw InvalidArgument("pronoun lexicon line " + std::to_string(line_number) +
                            ": expected language<TAB>F|M<TAB>token");
    }
    const std::string language(text::trim(fields[0]));
    const std::string_view gender = text::trim(fields[1]);
    const std::string token = text::to_lower(text::trim(fields[2]));
    if (language.empty() || token.empty()) {
      throw InvalidArgument("pronoun lexicon line " + std::to_string(line_number) +
                            ": empty field");
    }
    auto& lexicon = set.lexicons_[language];
    lexicon.language = language;
    if (gender == "F") {
      lexicon.feminine.insert(token);
    } else if (gender == "M") {
      lexicon.masculine.insert(token);
    } else {
      throw InvalidArgument("pronoun lexicon line " + std::to_string(line_number) +
                            ": gender must be F or M");
    }
  }
  for (const auto& [language, lexicon] : set.lexicons_) lexicon.validate();
  return set;
}

LexiconSet LexiconSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open pronoun lexicon " + path.string());
  std::ostringstream content;
  content << in.rdbuf();
  return parse(content.str());
}

const PronounLexicon* LexiconSet::find(const LanguageCode& language) const {
  const auto it = lexicons_.find(language);
  return it == lexicons_.end() ? nullptr : &it->second;
}

std::vector<LanguageCode> LexiconSet::languages() const {
  std::vector<LanguageCode> out;
  for (const auto& [language, lexicon] : lexicons_) out.push_back(language);
  return out;
}

PronounCounts count_pronouns(std::string_view input, const PronounLexicon& lexicon) {
  PronounCounts counts;
  std::string token;
  const auto flush = [&] {
    if (token.empty()) return;
    if (lexicon.feminine.count(token)) {
      ++counts.feminine;
    } else if (lexicon.masculine.count(token)) {
      ++counts.masculine;
    }
    token.clear();
  };
  std::size_t pos = 0;
  while (pos < input.size()) {
    const char32_t cp = text::next_code_point(input, pos);
    if (text::is_letter(cp)) {
      text::append_utf8(token, text::to_lower(cp));
    } else {
      flush();
    }
  }
  flush();
  return counts;
}

GenderLabel classify_gender(const ArticleText& article, const PronounLexicon& lexicon) {
  if (article.key.language != lexicon.language) {
    throw InvalidArgument("pronoun lexicon is for '" + lexicon.language +
                          "' but the article is '" + article.key.language + "'");
  }
  const PronounCounts counts = count_pronouns(article.plain_text, lexicon);
  if (counts.feminine > counts.masculine) return GenderLabel::kFemale;
  if (counts.masculine > counts.feminine) return GenderLabel::kMale;
  return GenderLabel::kUnknown;
}

const char* balance_mode_name(BalanceMode mode) {
  switch (mode) {
    case BalanceMode::kSentence:
      return "sentence";
    case BalanceMode::kDocument:
      return "document";
    case BalanceMode::kOff:
      return "off";
  }
  return "off";
}

BalanceMode parse_balance_mode(std::string_view name) {
  if (name == "sentence" || name == "sentence-level") return BalanceMode::kSentence;
  if (name == "document" || name == "document-level") return BalanceMode::kDocument;
  if (name == "off") return BalanceMode::kOff;
  throw InvalidArgument("unknown balance mode '" + std::string(name) + "'");
}

std::vector<DocumentRecord> balance_corpus(std::vector<DocumentRecord> documents,
                                           const BalanceConfig& config) {
  if (config.mode == BalanceMode::kOff) return documents;

  const auto order = docid_order(documents);
  const auto count_for = [&](GenderLabel gender, bool segments) {
    std::size_t total = 0;
    for (const auto& doc : documents) {
      if (doc.gender == gender) total += segments ? doc.segments.size() : 1;
    }
    return total;
  };
  const bool by_segment = config.mode == BalanceMode::kSentence;
  const std::size_t female = count_for(GenderLabel::kFemale, by_segment);
  const std::size_t male = count_for(GenderLabel::kMale, by_segment);
  if (female == male) return documents;

  const GenderLabel majority = male > female ? GenderLabel::kMale : GenderLabel::kFemale;
  const std::size_t excess = male > female ? male - female : female - male;
  const std::size_t population = std::max(male, female);
  const std::vector<bool> removed = sample_removals(population, excess, config.seed);

  std::vector<bool> drop_document(documents.size(), false);
  std::size_t position = 0;
  for (std::size_t d : order) {
    auto& doc = documents[d];
    if (doc.gender != majority) continue;
    if (!by_segment) {
      drop_document[d] = removed[position++];
      continue;
    }
    const bool had_segments = !doc.segments.empty();
    std::vector<Segment> kept;
    for (auto& segment : doc.segments) {
      if (!removed[position++]) kept.push_back(std::move(segment));
    }
    doc.segments = std::move(kept);
    renumber_segments(doc);
    drop_document[d] = had_segments && doc.segments.empty();
  }

  std::vector<DocumentRecord> result;
  result.reserve(documents.size());
  for (std::size_t d = 0; d < documents.size(); ++d) {
    if (!drop_document[d]) result.push_back(std::move(documents[d]));
  }
  return result;
}

}  // namespace biomine
