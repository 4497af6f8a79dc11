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

#ifndef BIOMINE_TESTS_FIXTURES_HPP_
#define BIOMINE_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "biomine/embeddings.hpp"
#include "biomine/pipeline.hpp"

namespace biomine::testing {

struct FixturePage {
  std::string title;
  std::uint64_t id = 0;
  std::string text;
  int ns = 0;
  bool redirect = false;
};

// A MediaWiki export document containing the pages.
std::string make_dump(const std::vector<FixturePage>& pages);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "biomine");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// One biography of the end-to-end fixture: pivot sentences, and for each
// other language the planted translation of each pivot sentence (an empty
// string means no counterpart).
struct FixtureBiography {
  std::string title;
  bool female = false;
  std::vector<std::string> pivot_sentences;
};

// Small multi-biography corpus: en pivot plus es (and ca when
// `languages` has three entries). Translations are perturbed copies of the
// pivot sentences, so the builtin embedder recovers them. When
// `drop_last_in_third` is set, the last biography is missing from the
// third language's dump although the pivot links to it.
struct EndToEndFixture {
  std::vector<LanguageCode> languages;
  std::vector<FixtureBiography> biographies;
  PipelineConfig config;
};

EndToEndFixture make_end_to_end_fixture(const std::filesystem::path& dir,
                                        const std::vector<LanguageCode>& languages,
                                        bool drop_last_in_third = false);

// Deterministic word-level rewrite of an English sentence into a
// pseudo-translation for `language`.
std::string pseudo_translate(const std::string& sentence, const LanguageCode& language);

// Random unit vector in `dimension` dimensions.
std::vector<double> random_unit(std::mt19937_64& rng, std::size_t dimension);

SentenceVector make_vector(std::vector<double> values, const LanguageCode& language,
                           const std::string& title, std::size_t index);

}  // namespace biomine::testing

#endif  // BIOMINE_TESTS_FIXTURES_HPP_
