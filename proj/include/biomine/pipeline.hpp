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

#ifndef BIOMINE_PIPELINE_HPP_
#define BIOMINE_PIPELINE_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biomine/cleaning.hpp"
#include "biomine/common.hpp"
#include "biomine/corpus_xml.hpp"
#include "biomine/embeddings.hpp"
#include "biomine/gender.hpp"
#include "biomine/mining.hpp"

namespace biomine {

struct PipelineConfig {
  std::vector<LanguageCode> languages;  // pivot first
  std::map<LanguageCode, std::filesystem::path> dumps;
  std::optional<std::filesystem::path> titles_path;
  std::optional<std::string> category;
  EmbeddingProviderSpec embedding;
  MiningConfig mining;
  // Mine each biography's sentences against the same biography only.
  // When off, each language is mined as one pool and pairs that cross
  // biographies are discarded.
  bool document_scope = true;
  CleaningConfig cleaning;
  bool gender_detection = true;
  std::optional<std::filesystem::path> lexicon_path;
  BalanceConfig balance;
  std::optional<std::filesystem::path> topics_path;
  std::optional<std::filesystem::path> abbreviations_dir;
  std::filesystem::path output_dir = "out";
  std::size_t workers = 0;  // 0: hardware concurrency
  bool pair_dump = false;

  const LanguageCode& pivot() const { return languages.front(); }
  // Throws ValidationError.
  void validate() const;
};

// Raised by run_pipeline. Wraps the module error with the failing stage.
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, const std::string& what, bool validation)
      : Error("stage '" + stage + "': " + what),
        stage_(std::move(stage)),
        validation_(validation) {}
  const std::string& stage() const { return stage_; }
  // True when caused by invalid configuration or records.
  bool validation() const { return validation_; }

 private:
  std::string stage_;
  bool validation_;
};

struct PipelineResult {
  std::map<LanguageCode, std::filesystem::path> corpus_files;
  std::filesystem::path stats_file;
  std::vector<CorpusStats> stats;
  std::size_t complete_entries = 0;
  std::size_t tuples_mined = 0;
  std::size_t tuples_rejected = 0;
  std::size_t tuples_duplicate = 0;
  std::size_t documents_written = 0;
};

// Runs the whole extraction and writes into config.output_dir:
//   corpus.<lang>.xml    one per language, parallel by docid and seg id
//   stats.txt            statistics table
//   rejected.tsv         tuples dropped by the length filter
//   index.tsv            interlanguage resolution summary
//   pairs.<pivot>-<lang>.tsv  candidate pairs (only with pair_dump)
// Outputs are written to temporary names and renamed at the end; nothing
// is left behind on failure.
PipelineResult run_pipeline(const PipelineConfig& config);

// Reads "docid<TAB>topic" lines. Throws InputError on a malformed line.
std::map<std::string, std::string> load_topics(const std::filesystem::path& path);

}  // namespace biomine

#endif  // BIOMINE_PIPELINE_HPP_
