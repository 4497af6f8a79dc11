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

// biomine: command line front end.
//
//   biomine extract --languages en,es --dump en=enwiki.xml.bz2 \
//       --dump es=eswiki.xml.bz2 --titles titles.txt -o out
//   biomine stats out/corpus.en.xml out/corpus.es.xml
//   biomine validate out/corpus.en.xml out/corpus.es.xml
//
// Exit status: 0 success, 1 validation failure, 2 runtime failure.

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "biomine/corpus_xml.hpp"
#include "biomine/pipeline.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct ExtractOptions {
  std::vector<std::string> languages;
  std::vector<std::string> dumps;
  std::string titles;
  std::string category;
  std::string embedding = "builtin-fallback";
  std::size_t dimension = 1024;
  std::string embedding_location;
  std::size_t k = 4;
  double threshold = 1.04;
  std::string strategy = "max";
  bool no_document_scope = false;
  double ratio = 0.20;
  std::string length_unit = "characters";
  bool inclusive_boundary = false;
  bool no_gender = false;
  std::string balance = "sentence";
  std::uint64_t seed = 20200511;
  std::string topics;
  std::string lexicon;
  std::string abbreviations;
  std::string output = "out";
  std::size_t workers = 0;
  bool pair_dump = false;
};

biomine::PipelineConfig to_config(const ExtractOptions& o) {
  biomine::PipelineConfig config;
  config.languages = o.languages;
  for (const auto& spec : o.dumps) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw biomine::ValidationError("--dump expects LANG=PATH, got '" + spec + "'");
    }
    config.dumps[spec.substr(0, eq)] = spec.substr(eq + 1);
  }
  if (!o.titles.empty()) config.titles_path = o.titles;
  if (!o.category.empty()) config.category = o.category;
  try {
    config.embedding.kind = biomine::parse_provider_kind(o.embedding);
    config.mining.strategy = biomine::parse_strategy(o.strategy);
    config.cleaning.length_unit = biomine::parse_length_unit(o.length_unit);
    config.balance.mode = biomine::parse_balance_mode(o.balance);
  } catch (const biomine::InvalidArgument& e) {
    throw biomine::ValidationError(e.what());
  }
  config.embedding.dimension = o.dimension;
  config.embedding.location = o.embedding_location;
  config.mining.k = o.k;
  config.mining.margin_threshold = o.threshold;
  config.document_scope = !o.no_document_scope;
  config.cleaning.max_length_ratio = o.ratio;
  config.cleaning.inclusive_boundary = o.inclusive_boundary;
  config.gender_detection = !o.no_gender;
  config.balance.seed = o.seed;
  if (!o.topics.empty()) config.topics_path = o.topics;
  if (!o.lexicon.empty()) config.lexicon_path = o.lexicon;
  if (!o.abbreviations.empty()) config.abbreviations_dir = o.abbreviations;
  config.output_dir = o.output;
  config.workers = o.workers;
  config.pair_dump = o.pair_dump;
  return config;
}

int run_extract(const ExtractOptions& options) {
  const auto result = biomine::run_pipeline(to_config(options));
  std::cerr << "complete entries: " << result.complete_entries << '\n'
            << "aligned tuples: " << result.tuples_mined << '\n'
            << "rejected by length: " << result.tuples_rejected << '\n'
            << "duplicates: " << result.tuples_duplicate << '\n'
            << "documents: " << result.documents_written << '\n';
  for (const auto& [language, path] : result.corpus_files) {
    std::cerr << "wrote " << path.string() << '\n';
  }
  std::cout << biomine::format_stats_report(result.stats);
  return 0;
}

std::vector<biomine::DocumentRecord> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw biomine::InputError("cannot open " + path);
  return biomine::read_corpus_xml(in);
}

int run_stats(const std::vector<std::string>& files) {
  std::vector<biomine::CorpusStats> stats;
  for (const auto& path : files) {
    const auto documents = read_file(path);
    std::set<biomine::LanguageCode> languages;
    for (const auto& doc : documents) languages.insert(doc.language);
    if (languages.empty()) languages.insert("??");
    for (const auto& language : languages) {
      stats.push_back(biomine::compute_stats(documents, language));
    }
  }
  std::cout << biomine::format_stats_report(stats);
  return 0;
}

int run_validate(const std::vector<std::string>& files) {
  std::vector<std::string> problems;
  // docid -> segment count per file, for the cross-file check.
  std::vector<std::map<std::string, std::size_t>> shapes;
  for (const auto& path : files) {
    std::vector<biomine::DocumentRecord> documents;
    try {
      documents = read_file(path);
    } catch (const biomine::ParseError& e) {
      problems.push_back(path + ": " + e.what());
      continue;
    }
    std::set<biomine::LanguageCode> languages;
    auto& shape = shapes.emplace_back();
    for (const auto& doc : documents) {
      for (const auto& p : biomine::document_problems(doc)) problems.push_back(path + ": " + p);
      languages.insert(doc.language);
      if (!shape.emplace(doc.docid, doc.segments.size()).second) {
        problems.push_back(path + ": duplicate docid '" + doc.docid + "'");
      }
    }
    if (languages.size() > 1) {
      problems.push_back(path + ": documents in more than one language");
      continue;
    }
    if (!problems.empty() || languages.empty()) continue;
    const auto again = biomine::read_corpus_xml_string(
        biomine::corpus_xml_string(documents, *languages.begin()));
    std::map<std::string, const biomine::DocumentRecord*> by_docid;
    for (const auto& doc : again) by_docid[doc.docid] = &doc;
    for (const auto& doc : documents) {
      const auto it = by_docid.find(doc.docid);
      if (it == by_docid.end() || !(*it->second == doc)) {
        problems.push_back(path + ": document '" + doc.docid + "' does not round-trip");
      }
    }
  }
  for (std::size_t i = 1; i < shapes.size(); ++i) {
    if (shapes[i] != shapes[0]) {
      problems.push_back(files[i] + ": docids or segment counts differ from " + files[0]);
    }
  }
  for (const auto& p : problems) std::cerr << p << '\n';
  if (!problems.empty()) return kExitValidation;
  std::cout << "ok: " << files.size() << " file(s)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mine gender-balanced document-level parallel corpora from Wikipedia dumps"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file; extract options go in an [extract] section");

  ExtractOptions o;
  auto* extract = app.add_subcommand("extract", "run the full extraction pipeline");
  extract->add_option("--languages", o.languages, "languages, pivot first")
      ->delimiter(',')
      ->required();
  extract->add_option("--dump", o.dumps, "LANG=PATH of a dump (repeatable)")->required();
  extract->add_option("--titles", o.titles, "pivot title list, one per line");
  extract->add_option("--category", o.category, "pivot category to select");
  extract->add_option("--embedding", o.embedding,
                      "builtin-fallback, precomputed-file or external-service")
      ->capture_default_str();
  extract->add_option("--dim", o.dimension, "embedding dimension")->capture_default_str();
  extract->add_option("--embedding-location", o.embedding_location,
                      "vector file or service URL");
  extract->add_option("--k", o.k, "neighborhood size")->capture_default_str();
  extract->add_option("--threshold", o.threshold, "margin threshold")->capture_default_str();
  extract->add_option("--strategy", o.strategy, "max, forward, backward or intersection")
      ->capture_default_str();
  extract->add_flag("--no-document-scope", o.no_document_scope,
                    "mine each language as a single pool");
  extract->add_option("--max-length-ratio", o.ratio, "length filter ratio")
      ->capture_default_str();
  extract->add_option("--length-unit", o.length_unit, "characters or tokens")
      ->capture_default_str();
  extract->add_flag("--inclusive-boundary", o.inclusive_boundary,
                    "also drop tuples exactly at the ratio");
  extract->add_flag("--no-gender", o.no_gender, "skip gender detection and balancing");
  extract->add_option("--balance", o.balance, "sentence, document or off")
      ->capture_default_str();
  extract->add_option("--seed", o.seed, "balancing seed")->capture_default_str();
  extract->add_option("--topics", o.topics, "docid<TAB>topic file");
  extract->add_option("--lexicon", o.lexicon, "pronoun lexicon file");
  extract->add_option("--abbreviations", o.abbreviations,
                      "directory of <lang>.txt abbreviation lists");
  extract->add_option("-o,--output", o.output, "output directory")->capture_default_str();
  extract->add_option("--workers", o.workers, "worker threads, 0 for all cores")
      ->capture_default_str();
  extract->add_flag("--pair-dump", o.pair_dump, "also write candidate pairs");

  std::vector<std::string> stats_files;
  auto* stats = app.add_subcommand("stats", "print statistics of corpus files");
  stats->add_option("files", stats_files, "corpus XML files")->required();

  std::vector<std::string> validate_files;
  auto* validate = app.add_subcommand("validate", "check corpus files");
  validate->add_option("files", validate_files, "corpus XML files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*extract) return run_extract(o);
    if (*stats) return run_stats(stats_files);
    if (*validate) return run_validate(validate_files);
  } catch (const biomine::PipelineError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.validation() ? kExitValidation : kExitRuntime;
  } catch (const biomine::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const biomine::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
