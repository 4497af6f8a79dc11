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

#include "biomine/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "biomine/article_index.hpp"
#include "biomine/dump.hpp"
#include "biomine/segmenter.hpp"
#include "biomine/text_util.hpp"
#include "biomine/wikitext.hpp"

namespace biomine {
namespace {

namespace fs = std::filesystem;

template <typename Fn>
auto in_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const PipelineError&) {
    throw;
  } catch (const ValidationError& e) {
    throw PipelineError(stage, e.what(), true);
  } catch (const std::exception& e) {
    throw PipelineError(stage, e.what(), false);
  }
}

// Runs fn(0..n-1) on up to `workers` threads. The first failure stops the
// remaining work and is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex mutex;
  std::exception_ptr error;
  std::size_t error_index = SIZE_MAX;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      while (!failed.load()) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(mutex);
          if (i < error_index) {
            error_index = i;
            error = std::current_exception();
          }
          failed.store(true);
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<RawPage> read_pages(const fs::path& path, const PageSelector& selector,
                                const LanguageCode& language) {
  auto in = open_dump(path);
  std::vector<RawPage> pages;
  stream_pages(*in, selector, language,
               [&](RawPage&& page) { pages.push_back(std::move(page)); });
  return pages;
}

// Per-biography working state.
struct EntryWork {
  std::vector<std::vector<Sentence>> sentences;  // per language
  std::vector<std::vector<SentenceVector>> vectors;
  std::map<LanguageCode, std::vector<CandidatePair>> pairs;
};

// Temporary output files, renamed into place by commit().
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}
  ~OutputSet() {
    if (committed_) return;
    std::error_code ignored;
    for (const auto& [tmp, final_path] : files_) fs::remove(tmp, ignored);
  }

  std::ofstream open(const std::string& name) {
    const fs::path final_path = dir_ / name;
    const fs::path tmp = dir_ / (name + ".partial");
    files_.emplace_back(tmp, final_path);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw WriteError("cannot create " + tmp.string());
    return out;
  }

  void write(const std::string& name, const std::string& content) {
    auto out = open(name);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw WriteError("cannot write " + (dir_ / name).string());
  }

  void commit() {
    for (const auto& [tmp, final_path] : files_) {
      std::error_code ec;
      fs::rename(tmp, final_path, ec);
      if (ec) {
        throw WriteError("cannot rename " + tmp.string() + ": " + ec.message());
      }
    }
    committed_ = true;
  }

 private:
  fs::path dir_;
  std::vector<std::pair<fs::path, fs::path>> files_;
  bool committed_ = false;
};

// Mining relies on cosine == dot for unit vectors; verify on a few pairs.
void check_cosine_is_dot(const std::vector<SentenceVector>& a,
                         const std::vector<SentenceVector>& b) {
  const std::size_t samples = std::min<std::size_t>({3, a.size(), b.size()});
  for (std::size_t i = 0; i < samples; ++i) {
    const auto& x = a[i].values;
    const auto& y = b[b.size() - 1 - i].values;
    const double d = dot(x, y);
    const double cosine = d / std::sqrt(dot(x, x) * dot(y, y));
    if (!(std::abs(cosine - d) <= 1e-9)) {
      throw Error("embeddings are not unit-normalized: cosine " + std::to_string(cosine) +
                  " vs dot " + std::to_string(d) + " for " + to_string(a[i].ref));
    }
  }
}

}  // namespace

void PipelineConfig::validate() const {
  if (languages.size() < 2) {
    throw ValidationError("at least two languages are required");
  }
  std::set<LanguageCode> seen;
  for (const auto& language : languages) {
    if (!is_language_code(language)) {
      throw ValidationError("invalid language code '" + language + "'");
    }
    if (!seen.insert(language).second) {
      throw ValidationError("language '" + language + "' listed twice");
    }
    if (!dumps.count(language)) {
      throw ValidationError("no dump configured for '" + language + "'");
    }
  }
  for (const auto& [language, path] : dumps) {
    if (!seen.count(language)) {
      throw ValidationError("dump given for unconfigured language '" + language + "'");
    }
  }
  if (!titles_path && !category) {
    throw ValidationError("a title list or a category is required");
  }
  if (category && text::trim(*category).empty()) {
    throw ValidationError("category is empty");
  }
  if (output_dir.empty()) throw ValidationError("output directory is empty");
  try {
    embedding.validate();
    mining.validate();
    cleaning.validate();
  } catch (const InvalidArgument& e) {
    throw ValidationError(e.what());
  }
}

std::map<std::string, std::string> load_topics(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open topics file " + path.string());
  std::map<std::string, std::string> topics;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || text::trim(line).front() == '#') continue;
    const auto fields = text::split(line, '\t');
    const std::string where = path.string() + ":" + std::to_string(line_number);
    if (fields.size() != 2) throw InputError(where + ": expected docid<TAB>topic");
    const std::string docid = normalize_title(fields[0]);
    const std::string topic(text::trim(fields[1]));
    if (!is_valid_topic(topic)) {
      throw InputError(where + ": topic '" + topic + "' is not C1..C9");
    }
    topics[docid] = topic;
  }
  return topics;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  in_stage("config", [&] { config.validate(); });
  const LanguageCode& pivot = config.pivot();
  const std::vector<LanguageCode> targets(config.languages.begin() + 1,
                                          config.languages.end());
  const std::size_t workers =
      config.workers ? config.workers
                     : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  PipelineResult result;
  IndexSummary summary;

  // Optional inputs are read up front so that a bad file fails fast.
  const auto topics = in_stage("topics", [&] {
    return config.topics_path ? load_topics(*config.topics_path)
                              : std::map<std::string, std::string>{};
  });
  const auto lexicons = in_stage("gender", [&] {
    return config.lexicon_path ? LexiconSet::load(*config.lexicon_path)
                               : LexiconSet::defaults();
  });
  const PronounLexicon* lexicon = nullptr;
  if (config.gender_detection) {
    lexicon = lexicons.find(pivot);
    if (!lexicon) {
      throw PipelineError("gender", "no pronoun lexicon for pivot language '" + pivot + "'",
                          true);
    }
  }
  SentenceSegmenter segmenter;
  if (config.abbreviations_dir) {
    in_stage("segmentation", [&] { segmenter.load_directory(*config.abbreviations_dir); });
  }

  // Pivot pages and their interlanguage links.
  const auto mapping = in_stage("ingest", [&] {
    PageSelector selector;
    if (config.titles_path) {
      for (const auto& title : load_title_list(*config.titles_path)) {
        selector.add_title(title);
      }
    }
    if (config.category) selector.set_category(*config.category);
    auto pages = read_pages(config.dumps.at(pivot), selector, pivot);
    return std::make_pair(resolve_interlanguage(pages, targets, &summary),
                          std::move(pages));
  });

  std::vector<ArticleText> retrieved = in_stage("ingest", [&] {
    std::vector<ArticleText> out;
    for (const auto& page : mapping.second) {
      if (mapping.first.entries.count(page.title)) out.push_back(strip_wikitext(page));
    }
    for (std::size_t t = 0; t < targets.size(); ++t) {
      PageSelector selector;
      for (const auto& [pivot_title, links] : mapping.first.entries) {
        selector.add_title(links[t].second);
      }
      if (selector.empty()) continue;
      for (const auto& page : read_pages(config.dumps.at(targets[t]), selector, targets[t])) {
        out.push_back(strip_wikitext(page));
      }
    }
    return out;
  });

  const CompleteEntrySet complete = in_stage("index", [&] {
    return select_complete_entries(mapping.first, retrieved, &summary);
  });
  result.complete_entries = complete.size();
  std::map<ArticleKey, const ArticleText*> by_key;
  for (const auto& article : retrieved) by_key[article.key] = &article;

  const auto provider = in_stage("embedding", [&] { return make_provider(config.embedding); });

  // Segmentation, embedding and, with document scope, mining run per
  // biography on the worker pool. Results land in fixed slots, so the
  // schedule does not affect the output.
  std::vector<EntryWork> work(complete.size());
  in_stage("mining", [&] {
    parallel_for(complete.size(), workers, [&](std::size_t e) {
      const auto& entry = complete.entries[e];
      auto& w = work[e];
      w.sentences.resize(entry.articles.size());
      w.vectors.resize(entry.articles.size());
      in_stage("segmentation", [&] {
        for (std::size_t l = 0; l < entry.articles.size(); ++l) {
          w.sentences[l] = segmenter.segment(*by_key.at(entry.articles[l]));
        }
      });
      in_stage("embedding", [&] {
        for (std::size_t l = 0; l < entry.articles.size(); ++l) {
          if (!w.sentences[l].empty()) {
            w.vectors[l] = embed_batch(*provider, w.sentences[l]);
          }
        }
      });
      if (!config.document_scope) return;
      for (std::size_t l = 1; l < entry.articles.size(); ++l) {
        auto& pairs = w.pairs[complete.languages[l]];
        if (!w.vectors[0].empty() && !w.vectors[l].empty()) {
          check_cosine_is_dot(w.vectors[0], w.vectors[l]);
          pairs = mine_pairs(w.vectors[0], w.vectors[l], config.mining);
        }
      }
    });
  });

  std::map<LanguageCode, std::vector<CandidatePair>> pairwise;
  in_stage("mining", [&] {
    for (const auto& language : targets) pairwise[language];
    if (config.document_scope) {
      for (auto& w : work) {
        for (auto& [language, pairs] : w.pairs) {
          auto& all = pairwise[language];
          all.insert(all.end(), pairs.begin(), pairs.end());
        }
      }
      return;
    }
    std::map<std::string, std::size_t> entry_of;
    for (std::size_t e = 0; e < complete.size(); ++e) {
      entry_of[complete.entries[e].pivot_title] = e;
    }
    std::vector<SentenceVector> pooled_pivot;
    for (const auto& w : work) {
      pooled_pivot.insert(pooled_pivot.end(), w.vectors[0].begin(), w.vectors[0].end());
    }
    for (std::size_t l = 1; l < complete.languages.size(); ++l) {
      std::vector<SentenceVector> pooled;
      for (const auto& w : work) {
        pooled.insert(pooled.end(), w.vectors[l].begin(), w.vectors[l].end());
      }
      if (pooled_pivot.empty() || pooled.empty()) continue;
      check_cosine_is_dot(pooled_pivot, pooled);
      auto& kept = pairwise[complete.languages[l]];
      for (auto& pair : mine_pairs(pooled_pivot, pooled, config.mining)) {
        const auto& entry = complete.entries[entry_of.at(pair.source.title)];
        if (entry.articles[l] == pair.target.article()) kept.push_back(std::move(pair));
      }
    }
  });

  const std::vector<AlignedTuple> tuples =
      in_stage("intersection", [&] { return intersect_multiway(pairwise); });
  result.tuples_mined = tuples.size();

  // Sentence text by reference.
  std::map<SentenceRef, const std::string*> text_of;
  for (const auto& w : work) {
    for (const auto& sentences : w.sentences) {
      for (const auto& sentence : sentences) text_of[sentence.ref()] = &sentence.text;
    }
  }

  std::ostringstream rejections;
  const std::vector<TupleWithTexts> kept = in_stage("cleaning", [&] {
    std::vector<TupleWithTexts> survivors;
    for (const auto& tuple : tuples) {
      TupleWithTexts with_texts{tuple, {}};
      std::vector<std::string> texts;
      texts.push_back(*text_of.at(tuple.pivot));
      with_texts.texts[pivot] = texts.back();
      for (const auto& [language, member] : tuple.per_language) {
        texts.push_back(*text_of.at(member.ref));
        with_texts.texts[language] = texts.back();
      }
      const FilterDecision decision = length_ratio_filter(texts, config.cleaning);
      if (decision != FilterDecision::kKeep) {
        write_rejection(rejections, decision, tuple);
        ++result.tuples_rejected;
        continue;
      }
      survivors.push_back(std::move(with_texts));
    }
    const std::size_t before = survivors.size();
    survivors = dedupe_tuples(std::move(survivors));
    result.tuples_duplicate = before - survivors.size();
    return survivors;
  });

  // Tuples are ordered by pivot reference, so each biography's tuples form
  // a contiguous run in pivot sentence order.
  std::map<std::string, std::vector<const TupleWithTexts*>> tuples_by_title;
  for (const auto& t : kept) tuples_by_title[t.tuple.pivot.title].push_back(&t);

  std::map<LanguageCode, std::vector<DocumentRecord>> documents;
  in_stage("gender", [&] {
    for (const auto& entry : complete.entries) {
      const auto it = tuples_by_title.find(entry.pivot_title);
      if (it == tuples_by_title.end()) continue;
      const GenderLabel gender =
          lexicon ? classify_gender(*by_key.at(entry.articles[0]), *lexicon)
                  : GenderLabel::kUnknown;
      std::optional<std::string> topic;
      if (const auto t = topics.find(entry.pivot_title); t != topics.end()) {
        topic = t->second;
      }
      for (std::size_t l = 0; l < complete.languages.size(); ++l) {
        const LanguageCode& language = complete.languages[l];
        DocumentRecord doc;
        doc.docid = entry.pivot_title;
        doc.wpid = entry.wpids[l];
        doc.language = language;
        doc.topic = topic;
        doc.gender = gender;
        doc.title = entry.articles[l].title;
        for (const TupleWithTexts* t : it->second) {
          doc.segments.push_back({doc.segments.size() + 1, t->texts.at(language)});
        }
        documents[language].push_back(std::move(doc));
      }
    }
  });

  if (config.gender_detection && config.balance.mode != BalanceMode::kOff) {
    in_stage("balance", [&] {
      for (auto& [language, docs] : documents) {
        docs = balance_corpus(std::move(docs), config.balance);
      }
    });
  }

  in_stage("consistency", [&] {
    const auto& reference = documents[pivot];
    for (const auto& [language, docs] : documents) {
      if (docs.size() != reference.size()) {
        throw Error("language '" + language + "' has a different document count");
      }
      for (std::size_t d = 0; d < docs.size(); ++d) {
        if (docs[d].docid != reference[d].docid ||
            docs[d].segments.size() != reference[d].segments.size()) {
          throw Error("document '" + docs[d].docid + "' differs across languages");
        }
      }
    }
  });
  result.documents_written = documents[pivot].size();

  in_stage("output", [&] {
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) {
      throw WriteError("cannot create " + config.output_dir.string() + ": " + ec.message());
    }
    OutputSet outputs(config.output_dir);
    for (const auto& language : config.languages) {
      const std::string name = "corpus." + language + ".xml";
      auto out = outputs.open(name);
      write_corpus_xml(documents[language], language, out);
      out.close();
      if (!out) throw WriteError("cannot write " + name);
      result.corpus_files[language] = config.output_dir / name;
      result.stats.push_back(compute_stats(documents[language], language));
    }
    outputs.write("stats.txt", format_stats_report(result.stats));
    result.stats_file = config.output_dir / "stats.txt";
    outputs.write("rejected.tsv", rejections.str());
    std::ostringstream index;
    write_summary(index, summary);
    outputs.write("index.tsv", index.str());
    if (config.pair_dump) {
      for (const auto& [language, pairs] : pairwise) {
        std::ostringstream dump;
        write_pair_dump(dump, pairs);
        outputs.write("pairs." + pivot + "-" + language + ".tsv", dump.str());
      }
    }
    outputs.commit();
  });
  return result;
}

}  // namespace biomine
