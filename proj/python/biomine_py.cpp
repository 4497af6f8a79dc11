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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fstream>

#include "biomine/cleaning.hpp"
#include "biomine/corpus_xml.hpp"
#include "biomine/embeddings.hpp"
#include "biomine/gender.hpp"
#include "biomine/mining.hpp"
#include "biomine/pipeline.hpp"
#include "biomine/segmenter.hpp"
#include "biomine/wikitext.hpp"

namespace py = pybind11;
using namespace biomine;

namespace {

std::vector<SentenceVector> to_vectors(const std::vector<std::vector<double>>& rows,
                                       const std::string& language) {
  std::vector<SentenceVector> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto values = rows[i];
    normalize(values);
    out.push_back({std::move(values), {language, "", i}});
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_biomine, m) {
  m.doc() = "Gender-balanced document-level parallel corpus mining";

  auto error = py::register_exception<Error>(m, "BiomineError");
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());

  py::enum_<GenderLabel>(m, "Gender")
      .value("FEMALE", GenderLabel::kFemale)
      .value("MALE", GenderLabel::kMale)
      .value("UNKNOWN", GenderLabel::kUnknown);

  py::class_<Segment>(m, "Segment")
      .def(py::init<std::size_t, std::string>(), py::arg("id"), py::arg("text"))
      .def_readwrite("id", &Segment::id)
      .def_readwrite("text", &Segment::text)
      .def("__eq__", [](const Segment& a, const Segment& b) { return a == b; });

  py::class_<DocumentRecord>(m, "Document")
      .def(py::init<>())
      .def_readwrite("docid", &DocumentRecord::docid)
      .def_readwrite("wpid", &DocumentRecord::wpid)
      .def_readwrite("language", &DocumentRecord::language)
      .def_readwrite("topic", &DocumentRecord::topic)
      .def_readwrite("gender", &DocumentRecord::gender)
      .def_readwrite("title", &DocumentRecord::title)
      .def_readwrite("segments", &DocumentRecord::segments)
      .def("__eq__", [](const DocumentRecord& a, const DocumentRecord& b) { return a == b; })
      .def("__repr__", [](const DocumentRecord& d) {
        return "<Document docid='" + d.docid + "' language='" + d.language + "' segments=" +
               std::to_string(d.segments.size()) + ">";
      });

  py::class_<GenderStats>(m, "GenderStats")
      .def_readonly("documents", &GenderStats::documents)
      .def_readonly("sentences", &GenderStats::sentences)
      .def_readonly("words", &GenderStats::words)
      .def_readonly("vocabulary", &GenderStats::vocabulary)
      .def_readonly("avg_sentences_per_doc", &GenderStats::avg_sentences_per_doc)
      .def_readonly("avg_words_per_doc", &GenderStats::avg_words_per_doc);

  py::class_<CorpusStats>(m, "CorpusStats")
      .def_readonly("language", &CorpusStats::language)
      .def("at", &CorpusStats::at, py::arg("gender"), py::return_value_policy::reference_internal);

  m.def("corpus_xml_string", &corpus_xml_string, py::arg("documents"), py::arg("language"));
  m.def("read_corpus_xml_string", &read_corpus_xml_string, py::arg("xml"));
  m.def(
      "read_corpus_xml",
      [](const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError("cannot open " + path.string());
        return read_corpus_xml(in);
      },
      py::arg("path"));
  m.def("compute_stats", &compute_stats, py::arg("documents"), py::arg("language"));
  m.def("format_stats_report", &format_stats_report, py::arg("stats"));

  m.def(
      "strip_markup", [](const std::string& wikitext) { return strip_markup(wikitext, nullptr); },
      py::arg("wikitext"));
  m.def(
      "segment",
      [](const std::string& text, const std::string& language) {
        ArticleText article;
        article.key = {language, ""};
        article.plain_text = text;
        std::vector<std::string> out;
        for (auto& s : segment_sentences(article)) out.push_back(std::move(s.text));
        return out;
      },
      py::arg("text"), py::arg("language"));

  m.def("embed", &builtin_fallback_embed, py::arg("text"), py::arg("dimension") = 1024,
        "Builtin character n-gram embedding (unit norm).");
  m.def(
      "mine_pairs",
      [](const std::vector<std::vector<double>>& source,
         const std::vector<std::vector<double>>& target, std::size_t k, double threshold,
         const std::string& strategy) {
        MiningConfig config;
        config.k = k;
        config.margin_threshold = threshold;
        config.strategy = parse_strategy(strategy);
        const auto src = to_vectors(source, "src");
        const auto tgt = to_vectors(target, "tgt");
        std::vector<py::tuple> out;
        for (const auto& p : biomine::mine_pairs(src, tgt, config)) {
          out.push_back(py::make_tuple(p.source.index, p.target.index, p.margin, p.cosine));
        }
        return out;
      },
      py::arg("source"), py::arg("target"), py::arg("k") = 4, py::arg("threshold") = 1.04,
      py::arg("strategy") = "max",
      "Margin-based mining over raw vectors; returns (source, target, margin, cosine).");

  m.def(
      "classify_gender",
      [](const std::string& text, const std::string& language) {
        static const LexiconSet lexicons = LexiconSet::defaults();
        const PronounLexicon* lexicon = lexicons.find(language);
        if (lexicon == nullptr) throw InvalidArgument("no pronoun lexicon for " + language);
        ArticleText article;
        article.key = {language, ""};
        article.plain_text = text;
        return classify_gender(article, *lexicon);
      },
      py::arg("text"), py::arg("language"));
  m.def(
      "balance",
      [](std::vector<DocumentRecord> documents, const std::string& mode, std::uint64_t seed) {
        BalanceConfig config;
        config.mode = parse_balance_mode(mode);
        config.seed = seed;
        return balance_corpus(std::move(documents), config);
      },
      py::arg("documents"), py::arg("mode") = "sentence", py::arg("seed") = 20200511);
  m.def(
      "length_filter",
      [](const std::vector<std::string>& texts, double ratio, const std::string& unit,
         bool inclusive) {
        CleaningConfig config;
        config.max_length_ratio = ratio;
        config.length_unit = parse_length_unit(unit);
        config.inclusive_boundary = inclusive;
        config.validate();
        return std::string(decision_code(length_ratio_filter(texts, config)));
      },
      py::arg("texts"), py::arg("ratio") = 0.20, py::arg("unit") = "characters",
      py::arg("inclusive") = false);

  m.def(
      "run_pipeline",
      [](const std::vector<std::string>& languages,
         const std::map<std::string, std::filesystem::path>& dumps,
         const std::filesystem::path& output_dir,
         const std::optional<std::filesystem::path>& titles,
         const std::optional<std::string>& category, std::size_t dimension, double threshold,
         std::size_t k, const std::string& balance, std::uint64_t seed, std::size_t workers) {
        PipelineConfig config;
        config.languages = languages;
        config.dumps = dumps;
        config.output_dir = output_dir;
        config.titles_path = titles;
        config.category = category;
        config.embedding.dimension = dimension;
        config.mining.margin_threshold = threshold;
        config.mining.k = k;
        config.balance.mode = parse_balance_mode(balance);
        config.balance.seed = seed;
        config.workers = workers;
        PipelineResult result;
        {
          py::gil_scoped_release release;
          result = biomine::run_pipeline(config);
        }
        py::dict summary;
        summary["corpus_files"] = result.corpus_files;
        summary["stats_file"] = result.stats_file;
        summary["complete_entries"] = result.complete_entries;
        summary["tuples_mined"] = result.tuples_mined;
        summary["tuples_rejected"] = result.tuples_rejected;
        summary["documents_written"] = result.documents_written;
        return summary;
      },
      py::arg("languages"), py::arg("dumps"), py::arg("output_dir"),
      py::arg("titles") = py::none(), py::arg("category") = py::none(),
      py::arg("dimension") = 1024, py::arg("threshold") = 1.04, py::arg("k") = 4,
      py::arg("balance") = "sentence", py::arg("seed") = 20200511, py::arg("workers") = 0);
}
