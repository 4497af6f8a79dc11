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

#include "biomine/corpus_xml.hpp"

#include <expat.h>

#include <algorithm>
#include <exception>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "biomine/text_util.hpp"

namespace biomine {
namespace {

void escape_into(std::string& out, std::string_view s, bool attribute) {
  for (char c : s) {
    switch (c) {
      case '&':
        out.append("&amp;");
        break;
      case '<':
        out.append("&lt;");
        break;
      case '>':
        out.append("&gt;");
        break;
      case '"':
        if (attribute) {
          out.append("&quot;");
        } else {
          out.push_back(c);
        }
        break;
      case '\t':
        out.append(attribute ? "&#9;" : "\t");
        break;
      default:
        out.push_back(c);
    }
  }
}

void append_attribute(std::string& out, std::string_view name, std::string_view value) {
  out.push_back(' ');
  out.append(name);
  out.append("=\"");
  escape_into(out, value, true);
  out.push_back('"');
}

void validate_for_write(const std::vector<DocumentRecord>& documents,
                        const LanguageCode& language) {
  std::vector<std::string> problems;
  std::set<std::string> docids;
  for (const auto& doc : documents) {
    auto found = document_problems(doc);
    problems.insert(problems.end(), found.begin(), found.end());
    if (doc.language != language) {
      problems.push_back("document '" + doc.docid + "' has language " +
                         doc.language + " in a " + language + " corpus");
    }
    if (!docids.insert(doc.docid).second) {
      problems.push_back("duplicate docid '" + doc.docid + "'");
    }
  }
  if (!problems.empty()) {
    std::string message = "invalid corpus: " + problems.front();
    if (problems.size() > 1) {
      message += " (and " + std::to_string(problems.size() - 1) + " more)";
    }
    throw ValidationError(message);
  }
}

class CorpusReader {
 public:
  CorpusReader() {
    parser_ = XML_ParserCreate("UTF-8");
    if (!parser_) throw std::bad_alloc();
    XML_SetUserData(parser_, this);
    XML_SetElementHandler(parser_, &CorpusReader::on_start, &CorpusReader::on_end);
    XML_SetCharacterDataHandler(parser_, &CorpusReader::on_text);
  }
  ~CorpusReader() { XML_ParserFree(parser_); }
  CorpusReader(const CorpusReader&) = delete;
  CorpusReader& operator=(const CorpusReader&) = delete;

  std::vector<DocumentRecord> parse(const std::string& xml) {
    const auto status = XML_Parse(parser_, xml.data(), static_cast<int>(xml.size()),
                                  XML_TRUE);
    if (error_) std::rethrow_exception(error_);
    if (status != XML_STATUS_OK) {
      throw ParseError(std::string("malformed corpus XML: ") +
                           XML_ErrorString(XML_GetErrorCode(parser_)),
                       XML_GetCurrentLineNumber(parser_),
                       XML_GetCurrentColumnNumber(parser_) + 1);
    }
    return std::move(documents_);
  }

 private:
  [[noreturn]] void fail(const std::string& message) {
    throw ParseError(message, XML_GetCurrentLineNumber(parser_),
                     XML_GetCurrentColumnNumber(parser_) + 1);
  }

  static std::optional<std::string> attribute(const char** attrs, const char* name) {
    for (std::size_t i = 0; attrs[i]; i += 2) {
      if (std::string_view(attrs[i]) == name) return std::string(attrs[i + 1]);
    }
    return std::nullopt;
  }

  std::string required(const char** attrs, const char* element, const char* name) {
    auto value = attribute(attrs, name);
    if (!value) {
      fail(std::string("<") + element + "> is missing the mandatory '" + name +
           "' attribute");
    }
    return std::string(text::trim(*value));
  }

  std::uint64_t parse_unsigned(const std::string& value, const char* what) {
    if (value.empty() ||
        !std::all_of(value.begin(), value.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      fail(std::string("'") + what + "' must be a non-negative integer, got '" +
           value + "'");
    }
    try {
      return std::stoull(value);
    } catch (const std::out_of_range&) {
      fail(std::string("'") + what + "' is out of range");
    }
  }

  void start(const char* name, const char** attrs) {
    const std::string_view element(name);
    if (element == "doc") {
      if (current_) fail("nested <doc> element");
      DocumentRecord doc;
      doc.docid = required(attrs, "doc", "docid");
      doc.wpid = parse_unsigned(required(attrs, "doc", "wpid"), "wpid");
      doc.language = required(attrs, "doc", "language");
      if (auto topic = attribute(attrs, "topic")) {
        doc.topic = std::string(text::trim(*topic));
      }
      const std::string gender = required(attrs, "doc", "gender");
      try {
        doc.gender = parse_gender(gender);
      } catch (const InvalidArgument&) {
        fail("unknown gender value '" + gender + "'");
      }
      current_ = std::move(doc);
      saw_title_ = false;
    } else if (element == "title") {
      if (!current_) fail("<title> outside <doc>");
      capture_ = Capture::kTitle;
      buffer_.clear();
    } else if (element == "seg") {
      if (!current_) fail("<seg> outside <doc>");
      segment_id_ = parse_unsigned(required(attrs, "seg", "id"), "id");
      capture_ = Capture::kSegment;
      buffer_.clear();
    }
  }

  void end(const char* name) {
    const std::string_view element(name);
    if (element == "title" && capture_ == Capture::kTitle) {
      current_->title = std::string(text::trim(buffer_));
      saw_title_ = true;
      capture_ = Capture::kNone;
    } else if (element == "seg" && capture_ == Capture::kSegment) {
      current_->segments.push_back(
          {static_cast<std::size_t>(segment_id_), std::string(text::trim(buffer_))});
      capture_ = Capture::kNone;
    } else if (element == "doc" && current_) {
      if (!saw_title_) fail("<doc docid=\"" + current_->docid + "\"> has no <title>");
      documents_.push_back(std::move(*current_));
      current_.reset();
    }
  }

  template <typename Fn>
  static void guarded(void* self, Fn&& fn) {
    auto* reader = static_cast<CorpusReader*>(self);
    if (reader->error_) return;
    try {
      fn(*reader);
    } catch (...) {
      reader->error_ = std::current_exception();
      XML_StopParser(reader->parser_, XML_FALSE);
    }
  }
  static void XMLCALL on_start(void* self, const XML_Char* name, const XML_Char** attrs) {
    guarded(self, [&](CorpusReader& r) { r.start(name, attrs); });
  }
  static void XMLCALL on_end(void* self, const XML_Char* name) {
    guarded(self, [&](CorpusReader& r) { r.end(name); });
  }
  static void XMLCALL on_text(void* self, const XML_Char* data, int len) {
    guarded(self, [&](CorpusReader& r) {
      if (r.capture_ != Capture::kNone) r.buffer_.append(data, len);
    });
  }

  enum class Capture { kNone, kTitle, kSegment };

  XML_Parser parser_ = nullptr;
  std::exception_ptr error_;
  std::vector<DocumentRecord> documents_;
  std::optional<DocumentRecord> current_;
  bool saw_title_ = false;
  Capture capture_ = Capture::kNone;
  std::uint64_t segment_id_ = 0;
  std::string buffer_;
};

// Inserts a synthetic root when the file is a bare sequence of <doc>
// elements. No newline is inserted, so line numbers stay valid.
std::string with_root(std::string xml) {
  std::size_t pos = 0;
  if (xml.rfind("\xEF\xBB\xBF", 0) == 0) pos = 3;
  while (true) {
    while (pos < xml.size() && std::isspace(static_cast<unsigned char>(xml[pos]))) ++pos;
    if (xml.compare(pos, 2, "<?") == 0) {
      const std::size_t end = xml.find("?>", pos);
      if (end == std::string::npos) return xml;
      pos = end + 2;
    } else if (xml.compare(pos, 4, "<!--") == 0) {
      const std::size_t end = xml.find("-->", pos);
      if (end == std::string::npos) return xml;
      pos = end + 3;
    } else {
      break;
    }
  }
  if (xml.compare(pos, 4, "<doc") != 0) return xml;
  xml.insert(pos, "<corpus>");
  xml.append("</corpus>");
  return xml;
}

void count_words(std::string_view segment, std::size_t& words,
                 std::set<std::string>& vocabulary) {
  std::size_t pos = 0;
  std::vector<char32_t> token;
  const auto flush = [&] {
    std::size_t begin = 0;
    std::size_t end = token.size();
    const auto is_word_char = [](char32_t c) {
      return text::is_letter(c) || text::is_digit(c);
    };
    while (begin < end && !is_word_char(token[begin])) ++begin;
    while (end > begin && !is_word_char(token[end - 1])) --end;
    if (begin < end) {
      ++words;
      std::string word;
      for (std::size_t i = begin; i < end; ++i) {
        text::append_utf8(word, text::to_lower(token[i]));
      }
      vocabulary.insert(std::move(word));
    }
    token.clear();
  };
  while (pos < segment.size()) {
    const char32_t cp = text::next_code_point(segment, pos);
    if (text::is_space(cp)) {
      flush();
    } else {
      token.push_back(cp);
    }
  }
  flush();
}

}  // namespace

std::uint64_t write_corpus_xml(const std::vector<DocumentRecord>& documents,
                               const LanguageCode& language, std::ostream& sink) {
  if (language.empty()) throw ValidationError("corpus language is empty");
  validate_for_write(documents, language);

  std::vector<const DocumentRecord*> ordered;
  ordered.reserve(documents.size());
  for (const auto& doc : documents) ordered.push_back(&doc);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto* a, const auto* b) { return a->docid < b->docid; });

  std::uint64_t written = 0;
  std::string chunk;
  const auto flush = [&] {
    sink.write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
    if (!sink) throw WriteError("cannot write corpus output");
    written += chunk.size();
    chunk.clear();
  };

  chunk.append("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<corpus");
  append_attribute(chunk, "language", language);
  chunk.append(">\n");
  for (const DocumentRecord* doc : ordered) {
    chunk.append("<doc");
    append_attribute(chunk, "docid", doc->docid);
    append_attribute(chunk, "wpid", std::to_string(doc->wpid));
    append_attribute(chunk, "language", doc->language);
    if (doc->topic) append_attribute(chunk, "topic", *doc->topic);
    append_attribute(chunk, "gender", gender_name(doc->gender));
    chunk.append(">\n<title>");
    escape_into(chunk, doc->title, false);
    chunk.append("</title>\n");
    for (const auto& segment : doc->segments) {
      chunk.append("<seg id=\"");
      chunk.append(std::to_string(segment.id));
      chunk.append("\">");
      escape_into(chunk, segment.text, false);
      chunk.append("</seg>\n");
    }
    chunk.append("</doc>\n");
    if (chunk.size() > (1 << 16)) flush();
  }
  chunk.append("</corpus>\n");
  flush();
  sink.flush();
  if (!sink) throw WriteError("cannot flush corpus output");
  return written;
}

std::string corpus_xml_string(const std::vector<DocumentRecord>& documents,
                              const LanguageCode& language) {
  std::ostringstream out;
  write_corpus_xml(documents, language, out);
  return out.str();
}

std::vector<DocumentRecord> read_corpus_xml(std::istream& source) {
  std::ostringstream content;
  content << source.rdbuf();
  if (source.bad()) throw InputError("cannot read corpus input");
  return read_corpus_xml_string(content.str());
}

std::vector<DocumentRecord> read_corpus_xml_string(const std::string& xml) {
  CorpusReader reader;
  return reader.parse(with_root(xml));
}

const GenderStats& CorpusStats::at(GenderLabel gender) const {
  static const GenderStats kEmpty;
  const auto it = by_gender.find(gender);
  return it == by_gender.end() ? kEmpty : it->second;
}

CorpusStats compute_stats(const std::vector<DocumentRecord>& documents,
                          const LanguageCode& language) {
  CorpusStats stats;
  stats.language = language;
  stats.by_gender[GenderLabel::kFemale];
  stats.by_gender[GenderLabel::kMale];
  std::map<GenderLabel, std::set<std::string>> vocabularies;
  for (const auto& doc : documents) {
    if (doc.language != language) continue;
    auto& entry = stats.by_gender[doc.gender];
    auto& vocabulary = vocabularies[doc.gender];
    ++entry.documents;
    entry.sentences += doc.segments.size();
    for (const auto& segment : doc.segments) {
      count_words(segment.text, entry.words, vocabulary);
    }
  }
  for (auto& [gender, entry] : stats.by_gender) {
    entry.vocabulary = vocabularies[gender].size();
    if (entry.documents > 0) {
      const auto docs = static_cast<double>(entry.documents);
      entry.avg_sentences_per_doc = static_cast<double>(entry.sentences) / docs;
      entry.avg_words_per_doc = static_cast<double>(entry.words) / docs;
    }
  }
  return stats;
}

std::string format_stats_report(const std::vector<CorpusStats>& stats) {
  bool any_unknown = false;
  for (const auto& s : stats) {
    if (s.at(GenderLabel::kUnknown).documents > 0) any_unknown = true;
  }
  std::vector<std::pair<GenderLabel, const char*>> columns = {
      {GenderLabel::kFemale, "F"}, {GenderLabel::kMale, "M"}};
  if (any_unknown) columns.emplace_back(GenderLabel::kUnknown, "U");

  constexpr int kLabelWidth = 20;
  constexpr int kColumnWidth = 10;
  const auto pad = [](std::string s, int width) {
    if (static_cast<int>(s.size()) < width) s.append(width - s.size(), ' ');
    return s;
  };
  const auto fixed1 = [](double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.1f", v);
    return std::string(buffer);
  };

  std::string out = pad("", kLabelWidth);
  for (const auto& s : stats) {
    out += pad(s.language, kColumnWidth * static_cast<int>(columns.size()));
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  out += '\n';
  std::string header = pad("", kLabelWidth);
  for (std::size_t i = 0; i < stats.size(); ++i) {
    for (const auto& column : columns) header += pad(column.second, kColumnWidth);
  }
  while (!header.empty() && header.back() == ' ') header.pop_back();
  out += header + '\n';

  const auto row = [&](const char* label, auto&& value) {
    std::string line = pad(label, kLabelWidth);
    for (const auto& s : stats) {
      for (const auto& column : columns) {
        line += pad(value(s.at(column.first)), kColumnWidth);
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  };
  row("Documents", [](const GenderStats& g) { return std::to_string(g.documents); });
  row("Sentences", [](const GenderStats& g) { return std::to_string(g.sentences); });
  row("Average sent/doc",
      [&](const GenderStats& g) { return fixed1(g.avg_sentences_per_doc); });
  row("Words", [](const GenderStats& g) { return std::to_string(g.words); });
  row("Average words/doc",
      [&](const GenderStats& g) { return fixed1(g.avg_words_per_doc); });
  row("Vocabulary", [](const GenderStats& g) { return std::to_string(g.vocabulary); });
  return out;
}

}  // namespace biomine
