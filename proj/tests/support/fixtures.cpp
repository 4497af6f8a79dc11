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

#include "support/fixtures.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "biomine/text_util.hpp"

namespace biomine::testing {
namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

const std::vector<FixtureBiography>& biographies() {
  static const std::vector<FixtureBiography> kBiographies = {
      {"Ada Lovelace",
       true,
       {"Ada Lovelace was an English mathematician and writer who worked on the "
        "Analytical Engine.",
        "She was born in London as the only legitimate child of the poet Lord Byron.",
        "Her notes on the engine include what is often described as the first "
        "computer program.",
        "She corresponded with Charles Babbage about the design of the machine for "
        "many years.",
        "Lovelace died of uterine cancer in 1852 at the age of thirty six."}},
      {"Alan Turing",
       false,
       {"Alan Turing was an English mathematician, computer scientist, logician and "
        "cryptanalyst.",
        "He was highly influential in the development of theoretical computer science.",
        "During the Second World War he worked for the Government Code and Cypher "
        "School at Bletchley Park.",
        "His machine for breaking the Enigma cipher shortened the war in Europe.",
        "After the war he designed the Automatic Computing Engine at the National "
        "Physical Laboratory.",
        "Turing died in 1954 in Wilmslow, sixteen days before his forty second "
        "birthday."}},
      {"Charles Babbage",
       false,
       {"Charles Babbage was an English polymath, mathematician, philosopher, inventor "
        "and mechanical engineer.",
        "He originated the concept of a digital programmable computer.",
        "His Difference Engine was designed to tabulate polynomial functions "
        "automatically.",
        "Parts of his unfinished mechanisms are on display in the Science Museum in "
        "London."}},
      {"Marie Curie",
       true,
       {"Marie Curie was a Polish and naturalised French physicist and chemist who "
        "studied radioactivity.",
        "She was the first woman to win a Nobel Prize and the only person to win it in "
        "two sciences.",
        "Her husband Pierre Curie shared her first prize together with Henri "
        "Becquerel."}},
  };
  return kBiographies;
}

// Pivot sentences without a counterpart in the other languages.
bool untranslated(const std::string& sentence) {
  return sentence.rfind("After the war he designed", 0) == 0;
}

std::string localized_title(const std::string& title, const LanguageCode& language) {
  if (language == "es" && title == "Marie Curie") return "Marie Curie (física)";
  if (language == "ca" && title == "Alan Turing") return "Alan Mathison Turing";
  return title;
}

// Wraps a few known place names in links and the title in bold, adds an
// infobox, a reference and a heading so that the stripper has work to do.
std::string to_wikitext(const std::string& title, const std::vector<std::string>& sentences,
                        const std::vector<std::pair<LanguageCode, std::string>>& links,
                        const std::string& category) {
  std::string out = "{{Infobox person\n| name = " + title + "\n| image = x.jpg\n}}\n";
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    std::string s = sentences[i];
    if (i == 0 && s.rfind(title, 0) == 0) s = "'''" + title + "'''" + s.substr(title.size());
    for (const char* place : {"London", "Europe", "Bletchley Park"}) {
      const auto pos = s.find(place);
      if (pos != std::string::npos) {
        s = s.substr(0, pos) + "[[" + place + "]]" + s.substr(pos + std::strlen(place));
      }
    }
    if (i == 1) s += "<ref>{{cite book |title=Lives}}</ref>";
    out += s;
    if (i + 1 == sentences.size() / 2 + 1 && i + 1 < sentences.size()) {
      out += "\n\n== Life ==\n";
    } else {
      out += i + 1 < sentences.size() ? " " : "\n";
    }
  }
  out += "\n[[Category:" + category + "]]\n";
  for (const auto& [language, target] : links) out += "[[" + language + ":" + target + "]]\n";
  return out;
}

}  // namespace

std::string make_dump(const std::vector<FixturePage>& pages) {
  std::ostringstream out;
  out << "<mediawiki xmlns=\"http://www.mediawiki.org/xml/export-0.10/\" "
         "version=\"0.10\" xml:lang=\"en\">\n"
      << "  <siteinfo>\n    <sitename>Wikipedia</sitename>\n"
      << "    <namespaces>\n      <namespace key=\"0\" case=\"first-letter\" />\n"
      << "    </namespaces>\n  </siteinfo>\n";
  for (const auto& page : pages) {
    out << "  <page>\n    <title>" << xml_escape(page.title) << "</title>\n"
        << "    <ns>" << page.ns << "</ns>\n    <id>" << page.id << "</id>\n";
    if (page.redirect) out << "    <redirect title=\"x\" />\n";
    out << "    <revision>\n      <id>" << page.id * 10 << "</id>\n"
        << "      <contributor><username>u</username><id>7</id></contributor>\n"
        << "      <text bytes=\"" << page.text.size() << "\" xml:space=\"preserve\">"
        << xml_escape(page.text) << "</text>\n    </revision>\n  </page>\n";
  }
  out << "</mediawiki>\n";
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

TempDir::TempDir(const std::string& prefix) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          (prefix + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ignored;
  std::filesystem::remove_all(path_, ignored);
}

std::string pseudo_translate(const std::string& sentence, const LanguageCode& language) {
  static const std::map<LanguageCode, std::map<std::string, std::string>> kWords = {
      {"es",
       {{"was", "fue"}, {"the", "el"}, {"and", "y"}, {"in", "en"}, {"of", "de"},
        {"with", "con"}, {"her", "su"}, {"his", "su"}, {"she", "ella"},
        {"he", "él"}, {"for", "para"}, {"at", "en"}, {"who", "que"}}},
      {"ca",
       {{"was", "va"}, {"the", "el"}, {"and", "i"}, {"in", "a"}, {"of", "de"},
        {"with", "amb"}, {"her", "seva"}, {"his", "seu"}, {"she", "ella"},
        {"he", "ell"}, {"for", "per"}, {"at", "a"}, {"who", "que"}}},
  };
  const auto& words = kWords.at(language);
  std::string out;
  for (std::string_view token : text::split(sentence, ' ')) {
    if (!out.empty()) out += ' ';
    std::string lower = text::to_lower(token);
    const auto it = words.find(lower);
    if (it == words.end()) {
      out.append(token);
      continue;
    }
    std::string replacement = it->second;
    std::size_t pos = 0;
    const char32_t first = text::next_code_point(token, pos);
    if (text::is_upper(first)) {
      std::size_t rpos = 0;
      const char32_t rfirst = text::next_code_point(replacement, rpos);
      std::string upper;
      text::append_utf8(upper, text::to_upper(rfirst));
      replacement = upper + replacement.substr(rpos);
    }
    out += replacement;
  }
  return out;
}

EndToEndFixture make_end_to_end_fixture(const std::filesystem::path& dir,
                                        const std::vector<LanguageCode>& languages,
                                        bool drop_last_in_third) {
  EndToEndFixture fixture;
  fixture.languages = languages;
  fixture.biographies = biographies();
  const LanguageCode& pivot = languages.front();

  std::map<LanguageCode, std::vector<FixturePage>> pages;
  std::uint64_t next_id = 1000;
  for (std::size_t b = 0; b < fixture.biographies.size(); ++b) {
    const auto& bio = fixture.biographies[b];
    std::vector<std::pair<LanguageCode, std::string>> links;
    for (std::size_t l = 1; l < languages.size(); ++l) {
      links.emplace_back(languages[l], localized_title(bio.title, languages[l]));
    }
    pages[pivot].push_back({bio.title, next_id++,
                            to_wikitext(bio.title, bio.pivot_sentences, links,
                                        bio.female ? "Women scientists" : "Scientists")});
    for (std::size_t l = 1; l < languages.size(); ++l) {
      if (drop_last_in_third && l == 2 && b + 1 == fixture.biographies.size()) continue;
      std::vector<std::string> translated;
      for (const auto& s : bio.pivot_sentences) {
        if (!untranslated(s)) translated.push_back(pseudo_translate(s, languages[l]));
      }
      const std::string title = localized_title(bio.title, languages[l]);
      pages[languages[l]].push_back(
          {title, 51690640 + next_id++,
           to_wikitext(title, translated, {{pivot, bio.title}}, "Científics")});
    }
  }
  // Noise the reader has to skip.
  pages[pivot].push_back({"Lovelace", next_id++, "#REDIRECT [[Ada Lovelace]]", 0, true});
  pages[pivot].push_back({"Talk:Ada Lovelace", next_id++, "She is discussed here.", 1});
  pages[pivot].push_back({"London", next_id++, "'''London''' is a city.\n[[es:Londres]]"});

  for (const auto& language : languages) {
    const auto path = dir / ("dump." + language + ".xml");
    write_file(path, make_dump(pages[language]));
    fixture.config.dumps[language] = path;
  }
  std::string titles = "# fixture biographies\n";
  for (const auto& bio : fixture.biographies) titles += bio.title + "\n";
  titles += "Nobody Here\n";
  write_file(dir / "titles.txt", titles);

  fixture.config.languages = languages;
  fixture.config.titles_path = dir / "titles.txt";
  fixture.config.embedding.kind = ProviderKind::kBuiltinFallback;
  fixture.config.embedding.dimension = 512;
  fixture.config.output_dir = dir / "out";
  fixture.config.workers = 2;
  return fixture;
}

std::vector<double> random_unit(std::mt19937_64& rng, std::size_t dimension) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(dimension);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& x : v) {
      x = normal(rng);
      norm += x * x;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

SentenceVector make_vector(std::vector<double> values, const LanguageCode& language,
                           const std::string& title, std::size_t index) {
  SentenceVector v;
  v.values = std::move(values);
  v.ref = {language, title, index};
  return v;
}

}  // namespace biomine::testing
