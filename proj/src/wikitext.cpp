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

#include "biomine/wikitext.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <set>
#include <string>

#include "biomine/dump.hpp"
#include "biomine/text_util.hpp"

namespace biomine {
namespace {

// Localized namespace names for the editions we care about. Matching is
// case-insensitive on the first letter only, like MediaWiki itself.
constexpr std::array<std::string_view, 18> kFileNamespaces = {
    "File",     "Image",  "Media",   "Archivo", "Imagen", "Fitxer",
    "Imatge",   "Datei",  "Bild",    "Fichier", "Ficheiro", "Arquivo",
    "Immagine", "Bestand", "Plik",   "Файл",    "Fil",    "Dosya"};

constexpr std::array<std::string_view, 12> kCategoryNamespaces = {
    "Category",  "Categoría", "Categoria", "Kategorie",
    "Catégorie", "Kategoria", "Categorie", "Kategori",
    "Категория", "Kategória", "Luokka",    "Kategorija"};

// Wikipedia edition codes. Interwiki prefixes to sister projects (wikt, w,
// s, q, ...) are intentionally absent.
const std::set<std::string_view>& language_codes() {
  static const std::set<std::string_view> codes = {
      "aa", "ab", "af", "ak", "als", "am", "an", "ang", "ar", "arz", "as",
      "ast", "av", "ay", "az", "azb", "ba", "bar", "be", "bg", "bh", "bi",
      "bm", "bn", "bo", "br", "bs", "ca", "ce", "ceb", "ch", "ckb", "co",
      "cr", "cs", "cu", "cv", "cy", "da", "de", "dv", "dz", "ee", "el",
      "en", "eo", "es", "et", "eu", "fa", "ff", "fi", "fj", "fo", "fr",
      "frr", "fy", "ga", "gd", "gl", "gn", "gu", "gv", "ha", "he", "hi",
      "hr", "hsb", "ht", "hu", "hy", "ia", "id", "ie", "ig", "ik", "ilo",
      "io", "is", "it", "iu", "ja", "jv", "ka", "kg", "ki", "kk", "kl",
      "km", "kn", "ko", "ks", "ku", "kv", "kw", "ky", "la", "lb", "lg",
      "li", "lmo", "ln", "lo", "lt", "lv", "mg", "mi", "min", "mk", "ml",
      "mn", "mr", "ms", "mt", "my", "mzn", "na", "nah", "nap", "nds", "ne",
      "new", "nl", "nn", "no", "nv", "ny", "oc", "om", "or", "os", "pa",
      "pl", "pms", "pnb", "ps", "pt", "qu", "rm", "rn", "ro", "ru", "rw",
      "sa", "sah", "sc", "scn", "sco", "sd", "se", "sg", "sh", "si",
      "simple", "sk", "sl", "sm", "sn", "so", "sq", "sr", "ss", "st", "su",
      "sv", "sw", "ta", "te", "tg", "th", "ti", "tk", "tl", "tn", "to",
      "tr", "ts", "tt", "tw", "ty", "ug", "uk", "ur", "uz", "ve", "vec",
      "vi", "vo", "wa", "war", "wo", "wuu", "xh", "yi", "yo", "za", "zh",
      "zu"};
  return codes;
}

bool same_ci_first(std::string_view a, std::string_view b) {
  if (a.empty() || b.empty()) return a == b;
  std::size_t pa = 0;
  std::size_t pb = 0;
  const char32_t ca = text::next_code_point(a, pa);
  const char32_t cb = text::next_code_point(b, pb);
  return text::to_upper(ca) == text::to_upper(cb) && a.substr(pa) == b.substr(pb);
}

template <std::size_t N>
bool in_namespace_list(std::string_view prefix,
                       const std::array<std::string_view, N>& names) {
  const std::string_view trimmed = text::trim(prefix);
  return std::any_of(names.begin(), names.end(), [&](std::string_view name) {
    return same_ci_first(trimmed, name);
  });
}

bool is_file_namespace(std::string_view prefix) {
  return in_namespace_list(prefix, kFileNamespaces);
}
bool is_category_namespace(std::string_view prefix) {
  return in_namespace_list(prefix, kCategoryNamespaces);
}

bool starts_at(std::string_view s, std::size_t i, std::string_view token) {
  return s.compare(i, token.size(), token) == 0;
}

// Case-insensitive search for an ASCII token.
std::size_t find_ci(std::string_view s, std::string_view token,
                    std::size_t from) {
  for (std::size_t i = from; i + token.size() <= s.size(); ++i) {
    if (text::starts_with_ci(s.substr(i), token)) return i;
  }
  return std::string_view::npos;
}

std::string remove_comments(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t open = s.find("<!--", i);
    if (open == std::string_view::npos) {
      out.append(s.substr(i));
      break;
    }
    out.append(s.substr(i, open - i));
    const std::size_t close = s.find("-->", open + 4);
    if (close == std::string_view::npos) break;
    i = close + 3;
  }
  return out;
}

std::string decode_entities(std::string_view s) {
  struct Named {
    std::string_view name;
    std::string_view value;
  };
  static constexpr std::array<Named, 21> kNamed = {{
      {"amp", "&"},     {"lt", "<"},      {"gt", ">"},
      {"quot", "\""},   {"apos", "'"},    {"nbsp", " "},
      {"ndash", "–"}, {"mdash", "—"}, {"hellip", "…"},
      {"laquo", "«"}, {"raquo", "»"}, {"lsquo", "‘"},
      {"rsquo", "’"}, {"ldquo", "“"}, {"rdquo", "”"},
      {"middot", "·"}, {"minus", "−"}, {"times", "×"},
      {"deg", "°"},   {"shy", ""},      {"thinsp", " "},
  }};
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    const std::size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back(s[i++]);
      continue;
    }
    const std::string_view body = s.substr(i + 1, semi - i - 1);
    bool decoded = false;
    if (body.size() > 1 && body[0] == '#') {
      const bool hex = body[1] == 'x' || body[1] == 'X';
      const std::string digits(body.substr(hex ? 2 : 1));
      char* end = nullptr;
      const unsigned long cp =
          digits.empty() ? 0 : std::strtoul(digits.c_str(), &end, hex ? 16 : 10);
      if (!digits.empty() && end && *end == '\0' && cp > 0 && cp < 0x110000) {
        text::append_utf8(out, cp == 0xA0 ? U' ' : static_cast<char32_t>(cp));
        decoded = true;
      }
    } else {
      for (const auto& entity : kNamed) {
        if (body == entity.name) {
          out.append(entity.value);
          decoded = true;
          break;
        }
      }
    }
    if (decoded) {
      i = semi + 1;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

// Elements whose whole content is dropped.
constexpr std::array<std::string_view, 13> kDroppedElements = {
    "ref",      "math",     "gallery",        "timeline", "score",
    "syntaxhighlight", "source", "imagemap", "templatedata", "graph",
    "mapframe", "references", "chem"};

bool tag_name_ends(std::string_view s, std::size_t at) {
  return at >= s.size() || s[at] == '>' || s[at] == '/' || s[at] == ' ' ||
         s[at] == '\t' || s[at] == '\n';
}

std::string remove_elements(std::string_view s,
                             std::vector<std::string>* warnings) {
  std::string current(s);
  for (std::string_view name : kDroppedElements) {
    const std::string open_token = "<" + std::string(name);
    const std::string close_token = "</" + std::string(name);
    std::string out;
    out.reserve(current.size());
    std::size_t i = 0;
    const std::string_view view = current;
    while (i < view.size()) {
      std::size_t open = find_ci(view, open_token, i);
      while (open != std::string_view::npos &&
             !tag_name_ends(view, open + open_token.size())) {
        open = find_ci(view, open_token, open + 1);
      }
      if (open == std::string_view::npos) {
        out.append(view.substr(i));
        break;
      }
      out.append(view.substr(i, open - i));
      const std::size_t open_end = view.find('>', open);
      if (open_end == std::string_view::npos) {
        // "<ref" with no closing '>' at all: drop the rest of the line.
        const std::size_t eol = view.find('\n', open);
        i = eol == std::string_view::npos ? view.size() : eol;
        continue;
      }
      if (view[open_end - 1] == '/') {
        i = open_end + 1;
        continue;
      }
      std::size_t close = find_ci(view, close_token, open_end);
      while (close != std::string_view::npos &&
             !tag_name_ends(view, close + close_token.size())) {
        close = find_ci(view, close_token, close + 1);
      }
      if (close == std::string_view::npos) {
        if (warnings) warnings->push_back("unclosed <" + std::string(name) + ">");
        i = open_end + 1;
        continue;
      }
      const std::size_t close_end = view.find('>', close);
      i = close_end == std::string_view::npos ? view.size() : close_end + 1;
    }
    current = std::move(out);
  }
  return current;
}

// Removes remaining tags but keeps their content. Line-ish tags become a
// space so that words do not glue together.
std::string remove_tags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '<' && i + 1 < s.size()) {
      std::size_t name_start = i + 1;
      if (s[name_start] == '/') ++name_start;
      if (name_start < s.size() &&
          ((s[name_start] >= 'a' && s[name_start] <= 'z') ||
           (s[name_start] >= 'A' && s[name_start] <= 'Z'))) {
        const std::size_t close = s.find_first_of("<>", name_start);
        if (close != std::string_view::npos && s[close] == '>') {
          std::size_t name_end = name_start;
          while (name_end < close && std::isalnum(static_cast<unsigned char>(
                                         s[name_end]))) {
            ++name_end;
          }
          const std::string name =
              text::to_lower(s.substr(name_start, name_end - name_start));
          if (name == "br" || name == "p" || name == "div" || name == "li") {
            out.push_back(' ');
          }
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

// Returns the index one past the "}}" closing the template opened at i, or
// npos when unbalanced.
std::size_t match_template(std::string_view s, std::size_t i) {
  int depth = 0;
  while (i < s.size()) {
    if (starts_at(s, i, "{{")) {
      ++depth;
      i += 2;
    } else if (starts_at(s, i, "}}")) {
      --depth;
      i += 2;
      if (depth == 0) return i;
    } else {
      ++i;
    }
  }
  return std::string_view::npos;
}

std::size_t match_table(std::string_view s, std::size_t i) {
  int depth = 0;
  while (i < s.size()) {
    if (starts_at(s, i, "{{")) {
      const std::size_t end = match_template(s, i);
      if (end == std::string_view::npos) return end;
      i = end;
    } else if (starts_at(s, i, "{|")) {
      ++depth;
      i += 2;
    } else if (starts_at(s, i, "|}")) {
      --depth;
      i += 2;
      if (depth == 0) return i;
    } else {
      ++i;
    }
  }
  return std::string_view::npos;
}

std::size_t match_link(std::string_view s, std::size_t i) {
  int depth = 0;
  while (i < s.size()) {
    if (starts_at(s, i, "[[")) {
      ++depth;
      i += 2;
    } else if (starts_at(s, i, "]]")) {
      --depth;
      i += 2;
      if (depth == 0) return i;
    } else {
      ++i;
    }
  }
  return std::string_view::npos;
}

bool at_line_start(std::string_view s, std::size_t i) {
  while (i > 0) {
    const char c = s[i - 1];
    if (c == '\n') return true;
    if (c != ' ' && c != '\t') return false;
    --i;
  }
  return true;
}

bool starts_external_link(std::string_view s, std::size_t i) {
  static constexpr std::array<std::string_view, 6> kSchemes = {
      "http://", "https://", "ftp://", "//", "mailto:", "news:"};
  return std::any_of(kSchemes.begin(), kSchemes.end(), [&](std::string_view p) {
    return text::starts_with_ci(s.substr(i + 1), p);
  });
}

// Splits "target|label" at the first pipe outside nested links/templates.
std::size_t top_level_pipe(std::string_view inner) {
  int depth = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (starts_at(inner, i, "[[") || starts_at(inner, i, "{{")) {
      ++depth;
      ++i;
    } else if (starts_at(inner, i, "]]") || starts_at(inner, i, "}}")) {
      --depth;
      ++i;
    } else if (inner[i] == '|' && depth == 0) {
      return i;
    }
  }
  return std::string_view::npos;
}

class StructureStripper {
 public:
  explicit StructureStripper(std::vector<std::string>* warnings)
      : warnings_(warnings) {}

  std::string strip(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
      if (starts_at(s, i, "{{")) {
        const std::size_t end = match_template(s, i);
        if (end == std::string_view::npos) {
          warn("unbalanced template braces; stripped to end of article");
          break;
        }
        i = end;
      } else if (starts_at(s, i, "{|") && at_line_start(s, i)) {
        const std::size_t end = match_table(s, i);
        if (end == std::string_view::npos) {
          warn("unbalanced table; stripped to end of article");
          break;
        }
        i = end;
      } else if (starts_at(s, i, "[[")) {
        const std::size_t end = match_link(s, i);
        if (end == std::string_view::npos) {
          warn("unbalanced link brackets");
          i += 2;
          continue;
        }
        out.append(render_link(s.substr(i + 2, end - i - 4)));
        i = end;
      } else if (s[i] == '[' && starts_external_link(s, i)) {
        const std::size_t close = s.find_first_of("]\n", i);
        if (close == std::string_view::npos || s[close] != ']') {
          out.push_back(s[i++]);
          continue;
        }
        const std::string_view body = s.substr(i + 1, close - i - 1);
        const std::size_t space = body.find(' ');
        if (space != std::string_view::npos) out.append(strip(body.substr(space + 1)));
        i = close + 1;
      } else {
        out.push_back(s[i++]);
      }
    }
    return out;
  }

 private:
  std::string render_link(std::string_view inner) {
    const std::size_t pipe = top_level_pipe(inner);
    std::string_view target =
        text::trim(pipe == std::string_view::npos ? inner : inner.substr(0, pipe));
    bool leading_colon = false;
    if (!target.empty() && target.front() == ':') {
      leading_colon = true;
      target.remove_prefix(1);
    }
    const std::size_t colon = target.find(':');
    if (colon != std::string_view::npos) {
      const std::string_view prefix = target.substr(0, colon);
      if (is_file_namespace(prefix) && !leading_colon) return {};
      if (!leading_colon &&
          (is_category_namespace(prefix) || is_language_code(prefix))) {
        return {};
      }
    }
    if (pipe != std::string_view::npos) {
      std::string_view label = inner.substr(pipe + 1);
      if (!text::trim(label).empty()) return strip(label);
      // Pipe trick: [[Namespace:Page (qualifier)|]] shows "Page".
      std::string_view shown = target;
      if (colon != std::string_view::npos) shown = shown.substr(colon + 1);
      const std::size_t paren = shown.find(" (");
      if (paren != std::string_view::npos) shown = shown.substr(0, paren);
      return std::string(shown);
    }
    if (!target.empty() && target.front() == '#') target.remove_prefix(1);
    return strip(target);
  }

  void warn(std::string message) {
    if (warnings_) warnings_->push_back(std::move(message));
  }

  std::vector<std::string>* warnings_;
};

std::string remove_quote_runs(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '\'') {
      std::size_t j = i;
      while (j < s.size() && s[j] == '\'') ++j;
      if (j - i >= 2) {
        i = j;
        continue;
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

void erase_all(std::string& s, std::string_view token) {
  for (std::size_t at = s.find(token); at != std::string::npos;
       at = s.find(token, at)) {
    s.erase(at, token.size());
  }
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t at = s.find(from); at != std::string::npos;
       at = s.find(from, at + to.size())) {
    s.replace(at, from.size(), to);
  }
}

void remove_magic_words(std::string& s) {
  std::size_t at = s.find("__");
  while (at != std::string::npos) {
    std::size_t j = at + 2;
    while (j < s.size() && s[j] >= 'A' && s[j] <= 'Z') ++j;
    if (j > at + 2 && s.compare(j, 2, "__") == 0) {
      s.erase(at, j + 2 - at);
    } else {
      at += 2;
    }
    at = s.find("__", at);
  }
}

// Empty "()" left behind by removed templates, and stray spaces before
// punctuation.
void tidy_punctuation(std::string& line) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t open = line.find('('); open != std::string::npos;
         open = line.find('(', open + 1)) {
      std::size_t j = open + 1;
      while (j < line.size() &&
             (line[j] == ' ' || line[j] == ',' || line[j] == ';')) {
        ++j;
      }
      if (j < line.size() && line[j] == ')') {
        line.erase(open, j + 1 - open);
        changed = true;
        break;
      }
    }
  }
  replace_all(line, "( ", "(");
  replace_all(line, " )", ")");
  replace_all(line, " ,", ",");
  replace_all(line, " .", ".");
}

bool is_heading(std::string_view line) {
  return line.size() >= 2 && line.front() == '=' && line.back() == '=';
}

std::string finish_lines(std::string_view s) {
  std::string out;
  for (std::string_view raw : text::split(s, '\n')) {
    std::string_view line = text::trim(raw);
    if (line.empty() || is_heading(line)) continue;
    if (line.front() == '|' || line.front() == '!') continue;
    while (!line.empty() && (line.front() == '*' || line.front() == '#' ||
                             line.front() == ':' || line.front() == ';')) {
      line.remove_prefix(1);
    }
    std::string cleaned(line);
    for (std::string_view token : {"[[", "]]", "{{", "}}"}) erase_all(cleaned, token);
    remove_magic_words(cleaned);
    cleaned = text::collapse_whitespace(cleaned);
    tidy_punctuation(cleaned);
    cleaned = text::collapse_whitespace(cleaned);
    if (cleaned.empty()) continue;
    if (!out.empty()) out.push_back('\n');
    out.append(cleaned);
  }
  return out;
}

std::string strip_once(std::string_view wikitext,
                       std::vector<std::string>* warnings) {
  std::string s = remove_comments(wikitext);
  s = decode_entities(s);
  s = remove_elements(s, warnings);
  s = remove_tags(s);
  s = StructureStripper(warnings).strip(s);
  s = remove_quote_runs(s);
  return finish_lines(s);
}

}  // namespace

std::string normalize_title(std::string_view title) {
  std::string spaced(title);
  std::replace(spaced.begin(), spaced.end(), '_', ' ');
  std::string collapsed = text::collapse_whitespace(spaced);
  if (collapsed.empty()) return collapsed;
  std::size_t pos = 0;
  const char32_t first = text::next_code_point(collapsed, pos);
  std::string out;
  text::append_utf8(out, text::to_upper(first));
  out.append(collapsed, pos);
  return out;
}

bool is_language_code(std::string_view prefix) {
  return language_codes().count(prefix) > 0;
}

PageLinks scan_links(std::string_view wikitext) {
  std::string s = remove_comments(wikitext);
  // <nowiki> content is literal text, never links.
  for (std::size_t open = find_ci(s, "<nowiki>", 0); open != std::string::npos;
       open = find_ci(s, "<nowiki>", open)) {
    const std::size_t close = find_ci(s, "</nowiki>", open);
    s.erase(open, close == std::string::npos ? std::string::npos
                                             : close + 9 - open);
  }
  PageLinks links;
  std::set<std::string> seen_categories;
  std::set<std::string> seen_languages;
  for (std::size_t at = s.find("[["); at != std::string::npos;
       at = s.find("[[", at + 2)) {
    const std::size_t end = s.find_first_of("]|\n", at + 2);
    if (end == std::string::npos) break;
    const std::string_view target =
        text::trim(std::string_view(s).substr(at + 2, end - at - 2));
    const std::size_t colon = target.find(':');
    if (colon == std::string_view::npos || target.front() == ':') continue;
    const std::string_view prefix = target.substr(0, colon);
    const std::string name = normalize_title(target.substr(colon + 1));
    if (name.empty()) continue;
    if (is_category_namespace(prefix)) {
      if (seen_categories.insert(name).second) links.categories.push_back(name);
    } else if (is_language_code(prefix)) {
      if (seen_languages.insert(std::string(prefix)).second) {
        links.langlinks.emplace_back(std::string(prefix), name);
      }
    }
  }
  return links;
}

std::string strip_markup(std::string_view wikitext,
                         std::vector<std::string>* warnings) {
  std::string current = strip_once(wikitext, warnings);
  // Removing markup can expose new markup ("&amp;lt;" or split tokens);
  // iterate to a fixed point so the result is stable under re-stripping.
  for (int round = 0; round < 16; ++round) {
    std::string next = strip_once(current, nullptr);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

ArticleText strip_wikitext(const RawPage& page) {
  ArticleText article;
  article.key = {page.language, page.title};
  article.wpid = page.wpid;
  article.plain_text = strip_markup(page.wikitext, &article.warnings);
  return article;
}

}  // namespace biomine
