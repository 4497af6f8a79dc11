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

#include <expat.h>

#include <array>
#include <cstring>
#include <deque>
#include <exception>
#include <fstream>

#include <boost/iostreams/device/file.hpp>
#include <boost/iostreams/filter/bzip2.hpp>
#include <boost/iostreams/filter/gzip.hpp>
#include <boost/iostreams/filter/lzma.hpp>
#include <boost/iostreams/filter/zstd.hpp>
#include <boost/iostreams/filtering_stream.hpp>

#include "biomine/dump.hpp"
#include "biomine/text_util.hpp"
#include "biomine/wikitext.hpp"

namespace biomine {

PageSelector PageSelector::all() {
  PageSelector selector;
  selector.match_all_ = true;
  return selector;
}

PageSelector PageSelector::by_titles(const std::vector<std::string>& titles) {
  PageSelector selector;
  for (const auto& title : titles) selector.add_title(title);
  return selector;
}

PageSelector PageSelector::by_category(const std::string& category) {
  PageSelector selector;
  selector.set_category(category);
  return selector;
}

void PageSelector::add_title(const std::string& title) {
  std::string normalized = normalize_title(title);
  if (!normalized.empty()) titles_.insert(std::move(normalized));
}

void PageSelector::set_category(const std::string& category) {
  std::string normalized = normalize_title(category);
  if (normalized.empty()) throw InvalidArgument("empty category selector");
  category_ = std::move(normalized);
}

bool PageSelector::needs_text(const std::string& normalized_title) const {
  return match_all_ || category_.has_value() ||
         titles_.count(normalized_title) > 0;
}

bool PageSelector::matches(const std::string& normalized_title,
                           const std::vector<std::string>& categories) const {
  if (match_all_ || titles_.count(normalized_title) > 0) return true;
  if (!category_) return false;
  for (const auto& category : categories) {
    if (category == *category_) return true;
  }
  return false;
}

namespace {

constexpr std::size_t kChunkSize = 1 << 16;

enum class Field { kNone, kTitle, kNamespace, kId, kText };

bool is_redirect_text(std::string_view wikitext) {
  const std::string_view head = text::trim(wikitext.substr(0, 64));
  return text::starts_with_ci(head, "#redirect") ||
         text::starts_with_ci(head, "#redirecci");
}

}  // namespace

struct PageStream::Impl {
  std::istream& in;
  PageSelector selector;
  LanguageCode language;
  XML_Parser parser = nullptr;
  std::array<char, kChunkSize> buffer{};
  bool finished = false;
  std::uint64_t bytes = 0;
  std::uint64_t pages = 0;
  std::exception_ptr callback_error;

  std::deque<RawPage> ready;

  // Parse state for the page being read.
  int depth = 0;
  int page_depth = -1;
  int revision_depth = -1;
  Field field = Field::kNone;
  bool have_id = false;
  bool redirect = false;
  bool keep_text = false;
  std::string title;
  std::string ns;
  std::string id;
  std::string wikitext;

  Impl(std::istream& stream, PageSelector sel, LanguageCode lang)
      : in(stream), selector(std::move(sel)), language(std::move(lang)) {
    if (selector.empty()) {
      throw InvalidArgument("page selector selects nothing; use PageSelector::all()");
    }
    parser = XML_ParserCreate("UTF-8");
    if (!parser) throw std::bad_alloc();
    XML_SetUserData(parser, this);
    XML_SetElementHandler(parser, &Impl::on_start, &Impl::on_end);
    XML_SetCharacterDataHandler(parser, &Impl::on_text);
  }

  ~Impl() { XML_ParserFree(parser); }

  void reset_page() {
    page_depth = -1;
    revision_depth = -1;
    field = Field::kNone;
    have_id = false;
    redirect = false;
    keep_text = false;
    title.clear();
    ns.clear();
    id.clear();
    wikitext.clear();
  }

  void start(const char* name, const char** attrs) {
    ++depth;
    if (std::strcmp(name, "page") == 0 && page_depth < 0) {
      reset_page();
      page_depth = depth;
      return;
    }
    if (page_depth < 0) return;
    if (depth == page_depth + 1) {
      if (std::strcmp(name, "title") == 0) {
        field = Field::kTitle;
      } else if (std::strcmp(name, "ns") == 0) {
        field = Field::kNamespace;
      } else if (std::strcmp(name, "id") == 0 && !have_id) {
        field = Field::kId;
      } else if (std::strcmp(name, "redirect") == 0) {
        redirect = true;
      } else if (std::strcmp(name, "revision") == 0) {
        revision_depth = depth;
      }
    } else if (revision_depth > 0 && depth == revision_depth + 1 &&
               std::strcmp(name, "text") == 0) {
      wikitext.clear();
      const std::string normalized = normalize_title(title);
      keep_text = !redirect && (ns.empty() || text::trim(ns) == "0") &&
                  selector.needs_text(normalized);
      field = keep_text ? Field::kText : Field::kNone;
    }
    (void)attrs;
  }

  void end(const char* name) {
    if (page_depth > 0 && depth == page_depth + 1) {
      if (field == Field::kId) have_id = true;
      if (std::strcmp(name, "revision") == 0) revision_depth = -1;
      field = Field::kNone;
    } else if (field == Field::kText && depth == revision_depth + 1) {
      field = Field::kNone;
    }
    if (depth == page_depth && std::strcmp(name, "page") == 0) {
      finish_page();
      page_depth = -1;
    }
    --depth;
  }

  void finish_page() {
    ++pages;
    if (redirect || !keep_text) return;
    const std::string_view namespace_id = text::trim(ns);
    if (!namespace_id.empty() && namespace_id != "0") return;
    if (is_redirect_text(wikitext)) return;
    std::string normalized = normalize_title(title);
    if (normalized.empty()) return;
    PageLinks links = scan_links(wikitext);
    if (!selector.matches(normalized, links.categories)) return;
    RawPage page;
    page.title = std::move(normalized);
    page.wpid = id.empty() ? 0 : std::stoull(std::string(text::trim(id)));
    page.language = language;
    page.wikitext = std::move(wikitext);
    page.categories = std::move(links.categories);
    page.langlinks = std::move(links.langlinks);
    wikitext = std::string();
    ready.push_back(std::move(page));
  }

  void append(const char* data, int len) {
    switch (field) {
      case Field::kTitle:
        title.append(data, len);
        break;
      case Field::kNamespace:
        ns.append(data, len);
        break;
      case Field::kId:
        id.append(data, len);
        break;
      case Field::kText:
        wikitext.append(data, len);
        break;
      case Field::kNone:
        break;
    }
  }

  // Expat is C; exceptions must not unwind through it.
  template <typename Fn>
  static void guarded(void* self, Fn&& fn) {
    auto* impl = static_cast<Impl*>(self);
    if (impl->callback_error) return;
    try {
      fn(*impl);
    } catch (...) {
      impl->callback_error = std::current_exception();
      XML_StopParser(impl->parser, XML_FALSE);
    }
  }

  static void XMLCALL on_start(void* self, const XML_Char* name,
                               const XML_Char** attrs) {
    guarded(self, [&](Impl& impl) { impl.start(name, attrs); });
  }
  static void XMLCALL on_end(void* self, const XML_Char* name) {
    guarded(self, [&](Impl& impl) { impl.end(name); });
  }
  static void XMLCALL on_text(void* self, const XML_Char* data, int len) {
    guarded(self, [&](Impl& impl) { impl.append(data, len); });
  }

  void feed() {
    std::streamsize got = 0;
    try {
      in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
      got = in.gcount();
    } catch (const std::exception& e) {
      throw InputError(std::string("cannot read dump stream: ") + e.what());
    }
    if (in.bad()) throw InputError("cannot read dump stream (bad stream state)");
    const bool last = got == 0 || in.eof();
    bytes += static_cast<std::uint64_t>(got);
    const auto status = XML_Parse(parser, buffer.data(), static_cast<int>(got),
                                  last ? XML_TRUE : XML_FALSE);
    if (callback_error) std::rethrow_exception(callback_error);
    if (status != XML_STATUS_OK) {
      throw StreamError(
          std::string("malformed dump XML: ") +
              XML_ErrorString(XML_GetErrorCode(parser)),
          static_cast<std::uint64_t>(XML_GetCurrentByteIndex(parser)));
    }
    if (last) finished = true;
  }
};

PageStream::PageStream(std::istream& in, PageSelector selector,
                       LanguageCode language)
    : impl_(std::make_unique<Impl>(in, std::move(selector), std::move(language))) {}

PageStream::~PageStream() = default;

std::optional<RawPage> PageStream::next() {
  while (impl_->ready.empty() && !impl_->finished) impl_->feed();
  if (impl_->ready.empty()) return std::nullopt;
  RawPage page = std::move(impl_->ready.front());
  impl_->ready.pop_front();
  return page;
}

std::uint64_t PageStream::bytes_consumed() const { return impl_->bytes; }
std::uint64_t PageStream::pages_seen() const { return impl_->pages; }

std::unique_ptr<std::istream> open_dump(const std::filesystem::path& path) {
  std::array<unsigned char, 6> magic{};
  std::size_t magic_len = 0;
  {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw InputError("cannot open dump file " + path.string());
    probe.read(reinterpret_cast<char*>(magic.data()), magic.size());
    magic_len = static_cast<std::size_t>(probe.gcount());
  }
  const auto has_magic = [&](std::initializer_list<unsigned char> bytes) {
    if (magic_len < bytes.size()) return false;
    return std::equal(bytes.begin(), bytes.end(), magic.begin());
  };

  namespace io = boost::iostreams;
  auto stream = std::make_unique<io::filtering_istream>();
  if (has_magic({0x1F, 0x8B})) {
    stream->push(io::gzip_decompressor());
  } else if (has_magic({'B', 'Z', 'h'})) {
    stream->push(io::bzip2_decompressor());
  } else if (has_magic({0xFD, '7', 'z', 'X', 'Z', 0x00})) {
    stream->push(io::lzma_decompressor());
  } else if (has_magic({0x28, 0xB5, 0x2F, 0xFD})) {
    stream->push(io::zstd_decompressor());
  } else {
    auto plain = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*plain) throw InputError("cannot open dump file " + path.string());
    return plain;
  }
  try {
    stream->push(io::file_source(path.string(), std::ios::binary));
  } catch (const std::exception& e) {
    throw InputError("cannot open dump file " + path.string() + ": " + e.what());
  }
  stream->exceptions(std::ios::badbit);
  return stream;
}

std::vector<std::string> load_title_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open title list " + path.string());
  std::vector<std::string> titles;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    first = false;
    const std::string_view trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    titles.push_back(normalize_title(trimmed));
  }
  return titles;
}

}  // namespace biomine
