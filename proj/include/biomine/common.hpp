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

#ifndef BIOMINE_COMMON_HPP_
#define BIOMINE_COMMON_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace biomine {

// Language codes are ISO 639-1 strings ("en", "es", "ca").
using LanguageCode = std::string;

// Error hierarchy. Every error raised by the library derives from Error so
// callers can attribute failures to a pipeline stage with one catch.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by the caller (bad config, empty selector, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed XML in a dump stream. Carries the byte offset of the failure.
class StreamError : public Error {
 public:
  StreamError(const std::string& what, std::uint64_t byte_offset)
      : Error(what + " at byte offset " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}
  std::uint64_t byte_offset() const { return byte_offset_; }

 private:
  std::uint64_t byte_offset_;
};

// Unreadable input file or compression container.
class InputError : public Error {
 public:
  using Error::Error;
};

class ProviderError : public Error {
 public:
  using Error::Error;
};

// A sentence requested from a precomputed vector file is not in it.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Vector dimensions disagree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Degenerate numeric input: empty text to embed, zero-norm vectors,
// vanishing margin denominators.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// A record violates a documented invariant (raised before any output).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed corpus XML. Carries a line:column location.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class WriteError : public Error {
 public:
  using Error::Error;
};

// (language, title) identifying one article in one Wikipedia edition.
struct ArticleKey {
  LanguageCode language;
  std::string title;

  auto operator<=>(const ArticleKey&) const = default;
  bool operator==(const ArticleKey&) const = default;
};

// Position of one sentence inside one article. Orders by language, then
// title, then index; this order is the tie-breaker everywhere.
struct SentenceRef {
  LanguageCode language;
  std::string title;
  std::size_t index = 0;

  ArticleKey article() const { return {language, title}; }
  // "language\ttitle\tindex", the key used in vector files.
  std::string key() const {
    return language + '\t' + title + '\t' + std::to_string(index);
  }

  auto operator<=>(const SentenceRef&) const = default;
  bool operator==(const SentenceRef&) const = default;
};

std::string to_string(const SentenceRef& ref);

enum class GenderLabel { kFemale, kMale, kUnknown };

// "Female", "Male", "Unknown" as used in the corpus XML.
const char* gender_name(GenderLabel label);
// Inverse of gender_name; throws InvalidArgument on anything else.
GenderLabel parse_gender(const std::string& name);

}  // namespace biomine

#endif  // BIOMINE_COMMON_HPP_
