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

#include "biomine/embeddings.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include <httplib.h>

#include "biomine/text_util.hpp"
#include "biomine/vector_file.hpp"

namespace biomine {
namespace {

constexpr std::uint64_t kFnvOffset = 0xCBF29CE484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001B3ULL;
constexpr std::uint64_t kHashSeed = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<double> to_double(const std::vector<float>& values) {
  return {values.begin(), values.end()};
}

class BuiltinProvider final : public EmbeddingProvider {
 public:
  explicit BuiltinProvider(std::size_t dimension) : dimension_(dimension) {}
  ProviderKind kind() const override { return ProviderKind::kBuiltinFallback; }
  std::size_t dimension() const override { return dimension_; }
  std::vector<std::vector<double>> embed_raw(
      std::span<const Sentence> sentences) const override {
    std::vector<std::vector<double>> out;
    out.reserve(sentences.size());
    for (const auto& sentence : sentences) {
      out.push_back(builtin_fallback_embed(sentence.text, dimension_));
    }
    return out;
  }

 private:
  std::size_t dimension_;
};

class PrecomputedProvider final : public EmbeddingProvider {
 public:
  PrecomputedProvider(const std::string& path, std::size_t dimension)
      : reader_(path) {
    if (reader_.dimension() != dimension) {
      throw ShapeError("vector file " + path + " has dimension " +
                       std::to_string(reader_.dimension()) +
                       ", configured dimension is " + std::to_string(dimension));
    }
  }
  ProviderKind kind() const override { return ProviderKind::kPrecomputedFile; }
  std::size_t dimension() const override { return reader_.dimension(); }
  std::vector<std::vector<double>> embed_raw(
      std::span<const Sentence> sentences) const override {
    std::vector<std::vector<double>> out;
    out.reserve(sentences.size());
    for (const auto& sentence : sentences) {
      auto values = reader_.find(sentence.ref().key());
      if (!values) {
        throw LookupError("sentence " + to_string(sentence.ref()) +
                          " not found in vector file");
      }
      out.push_back(to_double(*values));
    }
    return out;
  }

 private:
  vecfile::Reader reader_;
};

// POSTs newline-separated sentences of one language to the service and
// expects a vector-file body back in the same order.
class ServiceProvider final : public EmbeddingProvider {
 public:
  ServiceProvider(const std::string& url, std::size_t dimension)
      : dimension_(dimension) {
    const std::size_t scheme = url.find("://");
    const std::size_t path_at =
        url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    base_ = path_at == std::string::npos ? url : url.substr(0, path_at);
    path_ = path_at == std::string::npos ? "/" : url.substr(path_at);
    if (base_.empty()) throw InvalidArgument("embedding service URL is empty");
  }
  ProviderKind kind() const override { return ProviderKind::kExternalService; }
  std::size_t dimension() const override { return dimension_; }

  std::vector<std::vector<double>> embed_raw(
      std::span<const Sentence> sentences) const override {
    // Group by language, keeping original positions.
    std::map<LanguageCode, std::vector<std::size_t>> by_language;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      by_language[sentences[i].article.language].push_back(i);
    }
    std::vector<std::vector<double>> out(sentences.size());
    for (const auto& [language, positions] : by_language) {
      std::string body;
      for (std::size_t i : positions) {
        body.append(sentences[i].text);
        body.push_back('\n');
      }
      const std::string response = post(language, body);
      std::istringstream in(response);
      std::uint32_t dimension = 0;
      std::vector<vecfile::Record> records;
      try {
        records = vecfile::read_all(in, &dimension);
      } catch (const InputError& e) {
        throw ProviderError(std::string("bad service response: ") + e.what());
      }
      if (records.size() != positions.size()) {
        throw ProviderError("service returned " + std::to_string(records.size()) +
                            " vectors for " + std::to_string(positions.size()) +
                            " sentences");
      }
      for (std::size_t j = 0; j < positions.size(); ++j) {
        out[positions[j]] = to_double(records[j].values);
      }
    }
    return out;
  }

 private:
  std::string post(const std::string& language, const std::string& body) const {
    std::lock_guard<std::mutex> lock(mutex_);
    httplib::Client client(base_);
    client.set_connection_timeout(10);
    client.set_read_timeout(300);
    const std::string target =
        path_ + (path_.find('?') == std::string::npos ? "?" : "&") + "lang=" + language;
    auto result = client.Post(target, body, "text/plain; charset=utf-8");
    if (!result) {
      throw ProviderError("embedding service " + base_ + " unavailable: " +
                          httplib::to_string(result.error()));
    }
    if (result->status != 200) {
      throw ProviderError("embedding service returned HTTP " +
                          std::to_string(result->status));
    }
    return result->body;
  }

  std::size_t dimension_;
  std::string base_;
  std::string path_;
  mutable std::mutex mutex_;
};

}  // namespace

const char* provider_kind_name(ProviderKind kind) {
  switch (kind) {
    case ProviderKind::kPrecomputedFile:
      return "precomputed-file";
    case ProviderKind::kExternalService:
      return "external-service";
    case ProviderKind::kBuiltinFallback:
      return "builtin-fallback";
  }
  return "builtin-fallback";
}

ProviderKind parse_provider_kind(std::string_view name) {
  if (name == "precomputed-file" || name == "precomputed") {
    return ProviderKind::kPrecomputedFile;
  }
  if (name == "external-service" || name == "service") {
    return ProviderKind::kExternalService;
  }
  if (name == "builtin-fallback" || name == "builtin") {
    return ProviderKind::kBuiltinFallback;
  }
  throw InvalidArgument("unknown embedding provider kind '" + std::string(name) + "'");
}

void EmbeddingProviderSpec::validate() const {
  if (dimension < 2) throw InvalidArgument("embedding dimension must be >= 2");
  if (kind != ProviderKind::kBuiltinFallback && location.empty()) {
    throw InvalidArgument(std::string(provider_kind_name(kind)) +
                          " provider requires a location");
  }
}

std::unique_ptr<EmbeddingProvider> make_provider(const EmbeddingProviderSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ProviderKind::kPrecomputedFile:
      return std::make_unique<PrecomputedProvider>(spec.location, spec.dimension);
    case ProviderKind::kExternalService:
      return std::make_unique<ServiceProvider>(spec.location, spec.dimension);
    case ProviderKind::kBuiltinFallback:
      break;
  }
  return std::make_unique<BuiltinProvider>(spec.dimension);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ShapeError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void normalize(std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  const double norm = std::sqrt(sum);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DegenerateError("cannot normalize a zero or non-finite vector");
  }
  for (double& v : values) v /= norm;
}

std::uint64_t ngram_hash(std::string_view bytes) {
  std::uint64_t h = kFnvOffset ^ kHashSeed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return mix64(h);
}

std::vector<double> builtin_fallback_embed(std::string_view input,
                                           std::size_t dimension) {
  if (dimension < 2) throw InvalidArgument("embedding dimension must be >= 2");
  const std::string text = text::to_lower(text::collapse_whitespace(input));
  if (text.empty()) throw DegenerateError("cannot embed empty text");

  // Byte offsets of each code point, plus the end.
  std::vector<std::size_t> starts;
  for (std::size_t pos = 0; pos < text.size();) {
    starts.push_back(pos);
    text::next_code_point(text, pos);
  }
  starts.push_back(text.size());
  const std::size_t code_points = starts.size() - 1;
  if (code_points < 2) {
    throw DegenerateError("text '" + text + "' is too short to embed");
  }

  std::vector<double> values(dimension, 0.0);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t i = 0; i + n <= code_points; ++i) {
      const std::string_view gram(text.data() + starts[i], starts[i + n] - starts[i]);
      values[ngram_hash(gram) % dimension] += 1.0;
    }
  }
  normalize(values);
  return values;
}

std::vector<SentenceVector> embed_batch(const EmbeddingProvider& provider,
                                        std::span<const Sentence> sentences) {
  if (sentences.empty()) throw InvalidArgument("embed_batch needs at least one sentence");
  auto raw = provider.embed_raw(sentences);
  if (raw.size() != sentences.size()) {
    throw ProviderError("provider returned " + std::to_string(raw.size()) +
                        " vectors for " + std::to_string(sentences.size()) +
                        " sentences");
  }
  std::vector<SentenceVector> out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].size() != provider.dimension()) {
      throw ShapeError("provider vector for " + to_string(sentences[i].ref()) +
                       " has dimension " + std::to_string(raw[i].size()) +
                       ", expected " + std::to_string(provider.dimension()));
    }
    try {
      normalize(raw[i]);
    } catch (const DegenerateError&) {
      throw DegenerateError("provider returned a zero vector for " +
                            to_string(sentences[i].ref()));
    }
    out.push_back({std::move(raw[i]), sentences[i].ref()});
  }
  return out;
}

std::vector<SentenceVector> embed_batch(const EmbeddingProviderSpec& spec,
                                        std::span<const Sentence> sentences) {
  return embed_batch(*make_provider(spec), sentences);
}

}  // namespace biomine
