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

#ifndef BIOMINE_EMBEDDINGS_HPP_
#define BIOMINE_EMBEDDINGS_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biomine/common.hpp"
#include "biomine/segmenter.hpp"

namespace biomine {

// Unit-norm sentence embedding.
struct SentenceVector {
  std::vector<double> values;
  SentenceRef ref;
};

enum class ProviderKind { kPrecomputedFile, kExternalService, kBuiltinFallback };

const char* provider_kind_name(ProviderKind kind);
ProviderKind parse_provider_kind(std::string_view name);

struct EmbeddingProviderSpec {
  ProviderKind kind = ProviderKind::kBuiltinFallback;
  std::size_t dimension = 1024;
  // Vector file path or service URL; unused by the builtin fallback.
  std::string location;

  // Throws InvalidArgument when dimension < 2 or location is missing.
  void validate() const;
};

// Source of raw (not necessarily normalized) sentence vectors.
// Implementations are safe to call from concurrent threads.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual ProviderKind kind() const = 0;
  virtual std::size_t dimension() const = 0;
  // One vector per sentence, in input order.
  virtual std::vector<std::vector<double>> embed_raw(
      std::span<const Sentence> sentences) const = 0;
};

std::unique_ptr<EmbeddingProvider> make_provider(const EmbeddingProviderSpec& spec);

// Embeds and renormalizes. Throws ShapeError if the provider returns vectors
// of the wrong dimension and DegenerateError for zero vectors.
std::vector<SentenceVector> embed_batch(const EmbeddingProvider& provider,
                                        std::span<const Sentence> sentences);
std::vector<SentenceVector> embed_batch(const EmbeddingProviderSpec& spec,
                                        std::span<const Sentence> sentences);

// Hashed bag of character 2-, 3- and 4-grams over the lower-cased,
// whitespace-collapsed text, L2-normalized. Deterministic across runs and
// platforms. Throws DegenerateError for text with no n-grams.
std::vector<double> builtin_fallback_embed(std::string_view text,
                                           std::size_t dimension);

// Seeded 64-bit hash used for the n-gram buckets.
std::uint64_t ngram_hash(std::string_view bytes);

double dot(std::span<const double> a, std::span<const double> b);
// Scales to unit length; throws DegenerateError on a zero vector.
void normalize(std::vector<double>& values);

}  // namespace biomine

#endif  // BIOMINE_EMBEDDINGS_HPP_
