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

#ifndef BIOMINE_MINING_HPP_
#define BIOMINE_MINING_HPP_

#include <cstddef>
#include <map>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "biomine/common.hpp"
#include "biomine/embeddings.hpp"

namespace biomine {

struct Neighbor {
  SentenceRef ref;
  std::size_t index = 0;  // position in the searched corpus
  double similarity = 0.0;
};

// The k most similar sentences of the other language, most similar first.
struct NeighborSet {
  SentenceRef query;
  std::vector<Neighbor> neighbors;
};

enum class RetrievalStrategy { kMax, kForward, kBackward, kIntersection };

const char* strategy_name(RetrievalStrategy strategy);
RetrievalStrategy parse_strategy(std::string_view name);

struct MiningConfig {
  std::size_t k = 4;
  double margin_threshold = 1.04;
  RetrievalStrategy strategy = RetrievalStrategy::kMax;

  void validate() const;
};

struct CandidatePair {
  SentenceRef source;
  SentenceRef target;
  double margin = 0.0;
  double cosine = 0.0;
};

struct AlignedMember {
  SentenceRef ref;
  double margin = 0.0;
};

// One N-way parallel group anchored on a pivot-language sentence.
struct AlignedTuple {
  SentenceRef pivot;
  std::map<LanguageCode, AlignedMember> per_language;
};

// Exact brute-force search. Ties are broken by ascending sentence
// reference. Throws ShapeError on a dimension mismatch and InvalidArgument
// on an empty corpus or k == 0.
NeighborSet nearest_neighbors(const SentenceVector& query,
                              std::span<const SentenceVector> corpus,
                              std::size_t k);

// Ratio margin:
//
//   cos(x, y) / ( sum_{z in NN(x)} cos(x, z) / 2k + sum_{z in NN(y)} cos(y, z) / 2k )
//
// Neighborhoods may be shorter than k when the other side has fewer than k
// sentences; each sum is then averaged over its actual size. Throws
// DegenerateError when the denominator is <= 1e-12.
double margin_score(const SentenceVector& x, const SentenceVector& y,
                    const NeighborSet& nn_x, const NeighborSet& nn_y,
                    std::size_t k);

// Margin-based mining between two languages, followed by a greedy
// one-to-one matching in descending margin order. Output is sorted by
// descending margin, ties by source then target reference.
std::vector<CandidatePair> mine_pairs(std::span<const SentenceVector> source,
                                      std::span<const SentenceVector> target,
                                      const MiningConfig& config);

// Keeps pivot sentences aligned in every language. All lists must share the
// same pivot (source) language. Output is ordered by pivot reference.
std::vector<AlignedTuple> intersect_multiway(
    const std::map<LanguageCode, std::vector<CandidatePair>>& pairwise);

// Audit dump: "margin<TAB>cosine<TAB>source<TAB>target" per line.
void write_pair_dump(std::ostream& out, std::span<const CandidatePair> pairs);

}  // namespace biomine

#endif  // BIOMINE_MINING_HPP_
