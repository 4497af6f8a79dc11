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

#include "biomine/mining.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cmath>
#include <iterator>
#include <numeric>
#include <optional>

#include <Eigen/Dense>

namespace biomine {
namespace {

constexpr double kMinDenominator = 1e-12;

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double clamp_cosine(double c) { return std::clamp(c, -1.0, 1.0); }

// Half-mean contribution of one neighborhood to the margin denominator.
double half_mean(double sum, std::size_t count) {
  return sum / (2.0 * static_cast<double>(count));
}

double margin_from(double cosine, double half_x, double half_y,
                   const SentenceRef& x, const SentenceRef& y) {
  const double denominator = half_x + half_y;
  if (!(denominator > kMinDenominator)) {
    throw DegenerateError("degenerate neighborhood for pair " + to_string(x) +
                          " / " + to_string(y));
  }
  return cosine / denominator;
}

std::size_t check_dimension(std::span<const SentenceVector> vectors,
                            std::size_t expected, const char* side) {
  for (const auto& v : vectors) {
    if (v.values.size() != expected) {
      throw ShapeError(std::string(side) + " vector " + to_string(v.ref) +
                       " has dimension " + std::to_string(v.values.size()) +
                       ", expected " + std::to_string(expected));
    }
  }
  return expected;
}

RowMatrix to_matrix(std::span<const SentenceVector> vectors, std::size_t dim) {
  RowMatrix m(static_cast<Eigen::Index>(vectors.size()),
              static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t d = 0; d < dim; ++d) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) =
          vectors[i].values[d];
    }
  }
  return m;
}

// rank[i] = position of vectors[i] in ascending reference order.
std::vector<std::size_t> reference_ranks(std::span<const SentenceVector> vectors) {
  std::vector<std::size_t> order(vectors.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return vectors[a].ref < vectors[b].ref;
  });
  std::vector<std::size_t> rank(vectors.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

// Indices of the k best entries of `sims`, best first; ties by rank.
std::vector<std::size_t> top_k(const std::vector<double>& sims,
                               const std::vector<std::size_t>& rank,
                               std::size_t k) {
  std::vector<std::size_t> idx(sims.size());
  std::iota(idx.begin(), idx.end(), 0);
  const std::size_t keep = std::min(k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(keep),
                    idx.end(), [&](std::size_t a, std::size_t b) {
                      if (sims[a] != sims[b]) return sims[a] > sims[b];
                      return rank[a] < rank[b];
                    });
  idx.resize(keep);
  return idx;
}

struct Side {
  std::vector<std::vector<std::size_t>> neighbors;  // per sentence
  std::vector<double> half_means;
};

}  // namespace

const char* strategy_name(RetrievalStrategy strategy) {
  switch (strategy) {
    case RetrievalStrategy::kMax:
      return "max";
    case RetrievalStrategy::kForward:
      return "forward";
    case RetrievalStrategy::kBackward:
      return "backward";
    case RetrievalStrategy::kIntersection:
      return "intersection";
  }
  return "max";
}

RetrievalStrategy parse_strategy(std::string_view name) {
  if (name == "max") return RetrievalStrategy::kMax;
  if (name == "forward") return RetrievalStrategy::kForward;
  if (name == "backward") return RetrievalStrategy::kBackward;
  if (name == "intersection") return RetrievalStrategy::kIntersection;
  throw InvalidArgument("unknown retrieval strategy '" + std::string(name) + "'");
}

void MiningConfig::validate() const {
  if (k < 1) throw InvalidArgument("mining k must be >= 1");
  if (!(margin_threshold >= 0.0) || !std::isfinite(margin_threshold)) {
    throw InvalidArgument("margin threshold must be a finite value >= 0");
  }
}

NeighborSet nearest_neighbors(const SentenceVector& query,
                              std::span<const SentenceVector> corpus,
                              std::size_t k) {
  if (corpus.empty()) throw InvalidArgument("nearest_neighbors on an empty corpus");
  if (k == 0) throw InvalidArgument("nearest_neighbors needs k >= 1");
  check_dimension(corpus, query.values.size(), "corpus");
  std::vector<double> sims(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    sims[i] = clamp_cosine(dot(query.values, corpus[i].values));
  }
  const auto rank = reference_ranks(corpus);
  NeighborSet result;
  result.query = query.ref;
  for (std::size_t i : top_k(sims, rank, k)) {
    result.neighbors.push_back({corpus[i].ref, i, sims[i]});
  }
  return result;
}

double margin_score(const SentenceVector& x, const SentenceVector& y,
                    const NeighborSet& nn_x, const NeighborSet& nn_y,
                    std::size_t k) {
  if (k == 0) throw InvalidArgument("margin_score needs k >= 1");
  if (nn_x.neighbors.empty() || nn_y.neighbors.empty()) {
    throw InvalidArgument("margin_score needs non-empty neighborhoods");
  }
  if (nn_x.neighbors.size() > k || nn_y.neighbors.size() > k) {
    throw InvalidArgument("neighborhood larger than k");
  }
  const auto sum = [](const NeighborSet& nn) {
    double s = 0.0;
    for (const auto& n : nn.neighbors) s += n.similarity;
    return s;
  };
  const double cosine = clamp_cosine(dot(x.values, y.values));
  return margin_from(cosine, half_mean(sum(nn_x), nn_x.neighbors.size()),
                     half_mean(sum(nn_y), nn_y.neighbors.size()), x.ref, y.ref);
}

std::vector<CandidatePair> mine_pairs(std::span<const SentenceVector> source,
                                      std::span<const SentenceVector> target,
                                      const MiningConfig& config) {
  config.validate();
  if (source.empty() || target.empty()) {
    throw InvalidArgument("mine_pairs needs non-empty source and target");
  }
  const std::size_t dim = source.front().values.size();
  check_dimension(source, dim, "source");
  check_dimension(target, dim, "target");

  // Similarity matrix by blocked dot products (Eigen GEMM).
  const RowMatrix src = to_matrix(source, dim);
  const RowMatrix tgt = to_matrix(target, dim);
  RowMatrix sims = src * tgt.transpose();
  sims = sims.cwiseMax(-1.0).cwiseMin(1.0);

  const auto src_rank = reference_ranks(source);
  const auto tgt_rank = reference_ranks(target);
  const std::size_t n = source.size();
  const std::size_t m = target.size();

  Side fwd;  // source -> target neighborhoods
  fwd.neighbors.resize(n);
  fwd.half_means.resize(n);
  std::vector<double> row(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      row[j] = sims(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    fwd.neighbors[i] = top_k(row, tgt_rank, config.k);
    double sum = 0.0;
    for (std::size_t j : fwd.neighbors[i]) sum += row[j];
    fwd.half_means[i] = half_mean(sum, fwd.neighbors[i].size());
  }
  Side bwd;  // target -> source neighborhoods
  bwd.neighbors.resize(m);
  bwd.half_means.resize(m);
  std::vector<double> col(n);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      col[i] = sims(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    bwd.neighbors[j] = top_k(col, src_rank, config.k);
    double sum = 0.0;
    for (std::size_t i : bwd.neighbors[j]) sum += col[i];
    bwd.half_means[j] = half_mean(sum, bwd.neighbors[j].size());
  }

  const auto margin = [&](std::size_t i, std::size_t j) {
    return margin_from(
        sims(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
        fwd.half_means[i], bwd.half_means[j], source[i].ref, target[j].ref);
  };

  struct Scored {
    std::size_t i;
    std::size_t j;
    double margin;
  };
  std::vector<Scored> forward;
  std::vector<Scored> backward;
  const bool want_forward = config.strategy != RetrievalStrategy::kBackward;
  const bool want_backward = config.strategy != RetrievalStrategy::kForward;
  if (want_forward) {
    for (std::size_t i = 0; i < n; ++i) {
      std::optional<Scored> best;
      for (std::size_t j : fwd.neighbors[i]) {
        const double score = margin(i, j);
        if (!best || score > best->margin ||
            (score == best->margin && tgt_rank[j] < tgt_rank[best->j])) {
          best = Scored{i, j, score};
        }
      }
      forward.push_back(*best);
    }
  }
  if (want_backward) {
    for (std::size_t j = 0; j < m; ++j) {
      std::optional<Scored> best;
      for (std::size_t i : bwd.neighbors[j]) {
        const double score = margin(i, j);
        if (!best || score > best->margin ||
            (score == best->margin && src_rank[i] < src_rank[best->i])) {
          best = Scored{i, j, score};
        }
      }
      backward.push_back(*best);
    }
  }

  const auto by_pair = [](const Scored& a, const Scored& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  };
  const auto same_pair = [](const Scored& a, const Scored& b) {
    return a.i == b.i && a.j == b.j;
  };
  std::sort(forward.begin(), forward.end(), by_pair);
  std::sort(backward.begin(), backward.end(), by_pair);
  std::vector<Scored> candidates;
  switch (config.strategy) {
    case RetrievalStrategy::kForward:
      candidates = forward;
      break;
    case RetrievalStrategy::kBackward:
      candidates = backward;
      break;
    case RetrievalStrategy::kMax:
      std::set_union(forward.begin(), forward.end(), backward.begin(),
                     backward.end(), std::back_inserter(candidates), by_pair);
      break;
    case RetrievalStrategy::kIntersection:
      std::set_intersection(forward.begin(), forward.end(), backward.begin(),
                            backward.end(), std::back_inserter(candidates),
                            by_pair);
      break;
  }
  candidates.erase(std::unique(candidates.begin(), candidates.end(), same_pair),
                   candidates.end());
  std::erase_if(candidates, [&](const Scored& s) {
    return s.margin < config.margin_threshold;
  });
  std::sort(candidates.begin(), candidates.end(),
            [&](const Scored& a, const Scored& b) {
              if (a.margin != b.margin) return a.margin > b.margin;
              if (src_rank[a.i] != src_rank[b.i]) return src_rank[a.i] < src_rank[b.i];
              return tgt_rank[a.j] < tgt_rank[b.j];
            });

  std::vector<bool> source_used(n, false);
  std::vector<bool> target_used(m, false);
  std::vector<CandidatePair> pairs;
  for (const auto& c : candidates) {
    if (source_used[c.i] || target_used[c.j]) continue;
    source_used[c.i] = true;
    target_used[c.j] = true;
    pairs.push_back({source[c.i].ref, target[c.j].ref, c.margin,
                     sims(static_cast<Eigen::Index>(c.i),
                          static_cast<Eigen::Index>(c.j))});
  }
  return pairs;
}

std::vector<AlignedTuple> intersect_multiway(
    const std::map<LanguageCode, std::vector<CandidatePair>>& pairwise) {
  std::vector<AlignedTuple> tuples;
  if (pairwise.empty()) return tuples;

  std::optional<LanguageCode> pivot;
  std::map<LanguageCode, std::map<SentenceRef, AlignedMember>> by_pivot;
  for (const auto& [language, pairs] : pairwise) {
    auto& index = by_pivot[language];
    for (const auto& pair : pairs) {
      if (!pivot) pivot = pair.source.language;
      if (pair.source.language != *pivot) {
        throw InvalidArgument("pair lists do not share one pivot language");
      }
      index.emplace(pair.source, AlignedMember{pair.target, pair.margin});
    }
  }

  // Walk the smallest index and probe the others.
  const auto smallest = std::min_element(
      by_pivot.begin(), by_pivot.end(),
      [](const auto& a, const auto& b) { return a.second.size() < b.second.size(); });
  for (const auto& [pivot_ref, member] : smallest->second) {
    AlignedTuple tuple;
    tuple.pivot = pivot_ref;
    bool complete = true;
    for (const auto& [language, index] : by_pivot) {
      const auto it = index.find(pivot_ref);
      if (it == index.end()) {
        complete = false;
        break;
      }
      tuple.per_language.emplace(language, it->second);
    }
    if (complete) tuples.push_back(std::move(tuple));
  }
  return tuples;
}

void write_pair_dump(std::ostream& out, std::span<const CandidatePair> pairs) {
  char buffer[64];
  for (const auto& pair : pairs) {
    std::snprintf(buffer, sizeof(buffer), "%.6f\t%.6f\t", pair.margin, pair.cosine);
    out << buffer << to_string(pair.source) << '\t' << to_string(pair.target)
        << '\n';
  }
}

}  // namespace biomine
