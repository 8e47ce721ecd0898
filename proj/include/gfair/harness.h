// Copyright 2026 The gfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Synthetic corpora, a brute-force GF oracle, and the two list rerankers
// (rating sort and one-item-per-owner filter).

#ifndef GFAIR_HARNESS_H_
#define GFAIR_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gfair/divergence.h"
#include "gfair/io.h"
#include "gfair/types.h"

namespace gfair {

struct SynthConfig {
  std::size_t topics = 100;
  std::size_t runs = 18;
  std::size_t list_length = 20;
  std::size_t pool_size = 40;  // candidate items per topic
  /// Empty: a binary nominal "stance" set and a 4-value ordinal "revcnt".
  std::vector<AttributeSet> attribute_sets;
  /// P(grade = g) for g = 0, 1, ...
  std::vector<double> grade_probs = {0.5, 0.3, 0.15, 0.05};
  bool hard_membership = true;
  /// Fraction of topics that get their own target rows.
  double per_topic_target_rate = 0.1;
  std::size_t owners_per_topic = 8;
  std::uint64_t seed = 1;
};

struct ItemRating {
  double rating = 0.0;  // 0 when there are no reviews
  int reviews = 0;
};

struct SynthCorpus {
  AttributeRegistry attributes;
  std::vector<Run> runs;
  Qrels qrels;
  MembershipTable membership;
  TargetTable targets;
  std::map<std::string, ItemRating> ratings;
  std::map<std::string, std::string> owners;
};

/// Deterministic in `config` (including the seed).
SynthCorpus GenSynthetic(const SynthConfig& config);

/// Writes attrsets.tsv, membership.tsv, targets.tsv, qrels.txt,
/// ratings.tsv, entities.tsv and runs/<tag>.txt under `dir`.
void WriteCorpus(const SynthCorpus& corpus, const std::filesystem::path& dir);

/// item rating reviews
void EmitRatings(std::ostream& out,
                 const std::map<std::string, ItemRating>& ratings);
std::map<std::string, ItemRating> ParseRatings(std::istream& in,
                                               const std::string& file =
                                                   "<ratings>");
/// item owner
void EmitOwners(std::ostream& out,
                const std::map<std::string, std::string>& owners);
std::map<std::string, std::string> ParseOwners(std::istream& in,
                                               const std::string& file =
                                                   "<entities>");

/// GF by direct summation: every prefix mean and every divergence is
/// recomputed from scratch with its own textbook formula. Meant for lists of
/// a dozen items or fewer.
double OracleGf(const std::vector<std::vector<double>>& memberships,
                const std::vector<double>& decay,
                const std::vector<double>& target, DivergenceKind kind);

/// First occurrence of each owner among the top `cutoff` items, in order.
/// Items without an owner entry are their own owner.
std::vector<RankedItem> UniqueEntityFilter(
    std::span<const RankedItem> list,
    const std::map<std::string, std::string>& owners, std::size_t cutoff);

/// Stable sort of the top `cutoff` items by descending score; items beyond
/// the cutoff are dropped. Unscored items count as 0.
std::vector<RankedItem> RerankByAttribute(
    std::span<const RankedItem> list,
    const std::map<std::string, double>& score, std::size_t cutoff);

/// Rebuilds a run from explicit per-topic orders; scores are rewritten as
/// n, n-1, ..., 1 so the order survives a write and re-read.
Run RunFromOrders(const std::string& tag,
                  const std::map<std::string, std::vector<RankedItem>,
                                 TopicLess>& orders);

}  // namespace gfair

#endif  // GFAIR_HARNESS_H_
