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

// Group fairness (GF) and group fairness + relevance (GFR) measures.
//
// For one attribute set, a ranked list with per-rank memberships G@1..G@K
// and per-rank attention decay D@1..D@K scores
//
//   GF = sum_k D@k * (1 - Divergence(p@k || p*)),   p@k = mean(G@1..G@k)
//
// GFR is the weighted average w0 * Relevance + sum_m wm * GF^m, where the
// relevance score is sum_k D@k * Utility@k under the same decay. Because
// every component shares the decay, GFR can also be accumulated in a single
// pass over the ranks (GfrIntegrated).

#ifndef GFAIR_MEASURES_H_
#define GFAIR_MEASURES_H_

#include <cstddef>
#include <span>
#include <vector>

#include "gfair/divergence.h"
#include "gfair/types.h"
#include "gfair/user_model.h"

namespace gfair {

inline constexpr std::size_t kDefaultCutoff = 10;
inline constexpr double kWeightTolerance = 1e-9;

struct GfConfig {
  std::size_t cutoff = kDefaultCutoff;
  DecayKind decay = DecayKind::Err();
  /// One per attribute set.
  std::vector<DivergenceKind> divergences;
  /// w0 (relevance) followed by one weight per attribute set.
  std::vector<double> weights;
  UtilityKind utility = UtilityKind::Err();

  /// Checks weight count, sign and sum. Without relevance judgments w0 must
  /// be zero. Throws DomainError.
  void Validate(bool has_relevance) const;
};

/// Equal weights over the attribute sets, plus the relevance component when
/// `has_relevance` (otherwise w0 = 0).
std::vector<double> DefaultWeights(std::size_t num_sets, bool has_relevance);

/// DistrSim of each prefix p@1..p@n against `target`.
std::vector<double> PrefixDistrSim(std::span<const Distribution> memberships,
                                   const Distribution& target,
                                   DivergenceKind kind);

/// GF over the whole of `memberships`; `decay` must have the same length.
double Gf(std::span<const Distribution> memberships,
          std::span<const double> decay, const Distribution& target,
          DivergenceKind kind);

/// sum_k decay@k * Utility@k.
double RelevanceScore(const UtilityKind& kind, std::span<const double> decay);
/// ERR-based decay over `grades`, then RelevanceScore.
double RelevanceScore(const UtilityKind& kind, std::span<const int> grades);

/// w0 * relevance + sum_m wm * gf_scores[m].
double Gfr(const GfConfig& config, double relevance,
           std::span<const double> gf_scores);

/// Per-rank inputs for one ranked list, already truncated or not; the
/// cutoff in GfConfig is applied by the functions below.
struct ListInputs {
  std::span<const int> grades;
  /// memberships[m][k]: membership of rank k+1 in attribute set m.
  std::span<const std::vector<Distribution>> memberships;
  /// One target per attribute set.
  std::span<const Distribution> targets;
};

/// GFR assembled from RelevanceScore and one Gf per attribute set.
double GfrComposed(const GfConfig& config, const ListInputs& list);

/// Single-pass sum_k D@k (w0 Utility@k + sum_m wm DistrSim^m@k).
double GfrIntegrated(const GfConfig& config, const ListInputs& list);

/// GF under a 100% target on the first value minus GF under a 100% target on
/// the second. Binary attribute sets only.
double DeltaGf(std::span<const Distribution> memberships,
               std::span<const double> decay, DivergenceKind kind);

/// Weighted combination of per-attribute-set GF scores (GFR with w0 = 0).
double IntersectionalScore(std::span<const double> gf_scores,
                           std::span<const double> weights);

}  // namespace gfair

#endif  // GFAIR_MEASURES_H_
