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

#include "gfair/measures.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace gfair {

namespace {

void CheckWeights(std::span<const double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError(fmt::format("negative weight {}", w));
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightTolerance) {
    throw DomainError(fmt::format("weights sum to {:.12g}, not 1", sum));
  }
}

std::size_t ListLength(const GfConfig& config, const ListInputs& list) {
  if (list.memberships.size() != list.targets.size()) {
    throw DomainError("one target per attribute set is required");
  }
  if (config.weights.size() != list.memberships.size() + 1) {
    throw DomainError(fmt::format("{} weights for {} attribute sets",
                                  config.weights.size(),
                                  list.memberships.size()));
  }
  if (config.divergences.size() != list.memberships.size()) {
    throw DomainError("one divergence per attribute set is required");
  }
  std::size_t n = std::min(config.cutoff, list.grades.size());
  for (const auto& m : list.memberships) {
    if (m.size() < n) throw DomainError("memberships shorter than the list");
  }
  return n;
}

}  // namespace

void GfConfig::Validate(bool has_relevance) const {
  if (cutoff == 0) throw DomainError("cutoff must be at least 1");
  if (weights.size() != divergences.size() + 1) {
    throw DomainError(fmt::format("{} weights for {} attribute sets",
                                  weights.size(), divergences.size()));
  }
  CheckWeights(weights);
  if (!has_relevance && weights[0] != 0.0) {
    throw DomainError("w0 must be 0 without relevance judgments");
  }
}

std::vector<double> DefaultWeights(std::size_t num_sets, bool has_relevance) {
  const std::size_t parts = num_sets + (has_relevance ? 1 : 0);
  if (parts == 0) throw DomainError("nothing to weight");
  std::vector<double> w(num_sets + 1, 1.0 / static_cast<double>(parts));
  if (!has_relevance) w[0] = 0.0;
  return w;
}

std::vector<double> PrefixDistrSim(std::span<const Distribution> memberships,
                                   const Distribution& target,
                                   DivergenceKind kind) {
  const AttributeSet& set = *target.attribute_set();
  if (!DivergenceAllowed(kind, set)) {
    throw DomainError(fmt::format("{} is not defined for nominal set '{}'",
                                  DivergenceName(kind), set.name()));
  }
  std::vector<double> achieved(target.size(), 0.0);
  std::vector<double> sims;
  sims.reserve(memberships.size());
  for (std::size_t k = 0; k < memberships.size(); ++k) {
    const Distribution& g = memberships[k];
    if (!SameAttributeSet(g, target)) {
      throw DomainError(fmt::format(
          "membership at rank {} is not over attribute set '{}'", k + 1,
          set.name()));
    }
    // Same running mean as Distribution::Mean.
    const double inv = 1.0 / static_cast<double>(k + 1);
    for (std::size_t i = 0; i < achieved.size(); ++i) {
      achieved[i] += (g[i] - achieved[i]) * inv;
    }
    sims.push_back(1.0 - Divergence(kind, achieved, target.probs()));
  }
  return sims;
}

double Gf(std::span<const Distribution> memberships,
          std::span<const double> decay, const Distribution& target,
          DivergenceKind kind) {
  if (decay.size() != memberships.size()) {
    throw DomainError("decay weights are not aligned with the ranks");
  }
  const auto sims = PrefixDistrSim(memberships, target, kind);
  double gf = 0.0;
  for (std::size_t k = 0; k < sims.size(); ++k) gf += decay[k] * sims[k];
  return gf;
}

double RelevanceScore(const UtilityKind& kind, std::span<const double> decay) {
  double score = 0.0;
  for (std::size_t k = 0; k < decay.size(); ++k) {
    score += decay[k] * Utility(kind, k + 1);
  }
  return score;
}

double RelevanceScore(const UtilityKind& kind, std::span<const int> grades) {
  return RelevanceScore(kind, ErrDecaySequence(grades));
}

double Gfr(const GfConfig& config, double relevance,
           std::span<const double> gf_scores) {
  if (config.weights.size() != gf_scores.size() + 1) {
    throw DomainError(fmt::format("{} weights for {} GF scores",
                                  config.weights.size(), gf_scores.size()));
  }
  CheckWeights(config.weights);
  double score = config.weights[0] * relevance;
  for (std::size_t m = 0; m < gf_scores.size(); ++m) {
    score += config.weights[m + 1] * gf_scores[m];
  }
  return score;
}

double GfrComposed(const GfConfig& config, const ListInputs& list) {
  const std::size_t n = ListLength(config, list);
  const auto grades = list.grades.first(n);
  const auto decay = DecaySequence(config.decay, grades);
  const double relevance = RelevanceScore(config.utility, decay);
  std::vector<double> gf(list.memberships.size());
  for (std::size_t m = 0; m < gf.size(); ++m) {
    gf[m] = Gf(std::span(list.memberships[m]).first(n), decay, list.targets[m],
               config.divergences[m]);
  }
  return Gfr(config, relevance, gf);
}

double GfrIntegrated(const GfConfig& config, const ListInputs& list) {
  const std::size_t n = ListLength(config, list);
  CheckWeights(config.weights);
  const auto decay = DecaySequence(config.decay, list.grades.first(n));
  std::vector<std::vector<double>> sims(list.memberships.size());
  for (std::size_t m = 0; m < sims.size(); ++m) {
    sims[m] = PrefixDistrSim(std::span(list.memberships[m]).first(n),
                             list.targets[m], config.divergences[m]);
  }
  double score = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double inner = config.weights[0] * Utility(config.utility, k + 1);
    for (std::size_t m = 0; m < sims.size(); ++m) {
      inner += config.weights[m + 1] * sims[m][k];
    }
    score += decay[k] * inner;
  }
  return score;
}

double DeltaGf(std::span<const Distribution> memberships,
               std::span<const double> decay, DivergenceKind kind) {
  if (memberships.empty()) return 0.0;
  const AttributeSetPtr& set = memberships.front().attribute_set();
  if (!set->is_binary()) {
    throw DomainError(fmt::format(
        "polarity needs a binary attribute set; '{}' has {} values",
        set->name(), set->size()));
  }
  const double first = Gf(memberships, decay, Distribution::OneHot(set, 0), kind);
  const double second =
      Gf(memberships, decay, Distribution::OneHot(set, 1), kind);
  return first - second;
}

double IntersectionalScore(std::span<const double> gf_scores,
                           std::span<const double> weights) {
  if (gf_scores.size() < 2) {
    throw DomainError("intersectional scoring needs at least two sets");
  }
  if (weights.size() != gf_scores.size()) {
    throw DomainError("one weight per attribute set is required");
  }
  CheckWeights(weights);
  double score = 0.0;
  for (std::size_t m = 0; m < gf_scores.size(); ++m) {
    score += weights[m] * gf_scores[m];
  }
  return score;
}

}  // namespace gfair
