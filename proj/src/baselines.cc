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

#include "gfair/baselines.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <fmt/format.h>

#include "gfair/divergence.h"
#include "gfair/membership.h"

namespace gfair {

namespace {

void CheckList(std::span<const Distribution> memberships) {
  if (memberships.empty()) throw DomainError("empty ranked list");
  for (const auto& m : memberships) {
    if (!SameAttributeSet(m, memberships.front())) {
      throw DomainError("memberships over different attribute sets");
    }
  }
}

double Dcg(std::span<const double> gains, std::size_t cutoff) {
  double dcg = 0.0;
  const std::size_t n = std::min(cutoff, gains.size());
  for (std::size_t r = 0; r < n; ++r) {
    dcg += gains[r] / std::log2(static_cast<double>(r) + 2.0);
  }
  return dcg;
}

}  // namespace

double AttentionParams::at(std::size_t rank) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError(fmt::format("attention parameter {} outside (0,1)", p));
  }
  return 100.0 * p * std::pow(1.0 - p, static_cast<double>(rank) - 1.0);
}

double Skew(const Distribution& achieved, const Distribution& target,
            std::size_t value, double epsilon) {
  if (!SameAttributeSet(achieved, target)) {
    throw DomainError("skew between distributions over different sets");
  }
  if (value >= target.size()) throw DomainError("attribute value out of range");
  if (!(epsilon >= 0.0)) throw DomainError("negative smoothing epsilon");
  double t = target[value];
  double a = achieved[value];
  if (!(t > 0.0)) {
    if (epsilon == 0.0) {
      throw EvaluationError(fmt::format(
          "skew undefined: target probability of '{}' is zero",
          target.attribute_set()->values()[value]));
    }
    t = epsilon;
  }
  if (!(a > 0.0)) {
    if (epsilon == 0.0) return -std::numeric_limits<double>::infinity();
    a = epsilon;
  }
  return std::log(a / t);
}

std::pair<double, double> SkewExtremes(const Distribution& achieved,
                                       const Distribution& target,
                                       double epsilon) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double s = Skew(achieved, target, i, epsilon);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return {lo, hi};
}

double Ndkl(std::span<const Distribution> memberships,
            const Distribution& target, double epsilon) {
  CheckList(memberships);
  if (!SameAttributeSet(memberships.front(), target)) {
    throw DomainError("NDKL target over a different attribute set");
  }
  std::vector<double> running(target.size(), 0.0);
  std::vector<double> achieved(target.size(), 0.0);
  double num = 0.0;
  double norm = 0.0;
  for (std::size_t k = 0; k < memberships.size(); ++k) {
    for (std::size_t i = 0; i < running.size(); ++i) {
      running[i] += memberships[k][i];
      achieved[i] = running[i] / static_cast<double>(k + 1);
    }
    const double discount = 1.0 / std::log2(static_cast<double>(k) + 2.0);
    num += Kld(achieved, target.probs(), epsilon) * discount;
    norm += discount;
  }
  return num / norm;
}

double MeanAttention(std::span<const Distribution> memberships,
                     std::size_t value, const AttentionParams& params) {
  CheckList(memberships);
  if (value >= memberships.front().size()) {
    throw DomainError("attribute value out of range");
  }
  double num = 0.0;
  double mass = 0.0;
  for (std::size_t k = 0; k < memberships.size(); ++k) {
    const double g = memberships[k][value];
    num += g * params.at(k + 1);
    mass += g;
  }
  if (!(mass > 0.0)) {
    throw EvaluationError(fmt::format(
        "mean attention undefined: value '{}' never appears",
        memberships.front().attribute_set()->values()[value]));
  }
  return num / mass;
}

double Abr(std::span<const Distribution> memberships,
           const AttentionParams& params) {
  CheckList(memberships);
  const std::size_t n = memberships.front().size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double ma = 0.0;
    try {
      ma = MeanAttention(memberships, i, params);
    } catch (const EvaluationError&) {
      ma = 0.0;
    }
    lo = std::min(lo, ma);
    hi = std::max(hi, ma);
  }
  return hi > 0.0 ? lo / hi : 0.0;
}

std::vector<double> Ece(std::span<const Distribution> memberships,
                        const AttentionParams& params) {
  CheckList(memberships);
  std::vector<double> exposure(memberships.front().size(), 0.0);
  for (std::size_t k = 0; k < memberships.size(); ++k) {
    const double att = params.at(k + 1);
    for (std::size_t i = 0; i < exposure.size(); ++i) {
      exposure[i] += memberships[k][i] * att;
    }
  }
  return exposure;
}

std::vector<double> EceNormalized(std::span<const Distribution> memberships,
                                  const AttentionParams& params) {
  auto exposure = Ece(memberships, params);
  double sum = 0.0;
  for (double e : exposure) sum += e;
  for (double& e : exposure) e /= sum;
  return exposure;
}

std::optional<double> Ndcg(std::span<const double> gains,
                           std::span<const double> ideal_pool,
                           std::size_t cutoff) {
  std::vector<double> ideal(ideal_pool.begin(), ideal_pool.end());
  const std::size_t n = std::min(cutoff, ideal.size());
  std::partial_sort(ideal.begin(), ideal.begin() + static_cast<long>(n),
                    ideal.end(), std::greater<>());
  const double ideal_dcg = Dcg(ideal, n);
  if (!(ideal_dcg > 0.0)) return std::nullopt;
  return Dcg(gains, cutoff) / ideal_dcg;
}

std::optional<double> NdcgFromGrades(std::span<const int> grades,
                                     std::span<const int> ideal_pool,
                                     std::size_t cutoff) {
  std::vector<double> gains(grades.size());
  std::transform(grades.begin(), grades.end(), gains.begin(), ExponentialGain);
  std::vector<double> ideal(ideal_pool.size());
  std::transform(ideal_pool.begin(), ideal_pool.end(), ideal.begin(),
                 ExponentialGain);
  return Ndcg(gains, ideal, cutoff);
}

double GlobalGain(const std::string& item, const TopicIntents& intents) {
  const auto gains = intents.gains(item);
  double gg = 0.0;
  for (std::size_t i = 0; i < gains.size(); ++i) gg += intents.probs[i] * gains[i];
  return gg;
}

double IntentRecall(std::span<const std::string> items,
                    const TopicIntents& intents, std::size_t cutoff) {
  if (intents.intents.empty()) throw DomainError("topic without intents");
  std::vector<bool> covered(intents.intents.size(), false);
  const std::size_t n = std::min(cutoff, items.size());
  for (std::size_t r = 0; r < n; ++r) {
    const auto gains = intents.gains(items[r]);
    for (std::size_t i = 0; i < gains.size(); ++i) {
      if (gains[i] > 0.0) covered[i] = true;
    }
  }
  const auto hits = std::count(covered.begin(), covered.end(), true);
  return static_cast<double>(hits) / static_cast<double>(covered.size());
}

std::optional<double> DNdcg(std::span<const std::string> items,
                            const TopicIntents& intents, std::size_t cutoff) {
  std::vector<double> gains;
  gains.reserve(items.size());
  for (const auto& item : items) gains.push_back(GlobalGain(item, intents));
  std::vector<double> pool;
  pool.reserve(intents.grades.size());
  for (const auto& [item, g] : intents.grades) {
    pool.push_back(GlobalGain(item, intents));
  }
  return Ndcg(gains, pool, cutoff);
}

std::optional<double> DSharpNdcg(std::span<const std::string> items,
                                 const TopicIntents& intents,
                                 std::size_t cutoff) {
  const auto d = DNdcg(items, intents, cutoff);
  if (!d) return std::nullopt;
  return 0.5 * (IntentRecall(items, intents, cutoff) + *d);
}

}  // namespace gfair
