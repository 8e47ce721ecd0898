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

// Prior fairness, relevance and diversity measures used as comparison
// points: Skew, NDKL, mean attention / ABR, expected cumulative exposure,
// nDCG, intent recall, D-nDCG and D#-nDCG.

#ifndef GFAIR_BASELINES_H_
#define GFAIR_BASELINES_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gfair/types.h"

namespace gfair {

/// Attention_p@k = 100 p (1-p)^(k-1).
struct AttentionParams {
  double p = 0.15;
  double at(std::size_t rank) const;
};

/// ln(achieved(i) / target(i)). A zero on either side is replaced by
/// `epsilon` when it is positive; a zero target with epsilon == 0 throws
/// EvaluationError and a zero achieved value with epsilon == 0 gives -inf.
double Skew(const Distribution& achieved, const Distribution& target,
            std::size_t value, double epsilon = 0.0);

/// (min_i Skew, max_i Skew).
std::pair<double, double> SkewExtremes(const Distribution& achieved,
                                       const Distribution& target,
                                       double epsilon = 0.0);

/// sum_k KLD(p@k || target) / log2(k+1), normalized by sum_k 1/log2(k+1).
double Ndkl(std::span<const Distribution> memberships,
            const Distribution& target, double epsilon = 0.0);

/// Attention-weighted mean rank position of `value`. Throws EvaluationError
/// when the value carries no membership mass in the list.
double MeanAttention(std::span<const Distribution> memberships,
                     std::size_t value, const AttentionParams& params);

/// min MA / max MA over all values; a value without mass counts as MA 0.
double Abr(std::span<const Distribution> memberships,
           const AttentionParams& params);

/// E(a_i) = sum_k G@k(a_i) Attention@k.
std::vector<double> Ece(std::span<const Distribution> memberships,
                        const AttentionParams& params);
/// Ece divided by its sum.
std::vector<double> EceNormalized(std::span<const Distribution> memberships,
                                  const AttentionParams& params);

/// DCG@K = sum_r gain(r)/log2(r+1) over the first `cutoff` ranks, divided by
/// the DCG of the ideal ordering of `ideal_pool`. nullopt when the ideal DCG
/// is zero.
std::optional<double> Ndcg(std::span<const double> gains,
                           std::span<const double> ideal_pool,
                           std::size_t cutoff);
/// Ndcg with gains 2^g - 1.
std::optional<double> NdcgFromGrades(std::span<const int> grades,
                                     std::span<const int> ideal_pool,
                                     std::size_t cutoff);

/// sum_i Pr(i|q) g_i(item).
double GlobalGain(const std::string& item, const TopicIntents& intents);

/// Fraction of intents covered by a positive-gain item in the top `cutoff`.
double IntentRecall(std::span<const std::string> items,
                    const TopicIntents& intents, std::size_t cutoff);

/// nDCG over global gains; the ideal pool is every annotated item.
std::optional<double> DNdcg(std::span<const std::string> items,
                            const TopicIntents& intents, std::size_t cutoff);

/// (IntentRecall + D-nDCG) / 2; nullopt when D-nDCG is undefined.
std::optional<double> DSharpNdcg(std::span<const std::string> items,
                                 const TopicIntents& intents,
                                 std::size_t cutoff);

}  // namespace gfair

#endif  // GFAIR_BASELINES_H_
