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

// Scores whole runs topic by topic. Each (run, topic) cell is independent,
// so the parallel entry points split the cells over OpenMP threads; the
// *Serial variants walk them in order and are the reference the parallel
// output is tested against.

#ifndef GFAIR_EVALUATE_H_
#define GFAIR_EVALUATE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gfair/baselines.h"
#include "gfair/divergence.h"
#include "gfair/io.h"
#include "gfair/measures.h"
#include "gfair/types.h"
#include "gfair/user_model.h"

namespace gfair {

/// Everything known about the judged corpus, independent of any run.
struct Corpus {
  AttributeRegistry attributes;
  MembershipTable membership;
  TargetTable targets;
  std::optional<Qrels> qrels;
  std::optional<IntentSet> intents;
};

/// Name of the per-topic attribute set built from intents.
inline constexpr const char* kIntentFacet = "intent";

struct EvalOptions {
  std::size_t cutoff = kDefaultCutoff;
  /// nullopt: ERR decay when grades are available, RBP otherwise.
  std::optional<DecayKind> decay;
  double rbp_phi = kDefaultDecayPhi;
  /// Per attribute set; sets not listed use `default_divergence`.
  std::map<std::string, DivergenceKind> divergences;
  DivergenceKind default_divergence = DivergenceKind::kJsd;
  UtilityKind utility = UtilityKind::Err();
  /// w0, w1..wM in attribute-set order (intent facet last). Empty: equal.
  std::vector<double> weights;
  /// Adds an attribute set per topic whose values are the topic's intents,
  /// with soft memberships from per-intent gains and the intent
  /// probabilities as target.
  bool intent_facet = false;
};

struct BaselineOptions {
  std::size_t cutoff = kDefaultCutoff;
  AttentionParams attention;
  double epsilon = kDefaultEpsilon;
};

struct EvalResult {
  std::vector<ScoreRow> rows;
  std::vector<std::string> warnings;
};

/// Resolved per-run configuration: facet names, divergences, weights and
/// the measure names emitted for each topic.
class Evaluator {
 public:
  Evaluator(const Corpus& corpus, EvalOptions options);

  const GfConfig& config() const { return config_; }
  bool has_relevance() const { return has_relevance_; }
  /// Attribute-set names scored, in weight order.
  const std::vector<std::string>& facets() const { return facets_; }
  /// Measure names produced per topic, in output order.
  const std::vector<std::string>& measures() const { return measures_; }

  /// Topics to score: the judged topics when qrels are present, otherwise
  /// every topic of any run.
  std::vector<std::string> Topics(std::span<const Run> runs) const;

  /// Grades of the first `n` items (relevance judgments, or the maximum
  /// per-intent grade when only intents are available).
  std::vector<int> Grades(const std::string& topic,
                          std::span<const RankedItem> list) const;

  /// Memberships of the top items and the target for one facet.
  std::vector<Distribution> Memberships(std::size_t facet,
                                        const std::string& topic,
                                        std::span<const RankedItem> list) const;
  Distribution Target(std::size_t facet, const std::string& topic) const;

  /// One value per entry of measures().
  std::vector<double> ScoreTopic(const std::string& topic,
                                 std::span<const RankedItem> list) const;

  /// Polarity of one binary attribute set.
  double PolarityTopic(const std::string& set_name, const std::string& topic,
                       std::span<const RankedItem> list) const;

 private:
  AttributeSetPtr IntentSetFor(const std::string& topic) const;

  const Corpus& corpus_;
  EvalOptions options_;
  GfConfig config_;
  bool has_relevance_ = false;
  std::vector<std::string> facets_;
  std::vector<std::string> measures_;
};

/// All runs x topics x measures; rows ordered by run, topic, measure.
/// `threads` <= 0 uses the OpenMP default.
EvalResult Evaluate(const Corpus& corpus, const EvalOptions& options,
                    std::span<const Run> runs, int threads = 0);
EvalResult EvaluateSerial(const Corpus& corpus, const EvalOptions& options,
                          std::span<const Run> runs);

/// Delta-GF per run and topic for one binary attribute set.
EvalResult EvaluatePolarity(const Corpus& corpus, const EvalOptions& options,
                            std::span<const Run> runs,
                            const std::string& set_name, int threads = 0);

/// Skew extremes, NDKL, MA, ABR and ECE per attribute set; nDCG with qrels;
/// intent recall, D-nDCG and D#-nDCG with intents. Topics whose nDCG-style
/// measures are undefined are skipped with a warning.
EvalResult EvaluateBaselines(const Corpus& corpus,
                             const BaselineOptions& options,
                             std::span<const Run> runs, int threads = 0);

}  // namespace gfair

#endif  // GFAIR_EVALUATE_H_
