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

#include "gfair/evaluate.h"

#include <algorithm>
#include <exception>
#include <set>

#include <fmt/format.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gfair/membership.h"

namespace gfair {

namespace {

struct Cell {
  std::vector<ScoreRow> rows;
  std::vector<std::string> warnings;
  std::exception_ptr error;
};

struct Task {
  const Run* run;
  std::string topic;
};

std::vector<Task> MakeTasks(std::span<const Run> runs,
                            const std::vector<std::string>& topics) {
  std::vector<Task> tasks;
  tasks.reserve(runs.size() * topics.size());
  for (const auto& run : runs) {
    for (const auto& t : topics) tasks.push_back({&run, t});
  }
  return tasks;
}

template <typename F>
std::vector<Cell> RunCellsParallel(const std::vector<Task>& tasks, int threads,
                                   F fn) {
  std::vector<Cell> cells(tasks.size());
  const long long n = static_cast<long long>(tasks.size());
#ifdef _OPENMP
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nthreads)
#else
  (void)threads;
#endif
  for (long long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      fn(tasks[k], cells[k]);
    } catch (...) {
      cells[k].error = std::current_exception();
    }
  }
  return cells;
}

template <typename F>
std::vector<Cell> RunCellsSerial(const std::vector<Task>& tasks, F fn) {
  std::vector<Cell> cells(tasks.size());
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    try {
      fn(tasks[k], cells[k]);
    } catch (...) {
      cells[k].error = std::current_exception();
    }
  }
  return cells;
}

// Rethrows the first failed cell; otherwise concatenates in task order.
EvalResult Merge(std::vector<Cell> cells) {
  EvalResult result;
  for (auto& c : cells) {
    if (c.error) std::rethrow_exception(c.error);
  }
  for (auto& c : cells) {
    std::move(c.rows.begin(), c.rows.end(), std::back_inserter(result.rows));
    std::move(c.warnings.begin(), c.warnings.end(),
              std::back_inserter(result.warnings));
  }
  return result;
}

std::span<const RankedItem> Top(std::span<const RankedItem> list,
                                std::size_t cutoff) {
  return list.first(std::min(cutoff, list.size()));
}

std::vector<std::string> AllTopics(std::span<const Run> runs,
                                   const Corpus& corpus) {
  std::set<std::string, TopicLess> topics;
  if (corpus.qrels) {
    for (const auto& [t, items] : corpus.qrels->topics()) topics.insert(t);
  } else {
    for (const auto& run : runs) {
      for (const auto& [t, list] : run.topics()) topics.insert(t);
    }
  }
  return {topics.begin(), topics.end()};
}

}  // namespace

Evaluator::Evaluator(const Corpus& corpus, EvalOptions options)
    : corpus_(corpus), options_(std::move(options)) {
  has_relevance_ = corpus_.qrels.has_value() || corpus_.intents.has_value();
  config_.cutoff = options_.cutoff;
  config_.utility = options_.utility;
  if (options_.decay) {
    config_.decay = *options_.decay;
  } else {
    config_.decay =
        has_relevance_ ? DecayKind::Err() : DecayKind::Rbp(options_.rbp_phi);
  }
  if (config_.decay.type == DecayKind::Type::kErr && !has_relevance_) {
    throw DomainError("ERR-based decay needs relevance judgments");
  }

  for (const auto& s : corpus_.attributes.sets()) facets_.push_back(s->name());
  if (options_.intent_facet) {
    if (!corpus_.intents) throw DomainError("intent facet needs an intents file");
    if (corpus_.attributes.find(kIntentFacet)) {
      throw DomainError(fmt::format(
          "attribute set '{}' clashes with the intent facet", kIntentFacet));
    }
    facets_.push_back(kIntentFacet);
  }
  if (facets_.empty()) throw DomainError("no attribute sets to evaluate");

  for (const auto& [name, kind] : options_.divergences) {
    if (std::find(facets_.begin(), facets_.end(), name) == facets_.end()) {
      throw DomainError(fmt::format("divergence given for unknown set '{}'", name));
    }
  }
  for (const auto& name : facets_) {
    auto it = options_.divergences.find(name);
    const DivergenceKind kind = it == options_.divergences.end()
                                    ? options_.default_divergence
                                    : it->second;
    if (AttributeSetPtr set = corpus_.attributes.find(name);
        set && !DivergenceAllowed(kind, *set)) {
      throw DomainError(fmt::format(
          "{} needs an ordinal or binary attribute set; '{}' is nominal",
          DivergenceName(kind), name));
    }
    config_.divergences.push_back(kind);
  }

  config_.weights = options_.weights.empty()
                        ? DefaultWeights(facets_.size(), has_relevance_)
                        : options_.weights;
  config_.Validate(has_relevance_);

  if (has_relevance_) measures_.push_back(config_.utility.name());
  for (std::size_t m = 0; m < facets_.size(); ++m) {
    measures_.push_back(fmt::format("GF-{}@{}",
                                    DivergenceName(config_.divergences[m]),
                                    facets_[m]));
  }
  measures_.push_back("GFR");
}

std::vector<std::string> Evaluator::Topics(std::span<const Run> runs) const {
  return AllTopics(runs, corpus_);
}

std::vector<int> Evaluator::Grades(const std::string& topic,
                                   std::span<const RankedItem> list) const {
  std::vector<int> grades(list.size(), 0);
  if (corpus_.qrels) {
    for (std::size_t k = 0; k < list.size(); ++k) {
      grades[k] = corpus_.qrels->grade(topic, list[k].item);
    }
    return grades;
  }
  if (corpus_.intents) {
    const TopicIntents* t = corpus_.intents->find(topic);
    if (!t) return grades;
    for (std::size_t k = 0; k < list.size(); ++k) {
      auto it = t->grades.find(list[k].item);
      if (it == t->grades.end()) continue;
      grades[k] = *std::max_element(it->second.begin(), it->second.end());
    }
  }
  return grades;
}

AttributeSetPtr Evaluator::IntentSetFor(const std::string& topic) const {
  const TopicIntents* t = corpus_.intents->find(topic);
  if (!t) {
    throw EvaluationError(fmt::format("topic '{}' has no intents", topic));
  }
  try {
    return std::make_shared<const AttributeSet>(kIntentFacet, t->intents,
                                                Scale::kNominal);
  } catch (const DomainError& e) {
    throw EvaluationError(fmt::format("topic '{}': {}", topic, e.what()));
  }
}

std::vector<Distribution> Evaluator::Memberships(
    std::size_t facet, const std::string& topic,
    std::span<const RankedItem> list) const {
  std::vector<Distribution> out;
  out.reserve(list.size());
  if (facets_[facet] == kIntentFacet && options_.intent_facet &&
      facet + 1 == facets_.size()) {
    AttributeSetPtr set = IntentSetFor(topic);
    const TopicIntents& t = *corpus_.intents->find(topic);
    for (const auto& r : list) {
      out.push_back(MembershipFromIntentGains(t.gains(r.item), set));
    }
    return out;
  }
  AttributeSetPtr set = corpus_.attributes.find(facets_[facet]);
  for (const auto& r : list) {
    out.push_back(ResolveMembership(r.item, set, corpus_.membership));
  }
  return out;
}

Distribution Evaluator::Target(std::size_t facet,
                               const std::string& topic) const {
  if (facets_[facet] == kIntentFacet && options_.intent_facet &&
      facet + 1 == facets_.size()) {
    AttributeSetPtr set = IntentSetFor(topic);
    return Distribution::FromProbs(set, corpus_.intents->find(topic)->probs);
  }
  const Distribution* d = corpus_.targets.resolve(topic, facets_[facet]);
  if (!d) {
    throw EvaluationError(fmt::format(
        "no target distribution for attribute set '{}' on topic '{}'",
        facets_[facet], topic));
  }
  return *d;
}

std::vector<double> Evaluator::ScoreTopic(
    const std::string& topic, std::span<const RankedItem> list) const {
  const auto top = Top(list, config_.cutoff);
  const auto grades =
      has_relevance_ ? Grades(topic, top) : std::vector<int>(top.size(), 0);
  const auto decay = DecaySequence(config_.decay, grades);

  std::vector<double> values;
  values.reserve(measures_.size());
  const double relevance = RelevanceScore(config_.utility, decay);
  if (has_relevance_) values.push_back(relevance);
  std::vector<double> gf(facets_.size(), 0.0);
  for (std::size_t m = 0; m < facets_.size(); ++m) {
    const Distribution target = Target(m, topic);
    if (!top.empty()) {
      gf[m] = Gf(Memberships(m, topic, top), decay, target,
                 config_.divergences[m]);
    }
    values.push_back(gf[m]);
  }
  values.push_back(Gfr(config_, relevance, gf));
  return values;
}

double Evaluator::PolarityTopic(const std::string& set_name,
                                const std::string& topic,
                                std::span<const RankedItem> list) const {
  auto it = std::find(facets_.begin(), facets_.end(), set_name);
  if (it == facets_.end()) {
    throw DomainError(fmt::format("unknown attribute set '{}'", set_name));
  }
  const auto m = static_cast<std::size_t>(it - facets_.begin());
  const auto top = Top(list, config_.cutoff);
  const auto grades =
      has_relevance_ ? Grades(topic, top) : std::vector<int>(top.size(), 0);
  return DeltaGf(Memberships(m, topic, top), DecaySequence(config_.decay, grades),
                 config_.divergences[m]);
}

namespace {

auto ScoreCell(const Evaluator& ev) {
  return [&ev](const Task& task, Cell& cell) {
    const auto values = ev.ScoreTopic(task.topic, task.run->ranking(task.topic));
    for (std::size_t i = 0; i < values.size(); ++i) {
      cell.rows.push_back(
          {task.run->tag(), task.topic, ev.measures()[i], values[i]});
    }
  };
}

}  // namespace

EvalResult Evaluate(const Corpus& corpus, const EvalOptions& options,
                    std::span<const Run> runs, int threads) {
  const Evaluator ev(corpus, options);
  const auto tasks = MakeTasks(runs, ev.Topics(runs));
  return Merge(RunCellsParallel(tasks, threads, ScoreCell(ev)));
}

EvalResult EvaluateSerial(const Corpus& corpus, const EvalOptions& options,
                          std::span<const Run> runs) {
  const Evaluator ev(corpus, options);
  const auto tasks = MakeTasks(runs, ev.Topics(runs));
  return Merge(RunCellsSerial(tasks, ScoreCell(ev)));
}

EvalResult EvaluatePolarity(const Corpus& corpus, const EvalOptions& options,
                            std::span<const Run> runs,
                            const std::string& set_name, int threads) {
  const Evaluator ev(corpus, options);
  const auto& facets = ev.facets();
  const auto m = static_cast<std::size_t>(
      std::find(facets.begin(), facets.end(), set_name) - facets.begin());
  if (m == facets.size()) {
    throw DomainError(fmt::format("unknown attribute set '{}'", set_name));
  }
  AttributeSetPtr set = corpus.attributes.find(set_name);
  if (!set || !set->is_binary()) {
    throw DomainError(fmt::format(
        "polarity needs a binary attribute set; '{}' is not", set_name));
  }
  const std::string measure = fmt::format(
      "dGF-{}@{}", DivergenceName(ev.config().divergences[m]), set_name);
  const auto tasks = MakeTasks(runs, ev.Topics(runs));
  return Merge(RunCellsParallel(tasks, threads,
                                [&](const Task& task, Cell& cell) {
                                  const double d = ev.PolarityTopic(
                                      set_name, task.topic,
                                      task.run->ranking(task.topic));
                                  cell.rows.push_back({task.run->tag(),
                                                       task.topic, measure, d});
                                }));
}

EvalResult EvaluateBaselines(const Corpus& corpus,
                             const BaselineOptions& options,
                             std::span<const Run> runs, int threads) {
  const auto tasks = MakeTasks(runs, AllTopics(runs, corpus));
  auto fn = [&](const Task& task, Cell& cell) {
    const auto top = Top(task.run->ranking(task.topic), options.cutoff);
    const std::string& tag = task.run->tag();
    const std::string& topic = task.topic;
    auto emit = [&](std::string measure, double v) {
      cell.rows.push_back({tag, topic, std::move(measure), v});
    };

    if (top.empty()) {
      cell.warnings.push_back(fmt::format(
          "run '{}' topic '{}': empty ranking, baselines skipped", tag, topic));
      return;
    }

    for (const auto& set : corpus.attributes.sets()) {
      std::vector<Distribution> members;
      members.reserve(top.size());
      for (const auto& r : top) {
        members.push_back(ResolveMembership(r.item, set, corpus.membership));
      }
      const std::string& name = set->name();
      const Distribution* target = corpus.targets.resolve(topic, name);
      if (!target) {
        throw EvaluationError(fmt::format(
            "no target distribution for attribute set '{}' on topic '{}'",
            name, topic));
      }
      const auto [lo, hi] =
          SkewExtremes(AchievedDistribution(members), *target, options.epsilon);
      emit(fmt::format("SkewMin@{}", name), lo);
      emit(fmt::format("SkewMax@{}", name), hi);
      emit(fmt::format("NDKL@{}", name), Ndkl(members, *target, options.epsilon));
      emit(fmt::format("ABR@{}", name), Abr(members, options.attention));
      const auto ece = Ece(members, options.attention);
      const auto ece_norm = EceNormalized(members, options.attention);
      for (std::size_t i = 0; i < set->size(); ++i) {
        const std::string& value = set->values()[i];
        try {
          emit(fmt::format("MA[{}]@{}", value, name),
               MeanAttention(members, i, options.attention));
        } catch (const EvaluationError&) {
          // Undefined for a value that never appears; ABR already counts it.
        }
        emit(fmt::format("ECE[{}]@{}", value, name), ece[i]);
        emit(fmt::format("ECEnorm[{}]@{}", value, name), ece_norm[i]);
      }
    }

    if (corpus.qrels) {
      std::vector<int> grades;
      for (const auto& r : top) grades.push_back(corpus.qrels->grade(topic, r.item));
      std::vector<int> pool;
      for (const auto& [item, g] : corpus.qrels->judged(topic)) pool.push_back(g);
      if (const auto v = NdcgFromGrades(grades, pool, options.cutoff)) {
        emit("nDCG", *v);
      } else {
        cell.warnings.push_back(fmt::format(
            "run '{}' topic '{}': no relevant items, nDCG skipped", tag, topic));
      }
    }

    if (corpus.intents) {
      if (const TopicIntents* t = corpus.intents->find(topic)) {
        std::vector<std::string> items;
        for (const auto& r : top) items.push_back(r.item);
        emit("IntentRecall", IntentRecall(items, *t, options.cutoff));
        const auto d = DNdcg(items, *t, options.cutoff);
        if (d) {
          emit("D-nDCG", *d);
          emit("D#-nDCG", *DSharpNdcg(items, *t, options.cutoff));
        } else {
          cell.warnings.push_back(fmt::format(
              "run '{}' topic '{}': zero global gain, D-nDCG skipped", tag,
              topic));
        }
      }
    }
  };
  return Merge(RunCellsParallel(tasks, threads, fn));
}

}  // namespace gfair
