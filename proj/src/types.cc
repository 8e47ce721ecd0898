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

#include "gfair/types.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "gfair/membership.h"

namespace gfair {

namespace {

bool ParseInteger(const std::string& s, long long* out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, *out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

bool TopicLess::operator()(const std::string& a, const std::string& b) const {
  long long ia = 0;
  long long ib = 0;
  const bool na = ParseInteger(a, &ia);
  const bool nb = ParseInteger(b, &ib);
  if (na && nb) {
    if (ia != ib) return ia < ib;
    return a < b;  // "07" vs "7"
  }
  if (na != nb) return na;
  return a < b;
}

const char* ScaleName(Scale s) {
  return s == Scale::kOrdinal ? "ordinal" : "nominal";
}

Scale ParseScale(const std::string& s) {
  if (s == "nominal") return Scale::kNominal;
  if (s == "ordinal") return Scale::kOrdinal;
  throw DomainError(fmt::format("unknown scale '{}'", s));
}

AttributeSet::AttributeSet(std::string name, std::vector<std::string> values,
                           Scale scale)
    : name_(std::move(name)), values_(std::move(values)), scale_(scale) {
  if (name_.empty()) throw DomainError("attribute set name is empty");
  if (values_.size() < 2) {
    throw DomainError(
        fmt::format("attribute set '{}' needs at least two values", name_));
  }
  std::set<std::string> seen;
  for (const auto& v : values_) {
    if (!seen.insert(v).second) {
      throw DomainError(fmt::format(
          "attribute set '{}' has duplicate value '{}'", name_, v));
    }
  }
}

int AttributeSet::index_of(const std::string& value) const {
  auto it = std::find(values_.begin(), values_.end(), value);
  return it == values_.end() ? -1 : static_cast<int>(it - values_.begin());
}

bool AttributeSet::operator==(const AttributeSet& other) const {
  return name_ == other.name_ && values_ == other.values_ &&
         scale_ == other.scale_;
}

Distribution Distribution::FromProbs(AttributeSetPtr set,
                                     std::vector<double> probs,
                                     double tolerance) {
  if (!set) throw DomainError("distribution without attribute set");
  if (probs.size() != set->size()) {
    throw DomainError(fmt::format(
        "distribution over '{}' has {} entries, expected {}", set->name(),
        probs.size(), set->size()));
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw DomainError(fmt::format(
          "probability {} outside [0,1] in distribution over '{}'", p,
          set->name()));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > tolerance) {
    throw DomainError(fmt::format(
        "probabilities over '{}' sum to {:.9g}, not 1", set->name(), sum));
  }
  for (double& p : probs) p /= sum;
  return Distribution(std::move(set), std::move(probs));
}

Distribution Distribution::Mean(std::span<const Distribution> parts) {
  if (parts.empty()) throw DomainError("mean of no distributions");
  const Distribution& first = parts.front();
  std::vector<double> mean(first.probs_);
  // Running mean: m += (x - m) / k leaves m unchanged when x == m.
  for (std::size_t k = 1; k < parts.size(); ++k) {
    if (!SameAttributeSet(parts[k], first)) {
      throw DomainError("memberships over different attribute sets");
    }
    const double inv = 1.0 / static_cast<double>(k + 1);
    for (std::size_t i = 0; i < mean.size(); ++i) {
      mean[i] += (parts[k][i] - mean[i]) * inv;
    }
  }
  return Distribution(first.set_, std::move(mean));
}

Distribution Distribution::Uniform(AttributeSetPtr set) {
  if (!set) throw DomainError("distribution without attribute set");
  const std::size_t n = set->size();
  return Distribution(std::move(set),
                      std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::OneHot(AttributeSetPtr set, std::size_t index) {
  if (!set) throw DomainError("distribution without attribute set");
  if (index >= set->size()) {
    throw DomainError(fmt::format("value index {} out of range for '{}'",
                                  index, set->name()));
  }
  std::vector<double> probs(set->size(), 0.0);
  probs[index] = 1.0;
  return Distribution(std::move(set), std::move(probs));
}

bool Distribution::operator==(const Distribution& other) const {
  return SameAttributeSet(*this, other) && probs_ == other.probs_;
}

bool SameAttributeSet(const Distribution& a, const Distribution& b) {
  const auto& sa = a.attribute_set();
  const auto& sb = b.attribute_set();
  return sa == sb || (sa && sb && *sa == *sb);
}

void AttributeRegistry::add(AttributeSet set) {
  if (find(set.name())) {
    throw DomainError(
        fmt::format("attribute set '{}' declared twice", set.name()));
  }
  sets_.push_back(std::make_shared<const AttributeSet>(std::move(set)));
}

AttributeSetPtr AttributeRegistry::find(const std::string& name) const {
  for (const auto& s : sets_) {
    if (s->name() == name) return s;
  }
  return nullptr;
}

void MembershipTable::set(const std::string& item, const std::string& set_name,
                          Distribution dist) {
  table_.insert_or_assign(Key{item, set_name}, std::move(dist));
}

const Distribution* MembershipTable::find(const std::string& item,
                                          const std::string& set_name) const {
  auto it = table_.find(Key{item, set_name});
  return it == table_.end() ? nullptr : &it->second;
}

Run Run::FromEntries(std::string tag, std::vector<RunEntry> entries) {
  Run run;
  run.tag_ = std::move(tag);
  for (auto& e : entries) {
    run.topics_[e.topic].push_back({std::move(e.item), e.score});
  }
  for (auto& [topic, list] : run.topics_) {
    std::sort(list.begin(), list.end(),
              [](const RankedItem& a, const RankedItem& b) {
                if (a.score != b.score) return a.score > b.score;
                return a.item < b.item;
              });
    std::set<std::string> seen;
    for (const auto& r : list) {
      if (!seen.insert(r.item).second) {
        throw DomainError(fmt::format("duplicate item '{}' in topic '{}'",
                                      r.item, topic));
      }
    }
  }
  return run;
}

std::span<const RankedItem> Run::ranking(const std::string& topic) const {
  auto it = topics_.find(topic);
  if (it == topics_.end()) return {};
  return it->second;
}

void Qrels::set(const std::string& topic, const std::string& item, int grade) {
  topics_[topic][item] = std::max(grade, 0);
}

int Qrels::grade(const std::string& topic, const std::string& item) const {
  auto t = topics_.find(topic);
  if (t == topics_.end()) return 0;
  auto i = t->second.find(item);
  return i == t->second.end() ? 0 : i->second;
}

bool Qrels::has_topic(const std::string& topic) const {
  return topics_.count(topic) != 0;
}

const std::map<std::string, int>& Qrels::judged(
    const std::string& topic) const {
  static const std::map<std::string, int> kEmpty;
  auto t = topics_.find(topic);
  return t == topics_.end() ? kEmpty : t->second;
}

int TopicIntents::index_of(const std::string& intent) const {
  auto it = std::find(intents.begin(), intents.end(), intent);
  return it == intents.end() ? -1 : static_cast<int>(it - intents.begin());
}

std::vector<double> TopicIntents::gains(const std::string& item) const {
  std::vector<double> out(intents.size(), 0.0);
  auto it = grades.find(item);
  if (it == grades.end()) return out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = ExponentialGain(it->second[i]);
  }
  return out;
}

void IntentSet::add_intent(const std::string& topic, const std::string& intent,
                           double prob) {
  auto& t = topics_[topic];
  if (t.index_of(intent) >= 0) {
    throw DomainError(fmt::format("intent '{}' declared twice for topic '{}'",
                                  intent, topic));
  }
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw DomainError(fmt::format("intent probability {} outside [0,1]", prob));
  }
  t.intents.push_back(intent);
  t.probs.push_back(prob);
  for (auto& [item, g] : t.grades) g.push_back(0);
}

void IntentSet::set_grade(const std::string& topic, const std::string& intent,
                          const std::string& item, int grade) {
  auto t = topics_.find(topic);
  const int idx = t == topics_.end() ? -1 : t->second.index_of(intent);
  if (idx < 0) {
    throw DomainError(fmt::format("undeclared intent '{}' for topic '{}'",
                                  intent, topic));
  }
  auto& g = t->second.grades[item];
  g.resize(t->second.intents.size(), 0);
  g[static_cast<std::size_t>(idx)] = std::max(grade, 0);
}

void IntentSet::validate() {
  for (auto& [topic, t] : topics_) {
    double sum = 0.0;
    for (double p : t.probs) sum += p;
    if (t.intents.empty() || std::abs(sum - 1.0) > kIngestTolerance) {
      throw DomainError(fmt::format(
          "intent probabilities of topic '{}' sum to {:.9g}, not 1", topic,
          sum));
    }
    for (double& p : t.probs) p /= sum;
  }
}

const TopicIntents* IntentSet::find(const std::string& topic) const {
  auto it = topics_.find(topic);
  return it == topics_.end() ? nullptr : &it->second;
}

}  // namespace gfair
