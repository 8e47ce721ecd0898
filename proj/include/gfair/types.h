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

// Domain types shared by every measure: attribute sets, distributions over
// their values, ranked runs, graded judgments and intent annotations.

#ifndef GFAIR_TYPES_H_
#define GFAIR_TYPES_H_

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gfair {

/// Raised when an argument violates a precondition of a measure.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a well-formed input cannot be evaluated (missing targets,
/// undefined scores and so on).
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Orders topic ids numerically when both parse as integers, otherwise
/// lexicographically. Numeric ids sort before non-numeric ones.
struct TopicLess {
  bool operator()(const std::string& a, const std::string& b) const;
};

enum class Scale { kNominal, kOrdinal };

const char* ScaleName(Scale s);
Scale ParseScale(const std::string& s);

class AttributeSet {
 public:
  AttributeSet(std::string name, std::vector<std::string> values, Scale scale);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& values() const { return values_; }
  Scale scale() const { return scale_; }
  std::size_t size() const { return values_.size(); }
  bool is_binary() const { return values_.size() == 2; }

  /// Index of `value`, or -1 when the value is not part of the set.
  int index_of(const std::string& value) const;

  bool operator==(const AttributeSet& other) const;

 private:
  std::string name_;
  std::vector<std::string> values_;
  Scale scale_;
};

using AttributeSetPtr = std::shared_ptr<const AttributeSet>;

/// Tolerance on the probability sum accepted at ingest.
inline constexpr double kIngestTolerance = 1e-6;

/// A probability mass function over the values of one attribute set. The
/// stored probabilities always lie on the simplex.
class Distribution {
 public:
  /// Validates each entry in [0,1] and the sum within `tolerance` of one,
  /// then renormalizes. Throws DomainError otherwise.
  static Distribution FromProbs(AttributeSetPtr set, std::vector<double> probs,
                                double tolerance = kIngestTolerance);
  static Distribution Uniform(AttributeSetPtr set);
  static Distribution OneHot(AttributeSetPtr set, std::size_t index);
  /// Element-wise mean of distributions over the same set. A convex
  /// combination of simplex points, so no renormalization is applied; the
  /// mean of identical inputs is that input bit for bit.
  static Distribution Mean(std::span<const Distribution> parts);

  const AttributeSetPtr& attribute_set() const { return set_; }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::size_t size() const { return probs_.size(); }

  bool operator==(const Distribution& other) const;

 private:
  Distribution(AttributeSetPtr set, std::vector<double> probs)
      : set_(std::move(set)), probs_(std::move(probs)) {}

  AttributeSetPtr set_;
  std::vector<double> probs_;
};

/// True when both distributions are over the same attribute set (same
/// object, or equal name, values and scale).
bool SameAttributeSet(const Distribution& a, const Distribution& b);

/// Registered attribute sets in declaration order.
class AttributeRegistry {
 public:
  void add(AttributeSet set);
  AttributeSetPtr find(const std::string& name) const;
  const std::vector<AttributeSetPtr>& sets() const { return sets_; }
  bool empty() const { return sets_.empty(); }

 private:
  std::vector<AttributeSetPtr> sets_;
};

/// (item, attribute set) -> Distribution. Hard memberships are one-hot.
class MembershipTable {
 public:
  void set(const std::string& item, const std::string& set_name,
           Distribution dist);
  const Distribution* find(const std::string& item,
                           const std::string& set_name) const;
  std::size_t size() const { return table_.size(); }

  using Key = std::pair<std::string, std::string>;
  const std::map<Key, Distribution>& entries() const { return table_; }

 private:
  std::map<Key, Distribution> table_;
};

struct RankedItem {
  std::string item;
  double score = 0.0;
};

struct RunEntry {
  std::string topic;
  std::string item;
  double score = 0.0;
};

/// One system's output: per-topic ranked lists ordered by score descending,
/// ties broken by ascending item id.
class Run {
 public:
  Run() = default;
  /// Sorts each topic list. Throws DomainError on a duplicate (topic, item).
  static Run FromEntries(std::string tag, std::vector<RunEntry> entries);

  const std::string& tag() const { return tag_; }
  const std::map<std::string, std::vector<RankedItem>, TopicLess>& topics()
      const {
    return topics_;
  }
  /// Empty span when the topic is absent.
  std::span<const RankedItem> ranking(const std::string& topic) const;

 private:
  std::string tag_;
  std::map<std::string, std::vector<RankedItem>, TopicLess> topics_;
};

/// Graded judgments. Unjudged items have grade 0; negative grades are
/// stored as 0.
class Qrels {
 public:
  void set(const std::string& topic, const std::string& item, int grade);
  int grade(const std::string& topic, const std::string& item) const;
  bool has_topic(const std::string& topic) const;
  /// Judged (item, grade) pairs for one topic, ordered by item id.
  const std::map<std::string, int>& judged(const std::string& topic) const;
  const std::map<std::string, std::map<std::string, int>, TopicLess>& topics()
      const {
    return topics_;
  }

 private:
  std::map<std::string, std::map<std::string, int>, TopicLess> topics_;
};

/// Intents of one topic with their probabilities and per-intent grades.
struct TopicIntents {
  std::vector<std::string> intents;
  std::vector<double> probs;
  /// item -> per-intent grade, aligned with `intents`.
  std::map<std::string, std::vector<int>> grades;

  int index_of(const std::string& intent) const;
  /// Per-intent gains 2^g - 1 of `item`; all zeros when unjudged.
  std::vector<double> gains(const std::string& item) const;
};

class IntentSet {
 public:
  /// Declares an intent with probability Pr(i|q). Declaration order is the
  /// intent order.
  void add_intent(const std::string& topic, const std::string& intent,
                  double prob);
  void set_grade(const std::string& topic, const std::string& intent,
                 const std::string& item, int grade);
  /// Checks every topic's probabilities sum to 1 within tolerance and
  /// renormalizes. Throws DomainError.
  void validate();

  const TopicIntents* find(const std::string& topic) const;
  const std::map<std::string, TopicIntents, TopicLess>& topics() const {
    return topics_;
  }

 private:
  std::map<std::string, TopicIntents, TopicLess> topics_;
};

}  // namespace gfair

#endif  // GFAIR_TYPES_H_
