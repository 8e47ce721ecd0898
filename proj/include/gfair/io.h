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

// Text formats. All inputs are whitespace-separated (TSV files may use tabs
// or spaces), accept \n or \r\n, and skip blank lines and lines starting
// with '#'. Outputs use \n and tabs.
//
//   run          topic Q0 item rank score tag
//   qrels        topic 0 item grade
//   attrsets     name nominal|ordinal value1 value2 ...
//   membership   item attribute_set value probability
//   targets      topic|* attribute_set value probability
//   intents      topic intent probability            (declares an intent)
//                topic intent item grade             (per-intent judgment)
//
// CSV outputs:
//   scores       run,topic,measure,value   (value with 6 decimals)
//   matrix       <corner>,col1,col2,...  then  row_id,v1,v2,...
//   curve        alpha,fraction
//   pairs        system_a,system_b,mean_diff,p_value

#ifndef GFAIR_IO_H_
#define GFAIR_IO_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gfair/stats.h"
#include "gfair/types.h"

namespace gfair {

class FormatError : public std::runtime_error {
 public:
  FormatError(std::string file, std::size_t line, const std::string& message);

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }  // 1-based; 0 = whole file

 private:
  std::string file_;
  std::size_t line_;
};

/// Target distributions; per-topic rows take precedence over the global
/// ("*") rows.
class TargetTable {
 public:
  static constexpr const char* kGlobal = "*";

  void set(const std::string& topic, const std::string& set_name,
           Distribution dist);
  const Distribution* resolve(const std::string& topic,
                              const std::string& set_name) const;
  const std::map<std::pair<std::string, std::string>, Distribution>& entries()
      const {
    return table_;
  }

 private:
  std::map<std::pair<std::string, std::string>, Distribution> table_;
};

Run ParseRun(std::istream& in, const std::string& file = "<run>");
Qrels ParseQrels(std::istream& in, const std::string& file = "<qrels>");
AttributeRegistry ParseAttributeSets(std::istream& in,
                                     const std::string& file = "<attrsets>");
MembershipTable ParseMembership(std::istream& in,
                                const AttributeRegistry& registry,
                                const std::string& file = "<membership>");
TargetTable ParseTargets(std::istream& in, const AttributeRegistry& registry,
                         const std::string& file = "<targets>");
IntentSet ParseIntents(std::istream& in, const std::string& file = "<intents>");

void EmitRun(std::ostream& out, const Run& run);
void EmitQrels(std::ostream& out, const Qrels& qrels);
void EmitAttributeSets(std::ostream& out, const AttributeRegistry& registry);
void EmitMembership(std::ostream& out, const MembershipTable& table);
void EmitTargets(std::ostream& out, const TargetTable& targets);
void EmitIntents(std::ostream& out, const IntentSet& intents);

struct ScoreRow {
  std::string run;
  std::string topic;
  std::string measure;
  double value = 0.0;
};

inline constexpr const char* kAllTopics = "ALL";

/// Header, the rows in order, then when `append_means` one "ALL" row per
/// (run, measure) holding the mean over that pair's topics.
void EmitScores(std::ostream& out, const std::vector<ScoreRow>& rows,
                bool append_means = true);
/// Reads a scores CSV; "ALL" rows are dropped.
std::vector<ScoreRow> ParseScores(std::istream& in,
                                  const std::string& file = "<scores>");

void EmitMatrix(std::ostream& out, const ScoreMatrix& matrix,
                const std::string& corner = "topic");
/// Empty cells become missing zeros.
ScoreMatrix ParseMatrix(std::istream& in, const std::string& file = "<matrix>");

/// topics x runs for one measure, or runs x measures of the mean scores.
ScoreMatrix PivotByTopic(const std::vector<ScoreRow>& rows,
                         const std::string& measure);
ScoreMatrix PivotRunMeans(const std::vector<ScoreRow>& rows);

void EmitCurve(std::ostream& out,
               const std::vector<std::pair<double, double>>& curve);
void EmitPairs(std::ostream& out, const ScoreMatrix& matrix,
               const std::vector<PairwiseResult>& pairs);

}  // namespace gfair

#endif  // GFAIR_IO_H_
