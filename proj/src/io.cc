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

#include "gfair/io.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace gfair {

namespace {

class LineReader {
 public:
  LineReader(std::istream& in, std::string file)
      : in_(in), file_(std::move(file)) {}

  // Next non-blank, non-comment line split on whitespace.
  bool Next(std::vector<std::string>* fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      fields->clear();
      std::istringstream ss(line);
      std::string f;
      while (ss >> f) fields->push_back(std::move(f));
      if (fields->empty() || fields->front()[0] == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw FormatError(file_, line_no_, message);
  }

  std::size_t line() const { return line_no_; }
  const std::string& file() const { return file_; }

  double Real(const std::string& s) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      Fail(fmt::format("'{}' is not a number", s));
    }
    return v;
  }

  int Integer(const std::string& s) const {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      Fail(fmt::format("'{}' is not an integer", s));
    }
    return v;
  }

 private:
  std::istream& in_;
  std::string file_;
  std::size_t line_no_ = 0;
};

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

bool NextCsvLine(std::istream& in, std::string* line, std::size_t* line_no) {
  while (std::getline(in, *line)) {
    ++*line_no;
    if (!line->empty() && line->back() == '\r') line->pop_back();
    if (!line->empty()) return true;
  }
  return false;
}

// Rows of one (key, set) distribution accumulated before validation.
struct PendingDistribution {
  AttributeSetPtr set;
  std::vector<double> probs;
  std::vector<bool> seen;
  std::size_t first_line = 0;
};

// Reads `key set value prob` rows into pending distributions.
std::map<std::pair<std::string, std::string>, PendingDistribution>
ReadDistributionRows(LineReader& reader, const AttributeRegistry& registry,
                     const char* key_name) {
  std::map<std::pair<std::string, std::string>, PendingDistribution> pending;
  std::vector<std::string> f;
  while (reader.Next(&f)) {
    if (f.size() != 4) {
      reader.Fail(fmt::format(
          "expected 4 fields ({} set value probability), got {}", key_name,
          f.size()));
    }
    AttributeSetPtr set = registry.find(f[1]);
    if (!set) reader.Fail(fmt::format("unknown attribute set '{}'", f[1]));
    const int idx = set->index_of(f[2]);
    if (idx < 0) {
      reader.Fail(fmt::format("unknown value '{}' of attribute set '{}'", f[2],
                              f[1]));
    }
    const double p = reader.Real(f[3]);
    if (!(p >= 0.0 && p <= 1.0)) {
      reader.Fail(fmt::format("probability {} outside [0,1]", f[3]));
    }
    auto [it, fresh] = pending.try_emplace({f[0], f[1]});
    PendingDistribution& d = it->second;
    if (fresh) {
      d.set = set;
      d.probs.assign(set->size(), 0.0);
      d.seen.assign(set->size(), false);
      d.first_line = reader.line();
    }
    const auto i = static_cast<std::size_t>(idx);
    if (d.seen[i]) {
      reader.Fail(fmt::format("duplicate row for {} '{}', value '{}'",
                              key_name, f[0], f[2]));
    }
    d.seen[i] = true;
    d.probs[i] = p;
  }
  return pending;
}

Distribution Finish(const LineReader& reader, PendingDistribution& d,
                    const std::string& key) {
  try {
    return Distribution::FromProbs(d.set, std::move(d.probs));
  } catch (const DomainError& e) {
    throw FormatError(reader.file(), d.first_line,
                      fmt::format("'{}': {}", key, e.what()));
  }
}

void EmitDistributionRows(std::ostream& out, const std::string& key,
                          const Distribution& d) {
  const auto& values = d.attribute_set()->values();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0.0) continue;
    fmt::print(out, "{}\t{}\t{}\t{:.10g}\n", key, d.attribute_set()->name(),
               values[i], d[i]);
  }
}

}  // namespace

FormatError::FormatError(std::string file, std::size_t line,
                         const std::string& message)
    : std::runtime_error(line > 0 ? fmt::format("{}:{}: {}", file, line, message)
                                  : fmt::format("{}: {}", file, message)),
      file_(std::move(file)),
      line_(line) {}

void TargetTable::set(const std::string& topic, const std::string& set_name,
                      Distribution dist) {
  table_.insert_or_assign({topic, set_name}, std::move(dist));
}

const Distribution* TargetTable::resolve(const std::string& topic,
                                         const std::string& set_name) const {
  auto it = table_.find({topic, set_name});
  if (it != table_.end()) return &it->second;
  it = table_.find({kGlobal, set_name});
  return it == table_.end() ? nullptr : &it->second;
}

Run ParseRun(std::istream& in, const std::string& file) {
  LineReader reader(in, file);
  std::vector<std::string> f;
  std::vector<RunEntry> entries;
  std::set<std::pair<std::string, std::string>> seen;
  std::string tag;
  while (reader.Next(&f)) {
    if (f.size() != 6) {
      reader.Fail(fmt::format(
          "expected 6 fields (topic Q0 item rank score tag), got {}",
          f.size()));
    }
    const double score = reader.Real(f[4]);
    if (!seen.insert({f[0], f[2]}).second) {
      reader.Fail(fmt::format("duplicate item '{}' for topic '{}'", f[2], f[0]));
    }
    if (tag.empty()) tag = f[5];
    entries.push_back({f[0], f[2], score});
  }
  return Run::FromEntries(tag, std::move(entries));
}

Qrels ParseQrels(std::istream& in, const std::string& file) {
  LineReader reader(in, file);
  std::vector<std::string> f;
  std::map<std::pair<std::string, std::string>, int> raw;
  Qrels qrels;
  while (reader.Next(&f)) {
    if (f.size() != 4) {
      reader.Fail(fmt::format(
          "expected 4 fields (topic 0 item grade), got {}", f.size()));
    }
    const int grade = reader.Integer(f[3]);
    auto [it, fresh] = raw.try_emplace({f[0], f[2]}, grade);
    if (!fresh && it->second != grade) {
      reader.Fail(fmt::format("conflicting grades for item '{}' of topic '{}'",
                              f[2], f[0]));
    }
    qrels.set(f[0], f[2], grade);
  }
  return qrels;
}

AttributeRegistry ParseAttributeSets(std::istream& in,
                                     const std::string& file) {
  LineReader reader(in, file);
  std::vector<std::string> f;
  AttributeRegistry registry;
  while (reader.Next(&f)) {
    if (f.size() < 4) {
      reader.Fail("expected: name nominal|ordinal value1 value2 ...");
    }
    try {
      registry.add(AttributeSet(f[0], {f.begin() + 2, f.end()},
                                ParseScale(f[1])));
    } catch (const DomainError& e) {
      reader.Fail(e.what());
    }
  }
  return registry;
}

MembershipTable ParseMembership(std::istream& in,
                                const AttributeRegistry& registry,
                                const std::string& file) {
  LineReader reader(in, file);
  auto pending = ReadDistributionRows(reader, registry, "item");
  MembershipTable table;
  for (auto& [key, d] : pending) {
    table.set(key.first, key.second, Finish(reader, d, key.first));
  }
  return table;
}

TargetTable ParseTargets(std::istream& in, const AttributeRegistry& registry,
                         const std::string& file) {
  LineReader reader(in, file);
  auto pending = ReadDistributionRows(reader, registry, "topic");
  TargetTable targets;
  for (auto& [key, d] : pending) {
    targets.set(key.first, key.second, Finish(reader, d, key.first));
  }
  return targets;
}

IntentSet ParseIntents(std::istream& in, const std::string& file) {
  LineReader reader(in, file);
  std::vector<std::string> f;
  struct GradeRow {
    std::string topic, intent, item;
    int grade;
    std::size_t line;
  };
  std::vector<GradeRow> grades;
  IntentSet intents;
  while (reader.Next(&f)) {
    if (f.size() == 3) {
      try {
        intents.add_intent(f[0], f[1], reader.Real(f[2]));
      } catch (const DomainError& e) {
        reader.Fail(e.what());
      }
    } else if (f.size() == 4) {
      grades.push_back({f[0], f[1], f[2], reader.Integer(f[3]), reader.line()});
    } else {
      reader.Fail(fmt::format(
          "expected 3 fields (topic intent probability) or 4 fields "
          "(topic intent item grade), got {}",
          f.size()));
    }
  }
  for (const auto& g : grades) {
    try {
      intents.set_grade(g.topic, g.intent, g.item, g.grade);
    } catch (const DomainError& e) {
      throw FormatError(file, g.line, e.what());
    }
  }
  try {
    intents.validate();
  } catch (const DomainError& e) {
    throw FormatError(file, 0, e.what());
  }
  return intents;
}

void EmitRun(std::ostream& out, const Run& run) {
  for (const auto& [topic, list] : run.topics()) {
    for (std::size_t r = 0; r < list.size(); ++r) {
      fmt::print(out, "{} Q0 {} {} {} {}\n", topic, list[r].item, r + 1,
                 list[r].score, run.tag());
    }
  }
}

void EmitQrels(std::ostream& out, const Qrels& qrels) {
  for (const auto& [topic, items] : qrels.topics()) {
    for (const auto& [item, grade] : items) {
      fmt::print(out, "{} 0 {} {}\n", topic, item, grade);
    }
  }
}

void EmitAttributeSets(std::ostream& out, const AttributeRegistry& registry) {
  for (const auto& s : registry.sets()) {
    fmt::print(out, "{}\t{}\t{}\n", s->name(), ScaleName(s->scale()),
               fmt::join(s->values(), "\t"));
  }
}

void EmitMembership(std::ostream& out, const MembershipTable& table) {
  for (const auto& [key, dist] : table.entries()) {
    EmitDistributionRows(out, key.first, dist);
  }
}

void EmitTargets(std::ostream& out, const TargetTable& targets) {
  // Global rows first, then topics in topic order.
  std::vector<const std::pair<const std::pair<std::string, std::string>,
                              Distribution>*>
      rows;
  for (const auto& e : targets.entries()) rows.push_back(&e);
  std::stable_sort(rows.begin(), rows.end(), [](auto* a, auto* b) {
    const bool ga = a->first.first == TargetTable::kGlobal;
    const bool gb = b->first.first == TargetTable::kGlobal;
    if (ga != gb) return ga;
    if (a->first.first != b->first.first) {
      return TopicLess{}(a->first.first, b->first.first);
    }
    return a->first.second < b->first.second;
  });
  for (const auto* e : rows) EmitDistributionRows(out, e->first.first, e->second);
}

void EmitIntents(std::ostream& out, const IntentSet& intents) {
  for (const auto& [topic, t] : intents.topics()) {
    for (std::size_t i = 0; i < t.intents.size(); ++i) {
      fmt::print(out, "{}\t{}\t{:.10g}\n", topic, t.intents[i], t.probs[i]);
    }
    for (const auto& [item, grades] : t.grades) {
      for (std::size_t i = 0; i < grades.size(); ++i) {
        if (grades[i] == 0) continue;
        fmt::print(out, "{}\t{}\t{}\t{}\n", topic, t.intents[i], item,
                   grades[i]);
      }
    }
  }
}

void EmitScores(std::ostream& out, const std::vector<ScoreRow>& rows,
                bool append_means) {
  fmt::print(out, "run,topic,measure,value\n");
  for (const auto& r : rows) {
    fmt::print(out, "{},{},{},{:.6f}\n", r.run, r.topic, r.measure, r.value);
  }
  if (!append_means) return;
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>>
      acc;
  for (const auto& r : rows) {
    auto [it, fresh] = acc.try_emplace({r.run, r.measure}, 0.0, 0);
    if (fresh) order.emplace_back(r.run, r.measure);
    it->second.first += r.value;
    ++it->second.second;
  }
  for (const auto& key : order) {
    const auto& [sum, n] = acc.at(key);
    fmt::print(out, "{},{},{},{:.6f}\n", key.first, kAllTopics, key.second,
               sum / static_cast<double>(n));
  }
}

std::vector<ScoreRow> ParseScores(std::istream& in, const std::string& file) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<ScoreRow> rows;
  if (!NextCsvLine(in, &line, &line_no)) return rows;
  if (line != "run,topic,measure,value") {
    throw FormatError(file, line_no, "expected header run,topic,measure,value");
  }
  while (NextCsvLine(in, &line, &line_no)) {
    auto f = SplitCsv(line);
    if (f.size() != 4) throw FormatError(file, line_no, "expected 4 columns");
    if (f[1] == kAllTopics) continue;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(f[3].data(), f[3].data() + f[3].size(), v);
    if (ec != std::errc() || ptr != f[3].data() + f[3].size()) {
      throw FormatError(file, line_no, fmt::format("'{}' is not a number", f[3]));
    }
    rows.push_back({f[0], f[1], f[2], v});
  }
  return rows;
}

void EmitMatrix(std::ostream& out, const ScoreMatrix& matrix,
                const std::string& corner) {
  fmt::print(out, "{}", corner);
  for (const auto& c : matrix.columns()) fmt::print(out, ",{}", c);
  fmt::print(out, "\n");
  for (std::size_t r = 0; r < matrix.num_rows(); ++r) {
    fmt::print(out, "{}", matrix.rows()[r]);
    for (std::size_t c = 0; c < matrix.num_columns(); ++c) {
      if (matrix.missing(r, c)) {
        fmt::print(out, ",");
      } else {
        fmt::print(out, ",{:.6f}", matrix.at(r, c));
      }
    }
    fmt::print(out, "\n");
  }
}

ScoreMatrix ParseMatrix(std::istream& in, const std::string& file) {
  std::string line;
  std::size_t line_no = 0;
  if (!NextCsvLine(in, &line, &line_no)) {
    throw FormatError(file, 0, "empty matrix file");
  }
  auto header = SplitCsv(line);
  if (header.size() < 2) {
    throw FormatError(file, line_no, "matrix header needs at least one column");
  }
  std::vector<std::string> columns(header.begin() + 1, header.end());
  std::vector<std::string> row_ids;
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> lines;
  while (NextCsvLine(in, &line, &line_no)) {
    auto f = SplitCsv(line);
    if (f.size() != header.size()) {
      throw FormatError(file, line_no,
                        fmt::format("expected {} columns, got {}",
                                    header.size(), f.size()));
    }
    row_ids.push_back(f[0]);
    cells.emplace_back(f.begin() + 1, f.end());
    lines.push_back(line_no);
  }
  ScoreMatrix m(row_ids, columns);
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const std::string& s = cells[r][c];
      if (s.empty()) continue;
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw FormatError(file, lines[r], fmt::format("'{}' is not a number", s));
      }
      m.set(r, c, v);
    }
  }
  return m;
}

ScoreMatrix PivotByTopic(const std::vector<ScoreRow>& rows,
                         const std::string& measure) {
  std::set<std::string, TopicLess> topics;
  std::vector<std::string> runs;
  for (const auto& r : rows) {
    if (r.measure != measure) continue;
    topics.insert(r.topic);
    if (std::find(runs.begin(), runs.end(), r.run) == runs.end()) {
      runs.push_back(r.run);
    }
  }
  if (runs.empty()) {
    throw DomainError(fmt::format("no scores for measure '{}'", measure));
  }
  std::vector<std::string> topic_list(topics.begin(), topics.end());
  ScoreMatrix m(topic_list, runs);
  for (const auto& r : rows) {
    if (r.measure != measure) continue;
    const auto t = static_cast<std::size_t>(
        std::lower_bound(topic_list.begin(), topic_list.end(), r.topic,
                         TopicLess{}) -
        topic_list.begin());
    m.set(t, static_cast<std::size_t>(m.column_index(r.run)), r.value);
  }
  return m;
}

ScoreMatrix PivotRunMeans(const std::vector<ScoreRow>& rows) {
  std::vector<std::string> runs;
  std::vector<std::string> measures;
  std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>>
      acc;
  for (const auto& r : rows) {
    if (std::find(runs.begin(), runs.end(), r.run) == runs.end()) {
      runs.push_back(r.run);
    }
    if (std::find(measures.begin(), measures.end(), r.measure) ==
        measures.end()) {
      measures.push_back(r.measure);
    }
    auto& a = acc[{r.run, r.measure}];
    a.first += r.value;
    ++a.second;
  }
  ScoreMatrix m(runs, measures);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t j = 0; j < measures.size(); ++j) {
      auto it = acc.find({runs[i], measures[j]});
      if (it == acc.end()) continue;
      m.set(i, j, it->second.first / static_cast<double>(it->second.second));
    }
  }
  return m;
}

void EmitCurve(std::ostream& out,
               const std::vector<std::pair<double, double>>& curve) {
  fmt::print(out, "alpha,fraction\n");
  for (const auto& [alpha, frac] : curve) {
    fmt::print(out, "{:.3f},{:.6f}\n", alpha, frac);
  }
}

void EmitPairs(std::ostream& out, const ScoreMatrix& matrix,
               const std::vector<PairwiseResult>& pairs) {
  fmt::print(out, "system_a,system_b,mean_diff,p_value\n");
  for (const auto& p : pairs) {
    fmt::print(out, "{},{},{:.6f},{:.6f}\n", matrix.columns()[p.a],
               matrix.columns()[p.b], p.mean_diff, p.p_value);
  }
}

}  // namespace gfair
