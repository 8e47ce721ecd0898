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

#include "gfair/harness.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace gfair {

namespace {

constexpr long kMillion = 1000000;

// Review-count groups: none, 1-10, 11-100, over 100.
constexpr long kParityMillionths[] = {452239, 220319, 227721, 99721};

std::vector<AttributeSet> DefaultSets() {
  return {AttributeSet("stance", {"pro", "con"}, Scale::kNominal),
          AttributeSet("revcnt", {"g1", "g2", "g3", "g4"}, Scale::kOrdinal)};
}

// Integer millionths summing to exactly one million, so the decimal text
// of every probability is exact to six places.
std::vector<double> ToMillionths(const std::vector<double>& weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<long> parts(weights.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  long assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = weights[i] / total * kMillion;
    parts[i] = static_cast<long>(std::floor(exact));
    assigned += parts[i];
    remainders.emplace_back(exact - std::floor(exact), i);
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  for (std::size_t r = 0; assigned < kMillion; ++r, ++assigned) {
    ++parts[remainders[r % remainders.size()].second];
  }
  std::vector<double> probs(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    probs[i] = static_cast<double>(parts[i]) / kMillion;
  }
  return probs;
}

std::vector<double> RandomSimplex(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  for (double& x : w) x = expo(rng) + 1e-3;
  return ToMillionths(w);
}

std::size_t Categorical(std::span<const double> probs, std::mt19937_64& rng) {
  std::discrete_distribution<std::size_t> d(probs.begin(), probs.end());
  return d(rng);
}

int ReviewGroup(int reviews) {
  if (reviews == 0) return 0;
  if (reviews <= 10) return 1;
  if (reviews <= 100) return 2;
  return 3;
}

bool IsReviewCountSet(const AttributeSet& s) {
  return s.name() == "revcnt" && s.size() == 4 && s.scale() == Scale::kOrdinal;
}

void WriteFile(const std::filesystem::path& path,
               const std::function<void(std::ostream&)>& emit) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  emit(out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

SynthCorpus GenSynthetic(const SynthConfig& config) {
  if (config.list_length > config.pool_size) {
    throw DomainError("list length exceeds the candidate pool");
  }
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SynthCorpus corpus;
  for (const auto& s :
       config.attribute_sets.empty() ? DefaultSets() : config.attribute_sets) {
    corpus.attributes.add(s);
  }
  const auto& sets = corpus.attributes.sets();

  // Global targets: review-count parity for revcnt, uniform otherwise.
  for (const auto& s : sets) {
    std::vector<double> probs;
    if (IsReviewCountSet(*s)) {
      for (long p : kParityMillionths) {
        probs.push_back(static_cast<double>(p) / kMillion);
      }
    } else {
      probs = ToMillionths(std::vector<double>(s->size(), 1.0));
    }
    corpus.targets.set(TargetTable::kGlobal, s->name(),
                       Distribution::FromProbs(s, probs));
  }

  std::vector<std::vector<std::string>> pools(config.topics);
  std::vector<double> parity;
  for (long p : kParityMillionths) parity.push_back(static_cast<double>(p));
  for (std::size_t t = 0; t < config.topics; ++t) {
    const std::string topic = std::to_string(t + 1);
    for (std::size_t j = 0; j < config.pool_size; ++j) {
      const std::string item = fmt::format("t{}-d{:03}", t + 1, j);
      pools[t].push_back(item);

      ItemRating rating;
      const int group = static_cast<int>(Categorical(parity, rng));
      static constexpr int kLow[] = {0, 1, 11, 101};
      static constexpr int kHigh[] = {0, 10, 100, 500};
      rating.reviews = std::uniform_int_distribution<int>(kLow[group],
                                                          kHigh[group])(rng);
      if (rating.reviews > 0) {
        // Better-reviewed items lean towards higher ratings.
        const double base = 1.0 + 0.6 * group + 2.2 * unit(rng);
        rating.rating = std::round(std::min(base, 5.0) * 10.0) / 10.0;
      }
      corpus.ratings[item] = rating;
      corpus.owners[item] = fmt::format(
          "o{}-{}", t + 1,
          std::uniform_int_distribution<std::size_t>(
              0, config.owners_per_topic - 1)(rng));

      for (const auto& s : sets) {
        if (IsReviewCountSet(*s) && config.hard_membership) {
          corpus.membership.set(
              item, s->name(),
              Distribution::OneHot(s, static_cast<std::size_t>(
                                          ReviewGroup(rating.reviews))));
          continue;
        }
        if (unit(rng) < 0.05) continue;  // no label: uniform fallback
        if (config.hard_membership) {
          const Distribution* g = corpus.targets.resolve(topic, s->name());
          corpus.membership.set(item, s->name(),
                                Distribution::OneHot(s, Categorical(g->probs(), rng)));
        } else {
          corpus.membership.set(
              item, s->name(),
              Distribution::FromProbs(s, RandomSimplex(s->size(), rng)));
        }
      }

      if (!config.grade_probs.empty()) {
        corpus.qrels.set(topic, item,
                         static_cast<int>(Categorical(config.grade_probs, rng)));
      }
    }
    if (unit(rng) < config.per_topic_target_rate) {
      for (const auto& s : sets) {
        corpus.targets.set(topic, s->name(),
                           Distribution::FromProbs(s, RandomSimplex(s->size(), rng)));
      }
    }
  }

  const double max_grade =
      std::max<double>(1.0, static_cast<double>(config.grade_probs.size()) - 1.0);
  for (std::size_t r = 0; r < config.runs; ++r) {
    const double quality =
        static_cast<double>(r + 1) / static_cast<double>(config.runs + 1);
    const double lean = unit(rng) - 0.5;
    std::vector<RunEntry> entries;
    for (std::size_t t = 0; t < config.topics; ++t) {
      const std::string topic = std::to_string(t + 1);
      std::vector<std::pair<double, std::string>> scored;
      for (const auto& item : pools[t]) {
        double s = quality * corpus.qrels.grade(topic, item) / max_grade +
                   (1.0 - quality) * unit(rng);
        if (const Distribution* g =
                corpus.membership.find(item, sets.front()->name())) {
          s += lean * (*g)[0];
        }
        scored.emplace_back(std::round(s * 1e6) / 1e6, item);
      }
      std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
      });
      for (std::size_t k = 0; k < config.list_length; ++k) {
        entries.push_back({topic, scored[k].second, scored[k].first});
      }
    }
    corpus.runs.push_back(
        Run::FromEntries(fmt::format("run{:02}", r + 1), std::move(entries)));
  }
  return corpus;
}

void WriteCorpus(const SynthCorpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "runs");
  WriteFile(dir / "attrsets.tsv",
            [&](std::ostream& o) { EmitAttributeSets(o, corpus.attributes); });
  WriteFile(dir / "membership.tsv",
            [&](std::ostream& o) { EmitMembership(o, corpus.membership); });
  WriteFile(dir / "targets.tsv",
            [&](std::ostream& o) { EmitTargets(o, corpus.targets); });
  WriteFile(dir / "qrels.txt",
            [&](std::ostream& o) { EmitQrels(o, corpus.qrels); });
  WriteFile(dir / "ratings.tsv",
            [&](std::ostream& o) { EmitRatings(o, corpus.ratings); });
  WriteFile(dir / "entities.tsv",
            [&](std::ostream& o) { EmitOwners(o, corpus.owners); });
  for (const auto& run : corpus.runs) {
    WriteFile(dir / "runs" / (run.tag() + ".txt"),
              [&](std::ostream& o) { EmitRun(o, run); });
  }
}

void EmitRatings(std::ostream& out,
                 const std::map<std::string, ItemRating>& ratings) {
  for (const auto& [item, r] : ratings) {
    fmt::print(out, "{}\t{}\t{}\n", item, r.rating, r.reviews);
  }
}

std::map<std::string, ItemRating> ParseRatings(std::istream& in,
                                               const std::string& file) {
  std::map<std::string, ItemRating> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string item;
    ItemRating r;
    if (!(ss >> item) || item[0] == '#') continue;
    std::string extra;
    if (!(ss >> r.rating >> r.reviews) || (ss >> extra)) {
      throw FormatError(file, line_no, "expected: item rating reviews");
    }
    if (!out.emplace(item, r).second) {
      throw FormatError(file, line_no, fmt::format("duplicate item '{}'", item));
    }
  }
  return out;
}

void EmitOwners(std::ostream& out,
                const std::map<std::string, std::string>& owners) {
  for (const auto& [item, owner] : owners) {
    fmt::print(out, "{}\t{}\n", item, owner);
  }
}

std::map<std::string, std::string> ParseOwners(std::istream& in,
                                               const std::string& file) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string item, owner, extra;
    if (!(ss >> item) || item[0] == '#') continue;
    if (!(ss >> owner) || (ss >> extra)) {
      throw FormatError(file, line_no, "expected: item owner");
    }
    if (!out.emplace(item, owner).second) {
      throw FormatError(file, line_no, fmt::format("duplicate item '{}'", item));
    }
  }
  return out;
}

double OracleGf(const std::vector<std::vector<double>>& memberships,
                const std::vector<double>& decay,
                const std::vector<double>& target, DivergenceKind kind) {
  const std::size_t n = target.size();
  double gf = 0.0;
  for (std::size_t k = 1; k <= memberships.size(); ++k) {
    std::vector<double> p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < k; ++j) p[i] += memberships[j][i];
      p[i] /= static_cast<double>(k);
    }

    double div = 0.0;
    if (kind == DivergenceKind::kJsd) {
      double kl_p = 0.0;
      double kl_q = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double m = (p[i] + target[i]) / 2.0;
        if (p[i] > 0.0) kl_p += p[i] * std::log(p[i] / m);
        if (target[i] > 0.0) kl_q += target[i] * std::log(target[i] / m);
      }
      div = (kl_p + kl_q) / (2.0 * std::log(2.0));
    } else if (kind == DivergenceKind::kNmd) {
      std::vector<double> cp(n), cq(n);
      std::partial_sum(p.begin(), p.end(), cp.begin());
      std::partial_sum(target.begin(), target.end(), cq.begin());
      for (std::size_t i = 0; i + 1 < n; ++i) div += std::abs(cp[i] - cq[i]);
      div /= static_cast<double>(n - 1);
    } else {
      double od = 0.0;
      int support = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (target[i] == 0.0) continue;
        ++support;
        for (std::size_t j = 0; j < n; ++j) {
          od += std::abs(static_cast<double>(i) - static_cast<double>(j)) *
                std::pow(p[j] - target[j], 2);
        }
      }
      div = std::sqrt(od / support / static_cast<double>(n - 1));
    }
    gf += decay[k - 1] * (1.0 - div);
  }
  return gf;
}

std::vector<RankedItem> UniqueEntityFilter(
    std::span<const RankedItem> list,
    const std::map<std::string, std::string>& owners, std::size_t cutoff) {
  std::vector<RankedItem> out;
  std::set<std::string> seen;
  const std::size_t n = std::min(cutoff, list.size());
  for (std::size_t k = 0; k < n; ++k) {
    auto it = owners.find(list[k].item);
    const std::string& owner = it == owners.end() ? list[k].item : it->second;
    if (seen.insert(owner).second) out.push_back(list[k]);
  }
  return out;
}

std::vector<RankedItem> RerankByAttribute(
    std::span<const RankedItem> list,
    const std::map<std::string, double>& score, std::size_t cutoff) {
  std::vector<RankedItem> out(list.begin(),
                              list.begin() + static_cast<long>(
                                                 std::min(cutoff, list.size())));
  auto value = [&](const RankedItem& r) {
    auto it = score.find(r.item);
    return it == score.end() ? 0.0 : it->second;
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const RankedItem& a, const RankedItem& b) {
                     return value(a) > value(b);
                   });
  return out;
}

Run RunFromOrders(const std::string& tag,
                  const std::map<std::string, std::vector<RankedItem>,
                                 TopicLess>& orders) {
  std::vector<RunEntry> entries;
  for (const auto& [topic, list] : orders) {
    for (std::size_t k = 0; k < list.size(); ++k) {
      entries.push_back(
          {topic, list[k].item, static_cast<double>(list.size() - k)});
    }
  }
  return Run::FromEntries(tag, std::move(entries));
}

}  // namespace gfair
