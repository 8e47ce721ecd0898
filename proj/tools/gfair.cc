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

// gfair: command-line front end.
// Exit codes: 0 success, 1 malformed input, 2 evaluation or domain error.

#include <algorithm>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "gfair/evaluate.h"
#include "gfair/harness.h"
#include "gfair/io.h"
#include "gfair/stats.h"

namespace {

using namespace gfair;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename F>
auto ParseFile(const std::string& path, F parse) {
  std::istringstream in(ReadFile(path));
  return parse(in, path);
}

std::vector<Run> LoadRuns(const std::vector<std::string>& paths) {
  std::vector<std::string> texts(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) texts[i] = ReadFile(paths[i]);
  std::vector<Run> runs(paths.size());
  std::vector<std::exception_ptr> errors(paths.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < paths.size(); ++i) {
    try {
      std::istringstream in(texts[i]);
      runs[i] = ParseRun(in, paths[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return runs;
}

// Without an attribute-set file, sets are read off the label files: values in
// order of first appearance, nominal scale.
AttributeRegistry InferAttributeSets(const std::vector<std::string>& paths,
                                     const std::string& only_set = "") {
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::string>> values;
  for (const auto& path : paths) {
    std::istringstream in(ReadFile(path));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::istringstream ss(line);
      std::string first, set, value;
      if (!(ss >> first) || first[0] == '#') continue;
      if (!(ss >> set >> value)) {
        throw FormatError(path, line_no, "expected 4 fields");
      }
      if (!only_set.empty() && set != only_set) continue;
      auto [it, fresh] = values.try_emplace(set);
      if (fresh) order.push_back(set);
      if (std::find(it->second.begin(), it->second.end(), value) ==
          it->second.end()) {
        it->second.push_back(value);
      }
    }
  }
  AttributeRegistry registry;
  for (const auto& name : order) {
    if (values[name].size() < 2) {
      throw DomainError(fmt::format(
          "cannot infer attribute set '{}': fewer than two values seen; "
          "pass --attrsets",
          name));
    }
    registry.add(AttributeSet(name, values[name], Scale::kNominal));
  }
  return registry;
}

// Blanks every label row of another set; line numbers are kept.
std::string KeepSet(const std::string& text, const std::string& set_name) {
  std::istringstream in(text);
  std::string out, line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string first, set;
    if ((ss >> first >> set) && first[0] != '#' && set != set_name) line.clear();
    out += line;
    out += '\n';
  }
  return out;
}

std::vector<double> ParseWeights(const std::string& text) {
  std::vector<double> out;
  std::istringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    double w = 0.0;
    try {
      w = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) {
      throw DomainError(fmt::format("bad weight '{}'", part));
    }
    out.push_back(w);
  }
  return out;
}

// "jsd" for every set, or "set=kind,set=kind".
void ParseDivergenceFlag(const std::string& text, EvalOptions& options) {
  if (text.find('=') == std::string::npos) {
    options.default_divergence = ParseDivergence(text);
    return;
  }
  std::istringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) {
      options.default_divergence = ParseDivergence(part);
    } else {
      options.divergences[part.substr(0, eq)] =
          ParseDivergence(part.substr(eq + 1));
    }
  }
}

void PrintWarnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) fmt::print(std::cerr, "warning: {}\n", w);
}

// Rows with a missing cell are dropped; the statistics need complete rows.
ScoreMatrix CompleteRows(const ScoreMatrix& m) {
  std::vector<std::string> rows;
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    bool complete = true;
    for (std::size_t c = 0; c < m.num_columns(); ++c) {
      complete = complete && !m.missing(r, c);
    }
    if (complete) {
      rows.push_back(m.rows()[r]);
      keep.push_back(r);
    }
  }
  if (keep.size() != m.num_rows()) {
    fmt::print(std::cerr, "warning: dropped {} rows with missing cells\n",
               m.num_rows() - keep.size());
  }
  ScoreMatrix out(rows, m.columns());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    for (std::size_t c = 0; c < m.num_columns(); ++c) {
      out.set(r, c, m.at(keep[r], c));
    }
  }
  return out;
}

struct Args {
  std::vector<std::string> runs;
  std::string membership, targets, attrsets, qrels, intents;
  std::size_t cutoff = kDefaultCutoff;
  std::string decay, divergence = "jsd", utility = "err", weights;
  double phi = kDefaultDecayPhi;
  double irbu_phi = kDefaultIrbuPhi;
  double epsilon = kDefaultEpsilon;
  double attention_p = AttentionParams{}.p;
  bool intent_facet = false;
  std::string attrset;
  int threads = 0;

  std::string matrix, measure_a, measure_b;
  bool tau_a = false;
  std::size_t trials = kDefaultTrials;
  std::uint64_t seed = kDefaultSeed;
  double alpha_max = 0.20;
  std::string pairs_out;

  std::string scores, measure;
  bool means = false;

  std::string out_dir;
  std::size_t synth_topics = 100, synth_runs = 18;
  std::uint64_t synth_seed = 1;
  bool soft = false;

  std::string run, ratings, entities, tag;
  std::size_t rerank_cutoff = 20;
};

Corpus LoadCorpus(const Args& a, bool need_targets) {
  Corpus corpus;
  if (!a.attrsets.empty()) {
    corpus.attributes = ParseFile(a.attrsets, [](std::istream& in,
                                                 const std::string& f) {
      return ParseAttributeSets(in, f);
    });
  } else {
    std::vector<std::string> label_files = {a.membership};
    if (need_targets) label_files.push_back(a.targets);
    corpus.attributes = InferAttributeSets(label_files, a.attrset);
  }
  std::string labels = ReadFile(a.membership);
  if (a.attrsets.empty() && !a.attrset.empty()) labels = KeepSet(labels, a.attrset);
  {
    std::istringstream in(labels);
    corpus.membership = ParseMembership(in, corpus.attributes, a.membership);
  }
  if (need_targets) {
    corpus.targets = ParseFile(a.targets, [&](std::istream& in,
                                              const std::string& f) {
      return ParseTargets(in, corpus.attributes, f);
    });
  }
  if (!a.qrels.empty()) {
    corpus.qrels = ParseFile(a.qrels, [](std::istream& in, const std::string& f) {
      return ParseQrels(in, f);
    });
  }
  if (!a.intents.empty()) {
    corpus.intents = ParseFile(a.intents, [](std::istream& in,
                                             const std::string& f) {
      return ParseIntents(in, f);
    });
  }
  return corpus;
}

EvalOptions MakeEvalOptions(const Args& a) {
  EvalOptions o;
  o.cutoff = a.cutoff;
  o.rbp_phi = a.phi;
  if (a.decay == "err") {
    o.decay = DecayKind::Err();
  } else if (a.decay == "rbp") {
    o.decay = DecayKind::Rbp(a.phi);
  } else if (!a.decay.empty()) {
    throw DomainError(fmt::format("unknown decay '{}'", a.decay));
  }
  ParseDivergenceFlag(a.divergence, o);
  if (a.utility == "err") {
    o.utility = UtilityKind::Err();
  } else if (a.utility == "irbu") {
    o.utility = UtilityKind::Irbu(a.irbu_phi);
  } else {
    throw DomainError(fmt::format("unknown utility '{}'", a.utility));
  }
  if (!a.weights.empty()) o.weights = ParseWeights(a.weights);
  o.intent_facet = a.intent_facet;
  return o;
}

int CmdEval(const Args& a) {
  const Corpus corpus = LoadCorpus(a, true);
  const auto runs = LoadRuns(a.runs);
  const EvalResult result = Evaluate(corpus, MakeEvalOptions(a), runs, a.threads);
  PrintWarnings(result.warnings);
  EmitScores(std::cout, result.rows);
  return 0;
}

int CmdPolarity(const Args& a) {
  const Corpus corpus = LoadCorpus(a, false);
  const auto runs = LoadRuns(a.runs);
  EvalOptions options = MakeEvalOptions(a);
  const EvalResult result =
      EvaluatePolarity(corpus, options, runs, a.attrset, a.threads);
  PrintWarnings(result.warnings);
  EmitScores(std::cout, result.rows);
  return 0;
}

int CmdBaselines(const Args& a) {
  const Corpus corpus = LoadCorpus(a, true);
  const auto runs = LoadRuns(a.runs);
  BaselineOptions options;
  options.cutoff = a.cutoff;
  options.attention.p = a.attention_p;
  options.epsilon = a.epsilon;
  const EvalResult result = EvaluateBaselines(corpus, options, runs, a.threads);
  PrintWarnings(result.warnings);
  EmitScores(std::cout, result.rows);
  return 0;
}

int CmdTau(const Args& a) {
  const ScoreMatrix m = CompleteRows(ParseFile(
      a.matrix, [](std::istream& in, const std::string& f) {
        return ParseMatrix(in, f);
      }));
  const int ca = m.column_index(a.measure_a);
  const int cb = m.column_index(a.measure_b);
  if (ca < 0 || cb < 0) {
    throw DomainError(fmt::format("column '{}' not in {}",
                                  ca < 0 ? a.measure_a : a.measure_b, a.matrix));
  }
  const auto x = m.column(static_cast<std::size_t>(ca));
  const auto y = m.column(static_cast<std::size_t>(cb));
  const double tau = a.tau_a ? KendallTauA(x, y) : KendallTauB(x, y);
  fmt::print("measure_a,measure_b,n,tau,ci_low,ci_high\n");
  std::string low, high;
  try {
    const Interval ci = TauCi(tau, x.size());
    low = fmt::format("{:.6f}", ci.low);
    high = fmt::format("{:.6f}", ci.high);
  } catch (const DomainError& e) {
    fmt::print(std::cerr, "warning: no confidence interval: {}\n", e.what());
  }
  fmt::print("{},{},{},{:.6f},{},{}\n", a.measure_a, a.measure_b, x.size(), tau,
             low, high);
  return 0;
}

int CmdDiscPower(const Args& a) {
  const ScoreMatrix m = CompleteRows(ParseFile(
      a.matrix, [](std::istream& in, const std::string& f) {
        return ParseMatrix(in, f);
      }));
  const auto pairs = RandomisedTukeyHsd(m, a.trials, a.seed, a.threads);
  if (!a.pairs_out.empty()) {
    std::ofstream out(a.pairs_out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + a.pairs_out);
    EmitPairs(out, m, pairs);
  } else {
    EmitPairs(std::cerr, m, pairs);
  }
  EmitCurve(std::cout, DiscPowerCurve(pairs, AlphaGrid(a.alpha_max)));
  return 0;
}

int CmdPivot(const Args& a) {
  const auto rows = ParseFile(a.scores, [](std::istream& in,
                                           const std::string& f) {
    return ParseScores(in, f);
  });
  if (a.means) {
    EmitMatrix(std::cout, PivotRunMeans(rows), "run");
  } else {
    if (a.measure.empty()) throw DomainError("pivot needs --measure or --means");
    EmitMatrix(std::cout, PivotByTopic(rows, a.measure));
  }
  return 0;
}

int CmdSynth(const Args& a) {
  SynthConfig config;
  config.topics = a.synth_topics;
  config.runs = a.synth_runs;
  config.seed = a.synth_seed;
  config.hard_membership = !a.soft;
  WriteCorpus(GenSynthetic(config), a.out_dir);
  return 0;
}

int CmdRerank(const Args& a) {
  const Run run = LoadRuns({a.run}).front();
  const auto ratings = ParseFile(a.ratings, [](std::istream& in,
                                               const std::string& f) {
    return ParseRatings(in, f);
  });
  std::map<std::string, std::string> owners;
  if (!a.entities.empty()) {
    owners = ParseFile(a.entities, [](std::istream& in, const std::string& f) {
      return ParseOwners(in, f);
    });
  }
  std::map<std::string, double> score;
  for (const auto& [item, r] : ratings) score[item] = r.rating;

  std::map<std::string, std::vector<RankedItem>, TopicLess> orders;
  for (const auto& [topic, list] : run.topics()) {
    auto reranked = RerankByAttribute(list, score, a.rerank_cutoff);
    if (!a.entities.empty()) {
      reranked = UniqueEntityFilter(reranked, owners, a.rerank_cutoff);
    }
    orders[topic] = std::move(reranked);
  }
  EmitRun(std::cout,
          RunFromOrders(a.tag.empty() ? run.tag() + "-rerank" : a.tag, orders));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-fairness and relevance evaluation for ranked lists"};
  app.require_subcommand(1);
  Args a;

  auto add_corpus = [&](CLI::App* cmd, bool targets, bool attrsets_required) {
    cmd->add_option("--run", a.runs, "Run files (TREC format)")->required();
    cmd->add_option("--membership", a.membership, "Membership TSV")->required();
    if (targets) {
      cmd->add_option("--targets", a.targets, "Target TSV")->required();
    }
    auto* opt = cmd->add_option("--attrsets", a.attrsets,
                                "Attribute sets: name scale value...");
    if (attrsets_required) opt->required();
    cmd->add_option("--qrels", a.qrels, "Relevance judgments");
    cmd->add_option("--threads", a.threads, "Worker threads (0 = default)");
  };

  auto* eval = app.add_subcommand("eval", "GF/GFR scores per run and topic");
  add_corpus(eval, true, true);
  eval->add_option("--cutoff", a.cutoff, "Rank cutoff")->capture_default_str();
  eval->add_option("--decay", a.decay, "err|rbp")
      ->check(CLI::IsMember({"err", "rbp"}));
  eval->add_option("--phi", a.phi, "RBP persistence")->capture_default_str();
  eval->add_option("--divergence", a.divergence,
                   "jsd|nmd|rnod, or set=kind,... per attribute set")
      ->capture_default_str();
  eval->add_option("--utility", a.utility, "err|irbu")
      ->check(CLI::IsMember({"err", "irbu"}))
      ->capture_default_str();
  eval->add_option("--irbu-phi", a.irbu_phi, "iRBU persistence")
      ->capture_default_str();
  eval->add_option("--weights", a.weights, "w0,w1,... (w0 = relevance)");
  eval->add_option("--intents", a.intents, "Intent file");
  eval->add_flag("--intent-facet", a.intent_facet,
                 "Score the intents as an extra attribute set");

  auto* polarity = app.add_subcommand("polarity", "Delta-GF for a binary set");
  add_corpus(polarity, false, false);
  polarity->add_option("--attrset", a.attrset, "Binary attribute set")
      ->required();
  polarity->add_option("--cutoff", a.cutoff, "Rank cutoff")
      ->capture_default_str();
  polarity->add_option("--decay", a.decay, "err|rbp")
      ->check(CLI::IsMember({"err", "rbp"}));
  polarity->add_option("--phi", a.phi, "RBP persistence")
      ->capture_default_str();
  polarity->add_option("--divergence", a.divergence, "jsd|nmd|rnod")
      ->capture_default_str();

  auto* baselines = app.add_subcommand("baselines", "Existing fairness and "
                                                    "diversity measures");
  add_corpus(baselines, true, false);
  baselines->add_option("--intents", a.intents, "Intent file");
  baselines->add_option("--cutoff", a.cutoff, "Rank cutoff")
      ->capture_default_str();
  baselines->add_option("--epsilon", a.epsilon, "Zero-cell smoothing")
      ->capture_default_str();
  baselines->add_option("--attention-p", a.attention_p,
                        "Attention stop probability")
      ->capture_default_str();

  auto* tau = app.add_subcommand("tau", "Kendall's tau with a 95% CI");
  tau->add_option("--matrix", a.matrix, "Matrix CSV")->required();
  tau->add_option("--measure-a", a.measure_a, "Column name")->required();
  tau->add_option("--measure-b", a.measure_b, "Column name")->required();
  tau->add_flag("--tau-a", a.tau_a, "Use tau-a instead of tau-b");

  auto* disc = app.add_subcommand("discpower",
                                  "Randomised Tukey HSD and the "
                                  "discriminative-power curve");
  disc->add_option("--matrix", a.matrix, "topics x systems CSV")->required();
  disc->add_option("--trials", a.trials, "Randomisation trials")
      ->capture_default_str();
  disc->add_option("--seed", a.seed, "RNG seed")->capture_default_str();
  disc->add_option("--alpha-max", a.alpha_max, "Largest alpha")
      ->capture_default_str();
  disc->add_option("--pairs-out", a.pairs_out,
                   "Pairwise p-values CSV (default: stderr)");
  disc->add_option("--threads", a.threads, "Worker threads (0 = default)");

  auto* pivot = app.add_subcommand("pivot", "Scores CSV to a matrix CSV");
  pivot->add_option("--scores", a.scores, "Scores CSV")->required();
  pivot->add_option("--measure", a.measure, "topics x runs for this measure");
  pivot->add_flag("--means", a.means, "runs x measures of the mean scores");

  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus");
  synth->add_option("--out", a.out_dir, "Output directory")->required();
  synth->add_option("--seed", a.synth_seed, "RNG seed")->capture_default_str();
  synth->add_option("--topics", a.synth_topics, "Topics")->capture_default_str();
  synth->add_option("--runs", a.synth_runs, "Runs")->capture_default_str();
  synth->add_flag("--soft", a.soft, "Soft memberships");

  auto* rerank = app.add_subcommand("rerank", "Rating rerank and "
                                              "one-item-per-owner filter");
  rerank->add_option("--run", a.run, "Run file")->required();
  rerank->add_option("--ratings", a.ratings, "item rating reviews")->required();
  rerank->add_option("--entities", a.entities, "item owner");
  rerank->add_option("--cutoff", a.rerank_cutoff, "Items reranked per topic")
      ->capture_default_str();
  rerank->add_option("--tag", a.tag, "Output run tag");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eval) return CmdEval(a);
    if (*polarity) return CmdPolarity(a);
    if (*baselines) return CmdBaselines(a);
    if (*tau) return CmdTau(a);
    if (*disc) return CmdDiscPower(a);
    if (*pivot) return CmdPivot(a);
    if (*synth) return CmdSynth(a);
    if (*rerank) return CmdRerank(a);
  } catch (const FormatError& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return 2;
  }
  return 0;
}
