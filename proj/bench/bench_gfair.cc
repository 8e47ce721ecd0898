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


// Serial references against their OpenMP counterparts.

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>
#include <fmt/format.h>

#include "gfair/evaluate.h"
#include "gfair/harness.h"
#include "gfair/stats.h"

namespace {

gfair::ScoreMatrix NoiseMatrix(std::size_t topics, std::size_t systems) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.5, 0.1);
  std::vector<std::string> rows, cols;
  for (std::size_t r = 0; r < topics; ++r) rows.push_back(std::to_string(r + 1));
  for (std::size_t s = 0; s < systems; ++s) cols.push_back(fmt::format("s{}", s));
  gfair::ScoreMatrix m(rows, cols);
  for (std::size_t r = 0; r < topics; ++r) {
    for (std::size_t s = 0; s < systems; ++s) m.set(r, s, n(rng));
  }
  return m;
}

const gfair::SynthCorpus& Corpus() {
  static const gfair::SynthCorpus corpus = [] {
    gfair::SynthConfig cfg;
    cfg.topics = 50;
    cfg.runs = 20;
    return gfair::GenSynthetic(cfg);
  }();
  return corpus;
}

gfair::Corpus ToCorpus(const gfair::SynthCorpus& s) {
  gfair::Corpus c;
  c.attributes = s.attributes;
  c.membership = s.membership;
  c.targets = s.targets;
  c.qrels = s.qrels;
  return c;
}

gfair::EvalOptions Options() {
  gfair::EvalOptions o;
  o.cutoff = 100;
  return o;
}

void BM_HsdSerial(benchmark::State& state) {
  const auto m = NoiseMatrix(50, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gfair::RandomisedTukeyHsdSerial(m, 1000, 1));
  }
}

void BM_HsdParallel(benchmark::State& state) {
  const auto m = NoiseMatrix(50, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gfair::RandomisedTukeyHsd(m, 1000, 1));
  }
}

void BM_EvaluateSerial(benchmark::State& state) {
  const auto& c = Corpus();
  const auto corpus = ToCorpus(c);
  const auto opts = Options();
  for (auto _ : state) {
    benchmark::DoNotOptimize(gfair::EvaluateSerial(corpus, opts, c.runs));
  }
}

void BM_EvaluateParallel(benchmark::State& state) {
  const auto& c = Corpus();
  const auto corpus = ToCorpus(c);
  const auto opts = Options();
  for (auto _ : state) {
    benchmark::DoNotOptimize(gfair::Evaluate(corpus, opts, c.runs));
  }
}

}  // namespace

BENCHMARK(BM_HsdSerial)->Arg(10)->Arg(21)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HsdParallel)->Arg(10)->Arg(21)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
