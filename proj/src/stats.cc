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

#include "gfair/stats.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gfair/types.h"

namespace gfair {

namespace {

// Two-sided 95% standard normal quantile.
constexpr double kZ975 = 1.959963984540054;
constexpr double kTauVariance = 0.437;

struct PairCounts {
  long long concordant = 0;
  long long discordant = 0;
  long long tied_x = 0;  // tied in x only or both
  long long tied_y = 0;
  long long total = 0;
};

PairCounts CountPairs(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError(fmt::format(
        "Kendall's tau needs two equal-length samples of size >= 2 ({} vs {})",
        x.size(), y.size()));
  }
  PairCounts c;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      ++c.total;
      if (dx == 0.0) ++c.tied_x;
      if (dy == 0.0) ++c.tied_y;
      if (dx == 0.0 || dy == 0.0) continue;
      if ((dx > 0.0) == (dy > 0.0)) {
        ++c.concordant;
      } else {
        ++c.discordant;
      }
    }
  }
  return c;
}

// Column means of one row-shuffled copy of the matrix; returns max - min.
double TrialStatistic(const ScoreMatrix& m, std::uint64_t trial_seed,
                      std::vector<double>& row, std::vector<double>& sums) {
  std::mt19937_64 rng(trial_seed);
  std::fill(sums.begin(), sums.end(), 0.0);
  for (std::size_t t = 0; t < m.num_rows(); ++t) {
    const auto src = m.row(t);
    std::copy(src.begin(), src.end(), row.begin());
    std::shuffle(row.begin(), row.end(), rng);
    for (std::size_t s = 0; s < row.size(); ++s) sums[s] += row[s];
  }
  // Same arithmetic as the observed means so equal gaps compare equal.
  for (double& s : sums) s /= static_cast<double>(m.num_rows());
  const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
  return *hi - *lo;
}

void CheckHsdInput(const ScoreMatrix& m, std::size_t trials) {
  if (m.num_columns() < 2) {
    throw DomainError("Tukey HSD needs at least two systems");
  }
  if (m.num_rows() < 2) throw DomainError("Tukey HSD needs at least two topics");
  if (trials == 0) throw DomainError("Tukey HSD needs at least one trial");
}

std::vector<PairwiseResult> PValues(const ScoreMatrix& m,
                                    std::vector<double> stats) {
  std::sort(stats.begin(), stats.end());
  const auto means = m.column_means();
  std::vector<PairwiseResult> out;
  out.reserve(means.size() * (means.size() - 1) / 2);
  const double n = static_cast<double>(stats.size());
  for (std::size_t a = 0; a < means.size(); ++a) {
    for (std::size_t b = a + 1; b < means.size(); ++b) {
      const double diff = means[a] - means[b];
      const double observed = std::abs(diff);
      const auto reach = stats.end() -
                         std::lower_bound(stats.begin(), stats.end(), observed);
      out.push_back({a, b, diff, static_cast<double>(reach) / n});
    }
  }
  return out;
}

}  // namespace

ScoreMatrix::ScoreMatrix(std::vector<std::string> rows,
                         std::vector<std::string> columns)
    : rows_(std::move(rows)),
      columns_(std::move(columns)),
      values_(rows_.size() * columns_.size(), 0.0),
      missing_(rows_.size() * columns_.size(), 1) {}

void ScoreMatrix::set(std::size_t r, std::size_t c, double v) {
  const std::size_t i = r * columns_.size() + c;
  values_.at(i) = v;
  missing_[i] = 0;
}

std::size_t ScoreMatrix::missing_count() const {
  return static_cast<std::size_t>(
      std::count(missing_.begin(), missing_.end(), 1));
}

std::vector<double> ScoreMatrix::column(std::size_t c) const {
  std::vector<double> out(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) out[r] = at(r, c);
  return out;
}

std::vector<double> ScoreMatrix::column_means() const {
  std::vector<double> sums(columns_.size(), 0.0);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::size_t c = 0; c < columns_.size(); ++c) sums[c] += at(r, c);
  }
  for (double& s : sums) s /= static_cast<double>(rows_.size());
  return sums;
}

int ScoreMatrix::column_index(const std::string& name) const {
  auto it = std::find(columns_.begin(), columns_.end(), name);
  return it == columns_.end() ? -1 : static_cast<int>(it - columns_.begin());
}

double KendallTauB(std::span<const double> x, std::span<const double> y) {
  const PairCounts c = CountPairs(x, y);
  const double nx = static_cast<double>(c.total - c.tied_x);
  const double ny = static_cast<double>(c.total - c.tied_y);
  if (nx == 0.0 || ny == 0.0) {
    throw DomainError("Kendall's tau undefined: a sample is entirely tied");
  }
  return static_cast<double>(c.concordant - c.discordant) / std::sqrt(nx * ny);
}

double KendallTauA(std::span<const double> x, std::span<const double> y) {
  const PairCounts c = CountPairs(x, y);
  return static_cast<double>(c.concordant - c.discordant) /
         static_cast<double>(c.total);
}

Interval TauCi(double tau, std::size_t n) {
  if (n < 5) throw DomainError("tau confidence interval needs n >= 5");
  if (!(std::abs(tau) < 1.0)) {
    throw DomainError("tau confidence interval needs |tau| < 1");
  }
  const double z = std::atanh(tau);
  const double se = std::sqrt(kTauVariance / static_cast<double>(n - 4));
  return {std::tanh(z - kZ975 * se), std::tanh(z + kZ975 * se)};
}

std::uint64_t TrialSeed(std::uint64_t seed, std::size_t trial) {
  // splitmix64 finalizer over (seed, trial).
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<PairwiseResult> RandomisedTukeyHsdSerial(const ScoreMatrix& matrix,
                                                     std::size_t trials,
                                                     std::uint64_t seed) {
  CheckHsdInput(matrix, trials);
  std::vector<double> stats(trials);
  std::vector<double> row(matrix.num_columns());
  std::vector<double> sums(matrix.num_columns());
  for (std::size_t b = 0; b < trials; ++b) {
    stats[b] = TrialStatistic(matrix, TrialSeed(seed, b), row, sums);
  }
  return PValues(matrix, std::move(stats));
}

std::vector<PairwiseResult> RandomisedTukeyHsd(const ScoreMatrix& matrix,
                                               std::size_t trials,
                                               std::uint64_t seed,
                                               int threads) {
  CheckHsdInput(matrix, trials);
  std::vector<double> stats(trials);
  const long long n = static_cast<long long>(trials);
#ifdef _OPENMP
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nthreads)
#else
  (void)threads;
#endif
  {
    std::vector<double> row(matrix.num_columns());
    std::vector<double> sums(matrix.num_columns());
#pragma omp for schedule(static)
    for (long long b = 0; b < n; ++b) {
      const auto i = static_cast<std::size_t>(b);
      stats[i] = TrialStatistic(matrix, TrialSeed(seed, i), row, sums);
    }
  }
  return PValues(matrix, std::move(stats));
}

std::vector<double> AlphaGrid(double alpha_max, double step) {
  if (!(step > 0.0) || !(alpha_max >= step)) {
    throw DomainError("alpha grid needs 0 < step <= alpha_max");
  }
  const auto n = static_cast<std::size_t>(std::floor(alpha_max / step + 1e-9));
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = static_cast<double>(i + 1) * step;
  }
  return grid;
}

std::vector<std::pair<double, double>> DiscPowerCurve(
    std::span<const PairwiseResult> pairs, std::span<const double> alphas) {
  if (pairs.empty()) throw DomainError("no pairwise results");
  std::vector<double> ps;
  ps.reserve(pairs.size());
  for (const auto& r : pairs) ps.push_back(r.p_value);
  std::sort(ps.begin(), ps.end());
  std::vector<std::pair<double, double>> curve;
  curve.reserve(alphas.size());
  for (double alpha : alphas) {
    const auto hits = std::upper_bound(ps.begin(), ps.end(), alpha) - ps.begin();
    curve.emplace_back(alpha, static_cast<double>(hits) /
                                  static_cast<double>(ps.size()));
  }
  return curve;
}

}  // namespace gfair
