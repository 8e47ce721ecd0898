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

// System-comparison statistics over a topics x systems score matrix.

#ifndef GFAIR_STATS_H_
#define GFAIR_STATS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gfair {

class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  ScoreMatrix(std::vector<std::string> rows, std::vector<std::string> columns);

  const std::vector<std::string>& rows() const { return rows_; }
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_columns() const { return columns_.size(); }

  double at(std::size_t r, std::size_t c) const {
    return values_[r * columns_.size() + c];
  }
  void set(std::size_t r, std::size_t c, double v);
  /// Cells never set hold 0 and are reported here.
  bool missing(std::size_t r, std::size_t c) const {
    return missing_[r * columns_.size() + c] != 0;
  }
  std::size_t missing_count() const;

  std::span<const double> row(std::size_t r) const {
    return std::span(values_).subspan(r * columns_.size(), columns_.size());
  }
  std::vector<double> column(std::size_t c) const;
  /// Mean of each column.
  std::vector<double> column_means() const;
  /// -1 when absent.
  int column_index(const std::string& name) const;

 private:
  std::vector<std::string> rows_;
  std::vector<std::string> columns_;
  std::vector<double> values_;
  std::vector<unsigned char> missing_;
};

/// Tie-corrected Kendall tau-b. Throws DomainError when either side is
/// entirely tied or the sizes differ or are below two.
double KendallTauB(std::span<const double> x, std::span<const double> y);
/// Kendall tau-a, (C - D) / (n(n-1)/2).
double KendallTauA(std::span<const double> x, std::span<const double> y);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// 95% interval for Kendall's tau via Fisher's z with standard error
/// sqrt(0.437 / (n - 4)). Needs n >= 5 and |tau| < 1.
Interval TauCi(double tau, std::size_t n);

struct PairwiseResult {
  std::size_t a = 0;
  std::size_t b = 0;
  double mean_diff = 0.0;  // mean(a) - mean(b)
  double p_value = 1.0;
};

inline constexpr std::size_t kDefaultTrials = 5000;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Randomised Tukey HSD over the columns (systems) of `matrix`. Each trial
/// shuffles every row independently and records max mean - min mean; the
/// p-value of a pair is the fraction of trials whose statistic reaches the
/// observed |mean difference|. Pairs are ordered (0,1), (0,2), ..., (1,2),...
///
/// `threads` <= 0 uses the OpenMP default. The result depends only on
/// `seed`, never on the thread count.
std::vector<PairwiseResult> RandomisedTukeyHsd(const ScoreMatrix& matrix,
                                               std::size_t trials,
                                               std::uint64_t seed,
                                               int threads = 0);

/// Single-threaded reference for RandomisedTukeyHsd; same output bit for bit.
std::vector<PairwiseResult> RandomisedTukeyHsdSerial(const ScoreMatrix& matrix,
                                                     std::size_t trials,
                                                     std::uint64_t seed);

/// Seed of one trial, derived from the base seed and the trial index.
std::uint64_t TrialSeed(std::uint64_t seed, std::size_t trial);

/// alpha = step, 2 step, ..., alpha_max.
std::vector<double> AlphaGrid(double alpha_max = 0.20, double step = 0.001);

/// (alpha, fraction of pairs with p <= alpha) for each alpha.
std::vector<std::pair<double, double>> DiscPowerCurve(
    std::span<const PairwiseResult> pairs, std::span<const double> alphas);

}  // namespace gfair

#endif  // GFAIR_STATS_H_
