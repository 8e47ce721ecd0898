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


#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gfair/harness.h"
#include "gfair/measures.h"
#include "gfair/user_model.h"
#include "test_util.h"

namespace gfair {
namespace {

using testing::Dist;
using testing::MakeSet;

std::vector<std::vector<double>> Raw(const std::vector<Distribution>& list) {
  std::vector<std::vector<double>> out;
  for (const auto& d : list) out.push_back(testing::ToVec(d));
  return out;
}

TEST_CASE("gf examples") {
  auto set = MakeSet(2);
  auto target = Dist(set, {0.5, 0.5});
  // Alternating hard memberships never reach the target at odd prefixes, so
  // use soft memberships equal to the target to match it everywhere.
  std::vector<Distribution> matched(10, target);
  auto decay = RbpDecaySequence(10, 0.85);
  CHECK(std::abs(Gf(matched, decay, target, DivergenceKind::kJsd) - 0.803126) < 1e-6);

  const std::vector<int> zeros(10, 0);
  CHECK(Gf(matched, ErrDecaySequence(zeros), target, DivergenceKind::kJsd) == 0.0);

  std::vector<Distribution> one = {Distribution::OneHot(set, 0)};
  CHECK(Gf(one, RbpDecaySequence(1, 0.85), Distribution::OneHot(set, 0),
           DivergenceKind::kJsd) == doctest::Approx(0.15).epsilon(1e-15));

  auto other = MakeSet(2, Scale::kOrdinal, "b");
  CHECK_THROWS_AS(Gf(one, RbpDecaySequence(1, 0.85), Distribution::OneHot(other, 0),
                     DivergenceKind::kJsd),
                  DomainError);
  CHECK_THROWS_AS(Gf(one, RbpDecaySequence(2, 0.85), target, DivergenceKind::kJsd),
                  DomainError);
}

TEST_CASE("relevance score examples") {
  const std::vector<int> g = {2, 1, 0};
  CHECK(std::abs(RelevanceScore(UtilityKind::Err(), g) - 0.8125) < 1e-12);
  CHECK(std::abs(RelevanceScore(UtilityKind::Irbu(), g) - 0.865013) < 1e-6);
  const std::vector<int> z = {0, 0, 0, 0};
  CHECK(RelevanceScore(UtilityKind::Err(), z) == 0.0);
  CHECK(RelevanceScore(UtilityKind::Irbu(), z) == 0.0);
}

TEST_CASE("gfr examples") {
  GfConfig c;
  c.weights = {0.0, 0.5, 0.5};
  const std::vector<double> gf2 = {0.4, 0.6};
  CHECK(Gfr(c, 0.9, gf2) == doctest::Approx(0.5).epsilon(1e-15));
  c.weights = {1.0, 0.0, 0.0};
  CHECK(Gfr(c, 0.37, gf2) == 0.37);
  c.weights = {0.5, 0.5};
  const std::vector<double> gf1 = {0.4};
  CHECK(Gfr(c, 0.8, gf1) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK_THROWS_AS(Gfr(c, 0.8, gf2), DomainError);
  c.weights = {0.5, 0.6};
  CHECK_THROWS_AS(Gfr(c, 0.8, gf1), DomainError);
}

TEST_CASE("gfr integrated reductions") {
  std::mt19937_64 rng(17);
  auto set = MakeSet(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 10;
    auto grades = testing::RandomGrades(n, rng);
    std::vector<std::vector<Distribution>> mem(1);
    for (std::size_t k = 0; k < n; ++k) mem[0].push_back(testing::RandomDist(set, rng));
    std::vector<Distribution> targets = {testing::RandomDist(set, rng)};
    GfConfig c;
    c.divergences = {DivergenceKind::kJsd};
    c.weights = {1.0, 0.0};
    ListInputs in{grades, mem, targets};
    CHECK(std::abs(GfrIntegrated(c, in) - RelevanceScore(c.utility, std::span<const int>(grades))) <= 1e-12);

    // Every prefix equal to the target.
    std::vector<std::vector<Distribution>> flat(1, std::vector<Distribution>(n, targets[0]));
    c.weights = {0.0, 1.0};
    ListInputs in2{grades, flat, targets};
    auto decay = ErrDecaySequence(grades);
    CHECK(std::abs(GfrIntegrated(c, in2) -
                   std::accumulate(decay.begin(), decay.end(), 0.0)) <= 1e-12);
  }
}

TEST_CASE("cutoff truncates lists and short lists are not padded") {
  auto set = MakeSet(2);
  std::vector<int> grades(15, 1);
  std::vector<std::vector<Distribution>> mem(1);
  for (int k = 0; k < 15; ++k) mem[0].push_back(Distribution::OneHot(set, k % 2));
  std::vector<Distribution> targets = {Dist(set, {0.5, 0.5})};
  GfConfig c;
  c.decay = DecayKind::Rbp();
  c.divergences = {DivergenceKind::kJsd};
  c.weights = {0.0, 1.0};
  const double at10 = GfrComposed(c, {grades, mem, targets});
  auto decay = RbpDecaySequence(10, 0.85);
  CHECK(at10 == doctest::Approx(Gf(std::span(mem[0]).first(10), decay, targets[0],
                                   DivergenceKind::kJsd)).epsilon(1e-15));
  std::vector<int> short_grades(3, 1);
  const double at3 = GfrComposed(c, {short_grades, mem, targets});
  CHECK(at3 == doctest::Approx(Gf(std::span(mem[0]).first(3), RbpDecaySequence(3, 0.85),
                                  targets[0], DivergenceKind::kJsd)).epsilon(1e-15));
}

TEST_CASE("delta gf examples") {
  auto set = MakeSet(2, Scale::kNominal);
  const std::vector<int> g1 = {1};
  std::vector<Distribution> one = {Distribution::OneHot(set, 0)};
  CHECK(DeltaGf(one, ErrDecaySequence(g1), DivergenceKind::kJsd) ==
        doctest::Approx(0.5).epsilon(1e-15));

  std::vector<Distribution> pro(5, Distribution::OneHot(set, 0));
  const std::vector<int> rel(5, 2);
  CHECK(DeltaGf(pro, ErrDecaySequence(rel), DivergenceKind::kJsd) > 0.0);

  std::vector<Distribution> balanced(5, Dist(set, {0.5, 0.5}));
  CHECK(DeltaGf(balanced, ErrDecaySequence(rel), DivergenceKind::kJsd) ==
        doctest::Approx(0.0).epsilon(1e-15));

  auto three = MakeSet(3, Scale::kNominal);
  std::vector<Distribution> bad = {Distribution::OneHot(three, 0)};
  CHECK_THROWS_AS(DeltaGf(bad, ErrDecaySequence(g1), DivergenceKind::kJsd),
                  DomainError);
}

TEST_CASE("intersectional score examples") {
  const std::vector<double> s = {0.404, 0.542};
  const std::vector<double> eq = {0.5, 0.5};
  CHECK(IntersectionalScore(s, eq) == doctest::Approx(0.473).epsilon(1e-12));
  const std::vector<double> same = {0.3, 0.3, 0.3};
  const std::vector<double> third = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  CHECK(IntersectionalScore(same, third) == doctest::Approx(0.3).epsilon(1e-12));
  const std::vector<double> first = {1.0, 0.0};
  CHECK(IntersectionalScore(s, first) == 0.404);
  const std::vector<double> single = {0.4};
  const std::vector<double> w1 = {1.0};
  CHECK_THROWS_AS(IntersectionalScore(single, w1), DomainError);
}

TEST_CASE("gf properties on random lists") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 12;
    auto set = MakeSet(2 + trial % 4);
    std::vector<Distribution> list;
    for (std::size_t k = 0; k < n; ++k) {
      list.push_back(trial % 2 ? testing::RandomOneHot(set, rng)
                               : testing::RandomDist(set, rng));
    }
    auto target = testing::RandomDist(set, rng, true);
    auto grades = testing::RandomGrades(n, rng);
    for (auto decay : {ErrDecaySequence(grades), RbpDecaySequence(n, 0.85)}) {
      const double total = std::accumulate(decay.begin(), decay.end(), 0.0);
      for (auto kind : {DivergenceKind::kJsd, DivergenceKind::kNmd,
                        DivergenceKind::kRnod}) {
        const double gf = Gf(list, decay, target, kind);
        CHECK(gf >= 0.0);
        CHECK(gf <= total + 1e-12);
        CHECK(std::abs(gf - OracleGf(Raw(list), decay, testing::ToVec(target), kind)) <= 1e-12);
      }
      if (set->is_binary()) {
        CHECK(std::abs(Gf(list, decay, target, DivergenceKind::kNmd) -
                       Gf(list, decay, target, DivergenceKind::kRnod)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("gf ignores items below the cutoff") {
  std::mt19937_64 rng(41);
  auto set = MakeSet(3);
  GfConfig c;
  c.decay = DecayKind::Rbp();
  c.divergences = {DivergenceKind::kRnod};
  c.weights = {0.0, 1.0};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<Distribution>> mem(1);
    for (int k = 0; k < 20; ++k) mem[0].push_back(testing::RandomDist(set, rng));
    std::vector<Distribution> targets = {testing::RandomDist(set, rng)};
    std::vector<int> grades(20, 0);
    const double before = GfrComposed(c, {grades, mem, targets});
    std::shuffle(mem[0].begin() + 10, mem[0].end(), rng);
    CHECK(GfrComposed(c, {grades, mem, targets}) == before);
  }
}

TEST_CASE("default weights") {
  CHECK(DefaultWeights(2, true) == std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(DefaultWeights(2, false) == std::vector<double>{0.0, 0.5, 0.5});
  GfConfig c;
  c.divergences = {DivergenceKind::kJsd};
  c.weights = {0.5, 0.5};
  CHECK_NOTHROW(c.Validate(true));
  CHECK_THROWS_AS(c.Validate(false), DomainError);
  c.cutoff = 0;
  CHECK_THROWS_AS(c.Validate(true), DomainError);
}

}  // namespace
}  // namespace gfair
