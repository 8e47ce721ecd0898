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

#include <cmath>
#include <random>

#include "gfair/membership.h"
#include "gfair/types.h"
#include "test_util.h"

namespace gfair {
namespace {

using testing::Dist;
using testing::MakeSet;

TEST_CASE("attribute sets need two distinct values") {
  CHECK_THROWS_AS(AttributeSet("a", {"x"}, Scale::kNominal), DomainError);
  CHECK_THROWS_AS(AttributeSet("a", {"x", "x"}, Scale::kNominal), DomainError);
  CHECK_THROWS_AS(AttributeSet("a", {}, Scale::kNominal), DomainError);
  AttributeSet s("a", {"x", "y", "z"}, Scale::kOrdinal);
  CHECK(s.index_of("z") == 2);
  CHECK(s.index_of("w") == -1);
  CHECK_FALSE(s.is_binary());
}

TEST_CASE("distributions are validated and renormalized") {
  auto set = MakeSet(3);
  CHECK_THROWS_AS(Dist(set, {0.5, 0.5}), DomainError);
  CHECK_THROWS_AS(Dist(set, {0.5, 0.6, -0.1}), DomainError);
  CHECK_THROWS_AS(Dist(set, {0.3, 0.3, 0.3}), DomainError);
  auto d = Dist(set, {0.3333, 0.3333, 0.3334});
  CHECK(d[0] + d[1] + d[2] == doctest::Approx(1.0).epsilon(1e-15));
  auto e = Dist(set, {0.3333335, 0.3333335, 0.3333335});  // 1.0000005
  CHECK(e[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("resolve_membership falls back to uniform") {
  auto set = MakeSet(2, Scale::kNominal, "g");
  auto four = MakeSet(4, Scale::kNominal, "h");
  MembershipTable table;
  table.set("d1", "g", Dist(set, {0.9, 0.1}));
  auto hit = ResolveMembership("d1", set, table);
  CHECK(hit[0] == 0.9);
  CHECK(hit[1] == doctest::Approx(0.1));
  auto miss4 = ResolveMembership("d2", four, table);
  for (double p : miss4.probs()) CHECK(p == 0.25);
  auto miss2 = ResolveMembership("d2", set, table);
  CHECK(miss2[0] == 0.5);
  CHECK(miss2[1] == 0.5);
}

TEST_CASE("achieved_distribution averages prefix memberships") {
  auto set = MakeSet(2);
  std::vector<Distribution> hard = {Distribution::OneHot(set, 0),
                                    Distribution::OneHot(set, 1)};
  auto a = AchievedDistribution(hard);
  CHECK(a[0] == 0.5);
  CHECK(a[1] == 0.5);
  std::vector<Distribution> soft = {Dist(set, {0.9, 0.1}), Dist(set, {0.5, 0.5})};
  auto b = AchievedDistribution(soft);
  CHECK(b[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(b[1] == doctest::Approx(0.3).epsilon(1e-12));
  auto three = MakeSet(3);
  std::vector<Distribution> one = {Distribution::OneHot(three, 0)};
  CHECK(testing::ToVec(AchievedDistribution(one)) ==
        std::vector<double>{1, 0, 0});
  CHECK_THROWS_AS(AchievedDistribution({}), DomainError);
  std::vector<Distribution> mixed = {Distribution::OneHot(set, 0),
                                     Distribution::OneHot(three, 0)};
  CHECK_THROWS_AS(AchievedDistribution(mixed), DomainError);
}

TEST_CASE("achieved_distribution properties") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    auto set = MakeSet(2 + trial % 5);
    const std::size_t k = 1 + trial % 12;
    std::vector<Distribution> list;
    for (std::size_t j = 0; j < k; ++j) list.push_back(testing::RandomDist(set, rng, true));
    auto a = AchievedDistribution(list);
    double sum = 0.0;
    for (double p : a.probs()) sum += p;
    CHECK(std::abs(sum - 1.0) <= 1e-12);

    std::vector<Distribution> same(k, list.front());
    CHECK(AchievedDistribution(same) == list.front());
  }
}

TEST_CASE("membership_from_bias") {
  auto set = MakeSet(2, Scale::kNominal);
  auto n = MembershipFromBias(0.0, set);
  CHECK(n[0] == 0.5);
  auto f = MembershipFromBias(1.0, set);
  CHECK(f[0] == 1.0);
  CHECK(f[1] == 0.0);
  auto h = MembershipFromBias(-0.5, set);
  CHECK(h[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(h[1] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(MembershipFromBias(1.5, set), DomainError);
  CHECK_THROWS_AS(MembershipFromBias(-1.01, set), DomainError);
  CHECK_THROWS_AS(MembershipFromBias(0.0, MakeSet(3)), DomainError);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> b(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    auto d = MembershipFromBias(b(rng), set);
    CHECK(std::abs(d[0] + d[1] - 1.0) <= 1e-15);
  }
}

TEST_CASE("membership_from_intent_gains") {
  auto three = MakeSet(3, Scale::kNominal);
  const std::vector<double> g1 = {3, 1, 0};
  auto a = MembershipFromIntentGains(g1, three);
  CHECK(a[0] == 0.75);
  CHECK(a[1] == 0.25);
  CHECK(a[2] == 0.0);
  const std::vector<double> g2 = {2, 2};
  CHECK(MembershipFromIntentGains(g2, MakeSet(2))[0] == 0.5);
  const std::vector<double> zero = {0, 0, 0};
  const auto uniform = MembershipFromIntentGains(zero, three);
  for (double p : uniform.probs()) {
    CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
  const std::vector<double> neg = {1, -1, 0};
  CHECK_THROWS_AS(MembershipFromIntentGains(neg, three), DomainError);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 300; ++i) {
    std::vector<double> g = {u(rng), u(rng), u(rng)};
    const double c = std::ldexp(1.0, i % 20 - 10);  // exact power-of-two scaling
    std::vector<double> scaled = {g[0] * c, g[1] * c, g[2] * c};
    CHECK(MembershipFromIntentGains(g, three) ==
          MembershipFromIntentGains(scaled, three));
  }
}

TEST_CASE("exponential_gain") {
  CHECK(ExponentialGain(0) == 0.0);
  CHECK(ExponentialGain(1) == 1.0);
  CHECK(ExponentialGain(3) == 7.0);
  CHECK(ExponentialGain(40) == ExponentialGain(kMaxGrade));
}

TEST_CASE("runs are ordered by score then item id") {
  auto run = Run::FromEntries("r", {{"1", "b", 1.0}, {"1", "a", 1.0},
                                    {"1", "c", 2.0}, {"2", "x", 0.5}});
  auto list = run.ranking("1");
  REQUIRE(list.size() == 3);
  CHECK(list[0].item == "c");
  CHECK(list[1].item == "a");
  CHECK(list[2].item == "b");
  CHECK(run.ranking("9").empty());
  CHECK_THROWS_AS(Run::FromEntries("r", {{"1", "a", 1.0}, {"1", "a", 2.0}}),
                  DomainError);
}

TEST_CASE("qrels clamp negative grades") {
  Qrels q;
  q.set("1", "a", -2);
  q.set("1", "b", 5);
  CHECK(q.grade("1", "a") == 0);
  CHECK(q.grade("1", "b") == 5);
  CHECK(q.grade("1", "zzz") == 0);
  CHECK(q.judged("1").size() == 2);
  CHECK_FALSE(q.has_topic("2"));
}

TEST_CASE("numeric topic ids sort numerically") {
  TopicLess less;
  CHECK(less("2", "10"));
  CHECK_FALSE(less("10", "2"));
  CHECK(less("99", "abc"));
  CHECK(less("abc", "abd"));
}

TEST_CASE("intent sets validate probabilities") {
  IntentSet s;
  s.add_intent("1", "i1", 0.5);
  s.add_intent("1", "i2", 0.5000004);
  s.set_grade("1", "i1", "d", 2);
  s.validate();
  const auto* t = s.find("1");
  REQUIRE(t != nullptr);
  CHECK(t->probs[0] + t->probs[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t->gains("d") == std::vector<double>{3.0, 0.0});
  CHECK(t->gains("unjudged") == std::vector<double>{0.0, 0.0});

  IntentSet bad;
  bad.add_intent("1", "i1", 0.5);
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

}  // namespace
}  // namespace gfair
