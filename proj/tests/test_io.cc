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

#include <functional>
#include <sstream>
#include <string>

#include "gfair/io.h"

namespace gfair {
namespace {

template <typename F>
auto Parse(const std::string& text, F f) {
  std::istringstream in(text);
  return f(in);
}

Run ReadRun(const std::string& text) {
  return Parse(text, [](std::istream& in) { return ParseRun(in, "run.txt"); });
}

AttributeRegistry Registry() {
  return Parse(std::string("stance nominal pro con\nrev ordinal g1 g2 g3 g4\n"
                           "tri nominal a b c\n"),
               [](std::istream& in) { return ParseAttributeSets(in); });
}

std::size_t FailLine(const std::function<void()>& f) {
  try {
    f();
  } catch (const FormatError& e) {
    return e.line();
  }
  return 0;
}

TEST_CASE("parse run") {
  auto run = ReadRun("1 Q0 a 1 2.0 tagA\n1 Q0 b 2 1.0 tagA\n");
  CHECK(run.tag() == "tagA");
  CHECK(run.ranking("1")[0].item == "a");
  auto tie = ReadRun("1 Q0 b 1 1.0 t\r\n1 Q0 a 2 1.0 t\r\n");
  CHECK(tie.ranking("1")[0].item == "a");
  CHECK(tie.ranking("1")[1].item == "b");
  auto rank_ignored = ReadRun("1 Q0 a 1 1.0 t\n1 Q0 b 2 3.0 t\n");
  CHECK(rank_ignored.ranking("1")[0].item == "b");

  CHECK(FailLine([] { ReadRun("1 Q0 a 1 2.0 t\n1 Q0 b 2 1.0\n"); }) == 2);
  CHECK(FailLine([] { ReadRun("1 Q0 a 1 x t\n"); }) == 1);
  CHECK(FailLine([] { ReadRun("1 Q0 a 1 2 t\n\n1 Q0 a 2 1 t\n"); }) == 3);
}

TEST_CASE("parse qrels") {
  auto q = Parse(std::string("1 0 a -2\n1 0 b 5\n1 0 b 5\n"),
                 [](std::istream& in) { return ParseQrels(in); });
  CHECK(q.grade("1", "a") == 0);
  CHECK(q.grade("1", "b") == 5);
  CHECK(q.judged("1").count("a") == 1);
  CHECK(FailLine([] {
          Parse(std::string("1 0 a 1\n1 0 a 2\n"),
                [](std::istream& in) { return ParseQrels(in); });
        }) == 2);
  CHECK(FailLine([] {
          Parse(std::string("1 0 a 1.5\n"),
                [](std::istream& in) { return ParseQrels(in); });
        }) == 1);
}

TEST_CASE("parse attribute sets") {
  auto r = Registry();
  REQUIRE(r.sets().size() == 3);
  CHECK(r.find("rev")->scale() == Scale::kOrdinal);
  CHECK(r.find("rev")->values()[3] == "g4");
  CHECK_THROWS_AS(Parse(std::string("x nominal a\n"),
                        [](std::istream& in) { return ParseAttributeSets(in); }),
                  FormatError);
  CHECK_THROWS_AS(Parse(std::string("x interval a b\n"),
                        [](std::istream& in) { return ParseAttributeSets(in); }),
                  FormatError);
  CHECK_THROWS_AS(Parse(std::string("x nominal a b\nx nominal c d\n"),
                        [](std::istream& in) { return ParseAttributeSets(in); }),
                  FormatError);
}

TEST_CASE("parse membership") {
  auto r = Registry();
  auto read = [&](const std::string& text) {
    return Parse(text, [&](std::istream& in) { return ParseMembership(in, r); });
  };
  auto m = read("d1\tstance\tpro\t1.0\n"
                "d2\ttri\ta\t0.3333\nd2\ttri\tb\t0.3333\nd2\ttri\tc\t0.3334\n");
  const Distribution* hard = m.find("d1", "stance");
  REQUIRE(hard != nullptr);
  CHECK((*hard)[0] == 1.0);
  CHECK((*hard)[1] == 0.0);
  const Distribution* soft = m.find("d2", "tri");
  CHECK((*soft)[0] + (*soft)[1] + (*soft)[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.find("d3", "tri") == nullptr);

  CHECK(FailLine([&] { read("d\ttri\ta\t0.5\nd\ttri\tb\t0.3\n"); }) == 1);
  CHECK(FailLine([&] { read("d\ttri\tq\t1\n"); }) == 1);
  CHECK(FailLine([&] { read("d\tnope\ta\t1\n"); }) == 1);
  CHECK(FailLine([&] { read("d\ttri\ta\t0.5\nd\ttri\ta\t0.5\n"); }) == 2);
  CHECK(FailLine([&] { read("d\ttri\ta\n"); }) == 1);
}

TEST_CASE("parse targets") {
  auto r = Registry();
  auto read = [&](const std::string& text) {
    return Parse(text, [&](std::istream& in) { return ParseTargets(in, r); });
  };
  auto t = read("*\trev\tg1\t0.452239\n*\trev\tg2\t0.220319\n"
                "*\trev\tg3\t0.227721\n*\trev\tg4\t0.0997214\n"
                "7\tstance\tpro\t1\n*\tstance\tpro\t0.5\n*\tstance\tcon\t0.5\n");
  const Distribution* parity = t.resolve("3", "rev");
  REQUIRE(parity != nullptr);
  CHECK((*parity)[0] == doctest::Approx(0.452239 / 1.0000004).epsilon(1e-15));
  CHECK((*t.resolve("7", "stance"))[0] == 1.0);
  CHECK((*t.resolve("8", "stance"))[0] == 0.5);
  CHECK(t.resolve("8", "tri") == nullptr);
  CHECK_THROWS_AS(read("*\trev\tg1\t0.8\n"), FormatError);
}

TEST_CASE("parse intents") {
  auto s = Parse(std::string("1 i1 0.7\n1 i2 0.3\n1 i1 d1 2\n1 i2 d1 1\n"),
                 [](std::istream& in) { return ParseIntents(in); });
  const auto* t = s.find("1");
  REQUIRE(t != nullptr);
  CHECK(t->intents.size() == 2);
  CHECK(t->gains("d1") == std::vector<double>{3.0, 1.0});
  CHECK_THROWS_AS(Parse(std::string("1 i1 0.7\n"),
                        [](std::istream& in) { return ParseIntents(in); }),
                  FormatError);
  CHECK(FailLine([] {
          Parse(std::string("1 i1 1\n1 i9 d 1\n"),
                [](std::istream& in) { return ParseIntents(in); });
        }) == 2);
}

TEST_CASE("emit scores") {
  std::ostringstream empty;
  EmitScores(empty, {});
  CHECK(empty.str() == "run,topic,measure,value\n");

  std::ostringstream one;
  EmitScores(one, {{"r", "1", "GF", 0.5}}, false);
  CHECK(one.str() == "run,topic,measure,value\nr,1,GF,0.500000\n");

  std::ostringstream means;
  EmitScores(means, {{"r", "1", "GF", 0.5}, {"r", "2", "GF", 0.25}});
  CHECK(means.str() ==
        "run,topic,measure,value\nr,1,GF,0.500000\nr,2,GF,0.250000\n"
        "r,ALL,GF,0.375000\n");

  std::istringstream in(means.str());
  auto rows = ParseScores(in);
  CHECK(rows.size() == 2);
  CHECK(rows[1].value == 0.25);
}

TEST_CASE("matrix round trip and pivots") {
  std::vector<ScoreRow> rows = {{"a", "1", "GF", 0.1}, {"b", "1", "GF", 0.2},
                                {"a", "2", "GF", 0.3}, {"a", "1", "ERR", 1.0}};
  auto m = PivotByTopic(rows, "GF");
  CHECK(m.num_rows() == 2);
  CHECK(m.num_columns() == 2);
  CHECK(m.missing(1, 1));
  std::ostringstream out;
  EmitMatrix(out, m);
  CHECK(out.str() == "topic,a,b\n1,0.100000,0.200000\n2,0.300000,\n");
  std::istringstream in(out.str());
  auto back = ParseMatrix(in);
  CHECK(back.at(1, 0) == 0.3);
  CHECK(back.missing(1, 1));

  auto means = PivotRunMeans(rows);
  CHECK(means.rows() == std::vector<std::string>{"a", "b"});
  CHECK(means.at(0, 0) == doctest::Approx(0.2));

  std::istringstream ragged("topic,a,b\n1,0.1\n");
  CHECK_THROWS_AS(ParseMatrix(ragged), FormatError);
}

TEST_CASE("emit curve") {
  std::ostringstream out;
  EmitCurve(out, {{0.001, 0.0}, {0.05, 0.371428}});
  CHECK(out.str() == "alpha,fraction\n0.001,0.000000\n0.050,0.371428\n");
}

TEST_CASE("emitters round-trip parsed text") {
  const std::string run_text = "1 Q0 b 1 2.5 r\n1 Q0 a 2 1 r\n2 Q0 c 1 0.1 r\n";
  std::ostringstream run_out;
  EmitRun(run_out, ReadRun(run_text));
  CHECK(run_out.str() == run_text);

  auto r = Registry();
  std::ostringstream reg_out;
  EmitAttributeSets(reg_out, r);
  CHECK(reg_out.str() ==
        "stance\tnominal\tpro\tcon\nrev\tordinal\tg1\tg2\tg3\tg4\ntri\tnominal\ta\tb\tc\n");

  const std::string mem = "d1\tstance\tpro\t1\nd2\ttri\ta\t0.25\nd2\ttri\tc\t0.75\n";
  auto table = Parse(mem, [&](std::istream& in) { return ParseMembership(in, r); });
  std::ostringstream mem_out;
  EmitMembership(mem_out, table);
  CHECK(mem_out.str() == mem);
}

}  // namespace
}  // namespace gfair
