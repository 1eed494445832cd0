// Copyright 2026 The mbqc-ft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mbqc/errors.hpp"
#include "mbqc/pattern.hpp"
#include "mbqc/pattern_io.hpp"
#include "support/random_patterns.hpp"

using namespace mbqc;

namespace {

bool has_rule(const Pattern& p, const std::string& rule) {
  for (const auto& v : validate(p)) {
    if (v.rule == rule) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("angles reduce mod 2pi and agree with floating point") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 12);
  for (int t = 0; t < 500; ++t) {
    const int n1 = num(rng), d1 = den(rng), n2 = num(rng), d2 = den(rng);
    const Angle a(n1, d1), b(n2, d2);
    const double expect = std::remainder(std::numbers::pi * (double(n1) / d1 + double(n2) / d2), 2 * std::numbers::pi);
    const double got = std::remainder((a + b).radians(), 2 * std::numbers::pi);
    CHECK(std::abs(std::remainder(expect - got, 2 * std::numbers::pi)) < 1e-12);
    CHECK((a + b).radians() >= 0);
    CHECK((a + b).radians() < 2 * std::numbers::pi);
  }
  CHECK(Angle(9, 4) == Angle(1, 4));
  CHECK(Angle(-1, 2) == Angle(3, 2));
  CHECK(Angle(3, 2).quarter_turns() == 3);
  CHECK(Angle(1, 4).period() == 8);
  CHECK(Angle(1, 1).period() == 2);
  CHECK(Angle(0, 1).period() == 1);
  CHECK(Angle(1, 2).is_clifford());
  CHECK_FALSE(Angle(1, 4).is_clifford());
}

TEST_CASE("angle polynomials evaluate like their definition") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const Angle c0(int(rng() % 8), 4), c1(int(rng() % 8), 4), c12(int(rng() % 8), 4);
    const AnglePoly p = AnglePoly(c0) + AnglePoly::term({1}, c1) + AnglePoly::term({1, 2}, c12);
    for (int s1 = 0; s1 < 2; ++s1) {
      for (int s2 = 0; s2 < 2; ++s2) {
        auto sig = [&](QubitId q) { return q == 1 ? s1 != 0 : s2 != 0; };
        const Angle expect = c0 + c1 * s1 + c12 * (s1 * s2);
        CHECK(p.eval(sig) == expect);
        CHECK(p.negate_if(SignalParity::on({2})).eval(sig) == (s2 ? -expect : expect));
        CHECK(p.scale_by_one_minus_two_s(1).eval(sig) == expect * (1 - 2 * s1));
      }
    }
  }
}

TEST_CASE("signal parity xor and integer form") {
  const SignalParity a = SignalParity::on({1, 2}), b{true, {2, 3}};
  const SignalParity c = a ^ b;
  CHECK(c.constant);
  CHECK(c.signals == std::vector<QubitId>{1, 3});
  const IntPoly ip = a.as_int_poly();
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      std::int64_t v = 0;
      for (const auto& [mono, coeff] : ip) {
        std::int64_t term = coeff;
        for (QubitId q : mono) term *= q == 1 ? s1 : s2;
        v += term;
      }
      CHECK(v == (s1 ^ s2));
    }
  }
}

TEST_CASE("validation reports each broken rule") {
  CHECK(validate(build_j(Angle::zero())).empty());
  CHECK(has_rule(make_pattern({1}, {2}, {Prepare{2, {}}, Entangle{1, 2}, CorrectX{2, SignalParity::on({1})}, Measure{1, {}}}),
                 "future-signal"));
  CHECK(has_rule(make_pattern({1}, {2}, {Prepare{2, {}}, Measure{1, {}}, Entangle{1, 2}}), "after-measurement"));
  CHECK(has_rule(make_pattern({1}, {1}, {Measure{1, {}}}), "output-measured"));
  CHECK(has_rule(make_pattern({1}, {1, 2}, {Entangle{1, 2}}), "unprepared"));
  CHECK(has_rule(make_pattern({1}, {}, {Prepare{1, {}}, Measure{1, {}}}), "input-prepared"));
  CHECK(has_rule(make_pattern({}, {1}, {Prepare{1, {}}, Prepare{1, {}}}), "double-prepare"));
  CHECK_THROWS_AS(require_valid(make_pattern({1}, {1}, {Measure{1, {}}})), InvalidPattern);
}

TEST_CASE("random patterns are valid and round-trip through DSL and JSON") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    testing::RandomPatternOptions o;
    o.clifford = t % 3 == 0;
    const Pattern p = testing::random_pattern(rng, o);
    REQUIRE(validate(p).empty());
    CHECK(parse_dsl(to_dsl(p)) == p);
    CHECK(pattern_from_json(to_json(p)) == p);
    CHECK(parse_pattern(to_json(p).dump()) == p);
  }
}

TEST_CASE("DSL syntax") {
  const Pattern p = parse_dsl(
      "IN: 1\nOUT: 3\nN 2 0\nN 3 pi/4\nE 1 2\nE 2 3\nM 1 -a\nM 2 poly{const:-a+pi/4; s1:+2a}\n"
      "X 3 if s2\nZ 3 pi if s1^s2   # trailing comment\n",
      {{"a", Angle(1, 4)}});
  REQUIRE(validate(p).empty());
  const auto& m2 = std::get<Measure>(p.commands[5]);
  CHECK(m2.angle.constant() == Angle::zero());
  CHECK(m2.angle.coefficient({1}) == Angle(1, 2));
  const auto& z = std::get<CorrectZ>(p.commands[7]);
  CHECK(z.cond.signals == std::vector<QubitId>{1, 2});
  CHECK_THROWS_AS(parse_dsl("IN: 1\nOUT: 2\nM 1 -a\n"), ParseError);
  CHECK_THROWS_AS(parse_dsl("IN: 1\nOUT: 1\nQ 1\n"), ParseError);
  CHECK(parse_angle("3*pi/2") == Angle(3, 2));
  CHECK(parse_angle("-pi/4") == Angle(7, 4));
  CHECK(format_angle(Angle(3, 2)) == "3*pi/2");
}

TEST_CASE("composition relabels the second pattern") {
  const Pattern jj = compose_serial(build_j(Angle::zero()), build_j(Angle::zero()));
  CHECK(validate(jj).empty());
  CHECK(jj.inputs == std::vector<QubitId>{1});
  CHECK(jj.outputs == std::vector<QubitId>{3});
  CHECK(jj.qubits.size() == 3);
  const Pattern par = compose_parallel(build_j(Angle::zero()), build_j(Angle::zero()));
  CHECK(validate(par).empty());
  CHECK(par.inputs.size() == 2);
  CHECK_THROWS_AS(compose_serial(build_cz(), build_j(Angle::zero())), BindingMismatch);
}

TEST_CASE("PMM membership") {
  CHECK(is_pmm(build_j(Angle::zero())));
  CHECK(is_pmm(build_j(Angle(1, 2))));
  CHECK_FALSE(is_pmm(build_j(Angle(1, 4))));
  CHECK(is_pmm(build_cz()));
  CHECK(is_pmm(build_teleport_with_resource()));
  CHECK_THROWS_AS(build_named("nope"), UnknownName);
}
