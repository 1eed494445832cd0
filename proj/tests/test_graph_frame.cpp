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

#include <map>
#include <random>

#include "mbqc/dense.hpp"
#include "mbqc/errors.hpp"
#include "mbqc/frame.hpp"
#include "mbqc/graph.hpp"
#include "mbqc/pattern_io.hpp"
#include "mbqc/rewrite.hpp"
#include "support/random_patterns.hpp"

using namespace mbqc;

TEST_CASE("entanglement graph of a two-step wire") {
  const Pattern p = standardize(compose_serial(build_j(Angle(1, 4)), build_j(Angle(1, 2)))).pattern;
  const EntanglementGraph g = extract_graph(p);
  CHECK(g.vertices.size() == 3);
  CHECK(g.edges == std::set<std::pair<QubitId, QubitId>>{{1, 2}, {2, 3}});
  CHECK(g.neighbors(2) == std::vector<QubitId>{1, 3});
  CHECK(g.vertices[0].label() == "input");
  CHECK(g.vertices[2].role() == "output");
  CHECK_THROWS_AS(extract_graph(compose_serial(build_j(Angle(1, 4)), build_j(Angle(1, 2)))), NotStandardized);

  const EntanglementGraph again = extract_graph(pattern_from_graph(g));
  CHECK(again.edges == g.edges);

  const std::string dot = to_dot(g);
  CHECK(dot.find("q1 -- q2") != std::string::npos);
  CHECK(dot.find("q2 -- q3") != std::string::npos);
  const auto dag = rounds(p);
  CHECK(dag.depth() == 2);
  CHECK(dag.round_of(1) == 0);
  CHECK(dag.round_of(2) == 1);
  CHECK(dag.round_of(3) == -1);
  const auto j = to_json(g, dag);
  CHECK(j.at("format_version") == kFormatVersion);
  CHECK(j.at("edges").size() == 2);
}

TEST_CASE("layering follows longest paths") {
  const auto dag = layer_dependencies({{1, {}}, {2, {1}}, {3, {}}, {4, {2, 3}}});
  CHECK(dag.depth() == 3);
  CHECK(dag.rounds[0] == std::vector<QubitId>{1, 3});
  CHECK(dag.round_of(4) == 2);
  CHECK(dag.arcs.count({2, 4}) == 1);
}

TEST_CASE("one-buffered schedule keeps the channel") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    const Pattern p = standardize(testing::random_pattern(rng)).pattern;
    const auto phases = one_buffered_schedule(p);
    const Pattern flat = flatten_schedule(p, phases);
    CHECK(validate(flat).empty());
    CHECK(same_branch_channels(p, flat, 1e-10));
    CHECK(static_cast<int>(phases.size()) <= std::max(1, rounds(p).depth() + 1));
  }
}

TEST_CASE("Clifford frames compose like their matrices") {
  for (int x1 = 0; x1 < 2; ++x1) {
    for (int s1 = 0; s1 < 4; ++s1) {
      for (int x2 = 0; x2 < 2; ++x2) {
        for (int s2 = 0; s2 < 4; ++s2) {
          const CliffordFrame a{x1, s1, 3}, b{x2, s2, 5};
          CHECK((a * b).matrix().isApprox(a.matrix() * b.matrix(), 1e-12));
        }
      }
    }
  }
  Eigen::Matrix2cd s;
  s << 1, 0, 0, std::complex<double>(0, 1);
  CHECK(CliffordFrame::phase_gate().matrix().isApprox(s));
  CHECK((CliffordFrame::pauli_z() * CliffordFrame::pauli_z()) == CliffordFrame::identity());
}

TEST_CASE("frame tracking removes Pauli dependencies from the depth") {
  const Pattern jj = compose_serial(build_j(Angle(1, 2)), build_j(Angle(1, 2)));
  CHECK(rounds(standardize(jj).pattern).depth() == 2);
  const FramePlan plan = frame_track(jj);
  CHECK(rounds(plan).depth() == 1);
  const auto& m = plan.at(2);
  CHECK(m.basis_deps.empty());
  CHECK(m.flip_deps == std::set<QubitId>{1});

  // A π/2 dependency changes the basis and stays a separate round.
  const Pattern k = parse_dsl("IN: 1\nOUT: 3\nN 2 0\nN 3 0\nE 1 2\nE 2 3\nM 1 0\nM 2 poly{s1:pi/2}\nX 3 if s2\n");
  CHECK(rounds(frame_track(k)).depth() == 2);
  const Pattern bad = parse_dsl("IN: 1\nOUT: 3\nN 2 0\nN 3 0\nE 1 2\nE 2 3\nM 1 0\nM 2 poly{s1:pi/4}\nX 3 if s2\n");
  CHECK_THROWS_AS(frame_track(bad), NonCliffordDependency);
}

TEST_CASE("frame-tracked execution reproduces every branch") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 60; ++t) {
    testing::RandomPatternOptions o;
    o.pmm = true;
    const Pattern p = testing::random_pattern(rng, o);
    const Eigen::VectorXcd in = product_state("plus_pi4", static_cast<int>(p.inputs.size()));
    const FramePlan plan = frame_track(p);
    const auto a = enumerate_branches(p, in);
    const auto b = enumerate_plan_branches(plan, in);
    REQUIRE(a.size() == b.size());
    std::map<Signals, const BranchResult*> by_outcome;
    for (const auto& br : b) by_outcome[br.outcomes] = &br;
    for (const auto& br : a) {
      REQUIRE(by_outcome.count(br.outcomes) == 1);
      const BranchResult& other = *by_outcome[br.outcomes];
      CHECK(br.probability == doctest::Approx(other.probability).epsilon(1e-10));
      if (br.probability > 1e-12) CHECK(equal_up_to_phase(br.output, other.output, 1e-9));
    }
    const RunResult r1 = run_plan(plan, in, 9), r2 = run_plan(plan, in, 9);
    CHECK(r1.signals == r2.signals);
  }
}
