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

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "mbqc/dense.hpp"
#include "mbqc/errors.hpp"
#include "mbqc/pattern_io.hpp"
#include "mbqc/stabilizer.hpp"
#include "support/pauli_dense.hpp"

using namespace mbqc;
using cd = std::complex<double>;

namespace {

using testing::pauli_dense;
using testing::pauli_matrix;

// Plain state-vector oracle for Clifford circuits.
struct Vec {
  int n;
  Eigen::VectorXcd v;
  explicit Vec(int n) : n(n), v(Eigen::VectorXcd::Zero(1 << n)) { v(0) = 1; }
  Eigen::Index bit(int q) const { return Eigen::Index{1} << (n - 1 - q); }
  void h(int q) {
    for (Eigen::Index r = 0; r < v.size(); ++r) {
      if (r & bit(q)) continue;
      const cd a = v(r), b = v(r | bit(q));
      v(r) = (a + b) / std::sqrt(2.0);
      v(r | bit(q)) = (a - b) / std::sqrt(2.0);
    }
  }
  void s(int q) {
    for (Eigen::Index r = 0; r < v.size(); ++r) {
      if (r & bit(q)) v(r) *= cd(0, 1);
    }
  }
  void cz(int a, int b) {
    for (Eigen::Index r = 0; r < v.size(); ++r) {
      if ((r & bit(a)) && (r & bit(b))) v(r) *= -1;
    }
  }
};

PauliOp random_pauli(std::mt19937_64& rng, std::size_t n) {
  PauliOp p(n);
  for (std::size_t q = 0; q < n; ++q) p.set(q, "IXYZ"[rng() % 4]);
  p.set_phase(static_cast<int>(rng() % 2) * 2);
  return p;
}

}  // namespace

TEST_CASE("single-qubit Pauli products match matrix products") {
  for (char a : {'I', 'X', 'Y', 'Z'}) {
    for (char b : {'I', 'X', 'Y', 'Z'}) {
      const PauliOp pa = PauliOp::single(1, 0, a), pb = PauliOp::single(1, 0, b);
      CHECK(pauli_dense(pa * pb).isApprox(pauli_matrix(a) * pauli_matrix(b)));
      const bool commute = (pauli_matrix(a) * pauli_matrix(b)).isApprox(pauli_matrix(b) * pauli_matrix(a));
      CHECK(pa.commutes(pb) == commute);
    }
  }
}

TEST_CASE("multi-word Pauli products agree qubit by qubit") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng() % 150;
    const PauliOp a = random_pauli(rng, n), b = random_pauli(rng, n);
    const PauliOp c = a * b;
    int phase = a.phase() + b.phase();
    for (std::size_t q = 0; q < n; ++q) {
      const PauliOp qa = PauliOp::single(1, 0, a.at(q)), qb = PauliOp::single(1, 0, b.at(q));
      const PauliOp qc = qa * qb;
      CHECK(c.at(q) == qc.at(0));
      phase += qc.phase();
    }
    CHECK(c.phase() == (phase & 3));
  }
  CHECK(PauliOp::parse("-iXYZ").str() == "-iXYZ");
  CHECK(PauliOp::parse("+X_Z").weight() == 2);
}

TEST_CASE("tableau agrees with the state-vector oracle") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng() % 5);
    Tableau tab(n);
    Vec vec(n);
    for (int g = 0; g < 25; ++g) {
      const int a = static_cast<int>(rng() % n);
      switch (rng() % 3) {
        case 0: tab.h(a); vec.h(a); break;
        case 1: tab.s(a); vec.s(a); break;
        default: {
          const int b = static_cast<int>(rng() % n);
          if (a != b) {
            tab.cz(a, b);
            vec.cz(a, b);
          }
        }
      }
    }
    REQUIRE(tab.is_consistent());
    for (int k = 0; k < n; ++k) {
      CHECK((pauli_dense(tab.stabilizer(k)) * vec.v).isApprox(vec.v, 1e-9));
    }
    for (int k = 0; k < 5; ++k) {
      const PauliOp p = random_pauli(rng, n);
      if (p.is_identity()) continue;
      const double expect = (vec.v.adjoint() * pauli_dense(p) * vec.v)(0).real();
      const auto peek = tab.peek(p);
      if (std::abs(expect) < 1e-9) {
        CHECK_FALSE(peek.has_value());
      } else {
        REQUIRE(peek.has_value());
        CHECK(*peek == (expect > 0 ? 0 : 1));
      }
    }
  }
}

TEST_CASE("measurement collapses and repeats") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    Tableau tab(3);
    tab.h(0);
    tab.h(1);
    tab.cz(0, 1);
    tab.h(1);
    const PauliOp z0 = PauliOp::single(3, 0, 'Z'), z1 = PauliOp::single(3, 1, 'Z');
    const auto first = tab.measure(z0, rng);
    CHECK_FALSE(first.deterministic);
    const auto again = tab.measure(z0, rng);
    CHECK(again.deterministic);
    CHECK(again.outcome == first.outcome);
    // Bell pair: the partner is now fixed.
    CHECK(tab.peek(z1).value() == first.outcome);
    CHECK(tab.is_consistent());
  }
  Tableau tab(1);
  CHECK_THROWS_AS(tab.measure(PauliOp::single(1, 0, 'Z'), rng, 1), ForcedOutcomeImpossible);
}

TEST_CASE("measurement observables") {
  CHECK(measurement_observable(1, 0, Angle::zero()).str() == "+X");
  CHECK(measurement_observable(1, 0, Angle(1, 2)).str() == "+Y");
  CHECK(measurement_observable(1, 0, Angle::pi()).str() == "-X");
  CHECK(measurement_observable(1, 0, Angle(3, 2)).str() == "-Y");
}

TEST_CASE("pattern runs: inputs, outcomes and corrections") {
  const Pattern m = parse_dsl("IN: 1\nOUT:\nM 1 0\n");
  StabOptions o;
  o.input_state = "plus";
  CHECK(apply(m, o).signals.at(1) == 0);
  o.input_state = "minus";
  CHECK(apply(m, o).signals.at(1) == 1);
  const Pattern y = parse_dsl("IN: 1\nOUT:\nM 1 pi/2\n");
  o.input_state = "plus_pi2";
  CHECK(apply(y, o).signals.at(1) == 0);
  const Pattern y3 = parse_dsl("IN: 1\nOUT:\nM 1 3*pi/2\n");
  CHECK(apply(y3, o).signals.at(1) == 1);
  // J_0 teleports |0> to |+> on the output whatever the outcome.
  const Pattern j0 = build_j(Angle::zero());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    StabOptions z;
    z.input_state = "zero";
    z.seed = seed;
    const StabRun r = apply(j0, z);
    CHECK(r.tableau.peek(r.lift({2}, PauliOp::parse("X"))).value() == 0);
  }
  CHECK_THROWS_AS(apply(build_j(Angle(1, 4))), NonClifford);
}

TEST_CASE("noise sampling and replay") {
  const Pattern p = build_teleport_with_resource();
  const StabProgram prog(p);
  NoiseModel all;
  all.p_meas = 1;
  StabOptions o;
  o.noise = all;
  const StabRun flipped = prog.run(o);
  CHECK(flipped.noise_log.size() == 2);
  StabOptions clean;
  const StabRun base = prog.run(clean);
  for (auto [q, v] : base.signals) CHECK(flipped.signals.at(q) == (v ^ 1));

  NoiseModel some{0.3, 0.3, 0.3, 0.3, 0};
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    StabOptions a;
    a.noise = some;
    a.seed = seed;
    const StabRun first = prog.run(a);
    StabOptions b;
    b.seed = seed;
    b.replay = first.noise_log;
    const StabRun second = prog.run(b);
    CHECK(first.signals == second.signals);
    CHECK(noise_log_from_json(to_json(first.noise_log)) == first.noise_log);
  }
  CHECK_THROWS(noise_model_from_json(nlohmann::json{{"p_prep", 1.5}}));
}

TEST_CASE("wide tableaus keep their stabilizers across word boundaries") {
  std::mt19937_64 rng(24);
  const std::size_t n = 130;
  Tableau tab(n);
  for (int g = 0; g < 2000; ++g) {
    const std::size_t a = rng() % n, b = rng() % n;
    switch (rng() % 3) {
      case 0: tab.h(a); break;
      case 1: tab.s(a); break;
      default:
        if (a != b) tab.cz(a, b);
    }
  }
  CHECK(tab.is_consistent());
  PauliOp prod(n);
  for (std::size_t i = 0; i < n; i += 7) {
    CHECK(tab.peek(tab.stabilizer(i)).value() == 0);
    prod = prod * tab.stabilizer(i);
  }
  CHECK(tab.peek(prod).value() == 0);
  PauliOp neg = prod;
  neg.set_phase(prod.phase() + 2);
  CHECK(tab.peek(neg).value() == 1);
  for (std::size_t i = 0; i < n; i += 11) tab.measure(PauliOp::single(n, i, "XYZ"[i % 3]), rng);
  CHECK(tab.is_consistent());
}
