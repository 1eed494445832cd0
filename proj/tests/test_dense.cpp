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
#include <complex>
#include <numbers>

#include "mbqc/dense.hpp"
#include "mbqc/errors.hpp"
#include "mbqc/pattern_io.hpp"

using namespace mbqc;
using cd = std::complex<double>;

namespace {

Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Eigen::Matrix2cd zphase(double a) {
  Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
  z(0, 0) = 1;
  z(1, 1) = std::polar(1.0, a);
  return z;
}

}  // namespace

TEST_CASE("J_alpha is H Z(alpha)") {
  for (int k = 0; k < 8; ++k) {
    const Angle a(k, 4);
    const Eigen::MatrixXcd u = extract_unitary(build_j(a));
    CHECK(equal_up_to_phase(u, hadamard() * zphase(a.radians()), 1e-10));
  }
}

TEST_CASE("X rotation pattern implements exp(-i a X / 2)") {
  for (int k = 0; k < 8; ++k) {
    const Angle a(k, 4);
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    const Eigen::Matrix2cd expect =
        std::cos(a.radians() / 2) * Eigen::Matrix2cd::Identity() - cd(0, 1) * std::sin(a.radians() / 2) * x;
    CHECK(equal_up_to_phase(extract_unitary(build_xrot(a)), expect, 1e-10));
  }
}

TEST_CASE("CZ and identity") {
  Eigen::Matrix4cd cz = Eigen::Matrix4cd::Identity();
  cz(3, 3) = -1;
  CHECK(equal_up_to_phase(extract_unitary(build_cz()), cz, 1e-12));
  CHECK(equal_up_to_phase(extract_unitary(build_identity(2)), Eigen::Matrix4cd::Identity(), 1e-12));
}

TEST_CASE("composition order matches matrix products") {
  const Pattern p = compose_serial(build_j(Angle(1, 4)), build_j(Angle(1, 2)));
  const Eigen::Matrix2cd expect = hadamard() * zphase(std::numbers::pi / 2) * hadamard() * zphase(std::numbers::pi / 4);
  CHECK(equal_up_to_phase(extract_unitary(p), expect, 1e-10));
}

TEST_CASE("two-qubit output ordering is big-endian over the output list") {
  // J_0 on the first wire of a CZ'd pair: (H x I) CZ.
  const Pattern p = compose_serial(build_cz(), compose_parallel(build_j(Angle::zero()), build_identity(1)));
  Eigen::Matrix4cd cz = Eigen::Matrix4cd::Identity();
  cz(3, 3) = -1;
  Eigen::Matrix4cd hi = Eigen::Matrix4cd::Zero();
  hi.topLeftCorner(2, 2) = Eigen::Matrix2cd::Identity() / std::sqrt(2.0);
  hi.topRightCorner(2, 2) = Eigen::Matrix2cd::Identity() / std::sqrt(2.0);
  hi.bottomLeftCorner(2, 2) = Eigen::Matrix2cd::Identity() / std::sqrt(2.0);
  hi.bottomRightCorner(2, 2) = -Eigen::Matrix2cd::Identity() / std::sqrt(2.0);
  CHECK(equal_up_to_phase(extract_unitary(p), hi * cz, 1e-10));
}

TEST_CASE("branches of the teleportation are uniform and identical") {
  const auto branches = enumerate_branches(build_teleport_with_resource(), named_state("plus_pi4"));
  REQUIRE(branches.size() == 4);
  for (const auto& b : branches) {
    CHECK(b.probability == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(equal_up_to_phase(b.output, named_state("plus_pi4"), 1e-10));
  }
}

TEST_CASE("a pattern without corrections is not deterministic") {
  const Pattern p = parse_dsl("IN: 1\nOUT: 2\nN 2 0\nE 1 2\nM 1 0\n");
  CHECK_THROWS_AS(extract_unitary(p), NotDeterministic);
}

TEST_CASE("outcome distribution sums to one and sampled runs follow it") {
  const Pattern p = build_teleport_with_resource();
  const auto dist = outcome_distribution(p, named_state("zero"));
  double total = 0;
  for (const auto& [s, pr] : dist) total += pr;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  const RunResult a = run(p, named_state("zero"), 5), b = run(p, named_state("zero"), 5);
  CHECK(a.signals == b.signals);
  CHECK(equal_up_to_phase(a.output, named_state("zero"), 1e-10));
}

TEST_CASE("branch cap and dimension checks") {
  CHECK_THROWS_AS(enumerate_branches(build_j(Angle::zero()), named_state("plus"), 0), TooManyBranches);
  CHECK_THROWS_AS(run(build_cz(), named_state("plus"), 0), DimensionMismatch);
}

TEST_CASE("state helpers") {
  CHECK(kron(named_state("zero"), named_state("one")).isApprox(Eigen::Vector4cd(0, 1, 0, 0)));
  CHECK(product_state("plus", 2).isApprox(Eigen::Vector4cd(0.5, 0.5, 0.5, 0.5)));
  const Eigen::VectorXcd s = named_state("plus_pi2");
  CHECK(state_from_json(state_to_json(s), 1).isApprox(s));
  CHECK_THROWS_AS(named_state("bogus"), UnknownName);
}

TEST_CASE("single-precision state evolves like the double one") {
  BasicDenseState<float> f({1}, Eigen::Matrix<std::complex<float>, 2, 1>(1, 0));
  f.prepare(2, Angle::zero());
  f.entangle(1, 2);
  f.measure(1, Angle::zero(), 0);
  f.normalize();
  const auto out = f.output({2});
  CHECK(std::abs(out(0, 0) - std::complex<float>(std::sqrt(0.5f), 0)) < 1e-6f);
  CHECK(std::abs(out(1, 0) - std::complex<float>(std::sqrt(0.5f), 0)) < 1e-6f);
}
