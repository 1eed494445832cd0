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

#pragma once

#include <set>
#include <vector>

#include <Eigen/Dense>

#include "mbqc/dense.hpp"
#include "mbqc/graph.hpp"
#include "mbqc/pattern.hpp"

namespace mbqc {

/// e^{iπ·phase/4} X^x S^s on one qubit.
struct CliffordFrame {
  int x = 0;      // 0 or 1
  int s = 0;      // mod 4; s = 2 is Z
  int phase = 0;  // mod 8

  static CliffordFrame identity() { return {}; }
  static CliffordFrame pauli_x() { return {1, 0, 0}; }
  static CliffordFrame pauli_z() { return {0, 2, 0}; }
  static CliffordFrame phase_gate() { return {0, 1, 0}; }

  /// Matrix product: (*this) applied after `o`.
  CliffordFrame operator*(const CliffordFrame& o) const;
  Eigen::Matrix2cd matrix() const;
  bool operator==(const CliffordFrame&) const = default;
};

/// A measurement at a fixed angle preceded by the frame S^{-shift(s)}, where
/// shift counts quarter turns (mod 4).  Even shifts only flip the outcome.
struct PlannedMeasurement {
  QubitId qubit = 0;
  Angle fixed;
  IntPoly shift;
  std::set<QubitId> basis_deps;  // signals in odd-coefficient terms
  std::set<QubitId> flip_deps;   // every signal in shift

  int shift_at(const Signals& s) const;
  CliffordFrame frame(const Signals& s) const;
};

struct FramePlan {
  Pattern pattern;  // standardized, measurement angles replaced by the fixed ones
  std::vector<PlannedMeasurement> measurements;

  const PlannedMeasurement& at(QubitId q) const;
};

/// Throws NonCliffordDependency when a signal-dependent term of some
/// measurement angle is not a multiple of π/2.
FramePlan frame_track(const Pattern& p);

/// Rounds counting only the dependencies that change a measurement basis;
/// outcome flips are classical and resolved as soon as their inputs are.
DependencyDag rounds(const FramePlan& plan);

RunResult run_plan(const FramePlan& plan, const Eigen::VectorXcd& input, std::uint64_t seed);
std::vector<BranchResult> enumerate_plan_branches(const FramePlan& plan, const Eigen::VectorXcd& input);

}  // namespace mbqc
