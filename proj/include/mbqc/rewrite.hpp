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

#include <string>
#include <vector>

#include <json.hpp>

#include "mbqc/pattern.hpp"

namespace mbqc {

enum class Rule {
  FreeCommute,  // move one command across commands it commutes with
  MergeZ,       // Z correction absorbed into the following measurement
  MergeX,       // X correction absorbed into the following measurement
  CommuteEX,    // [X_i, E_ij] -> [E_ij, X_i, Z_j]
  CommuteEZ,    // [Z_i, E_ij] -> [E_ij, Z_i]
  CombineX,     // two adjacent X corrections on one output qubit
  CombineZ,     // two adjacent Z corrections on one output qubit
};

std::string rule_name(Rule r);

/// One rewrite applied to the command list in place.  `position` is the
/// index of the (first) command involved; `span` is only used by
/// FreeCommute, which moves the command at `position` to `position + span`.
struct RewriteStep {
  Rule rule;
  std::size_t position;
  std::ptrdiff_t span = 0;
  bool operator==(const RewriteStep&) const = default;
};

// Local rules on commands.  Each throws NotAdjacent when the two commands do
// not act on the required qubits.

/// M_i^α after Z_i(β)^c  ->  M_i^{α − c·β}
Measure merge_z(const Measure& m, const CorrectZ& z);
/// M_i^α after X_i^c  ->  M_i^{(−1)^c α}
Measure merge_x(const Measure& m, const CorrectX& x);
/// X_i^c then E_ij  ->  E_ij, X_i^c, Z_j(π)^c   (plain swap when disjoint)
std::vector<Command> commute_ex(const CorrectX& x, const Entangle& e);
/// Z_i(α)^c then E_ij  ->  E_ij, Z_i(α)^c
std::vector<Command> commute_ez(const CorrectZ& z, const Entangle& e);

/// Apply one step to a command list; throws NotAdjacent if it does not apply.
void apply_step(std::vector<Command>& seq, const RewriteStep& step);
Pattern replay(const Pattern& p, const std::vector<RewriteStep>& trace);

enum class Strategy {
  /// Deterministic local rewriting: corrections are pushed toward the end of
  /// execution one rule at a time, rightmost first.  Records a trace.
  LocalRewrite,
  /// One pass carrying a per-qubit list of pending corrections.  No trace.
  FramePropagation,
};

struct StandardizeResult {
  Pattern pattern;
  std::vector<RewriteStep> trace;
};

StandardizeResult standardize(const Pattern& p, Strategy strategy = Strategy::LocalRewrite);

/// N* E* M* C* with corrections only on outputs.
bool is_standard(const Pattern& p);

nlohmann::json trace_to_json(const std::vector<RewriteStep>& trace);
std::vector<RewriteStep> trace_from_json(const nlohmann::json& j);

}  // namespace mbqc
