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

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mbqc/pattern.hpp"

namespace mbqc {

struct GraphVertex {
  QubitId id;
  bool input = false;
  std::optional<Angle> prep;        // empty for inputs
  std::optional<AnglePoly> basis;   // empty for outputs
  bool is_output() const { return !basis; }
  std::string label() const;        // "input" or "prep(<angle>)"
  std::string role() const;         // "output" or "measured(<angle>)"
};

struct EntanglementGraph {
  std::vector<GraphVertex> vertices;             // ascending id
  std::set<std::pair<QubitId, QubitId>> edges;   // (min, max)

  std::vector<QubitId> neighbors(QubitId q) const;
};

/// Throws NotStandardized unless p is in N* E* M* C* form.
EntanglementGraph extract_graph(const Pattern& p);

/// Standard pattern from a graph: preparations, edges, measurements at the
/// recorded bases, no corrections.
Pattern pattern_from_graph(const EntanglementGraph& g);

struct DependencyDag {
  std::vector<QubitId> nodes;                    // measured qubits in measurement order
  std::set<std::pair<QubitId, QubitId>> arcs;    // k -> j
  std::vector<std::vector<QubitId>> rounds;      // longest-path layering
  int depth() const { return static_cast<int>(rounds.size()); }
  int round_of(QubitId q) const;                 // -1 for unmeasured qubits
};

/// Layers built from a list of (measured qubit, qubits it depends on).
DependencyDag layer_dependencies(const std::vector<std::pair<QubitId, std::set<QubitId>>>& deps);

/// Dependencies read off the standardized pattern's measurement angles.
DependencyDag rounds(const Pattern& p);

struct SchedulePhase {
  std::vector<Command> commands;
  int build_round = -1;    // round whose subgraph is prepared here, -1 if none
  int measure_round = -1;  // round measured here, -1 if none
};

/// Interleaves preparing round r+1's subgraph with measuring round r.
std::vector<SchedulePhase> one_buffered_schedule(const Pattern& p);
Pattern flatten_schedule(const Pattern& p, const std::vector<SchedulePhase>& phases);

std::string to_dot(const EntanglementGraph& g, const DependencyDag* dag = nullptr);
nlohmann::json to_json(const EntanglementGraph& g, const DependencyDag& dag);

}  // namespace mbqc
