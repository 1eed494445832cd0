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

#include "mbqc/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mbqc/errors.hpp"
#include "mbqc/pattern_io.hpp"
#include "mbqc/rewrite.hpp"

namespace mbqc {

std::string GraphVertex::label() const { return input ? "input" : "prep(" + format_angle(*prep) + ")"; }

std::string GraphVertex::role() const { return basis ? "measured(" + format_poly(*basis) + ")" : "output"; }

std::vector<QubitId> EntanglementGraph::neighbors(QubitId q) const {
  std::vector<QubitId> out;
  for (auto [a, b] : edges) {
    if (a == q) out.push_back(b);
    if (b == q) out.push_back(a);
  }
  return out;
}

EntanglementGraph extract_graph(const Pattern& p) {
  if (!is_standard(p)) throw NotStandardized("pattern is not in standard form");
  std::map<QubitId, GraphVertex> v;
  for (QubitId q : p.qubits) v[q] = GraphVertex{q, p.is_input(q), {}, {}};
  EntanglementGraph g;
  for (const auto& c : p.commands) {
    if (const auto* n = std::get_if<Prepare>(&c)) v[n->qubit].prep = n->angle;
    if (const auto* e = std::get_if<Entangle>(&c)) g.edges.insert(std::minmax(e->a, e->b));
    if (const auto* m = std::get_if<Measure>(&c)) v[m->qubit].basis = m->angle;
  }
  for (auto& [q, vert] : v) g.vertices.push_back(std::move(vert));
  return g;
}

Pattern pattern_from_graph(const EntanglementGraph& g) {
  std::vector<QubitId> in, out;
  std::vector<Command> cmds;
  for (const auto& v : g.vertices) {
    if (v.input) in.push_back(v.id);
    if (v.is_output()) out.push_back(v.id);
    if (v.prep) cmds.push_back(Prepare{v.id, *v.prep});
  }
  for (auto [a, b] : g.edges) cmds.push_back(Entangle{a, b});
  for (const auto& v : g.vertices) {
    if (v.basis) cmds.push_back(Measure{v.id, *v.basis});
  }
  return make_pattern(in, out, cmds);
}

int DependencyDag::round_of(QubitId q) const {
  for (std::size_t r = 0; r < rounds.size(); ++r) {
    if (std::find(rounds[r].begin(), rounds[r].end(), q) != rounds[r].end()) return static_cast<int>(r);
  }
  return -1;
}

DependencyDag layer_dependencies(const std::vector<std::pair<QubitId, std::set<QubitId>>>& deps) {
  DependencyDag dag;
  std::map<QubitId, int> level;
  for (const auto& [j, on] : deps) {
    dag.nodes.push_back(j);
    int l = 0;
    for (QubitId k : on) {
      dag.arcs.insert({k, j});
      auto it = level.find(k);
      if (it != level.end()) l = std::max(l, it->second + 1);
    }
    level[j] = l;
    if (static_cast<int>(dag.rounds.size()) <= l) dag.rounds.resize(l + 1);
    dag.rounds[l].push_back(j);
  }
  return dag;
}

DependencyDag rounds(const Pattern& p) {
  const Pattern s = is_standard(p) ? p : standardize(p).pattern;
  std::vector<std::pair<QubitId, std::set<QubitId>>> deps;
  for (const auto& c : s.commands) {
    if (const auto* m = std::get_if<Measure>(&c)) deps.emplace_back(m->qubit, m->angle.signals());
  }
  return layer_dependencies(deps);
}

std::vector<SchedulePhase> one_buffered_schedule(const Pattern& p) {
  if (!is_standard(p)) throw NotStandardized("scheduling needs a standardized pattern");
  const DependencyDag dag = rounds(p);
  const int depth = dag.depth();
  const int last = std::max(depth - 1, 0);
  auto round_of = [&](QubitId q) {
    int r = dag.round_of(q);
    return r < 0 ? last : r;
  };
  // A qubit must be prepared before its earliest edge is needed.
  std::map<QubitId, int> prep_round;
  for (QubitId q : p.qubits) prep_round[q] = round_of(q);
  for (const auto& c : p.commands) {
    if (const auto* e = std::get_if<Entangle>(&c)) {
      const int r = std::min(round_of(e->a), round_of(e->b));
      prep_round[e->a] = std::min(prep_round[e->a], r);
      prep_round[e->b] = std::min(prep_round[e->b], r);
    }
  }
  std::vector<std::vector<Command>> build(std::max(depth, 1)), measure(std::max(depth, 1));
  std::vector<Command> tail;
  for (const auto& c : p.commands) {
    if (const auto* n = std::get_if<Prepare>(&c)) {
      build[prep_round[n->qubit]].push_back(c);
    } else if (const auto* e = std::get_if<Entangle>(&c)) {
      build[std::min(round_of(e->a), round_of(e->b))].push_back(c);
    } else if (const auto* m = std::get_if<Measure>(&c)) {
      measure[round_of(m->qubit)].push_back(c);
    } else {
      tail.push_back(c);
    }
  }
  // Preparations of a round precede its edges.
  for (auto& b : build) {
    std::stable_partition(b.begin(), b.end(), [](const Command& c) { return std::holds_alternative<Prepare>(c); });
  }
  std::vector<SchedulePhase> phases;
  if (depth <= 1) {
    SchedulePhase ph{build[0], 0, depth == 1 ? 0 : -1};
    ph.commands.insert(ph.commands.end(), measure[0].begin(), measure[0].end());
    phases.push_back(std::move(ph));
  } else {
    phases.push_back({build[0], 0, -1});
    for (int r = 0; r + 1 < depth; ++r) {
      SchedulePhase ph{build[r + 1], r + 1, r};
      ph.commands.insert(ph.commands.end(), measure[r].begin(), measure[r].end());
      phases.push_back(std::move(ph));
    }
    phases.push_back({measure[depth - 1], -1, depth - 1});
  }
  phases.back().commands.insert(phases.back().commands.end(), tail.begin(), tail.end());
  return phases;
}

Pattern flatten_schedule(const Pattern& p, const std::vector<SchedulePhase>& phases) {
  Pattern out = p;
  out.commands.clear();
  for (const auto& ph : phases) out.commands.insert(out.commands.end(), ph.commands.begin(), ph.commands.end());
  return out;
}

std::string to_dot(const EntanglementGraph& g, const DependencyDag* dag) {
  std::ostringstream os;
  os << "graph pattern {\n  node [style=filled];\n";
  for (const auto& v : g.vertices) {
    os << "  q" << v.id << " [label=\"" << v.id;
    if (v.basis) os << "\\n" << format_poly(*v.basis);
    if (dag && v.basis) os << "\\nround " << dag->round_of(v.id);
    os << "\"";
    os << (v.input ? ", shape=box" : ", shape=circle");
    os << (v.basis ? ", fillcolor=gray" : ", fillcolor=white");
    os << "];\n";
  }
  for (auto [a, b] : g.edges) os << "  q" << a << " -- q" << b << ";\n";
  os << "}\n";
  return os.str();
}

nlohmann::json to_json(const EntanglementGraph& g, const DependencyDag& dag) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : g.vertices) j["vertices"].push_back({{"id", v.id}, {"label", v.label()}, {"role", v.role()}});
  j["edges"] = nlohmann::json::array();
  for (auto [a, b] : g.edges) j["edges"].push_back({a, b});
  j["rounds"] = dag.rounds;
  return j;
}

}  // namespace mbqc
