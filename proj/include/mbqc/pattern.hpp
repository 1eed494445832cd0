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
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mbqc/angle.hpp"

namespace mbqc {

/// N_q^α: prepare |+_α⟩.
struct Prepare {
  QubitId qubit;
  Angle angle;
  bool operator==(const Prepare&) const = default;
};

/// E_ij: controlled-Z.  Endpoints are unordered.
struct Entangle {
  QubitId a;
  QubitId b;
  bool operator==(const Entangle& o) const {
    return (a == o.a && b == o.b) || (a == o.b && b == o.a);
  }
};

/// M_q^θ: destructive measurement in the |±_θ⟩ basis, θ possibly adaptive.
struct Measure {
  QubitId qubit;
  AnglePoly angle;
  bool operator==(const Measure&) const = default;
};

/// X_q^cond.
struct CorrectX {
  QubitId qubit;
  SignalParity cond;
  bool operator==(const CorrectX&) const = default;
};

/// Z_q(α)^cond with Z(α) = e^{−iαZ/2}.
struct CorrectZ {
  QubitId qubit;
  Angle angle;
  SignalParity cond;
  bool operator==(const CorrectZ&) const = default;
};

using Command = std::variant<Prepare, Entangle, Measure, CorrectX, CorrectZ>;

std::vector<QubitId> qubits_of(const Command& c);
/// Signals referenced by a command's angle or condition.
std::vector<QubitId> signals_of(const Command& c);
bool is_correction(const Command& c);
bool acts_on(const Command& c, QubitId q);
/// Same command with every qubit and signal id mapped through `map`.
Command relabel(const Command& c, const std::function<QubitId(QubitId)>& map);

/// A measurement pattern.  `commands` is in execution order (first element
/// runs first).  `inputs` and `outputs` are ordered: the first listed qubit
/// is the most significant bit of state-vector indices.
struct Pattern {
  std::vector<QubitId> qubits;  // sorted
  std::vector<QubitId> inputs;
  std::vector<QubitId> outputs;
  std::vector<Command> commands;

  bool is_input(QubitId q) const;
  bool is_output(QubitId q) const;
  std::vector<QubitId> measured_qubits() const;  // in measurement order
  QubitId max_qubit() const;
  bool operator==(const Pattern&) const = default;
};

/// Build a pattern; V is the union of all qubits mentioned.
Pattern make_pattern(std::vector<QubitId> inputs, std::vector<QubitId> outputs,
                     std::vector<Command> commands);

struct Violation {
  std::size_t index;  // command index, or npos for pattern-level problems
  std::string rule;
  std::string message;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

std::vector<Violation> validate(const Pattern& p);
void require_valid(const Pattern& p);

bool is_pmm(const Pattern& p);

/// a then b, with b's inputs identified with a's outputs.  The binding lists
/// (a-output, b-input) pairs; by default they pair up positionally.
Pattern compose_serial(const Pattern& a, const Pattern& b,
                       std::optional<std::vector<std::pair<QubitId, QubitId>>> binding = {});
Pattern compose_parallel(const Pattern& a, const Pattern& b);

/// Shift every qubit id by `offset`.
Pattern shifted(const Pattern& p, QubitId offset);

// Named builders.  Qubit ids follow the textbook numbering starting at 1.
Pattern build_j(Angle alpha);         // J_α = H·Z(α)
Pattern build_xrot(Angle alpha);      // H·Z(α)·H = e^{−iαX/2}, π/4-prepared middle qubit
Pattern build_cz();                   // ∧Z on two inputs
Pattern build_prepare();              // N^0, no inputs
Pattern build_measure();              // M^0, no outputs
Pattern build_teleport();             // X_3^{s2} Z_3^{s1} M_2 M_1 E_12, I={1,2,3}, O={3}
Pattern build_teleport_with_resource();  // teleport ∘ (N_2 N_3 E_23), I={1}, O={3}
Pattern build_identity(int n = 1);

/// Name lookup: "J", "X", "CZ", "N", "M", "T", "T_resource", "I".
Pattern build_named(const std::string& name, std::optional<Angle> angle = {});

}  // namespace mbqc
