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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbqc/pattern.hpp"
#include "mbqc/stabilizer.hpp"

namespace mbqc {

using Block = std::array<QubitId, 7>;
using Word = std::array<int, 7>;

/// Steane [[7,1,3]] from the [7,4] Hamming checks; position j (1-based) has
/// check column equal to the binary digits of j.
struct CodeSpec {
  int n = 7, k = 1, d = 3;
  std::array<Word, 3> checks{{{0, 0, 0, 1, 1, 1, 1}, {0, 1, 1, 0, 0, 1, 1}, {1, 0, 1, 0, 1, 0, 1}}};
  /// Ȳ = i X̄ Z̄ = -Y^{⊗7}
  bool y_sign_negative = true;

  PauliOp x_check(int i) const;
  PauliOp z_check(int i) const;
  PauliOp logical_x() const;
  PauliOp logical_z() const;
  PauliOp logical_y() const;
  std::vector<PauliOp> generators() const;  // 3 X-type then 3 Z-type

  /// Commutation, anticommutation of logicals and distance by exhaustive scan
  /// of weight <= 2 errors.  Returns the failed checks.
  std::vector<std::string> self_check() const;
  nlohmann::json to_json() const;

  static const CodeSpec& steane();
};

/// x_bits: Z-type checks violated (X errors); z_bits: X-type checks violated.
struct Syndrome {
  std::array<int, 3> x_bits{}, z_bits{};
  bool trivial() const { return x_bits == std::array<int, 3>{} && z_bits == std::array<int, 3>{}; }
  bool operator==(const Syndrome&) const = default;
};

/// 3 Hamming parities; as a number, the 1-based position they point at.
std::array<int, 3> hamming_syndrome(const Word& w, const CodeSpec& code = CodeSpec::steane());
int syndrome_position(const std::array<int, 3>& s);

Syndrome infer_syndrome(const PauliOp& g, const CodeSpec& code = CodeSpec::steane());

struct Decoded {
  int logical = 0;
  std::array<int, 3> syndrome{};
  bool corrected = false;
};

/// Outcomes of measuring every qubit of a block in X or Y ('X' / 'Y').
Decoded decode_transversal(const Word& outcomes, char basis, const CodeSpec& code = CodeSpec::steane());

// ---------------------------------------------------------------------------
// Builders.  Blocks are listed by code position 1..7.

/// Steane encoding circuit compiled through J_0 and CZ.  With no angle the
/// input wire is an input of the pattern; otherwise it is prepared at that
/// angle (0 gives |+̄>, π/4 gives |+̄_{π/4}>).  12 qubits.
Pattern build_encoder(std::optional<Angle> input_angle = {});

/// |+̄> and |0̄> from the bipartite Hamming graph with J_0 on one side.
Pattern build_plus_graph_encoder();
Pattern build_zero_graph_encoder();

/// X-measured block whose word must have trivial syndrome and even parity.
struct VerificationHook {
  Block qubits{};
  bool accepts(const std::map<QubitId, int>& signals) const;
};

/// |+̄> checked against a second |+̄>: a |0̄> block is coupled to it by
/// transversal CZ, the checker is measured in X and post-selected, then the
/// |0̄> block is rotated by transversal J_0.
struct VerifiedPrep {
  Pattern pattern;
  VerificationHook hook;
};
VerifiedPrep build_verified_plus();

/// 14 qubits, blocks 1..7 and 8..14, I = O = all.
Pattern transversal_cz();

enum class PlusSource { Circuit, Graph, Verified };

struct TeleportOptions {
  PlusSource first_half = PlusSource::Graph;
  PlusSource second_half = PlusSource::Graph;
  /// Experimental: teleport each qubit by J_α into a single |+̄> block,
  /// revealing only the errors anticommuting with the measured basis.
  bool partial = false;
  Angle partial_angle = Angle::zero();
};

/// Teleportation signals: data outcomes s1 and first-half outcomes s2.
struct SyndromeHook {
  Block data{}, resource{}, outputs{};
  bool partial = false;
  Syndrome syndrome(const std::map<QubitId, int>& signals, const CodeSpec& code = CodeSpec::steane()) const;
  /// g = ⊗ X^{s2} Z^{s1}
  PauliOp correction(const std::map<QubitId, int>& signals) const;
};

struct SyndromeTeleport {
  Pattern pattern;
  SyndromeHook hook;
  std::vector<VerificationHook> verification;
};

/// Resource qubits are numbered from `first_fresh` (default: above the block).
SyndromeTeleport build_syndrome_teleport_gadget(const Block& block, const TeleportOptions& options = {},
                                                QubitId first_fresh = 0);
Pattern build_syndrome_teleport(const Block& block);

}  // namespace mbqc
