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

#include <map>
#include <vector>

#include <json.hpp>

#include "mbqc/pattern.hpp"
#include "mbqc/steane.hpp"

namespace mbqc {

struct FtOptions {
  /// Logical |+> preparations use the verified (post-selected) block.
  bool verify_prep = false;
  /// Teleport between every pair of consecutive gadgets on a wire; when false
  /// only the gadget after an entangling gadget is preceded by a teleport.
  bool teleport_every_gadget = true;
  /// Teleports feed the second half from a verified block.
  bool verify_teleport_output = false;
  /// Experimental J_0-based partial syndrome extraction.
  bool partial_syndrome = false;
};

/// Logical measurement: the 7 physical outcomes of `block`, read in `basis`.
struct DecodeHook {
  QubitId logical = 0;
  Block block{};
  AnglePoly logical_angle;
  char basis = 'X';
};

struct FtMetadata {
  std::map<QubitId, Block> input_blocks, output_blocks;
  std::vector<DecodeHook> decodes;
  std::vector<SyndromeHook> syndromes;
  std::vector<VerificationHook> verifications;
  /// Pauli frame left on output blocks by standardization; never executed.
  std::vector<Command> output_frame;

  /// Logical signal of a decoded measurement, Hamming-corrected.
  int logical_outcome(const DecodeHook& h, const std::map<QubitId, int>& signals) const;
  bool accepted(const std::map<QubitId, int>& signals, bool require_clean_syndromes) const;
};

struct FtResult {
  Pattern pattern;
  FtMetadata meta;
};

/// Throws NotPMM unless is_pmm(p).
FtResult ft_transform(const Pattern& p, const FtOptions& options = {});

/// The FT pattern with its output frame appended as correction commands.
Pattern with_output_frame(const FtResult& r);

/// Prefixes every input block with an arbitrary-input encoder, keeping the
/// FT pattern's qubit ids; the result takes one unencoded qubit per logical input.
Pattern with_encoded_inputs(const FtResult& r, const Pattern& body);

nlohmann::json to_json(const FtMetadata& m);

}  // namespace mbqc
