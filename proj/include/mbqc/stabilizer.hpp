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

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbqc/pattern.hpp"

namespace mbqc {

namespace bits {

inline std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

/// x1,z1 <- (x1,z1)·(x2,z2) over `w` words; returns the exponent of i picked
/// up by the product (Y stored as x=z=1).
int mul_into(std::uint64_t* x1, std::uint64_t* z1, const std::uint64_t* x2, const std::uint64_t* z2, std::size_t w);

bool anticommute(const std::uint64_t* x1, const std::uint64_t* z1, const std::uint64_t* x2, const std::uint64_t* z2,
                 std::size_t w);

}  // namespace bits

/// i^phase · P_0 ⊗ ... ⊗ P_{n-1}, with P = I, X, Y (x=z=1), Z.
class PauliOp {
 public:
  explicit PauliOp(std::size_t n = 0) : n_(n), x_(bits::words_for(n)), z_(bits::words_for(n)) {}

  /// "+XIZ", "-YY", "iX", "-iZ"; characters I X Y Z or '_' for identity.
  static PauliOp parse(const std::string& text);
  static PauliOp single(std::size_t n, std::size_t q, char p);

  std::size_t size() const { return n_; }
  int phase() const { return phase_; }
  void set_phase(int ph) { phase_ = ((ph % 4) + 4) % 4; }
  bool x(std::size_t q) const { return x_[q / 64] >> (q % 64) & 1; }
  bool z(std::size_t q) const { return z_[q / 64] >> (q % 64) & 1; }
  char at(std::size_t q) const;
  void set(std::size_t q, char p);
  bool is_identity() const;
  std::size_t weight() const;

  PauliOp operator*(const PauliOp& o) const;
  bool commutes(const PauliOp& o) const;
  bool operator==(const PauliOp&) const = default;

  std::string str() const;

  const std::uint64_t* xw() const { return x_.data(); }
  const std::uint64_t* zw() const { return z_.data(); }
  std::uint64_t* xw() { return x_.data(); }
  std::uint64_t* zw() { return z_.data(); }

 private:
  std::size_t n_;
  std::vector<std::uint64_t> x_, z_;
  int phase_ = 0;
};

struct MeasureResult {
  int outcome;  // eigenvalue (-1)^outcome
  bool deterministic;
};

/// Stabilizer tableau with destabilizers over n qubits, all starting in |0>.
class Tableau {
 public:
  explicit Tableau(std::size_t n);

  std::size_t size() const { return n_; }

  void h(std::size_t q);
  void s(std::size_t q);
  void x(std::size_t q);
  void y(std::size_t q);
  void z(std::size_t q);
  void cz(std::size_t a, std::size_t b);
  void apply_pauli(const PauliOp& p);

  /// Measures a Hermitian Pauli.  A random outcome is drawn from `rng` unless
  /// `forced` is given; forcing the impossible outcome of a deterministic
  /// measurement throws ForcedOutcomeImpossible.
  MeasureResult measure(const PauliOp& p, std::mt19937_64& rng, std::optional<int> forced = {});
  /// Outcome if deterministic, without changing the state.
  std::optional<int> peek(const PauliOp& p) const;

  PauliOp stabilizer(std::size_t i) const;
  PauliOp destabilizer(std::size_t i) const;

  /// Symplectic commutation pattern of the 2n rows.
  bool is_consistent() const;

 private:
  std::uint64_t* xr(std::size_t r) { return &xs_[r * w_]; }
  std::uint64_t* zr(std::size_t r) { return &zs_[r * w_]; }
  const std::uint64_t* xr(std::size_t r) const { return &xs_[r * w_]; }
  const std::uint64_t* zr(std::size_t r) const { return &zs_[r * w_]; }
  bool xb(std::size_t r, std::size_t q) const { return xs_[r * w_ + q / 64] >> (q % 64) & 1; }
  bool zb(std::size_t r, std::size_t q) const { return zs_[r * w_ + q / 64] >> (q % 64) & 1; }
  void row_mul(std::size_t target, std::size_t source);
  PauliOp row(std::size_t r) const;

  std::size_t n_, w_;
  std::vector<std::uint64_t> xs_, zs_;
  std::vector<std::uint8_t> sign_;
};

// ---------------------------------------------------------------------------
// Pattern execution

struct NoiseModel {
  double p_prep = 0, p_ent = 0, p_meas = 0, p_idle = 0;
  std::uint64_t seed = 0;
  bool is_noiseless() const { return p_prep == 0 && p_ent == 0 && p_meas == 0 && p_idle == 0; }
};
nlohmann::json to_json(const NoiseModel& m);
NoiseModel noise_model_from_json(const nlohmann::json& j);

struct NoiseEvent {
  enum class Kind { Pauli, MeasurementFlip };
  std::size_t command = 0;
  Kind kind = Kind::Pauli;
  std::vector<QubitId> qubits;  // empty for MeasurementFlip
  std::string paulis;           // one of X/Y/Z per qubit, I allowed in two-qubit events
  bool operator==(const NoiseEvent&) const = default;
};
nlohmann::json to_json(const std::vector<NoiseEvent>& log);
std::vector<NoiseEvent> noise_log_from_json(const nlohmann::json& j);

struct StabOptions {
  NoiseModel noise;
  /// Replays these events instead of sampling noise.
  std::optional<std::vector<NoiseEvent>> replay;
  /// Reported signal values to force (after any measurement flip).
  std::map<QubitId, int> forced;
  std::uint64_t seed = 0;
  /// Stabilizer input states: zero, one, plus, minus, plus_pi2, minus_pi2.
  std::string input_state = "plus";
  std::map<QubitId, std::string> input_states;
};

struct StabRun {
  std::map<QubitId, int> signals;
  Tableau tableau{0};
  std::vector<QubitId> qubit_order;  // tableau index -> qubit id
  std::vector<NoiseEvent> noise_log;

  std::size_t index_of(QubitId q) const;
  /// Pauli on the listed qubits lifted to the full tableau.
  PauliOp lift(const std::vector<QubitId>& qubits, const PauliOp& local) const;
};

/// Throws NonClifford when a preparation, correction or measurement angle
/// is not a multiple of π/2.
void require_clifford(const Pattern& p);

/// A pattern compiled once for repeated runs.  Noise is drawn from a stream
/// derived from the run seed, separate from the measurement outcomes, so a
/// sampled log replays to the same trajectory.
class StabProgram {
 public:
  explicit StabProgram(const Pattern& p);

  const Pattern& pattern() const { return pattern_; }
  std::vector<NoiseEvent> sample_noise(const NoiseModel& m, std::mt19937_64& rng) const;
  StabRun run(const StabOptions& options) const;

 private:
  struct Op {
    enum Kind { Prep, Ent, Meas, X, Z } kind = Prep;
    std::uint32_t a = 0, b = 0;
    int k = 0;  // quarter turns: preparation, Z correction, constant angle term
    bool cond_const = true;
    std::vector<std::uint32_t> cond;
    std::vector<std::pair<std::vector<std::uint32_t>, int>> terms;
  };
  Pattern pattern_;
  std::vector<Op> ops_;
  std::vector<std::vector<std::uint32_t>> idle_;  // live untouched qubits per command
};

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t stream);

StabRun apply(const Pattern& p, const StabOptions& options = {});

/// Observable measured by M^α for α = kπ/2: X, Y, -X, -Y.
PauliOp measurement_observable(std::size_t n, std::size_t q, Angle a);

}  // namespace mbqc
