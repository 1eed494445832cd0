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

#include "mbqc/steane.hpp"

#include <numeric>

#include "mbqc/builder.hpp"
#include "mbqc/errors.hpp"

namespace mbqc {

// ---------------------------------------------------------------------------
// CodeSpec

PauliOp CodeSpec::x_check(int i) const {
  PauliOp p(7);
  for (int q = 0; q < 7; ++q) {
    if (checks[i][q]) p.set(q, 'X');
  }
  return p;
}

PauliOp CodeSpec::z_check(int i) const {
  PauliOp p(7);
  for (int q = 0; q < 7; ++q) {
    if (checks[i][q]) p.set(q, 'Z');
  }
  return p;
}

PauliOp CodeSpec::logical_x() const { return PauliOp::parse("XXXXXXX"); }
PauliOp CodeSpec::logical_z() const { return PauliOp::parse("ZZZZZZZ"); }

PauliOp CodeSpec::logical_y() const {
  PauliOp y = logical_x() * logical_z();
  y.set_phase(y.phase() + 1);
  return y;
}

std::vector<PauliOp> CodeSpec::generators() const {
  std::vector<PauliOp> g;
  for (int i = 0; i < 3; ++i) g.push_back(x_check(i));
  for (int i = 0; i < 3; ++i) g.push_back(z_check(i));
  return g;
}

std::vector<std::string> CodeSpec::self_check() const {
  std::vector<std::string> failed;
  const auto gens = generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!gens[i].commutes(gens[j])) failed.push_back("generators " + std::to_string(i) + "," + std::to_string(j) + " anticommute");
    }
    if (!gens[i].commutes(logical_x()) || !gens[i].commutes(logical_z())) {
      failed.push_back("generator " + std::to_string(i) + " does not commute with the logicals");
    }
  }
  if (logical_x().commutes(logical_z())) failed.push_back("logical X and Z commute");
  if ((logical_y() == PauliOp::parse("-YYYYYYY")) != y_sign_negative) failed.push_back("logical Y sign convention");
  // Distance: no error of weight 1 or 2 is invisible to every generator.
  const char letters[] = {'X', 'Y', 'Z'};
  auto invisible = [&](const PauliOp& e) {
    for (const auto& g : gens) {
      if (!g.commutes(e)) return false;
    }
    return true;
  };
  for (int a = 0; a < 7; ++a) {
    for (char pa : letters) {
      if (invisible(PauliOp::single(7, a, pa))) failed.push_back("weight-1 error undetected");
      for (int b = a + 1; b < 7; ++b) {
        for (char pb : letters) {
          PauliOp e = PauliOp::single(7, a, pa);
          e.set(b, pb);
          if (invisible(e)) failed.push_back("weight-2 error undetected");
        }
      }
    }
  }
  // A weight-3 logical exists, so the distance is exactly 3.
  if (!invisible(PauliOp::parse("XXXIIII")) || !(PauliOp::parse("XXXIIII") * logical_x()).commutes(logical_z())) {
    failed.push_back("no weight-3 logical operator");
  }
  return failed;
}

nlohmann::json CodeSpec::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : checks) rows.push_back(r);
  return {{"format_version", 1},
          {"n", n},
          {"k", k},
          {"d", d},
          {"x_checks", rows},
          {"z_checks", rows},
          {"logical_x", logical_x().str()},
          {"logical_z", logical_z().str()},
          {"logical_y", logical_y().str()},
          {"y_sign_negative", y_sign_negative}};
}

const CodeSpec& CodeSpec::steane() {
  static const CodeSpec code;
  return code;
}

std::array<int, 3> hamming_syndrome(const Word& w, const CodeSpec& code) {
  std::array<int, 3> s{};
  for (int i = 0; i < 3; ++i) {
    for (int q = 0; q < 7; ++q) s[i] ^= code.checks[i][q] & w[q];
  }
  return s;
}

int syndrome_position(const std::array<int, 3>& s) { return s[0] * 4 + s[1] * 2 + s[2]; }

Syndrome infer_syndrome(const PauliOp& g, const CodeSpec& code) {
  if (g.size() != 7) throw DimensionMismatch("syndrome inference needs a 7-qubit Pauli");
  Syndrome s;
  for (int i = 0; i < 3; ++i) {
    s.x_bits[i] = !g.commutes(code.z_check(i));
    s.z_bits[i] = !g.commutes(code.x_check(i));
  }
  return s;
}

Decoded decode_transversal(const Word& outcomes, char basis, const CodeSpec& code) {
  if (basis != 'X' && basis != 'Y') throw std::invalid_argument("transversal decoding basis must be X or Y");
  Decoded d;
  Word w = outcomes;
  d.syndrome = hamming_syndrome(w, code);
  if (int pos = syndrome_position(d.syndrome)) {
    w[pos - 1] ^= 1;
    d.corrected = true;
  }
  d.logical = std::accumulate(w.begin(), w.end(), 0) & 1;
  if (basis == 'Y' && code.y_sign_negative) d.logical ^= 1;
  return d;
}

// ---------------------------------------------------------------------------
// Builders

namespace {

constexpr std::array<std::pair<int, int>, 9> kGraphEdges{
    {{4, 5}, {4, 6}, {4, 7}, {2, 3}, {2, 6}, {2, 7}, {1, 3}, {1, 5}, {1, 7}}};

Block add_graph(PatternBuilder& b, bool rotate_parity) {
  Block q;
  for (auto& id : q) id = b.prepare();
  for (auto [p, i] : kGraphEdges) b.entangle(q[p - 1], q[i - 1]);
  for (int pos = 1; pos <= 7; ++pos) {
    const bool parity = pos == 1 || pos == 2 || pos == 4;
    if (parity == rotate_parity) q[pos - 1] = b.j0(q[pos - 1]);
  }
  return q;
}

// Encoding circuit: pivots 1,2,4 in |+>, 5,6,7 in |0>, input on 3.  A CNOT
// is H_t CZ H_t; each wire remembers whether its qubit holds H·state.
Block add_circuit(PatternBuilder& b, std::optional<Angle> angle, QubitId* input) {
  Block w;
  std::array<int, 7> h{};
  for (int pos : {1, 2, 4, 5, 6, 7}) {
    w[pos - 1] = b.prepare();
    h[pos - 1] = pos >= 5;
  }
  if (angle) {
    w[2] = b.prepare(*angle);
  } else {
    w[2] = b.fresh();
    *input = w[2];
  }
  auto cnot = [&](int c, int t) {
    if (h[c - 1]) w[c - 1] = b.j0(w[c - 1]), h[c - 1] = 0;
    if (!h[t - 1]) w[t - 1] = b.j0(w[t - 1]), h[t - 1] = 1;
    b.entangle(w[c - 1], w[t - 1]);
  };
  cnot(3, 5);
  cnot(3, 6);
  for (int t : {5, 6, 7}) cnot(4, t);
  for (int t : {3, 6, 7}) cnot(2, t);
  for (int t : {3, 5, 7}) cnot(1, t);
  for (int pos = 1; pos <= 7; ++pos) {
    if (h[pos - 1]) w[pos - 1] = b.j0(w[pos - 1]);
  }
  return w;
}

Block add_verified(PatternBuilder& b, VerificationHook& hook) {
  Block f = add_graph(b, false);
  Block g = add_graph(b, true);
  for (int i = 0; i < 7; ++i) b.entangle(f[i], g[i]);
  for (int i = 0; i < 7; ++i) b.measure(g[i]);
  hook.qubits = g;
  for (auto& q : f) q = b.j0(q);
  return f;
}

Block add_plus(PatternBuilder& b, PlusSource src, std::vector<VerificationHook>& hooks) {
  switch (src) {
    case PlusSource::Circuit: return add_circuit(b, Angle::zero(), nullptr);
    case PlusSource::Graph: return add_graph(b, true);
    case PlusSource::Verified: {
      hooks.emplace_back();
      return add_verified(b, hooks.back());
    }
  }
  return {};
}

std::vector<QubitId> as_vector(const Block& b) { return {b.begin(), b.end()}; }

Word word_of(const Block& b, const std::map<QubitId, int>& signals) {
  Word w{};
  for (int i = 0; i < 7; ++i) w[i] = signals.at(b[i]) & 1;
  return w;
}

}  // namespace

Pattern build_encoder(std::optional<Angle> input_angle) {
  PatternBuilder b;
  QubitId input = 0;
  Block out = add_circuit(b, input_angle, &input);
  std::vector<QubitId> in;
  if (!input_angle) in.push_back(input);
  return b.build(in, as_vector(out));
}

Pattern build_plus_graph_encoder() {
  PatternBuilder b;
  return b.build({}, as_vector(add_graph(b, true)));
}

Pattern build_zero_graph_encoder() {
  PatternBuilder b;
  return b.build({}, as_vector(add_graph(b, false)));
}

bool VerificationHook::accepts(const std::map<QubitId, int>& signals) const {
  const Word w = word_of(qubits, signals);
  return hamming_syndrome(w) == std::array<int, 3>{} && (std::accumulate(w.begin(), w.end(), 0) & 1) == 0;
}

VerifiedPrep build_verified_plus() {
  PatternBuilder b;
  VerifiedPrep v;
  Block out = add_verified(b, v.hook);
  v.pattern = b.build({}, as_vector(out));
  return v;
}

Pattern transversal_cz() {
  std::vector<QubitId> all;
  std::vector<Command> cmds;
  for (QubitId q = 1; q <= 14; ++q) all.push_back(q);
  for (QubitId q = 1; q <= 7; ++q) cmds.push_back(Entangle{q, q + 7});
  return make_pattern(all, all, cmds);
}

Syndrome SyndromeHook::syndrome(const std::map<QubitId, int>& signals, const CodeSpec& code) const {
  Syndrome s;
  s.z_bits = hamming_syndrome(word_of(data, signals), code);
  if (!partial) s.x_bits = hamming_syndrome(word_of(resource, signals), code);
  return s;
}

PauliOp SyndromeHook::correction(const std::map<QubitId, int>& signals) const {
  PauliOp g(7);
  for (int i = 0; i < 7; ++i) {
    PauliOp local(7);
    if (signals.at(partial ? data[i] : resource[i])) local = local * PauliOp::single(7, i, 'X');
    if (!partial && signals.at(data[i])) local = local * PauliOp::single(7, i, 'Z');
    g = g * local;
  }
  return g;
}

SyndromeTeleport build_syndrome_teleport_gadget(const Block& block, const TeleportOptions& options,
                                                QubitId first_fresh) {
  PatternBuilder b(first_fresh ? first_fresh : *std::max_element(block.begin(), block.end()) + 1);
  SyndromeTeleport t;
  t.hook.data = block;
  if (options.partial) {
    t.hook.partial = true;
    Block r = add_plus(b, PlusSource::Graph, t.verification);
    for (int i = 0; i < 7; ++i) {
      b.entangle(block[i], r[i]);
      b.measure(block[i], AnglePoly(-options.partial_angle));
      b.correct_x(r[i], SignalParity::on({block[i]}));
    }
    t.hook.outputs = r;
    t.pattern = b.build(as_vector(block), as_vector(r));
    return t;
  }
  Block first = add_plus(b, options.first_half, t.verification);
  Block second = add_plus(b, options.second_half, t.verification);
  for (int i = 0; i < 7; ++i) b.entangle(first[i], second[i]);
  for (int i = 0; i < 7; ++i) {
    b.entangle(block[i], first[i]);
    b.measure(block[i]);
    b.measure(first[i]);
    b.correct_z(second[i], Angle::pi(), SignalParity::on({block[i]}));
    b.correct_x(second[i], SignalParity::on({first[i]}));
  }
  t.hook.resource = first;
  t.hook.outputs = second;
  t.pattern = b.build(as_vector(block), as_vector(second));
  return t;
}

Pattern build_syndrome_teleport(const Block& block) { return build_syndrome_teleport_gadget(block).pattern; }

}  // namespace mbqc
