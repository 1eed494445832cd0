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

#include "mbqc/ft_transform.hpp"

#include "mbqc/builder.hpp"
#include "mbqc/errors.hpp"
#include "mbqc/pattern_io.hpp"
#include "mbqc/rewrite.hpp"

namespace mbqc {

namespace {

// Parity of a block's signals, reduced modulo `period`:
// p <- p(1 - 2s) + s for each signal.
IntPoly block_parity(const Block& b, std::int64_t period) {
  IntPoly p;
  for (QubitId q : b) {
    IntPoly scaled = int_poly_mul(p, IntPoly{{{}, 1}, {{q}, -2}}, period);
    int_poly_add_term(scaled, {q}, 1);
    if (period) {
      for (auto it = scaled.begin(); it != scaled.end();) {
        it->second = ((it->second % period) + period) % period;
        it = it->second ? std::next(it) : scaled.erase(it);
      }
    }
    p = std::move(scaled);
  }
  return p;
}

class Transformer {
 public:
  Transformer(const Pattern& p, const FtOptions& o) : src_(p), opt_(o) {}

  FtResult run() {
    for (QubitId q : src_.inputs) {
      Block b;
      for (auto& id : b) id = builder_.fresh();
      wire_[q] = {b, false, false};
      meta_.input_blocks[q] = b;
      for (QubitId id : b) inputs_.push_back(id);
    }
    // fresh ids for everything else start after the input blocks
    for (const auto& c : src_.commands) gadget(c);
    std::vector<QubitId> outputs;
    for (QubitId q : src_.outputs) {
      meta_.output_blocks[q] = wire_.at(q).block;
      for (QubitId id : wire_.at(q).block) outputs.push_back(id);
    }
    Pattern raw = builder_.build(inputs_, outputs);
    Pattern std_form = standardize(raw, Strategy::FramePropagation).pattern;
    while (!std_form.commands.empty() && is_correction(std_form.commands.back())) {
      meta_.output_frame.insert(meta_.output_frame.begin(), std_form.commands.back());
      std_form.commands.pop_back();
    }
    return {std::move(std_form), std::move(meta_)};
  }

 private:
  struct Wire {
    Block block;
    bool used = false;          // a gadget has acted since the last teleport
    bool after_entangle = false;
  };

  void maybe_teleport(QubitId q) {
    Wire& w = wire_.at(q);
    const bool want = opt_.teleport_every_gadget ? w.used : w.after_entangle;
    if (!want) return;
    TeleportOptions to;
    to.partial = opt_.partial_syndrome;
    to.second_half = opt_.verify_teleport_output ? PlusSource::Verified : PlusSource::Graph;
    auto t = build_syndrome_teleport_gadget(w.block, to, builder_.next());
    for (const auto& c : t.pattern.commands) builder_.push(c);
    builder_.reserve_through(t.pattern.max_qubit());
    meta_.syndromes.push_back(t.hook);
    for (const auto& v : t.verification) meta_.verifications.push_back(v);
    w.block = t.hook.outputs;
    w.used = false;
    w.after_entangle = false;
  }

  QubitId max_id() const { return builder_.next() - 1; }

  Block append(const Pattern& gadget_pattern) {
    const QubitId offset = max_id();
    Pattern s = shifted(gadget_pattern, offset);
    for (const auto& c : s.commands) builder_.push(c);
    builder_.reserve_through(s.max_qubit());
    Block b;
    std::copy(s.outputs.begin(), s.outputs.end(), b.begin());
    return b;
  }

  std::function<IntPoly(QubitId)> parity_sub(std::int64_t period) const {
    return [this, period](QubitId k) { return block_parity(measured_.at(k), period); };
  }

  SignalParity lift(const SignalParity& c) const {
    std::vector<QubitId> sig;
    for (QubitId k : c.signals) {
      for (QubitId q : measured_.at(k)) sig.push_back(q);
    }
    SignalParity r = SignalParity::on(sig);
    r.constant = c.constant;
    return r;
  }

  void gadget(const Command& c) {
    if (const auto* n = std::get_if<Prepare>(&c)) {
      Block b;
      if (n->angle.is_zero()) {
        if (opt_.verify_prep) {
          auto v = build_verified_plus();
          const QubitId offset = max_id();
          b = append(v.pattern);
          VerificationHook h = v.hook;
          for (auto& q : h.qubits) q += offset;
          meta_.verifications.push_back(h);
        } else {
          b = append(build_plus_graph_encoder());
        }
      } else {
        b = append(build_encoder(n->angle));
      }
      wire_[n->qubit] = {b, true, false};
    } else if (const auto* e = std::get_if<Entangle>(&c)) {
      maybe_teleport(e->a);
      maybe_teleport(e->b);
      const Block& a = wire_.at(e->a).block;
      const Block& b = wire_.at(e->b).block;
      for (int i = 0; i < 7; ++i) builder_.entangle(a[i], b[i]);
      for (QubitId q : {e->a, e->b}) wire_.at(q).used = wire_.at(q).after_entangle = true;
    } else if (const auto* m = std::get_if<Measure>(&c)) {
      maybe_teleport(m->qubit);
      const Block& b = wire_.at(m->qubit).block;
      // logical Z(β) is physical Z(-β) on every qubit, so angles are negated
      AnglePoly phys = (-m->angle);
      AnglePoly lifted;
      for (const auto& [mono, coeff] : phys.terms()) {
        lifted = lifted + AnglePoly::term(mono, coeff).substitute(parity_sub(coeff.period()));
      }
      for (QubitId q : b) builder_.measure(q, lifted);
      const int k = m->angle.constant().is_clifford() ? m->angle.constant().quarter_turns() : 0;
      meta_.decodes.push_back({m->qubit, b, m->angle, k % 2 ? 'Y' : 'X'});
      measured_[m->qubit] = b;
    } else if (const auto* x = std::get_if<CorrectX>(&c)) {
      for (QubitId q : wire_.at(x->qubit).block) builder_.correct_x(q, lift(x->cond));
    } else if (const auto* z = std::get_if<CorrectZ>(&c)) {
      for (QubitId q : wire_.at(z->qubit).block) builder_.correct_z(q, -z->angle, lift(z->cond));
    }
  }

  const Pattern& src_;
  FtOptions opt_;
  PatternBuilder builder_{1};
  std::map<QubitId, Wire> wire_;
  std::map<QubitId, Block> measured_;
  std::vector<QubitId> inputs_;
  FtMetadata meta_;
};

Word word_of(const Block& b, const std::map<QubitId, int>& s) {
  Word w{};
  for (int i = 0; i < 7; ++i) w[i] = s.at(b[i]) & 1;
  return w;
}

}  // namespace

int FtMetadata::logical_outcome(const DecodeHook& h, const std::map<QubitId, int>& signals) const {
  // Physical angles are negated, so a logical Y measurement reads -Y on each
  // qubit and the product of the seven is Ȳ itself: decode as X-type parity.
  return decode_transversal(word_of(h.block, signals), 'X').logical;
}

bool FtMetadata::accepted(const std::map<QubitId, int>& signals, bool require_clean_syndromes) const {
  for (const auto& v : verifications) {
    if (!v.accepts(signals)) return false;
  }
  if (require_clean_syndromes) {
    for (const auto& s : syndromes) {
      if (!s.syndrome(signals).trivial()) return false;
    }
  }
  return true;
}

FtResult ft_transform(const Pattern& p, const FtOptions& options) {
  require_valid(p);
  if (!is_pmm(p)) throw NotPMM("pattern is outside the Pauli measurement model");
  return Transformer(p, options).run();
}

Pattern with_output_frame(const FtResult& r) {
  Pattern p = r.pattern;
  p.commands.insert(p.commands.end(), r.meta.output_frame.begin(), r.meta.output_frame.end());
  return p;
}

Pattern with_encoded_inputs(const FtResult& r, const Pattern& body) {
  QubitId next = body.max_qubit() + 1;
  std::vector<Command> cmds;
  std::vector<QubitId> inputs;
  const Pattern enc = build_encoder();
  for (const auto& [logical, block] : r.meta.input_blocks) {
    (void)logical;
    std::map<QubitId, QubitId> map;
    for (std::size_t i = 0; i < 7; ++i) map[enc.outputs[i]] = block[i];
    for (QubitId q : enc.qubits) {
      if (!map.count(q)) map[q] = next++;
    }
    for (const auto& c : enc.commands) cmds.push_back(relabel(c, [&](QubitId q) { return map.at(q); }));
    inputs.push_back(map.at(enc.inputs[0]));
  }
  cmds.insert(cmds.end(), body.commands.begin(), body.commands.end());
  return make_pattern(inputs, body.outputs, cmds);
}

nlohmann::json to_json(const FtMetadata& m) {
  auto blocks = [](const std::map<QubitId, Block>& bs) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [q, b] : bs) j[std::to_string(q)] = b;
    return j;
  };
  nlohmann::json j;
  j["input_blocks"] = blocks(m.input_blocks);
  j["output_blocks"] = blocks(m.output_blocks);
  j["decode_hooks"] = nlohmann::json::array();
  for (const auto& d : m.decodes) {
    j["decode_hooks"].push_back({{"logical", d.logical},
                                 {"block", d.block},
                                 {"logical_angle", poly_to_json(d.logical_angle)},
                                 {"basis", std::string(1, d.basis)},
                                 {"decoder", "hamming7"}});
  }
  j["syndrome_hooks"] = nlohmann::json::array();
  for (const auto& s : m.syndromes) {
    nlohmann::json h{{"data", s.data}, {"outputs", s.outputs}, {"partial", s.partial}};
    if (!s.partial) h["resource"] = s.resource;
    j["syndrome_hooks"].push_back(h);
  }
  j["verification_hooks"] = nlohmann::json::array();
  for (const auto& v : m.verifications) j["verification_hooks"].push_back({{"qubits", v.qubits}, {"accept", "trivial syndrome and even parity"}});
  j["output_frame"] = nlohmann::json::array();
  for (const auto& c : m.output_frame) j["output_frame"].push_back(command_to_json(c));
  return j;
}

}  // namespace mbqc
