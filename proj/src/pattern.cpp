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

#include "mbqc/pattern.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "mbqc/errors.hpp"

namespace mbqc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

SignalParity relabel_parity(const SignalParity& c, const std::function<QubitId(QubitId)>& map) {
  std::vector<QubitId> s;
  for (QubitId q : c.signals) s.push_back(map(q));
  SignalParity r = SignalParity::on(std::move(s));
  r.constant = c.constant;
  return r;
}

}  // namespace

std::vector<QubitId> qubits_of(const Command& c) {
  return std::visit(overloaded{
                        [](const Prepare& x) { return std::vector<QubitId>{x.qubit}; },
                        [](const Entangle& x) { return std::vector<QubitId>{x.a, x.b}; },
                        [](const Measure& x) { return std::vector<QubitId>{x.qubit}; },
                        [](const CorrectX& x) { return std::vector<QubitId>{x.qubit}; },
                        [](const CorrectZ& x) { return std::vector<QubitId>{x.qubit}; },
                    },
                    c);
}

std::vector<QubitId> signals_of(const Command& c) {
  return std::visit(overloaded{
                        [](const Prepare&) { return std::vector<QubitId>{}; },
                        [](const Entangle&) { return std::vector<QubitId>{}; },
                        [](const Measure& x) {
                          auto s = x.angle.signals();
                          return std::vector<QubitId>(s.begin(), s.end());
                        },
                        [](const CorrectX& x) { return x.cond.signals; },
                        [](const CorrectZ& x) { return x.cond.signals; },
                    },
                    c);
}

bool is_correction(const Command& c) {
  return std::holds_alternative<CorrectX>(c) || std::holds_alternative<CorrectZ>(c);
}

bool acts_on(const Command& c, QubitId q) {
  auto qs = qubits_of(c);
  return std::find(qs.begin(), qs.end(), q) != qs.end();
}

Command relabel(const Command& c, const std::function<QubitId(QubitId)>& map) {
  return std::visit(overloaded{
                        [&](const Prepare& x) -> Command { return Prepare{map(x.qubit), x.angle}; },
                        [&](const Entangle& x) -> Command { return Entangle{map(x.a), map(x.b)}; },
                        [&](const Measure& x) -> Command {
                          return Measure{map(x.qubit), x.angle.relabel(map)};
                        },
                        [&](const CorrectX& x) -> Command {
                          return CorrectX{map(x.qubit), relabel_parity(x.cond, map)};
                        },
                        [&](const CorrectZ& x) -> Command {
                          return CorrectZ{map(x.qubit), x.angle, relabel_parity(x.cond, map)};
                        },
                    },
                    c);
}

bool Pattern::is_input(QubitId q) const {
  return std::find(inputs.begin(), inputs.end(), q) != inputs.end();
}

bool Pattern::is_output(QubitId q) const {
  return std::find(outputs.begin(), outputs.end(), q) != outputs.end();
}

std::vector<QubitId> Pattern::measured_qubits() const {
  std::vector<QubitId> out;
  for (const auto& c : commands) {
    if (const auto* m = std::get_if<Measure>(&c)) out.push_back(m->qubit);
  }
  return out;
}

QubitId Pattern::max_qubit() const { return qubits.empty() ? 0 : qubits.back(); }

Pattern make_pattern(std::vector<QubitId> inputs, std::vector<QubitId> outputs,
                     std::vector<Command> commands) {
  std::set<QubitId> v(inputs.begin(), inputs.end());
  v.insert(outputs.begin(), outputs.end());
  for (const auto& c : commands) {
    for (QubitId q : qubits_of(c)) v.insert(q);
  }
  return Pattern{{v.begin(), v.end()}, std::move(inputs), std::move(outputs), std::move(commands)};
}

std::vector<Violation> validate(const Pattern& p) {
  std::vector<Violation> out;
  auto report = [&](std::size_t i, std::string rule, std::string msg) {
    out.push_back({i, std::move(rule), std::move(msg)});
  };
  std::set<QubitId> vset(p.qubits.begin(), p.qubits.end());
  if (vset.size() != p.qubits.size()) report(Violation::npos, "qubit-set", "duplicate qubit in V");
  auto check_subset = [&](const std::vector<QubitId>& s, const char* name) {
    std::set<QubitId> seen;
    for (QubitId q : s) {
      if (!vset.count(q)) report(Violation::npos, "io-subset", std::string(name) + " qubit " + std::to_string(q) + " not in V");
      if (!seen.insert(q).second) report(Violation::npos, "io-duplicate", std::string(name) + " lists qubit " + std::to_string(q) + " twice");
    }
  };
  check_subset(p.inputs, "input");
  check_subset(p.outputs, "output");

  std::set<QubitId> alive(p.inputs.begin(), p.inputs.end());
  std::set<QubitId> prepared;
  std::set<QubitId> measured;
  for (std::size_t i = 0; i < p.commands.size(); ++i) {
    const Command& c = p.commands[i];
    for (QubitId q : qubits_of(c)) {
      if (!vset.count(q)) report(i, "qubit-in-V", "qubit " + std::to_string(q) + " not in V");
      if (measured.count(q)) {
        report(i, "after-measurement", "command touches qubit " + std::to_string(q) + " after its measurement");
      }
    }
    for (QubitId s : signals_of(c)) {
      if (!measured.count(s)) {
        report(i, "future-signal", "depends on signal s" + std::to_string(s) + " not measured earlier");
      }
    }
    if (const auto* n = std::get_if<Prepare>(&c)) {
      if (p.is_input(n->qubit)) report(i, "input-prepared", "input qubit " + std::to_string(n->qubit) + " is prepared");
      if (!prepared.insert(n->qubit).second) report(i, "double-prepare", "qubit " + std::to_string(n->qubit) + " prepared twice");
      if (alive.count(n->qubit) && !p.is_input(n->qubit)) {
        report(i, "prepare-order", "qubit " + std::to_string(n->qubit) + " used before preparation");
      }
      alive.insert(n->qubit);
      continue;
    }
    if (const auto* e = std::get_if<Entangle>(&c); e && e->a == e->b) {
      report(i, "self-entangle", "entangle endpoints must differ");
    }
    for (QubitId q : qubits_of(c)) {
      if (!alive.count(q) && !measured.count(q)) {
        report(i, "prepare-order", "qubit " + std::to_string(q) + " used before preparation");
        alive.insert(q);  // report once
      }
    }
    if (const auto* m = std::get_if<Measure>(&c)) {
      if (p.is_output(m->qubit)) report(i, "output-measured", "output qubit " + std::to_string(m->qubit) + " is measured");
      if (measured.count(m->qubit)) report(i, "double-measure", "qubit " + std::to_string(m->qubit) + " measured twice");
      measured.insert(m->qubit);
      alive.erase(m->qubit);
    }
  }
  for (QubitId q : p.qubits) {
    if (!p.is_input(q) && !prepared.count(q)) report(Violation::npos, "unprepared", "qubit " + std::to_string(q) + " is never prepared");
    if (!p.is_output(q) && !measured.count(q)) report(Violation::npos, "unmeasured", "non-output qubit " + std::to_string(q) + " is never measured");
  }
  return out;
}

void require_valid(const Pattern& p) {
  auto v = validate(p);
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid pattern:";
  for (const auto& x : v) {
    os << " [" << (x.index == Violation::npos ? std::string("-") : std::to_string(x.index)) << " "
       << x.rule << ": " << x.message << "]";
  }
  throw InvalidPattern(os.str());
}

bool is_pmm(const Pattern& p) {
  for (const auto& c : p.commands) {
    if (const auto* n = std::get_if<Prepare>(&c)) {
      if (n->angle != Angle::zero() && n->angle != Angle::quarter_pi()) return false;
    } else if (const auto* m = std::get_if<Measure>(&c)) {
      if (!m->angle.all_clifford()) return false;
    } else if (const auto* z = std::get_if<CorrectZ>(&c)) {
      if (!z->angle.is_clifford()) return false;
    }
  }
  return true;
}

Pattern compose_serial(const Pattern& a, const Pattern& b,
                       std::optional<std::vector<std::pair<QubitId, QubitId>>> binding) {
  if (a.outputs.size() != b.inputs.size()) {
    throw BindingMismatch("compose_serial: |O_a| = " + std::to_string(a.outputs.size()) +
                          " but |I_b| = " + std::to_string(b.inputs.size()));
  }
  std::vector<std::pair<QubitId, QubitId>> bind;
  if (binding) {
    bind = *binding;
  } else {
    for (std::size_t i = 0; i < a.outputs.size(); ++i) bind.emplace_back(a.outputs[i], b.inputs[i]);
  }
  std::map<QubitId, QubitId> map;  // b id -> new id
  std::set<QubitId> used_a;
  for (auto [ao, bi] : bind) {
    if (!a.is_output(ao) || !b.is_input(bi) || !used_a.insert(ao).second || map.count(bi)) {
      throw BindingMismatch("compose_serial: binding is not a bijection O_a -> I_b");
    }
    map[bi] = ao;
  }
  if (map.size() != b.inputs.size()) throw BindingMismatch("compose_serial: binding not total");
  QubitId next = a.max_qubit() + 1;
  for (QubitId q : b.qubits) {
    if (!map.count(q)) map[q] = next++;
  }
  auto f = [&](QubitId q) { return map.at(q); };

  std::vector<Command> cmds = a.commands;
  for (const auto& c : b.commands) cmds.push_back(relabel(c, f));
  std::vector<QubitId> outs;
  for (QubitId q : b.outputs) outs.push_back(f(q));
  return make_pattern(a.inputs, outs, std::move(cmds));
}

Pattern shifted(const Pattern& p, QubitId offset) {
  auto f = [offset](QubitId q) { return q + offset; };
  std::vector<Command> cmds;
  for (const auto& c : p.commands) cmds.push_back(relabel(c, f));
  std::vector<QubitId> in, out;
  for (QubitId q : p.inputs) in.push_back(f(q));
  for (QubitId q : p.outputs) out.push_back(f(q));
  Pattern r = make_pattern(std::move(in), std::move(out), std::move(cmds));
  // keep V exactly (isolated qubits are impossible in valid patterns, but be exact)
  r.qubits.clear();
  for (QubitId q : p.qubits) r.qubits.push_back(f(q));
  return r;
}

Pattern compose_parallel(const Pattern& a, const Pattern& b) {
  QubitId offset = b.qubits.empty() ? 0 : a.max_qubit() + 1 - b.qubits.front();
  Pattern bs = shifted(b, offset);
  std::vector<QubitId> in = a.inputs, out = a.outputs;
  in.insert(in.end(), bs.inputs.begin(), bs.inputs.end());
  out.insert(out.end(), bs.outputs.begin(), bs.outputs.end());
  std::vector<Command> cmds = a.commands;
  cmds.insert(cmds.end(), bs.commands.begin(), bs.commands.end());
  return make_pattern(std::move(in), std::move(out), std::move(cmds));
}

Pattern build_j(Angle alpha) {
  // X_2^{s1} M_1^{-α} E_12 N_2^0
  return make_pattern({1}, {2},
                      {Prepare{2, Angle::zero()}, Entangle{1, 2}, Measure{1, AnglePoly(-alpha)},
                       CorrectX{2, SignalParity::on({1})}});
}

Pattern build_xrot(Angle alpha) {
  // X_3^{s2} Z_3^{s1} M_2^{-(-1)^{s1}α+π/4} M_1^0 E_23 E_12 N_2^{π/4} N_3^0
  AnglePoly theta = AnglePoly(Angle::quarter_pi() - alpha) + AnglePoly::term({1}, alpha * 2);
  return make_pattern({1}, {3},
                      {Prepare{3, Angle::zero()}, Prepare{2, Angle::quarter_pi()}, Entangle{1, 2},
                       Entangle{2, 3}, Measure{1, AnglePoly(Angle::zero())}, Measure{2, theta},
                       CorrectZ{3, Angle::pi(), SignalParity::on({1})},
                       CorrectX{3, SignalParity::on({2})}});
}

Pattern build_cz() { return make_pattern({1, 2}, {1, 2}, {Entangle{1, 2}}); }

Pattern build_prepare() { return make_pattern({}, {1}, {Prepare{1, Angle::zero()}}); }

Pattern build_measure() { return make_pattern({1}, {}, {Measure{1, AnglePoly(Angle::zero())}}); }

Pattern build_teleport() {
  return make_pattern({1, 2, 3}, {3},
                      {Entangle{1, 2}, Measure{1, AnglePoly(Angle::zero())},
                       Measure{2, AnglePoly(Angle::zero())},
                       CorrectZ{3, Angle::pi(), SignalParity::on({1})},
                       CorrectX{3, SignalParity::on({2})}});
}

Pattern build_teleport_with_resource() {
  Pattern resource = make_pattern({1}, {1, 2, 3},
                                  {Prepare{2, Angle::zero()}, Prepare{3, Angle::zero()}, Entangle{2, 3}});
  return compose_serial(resource, build_teleport());
}

Pattern build_identity(int n) {
  std::vector<QubitId> q;
  for (int i = 1; i <= n; ++i) q.push_back(i);
  return make_pattern(q, q, {});
}

Pattern build_named(const std::string& name, std::optional<Angle> angle) {
  auto need = [&]() {
    if (!angle) throw UnknownName("pattern " + name + " requires an angle");
    return *angle;
  };
  if (name == "J") return build_j(need());
  if (name == "X") return build_xrot(need());
  if (name == "CZ" || name == "Z") return build_cz();
  if (name == "N") return build_prepare();
  if (name == "M") return build_measure();
  if (name == "T") return build_teleport();
  if (name == "T_resource") return build_teleport_with_resource();
  if (name == "I") return build_identity(1);
  throw UnknownName("unknown pattern name: " + name);
}

}  // namespace mbqc
