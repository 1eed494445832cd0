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

#include "mbqc/rewrite.hpp"

#include <algorithm>
#include <map>

#include "mbqc/errors.hpp"

namespace mbqc {

namespace {

QubitId other_end(const Entangle& e, QubitId q) { return e.a == q ? e.b : e.a; }

bool references(const Command& c, QubitId signal) {
  auto s = signals_of(c);
  return std::find(s.begin(), s.end(), signal) != s.end();
}

bool shares_qubit(const Command& a, const Command& b) {
  for (QubitId q : qubits_of(a)) {
    if (acts_on(b, q)) return true;
  }
  return false;
}

// True if `a` executing first then `b` may be reordered to b then a.
bool can_swap(const Command& a, const Command& b) {
  if (shares_qubit(a, b)) {
    // Same-qubit corrections commute up to a global phase when both are X,
    // both are Z, or the Z is a Pauli Z.
    if (!is_correction(a) || !is_correction(b)) return false;
    if (a.index() == b.index()) return true;
    const auto* z = std::get_if<CorrectZ>(&a);
    if (!z) z = std::get_if<CorrectZ>(&b);
    return z->angle == Angle::pi();
  }
  if (const auto* m = std::get_if<Measure>(&a); m && references(b, m->qubit)) return false;
  if (const auto* m = std::get_if<Measure>(&b); m && references(a, m->qubit)) return false;
  return true;
}

QubitId correction_qubit(const Command& c) {
  if (const auto* x = std::get_if<CorrectX>(&c)) return x->qubit;
  return std::get<CorrectZ>(c).qubit;
}

// Canonical tail order: qubit ascending, X before Z, Z sorted by angle then condition.
bool tail_less(const Command& a, const Command& b) {
  QubitId qa = correction_qubit(a), qb = correction_qubit(b);
  if (qa != qb) return qa < qb;
  bool xa = std::holds_alternative<CorrectX>(a), xb = std::holds_alternative<CorrectX>(b);
  if (xa != xb) return xa;
  if (xa) return std::get<CorrectX>(a).cond < std::get<CorrectX>(b).cond;
  const auto& za = std::get<CorrectZ>(a);
  const auto& zb = std::get<CorrectZ>(b);
  if (za.angle != zb.angle) return za.angle < zb.angle;
  return za.cond < zb.cond;
}

bool combinable(const Command& a, const Command& b) {
  if (const auto* xa = std::get_if<CorrectX>(&a)) {
    const auto* xb = std::get_if<CorrectX>(&b);
    return xb && xa->qubit == xb->qubit;
  }
  const auto* za = std::get_if<CorrectZ>(&a);
  const auto* zb = std::get_if<CorrectZ>(&b);
  if (!za || !zb || za->qubit != zb->qubit) return false;
  return za->cond == zb->cond || (za->angle == Angle::pi() && zb->angle == Angle::pi());
}

void check_index(const std::vector<Command>& seq, std::size_t i, std::size_t need) {
  if (i + need > seq.size()) throw NotAdjacent("rewrite step position out of range");
}

}  // namespace

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::FreeCommute: return "FreeCommute";
    case Rule::MergeZ: return "MergeZ";
    case Rule::MergeX: return "MergeX";
    case Rule::CommuteEX: return "CommuteEX";
    case Rule::CommuteEZ: return "CommuteEZ";
    case Rule::CombineX: return "CombineX";
    case Rule::CombineZ: return "CombineZ";
  }
  return "?";
}

Measure merge_z(const Measure& m, const CorrectZ& z) {
  if (m.qubit != z.qubit) throw NotAdjacent("merge_z: correction and measurement on different qubits");
  IntPoly cond = z.cond.as_int_poly(z.angle.period());
  return Measure{m.qubit, m.angle - AnglePoly::from_int_poly(cond, z.angle)};
}

Measure merge_x(const Measure& m, const CorrectX& x) {
  if (m.qubit != x.qubit) throw NotAdjacent("merge_x: correction and measurement on different qubits");
  return Measure{m.qubit, m.angle.negate_if(x.cond)};
}

std::vector<Command> commute_ex(const CorrectX& x, const Entangle& e) {
  if (e.a != x.qubit && e.b != x.qubit) return {e, x};
  return {e, x, CorrectZ{other_end(e, x.qubit), Angle::pi(), x.cond}};
}

std::vector<Command> commute_ez(const CorrectZ& z, const Entangle& e) { return {e, z}; }

void apply_step(std::vector<Command>& seq, const RewriteStep& step) {
  const std::size_t i = step.position;
  switch (step.rule) {
    case Rule::FreeCommute: {
      check_index(seq, i, 1);
      std::ptrdiff_t target = static_cast<std::ptrdiff_t>(i) + step.span;
      if (target < 0 || target >= static_cast<std::ptrdiff_t>(seq.size())) {
        throw NotAdjacent("FreeCommute target out of range");
      }
      const std::size_t t = static_cast<std::size_t>(target);
      if (t > i) {
        for (std::size_t k = i + 1; k <= t; ++k) {
          if (!can_swap(seq[i], seq[k])) throw NotAdjacent("FreeCommute across a non-commuting command");
        }
        std::rotate(seq.begin() + i, seq.begin() + i + 1, seq.begin() + t + 1);
      } else if (t < i) {
        for (std::size_t k = t; k < i; ++k) {
          if (!can_swap(seq[k], seq[i])) throw NotAdjacent("FreeCommute across a non-commuting command");
        }
        std::rotate(seq.begin() + t, seq.begin() + i, seq.begin() + i + 1);
      }
      return;
    }
    case Rule::MergeZ: {
      check_index(seq, i, 2);
      const auto* z = std::get_if<CorrectZ>(&seq[i]);
      const auto* m = std::get_if<Measure>(&seq[i + 1]);
      if (!z || !m) throw NotAdjacent("MergeZ needs [Z, M]");
      seq[i + 1] = merge_z(*m, *z);
      seq.erase(seq.begin() + i);
      return;
    }
    case Rule::MergeX: {
      check_index(seq, i, 2);
      const auto* x = std::get_if<CorrectX>(&seq[i]);
      const auto* m = std::get_if<Measure>(&seq[i + 1]);
      if (!x || !m) throw NotAdjacent("MergeX needs [X, M]");
      seq[i + 1] = merge_x(*m, *x);
      seq.erase(seq.begin() + i);
      return;
    }
    case Rule::CommuteEX: {
      check_index(seq, i, 2);
      const auto* x = std::get_if<CorrectX>(&seq[i]);
      const auto* e = std::get_if<Entangle>(&seq[i + 1]);
      if (!x || !e || (e->a != x->qubit && e->b != x->qubit)) throw NotAdjacent("CommuteEX needs [X_i, E_ij]");
      auto out = commute_ex(*x, *e);
      seq.erase(seq.begin() + i, seq.begin() + i + 2);
      seq.insert(seq.begin() + i, out.begin(), out.end());
      return;
    }
    case Rule::CommuteEZ: {
      check_index(seq, i, 2);
      const auto* z = std::get_if<CorrectZ>(&seq[i]);
      const auto* e = std::get_if<Entangle>(&seq[i + 1]);
      if (!z || !e || (e->a != z->qubit && e->b != z->qubit)) throw NotAdjacent("CommuteEZ needs [Z_i, E_ij]");
      std::swap(seq[i], seq[i + 1]);
      return;
    }
    case Rule::CombineX: {
      check_index(seq, i, 2);
      const auto* a = std::get_if<CorrectX>(&seq[i]);
      const auto* b = std::get_if<CorrectX>(&seq[i + 1]);
      if (!a || !b || a->qubit != b->qubit) throw NotAdjacent("CombineX needs two X on one qubit");
      CorrectX merged{a->qubit, a->cond ^ b->cond};
      seq.erase(seq.begin() + i, seq.begin() + i + 2);
      if (!merged.cond.is_never()) seq.insert(seq.begin() + i, merged);
      return;
    }
    case Rule::CombineZ: {
      check_index(seq, i, 2);
      const auto* a = std::get_if<CorrectZ>(&seq[i]);
      const auto* b = std::get_if<CorrectZ>(&seq[i + 1]);
      if (!a || !b || !combinable(seq[i], seq[i + 1])) throw NotAdjacent("CombineZ needs two combinable Z on one qubit");
      CorrectZ merged = a->cond == b->cond ? CorrectZ{a->qubit, a->angle + b->angle, a->cond}
                                           : CorrectZ{a->qubit, Angle::pi(), a->cond ^ b->cond};
      seq.erase(seq.begin() + i, seq.begin() + i + 2);
      if (!merged.cond.is_never() && !merged.angle.is_zero()) seq.insert(seq.begin() + i, merged);
      return;
    }
  }
}

Pattern replay(const Pattern& p, const std::vector<RewriteStep>& trace) {
  Pattern out = p;
  for (const auto& s : trace) apply_step(out.commands, s);
  return out;
}

namespace {

class LocalRewriter {
 public:
  LocalRewriter(std::vector<Command> seq, std::vector<RewriteStep>& trace)
      : seq_(std::move(seq)), trace_(trace) {}

  std::vector<Command> run() {
    front_ = hoist_preparations();
    for (std::size_t idx = seq_.size(); idx-- > front_;) {
      if (idx < seq_.size() && is_correction(seq_[idx])) push(idx);
    }
    hoist_entanglements();
    normalize_tail();
    return std::move(seq_);
  }

 private:
  void step(Rule r, std::size_t pos, std::ptrdiff_t span = 0) {
    RewriteStep s{r, pos, span};
    apply_step(seq_, s);
    trace_.push_back(s);
  }

  std::size_t hoist_preparations() {
    std::size_t n = 0;
    for (std::size_t i = 0; i < seq_.size(); ++i) {
      if (!std::holds_alternative<Prepare>(seq_[i])) continue;
      if (i != n) step(Rule::FreeCommute, i, static_cast<std::ptrdiff_t>(n) - static_cast<std::ptrdiff_t>(i));
      ++n;
    }
    return n;
  }

  // Move the correction at `pos` toward the end until it merges into its
  // measurement or joins the trailing block of output corrections.
  void push(std::size_t pos) {
    for (;;) {
      const QubitId q = correction_qubit(seq_[pos]);
      std::size_t next = pos + 1;
      while (next < seq_.size() && !is_correction(seq_[next]) && !acts_on(seq_[next], q)) ++next;
      const std::size_t dest = next - 1;
      if (dest != pos) step(Rule::FreeCommute, pos, static_cast<std::ptrdiff_t>(dest - pos));
      pos = dest;
      if (next >= seq_.size() || is_correction(seq_[pos + 1])) return;
      const Command& nxt = seq_[pos + 1];
      const bool is_x = std::holds_alternative<CorrectX>(seq_[pos]);
      if (std::holds_alternative<Measure>(nxt)) {
        step(is_x ? Rule::MergeX : Rule::MergeZ, pos);
        return;
      }
      // Entangle touching q.
      if (is_x) {
        step(Rule::CommuteEX, pos);
        push(pos + 2);
      } else {
        step(Rule::CommuteEZ, pos);
      }
      pos += 1;
    }
  }

  void hoist_entanglements() {
    std::size_t n = front_;
    for (std::size_t i = front_; i < seq_.size(); ++i) {
      if (!std::holds_alternative<Entangle>(seq_[i])) continue;
      if (i != n) step(Rule::FreeCommute, i, static_cast<std::ptrdiff_t>(n) - static_cast<std::ptrdiff_t>(i));
      ++n;
    }
  }

  // Insertion sort by FreeCommute moves; a command never passes one it does
  // not commute with.
  void sort_tail(std::size_t start) {
    for (std::size_t i = start + 1; i < seq_.size(); ++i) {
      std::size_t j = i;
      while (j > start && tail_less(seq_[i], seq_[j - 1]) && can_swap(seq_[j - 1], seq_[i])) --j;
      if (j != i) step(Rule::FreeCommute, i, static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i));
    }
  }

  void normalize_tail() {
    std::size_t start = seq_.size();
    while (start > 0 && is_correction(seq_[start - 1])) --start;
    sort_tail(start);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = start; i + 1 < seq_.size(); ++i) {
        if (!combinable(seq_[i], seq_[i + 1])) continue;
        step(std::holds_alternative<CorrectX>(seq_[i]) ? Rule::CombineX : Rule::CombineZ, i);
        changed = true;
        break;
      }
      if (changed) {
        // re-sort: a merged Z may have a new angle
        sort_tail(start);
      }
    }
  }

  std::vector<Command> seq_;
  std::vector<RewriteStep>& trace_;
  std::size_t front_ = 0;
};

std::vector<Command> normalize_corrections(std::vector<Command> tail) {
  std::vector<RewriteStep> unused;
  // Reuse the local tail normalizer on a correction-only list.
  LocalRewriter r(std::move(tail), unused);
  return r.run();
}

std::vector<Command> frame_propagate(const std::vector<Command>& seq, const Pattern& p) {
  std::vector<Command> preps, ents, meas;
  std::map<QubitId, std::vector<Command>> pending;
  for (const auto& c : seq) {
    if (std::holds_alternative<Prepare>(c)) {
      preps.push_back(c);
    } else if (const auto* e = std::get_if<Entangle>(&c)) {
      std::vector<std::pair<QubitId, SignalParity>> emitted;
      for (QubitId u : {e->a, e->b}) {
        for (const auto& pc : pending[u]) {
          if (const auto* x = std::get_if<CorrectX>(&pc)) emitted.emplace_back(other_end(*e, u), x->cond);
        }
      }
      for (auto& [v, cond] : emitted) pending[v].push_back(CorrectZ{v, Angle::pi(), cond});
      ents.push_back(c);
    } else if (const auto* m = std::get_if<Measure>(&c)) {
      Measure merged = *m;
      auto& list = pending[m->qubit];
      for (auto it = list.rbegin(); it != list.rend(); ++it) {
        if (const auto* x = std::get_if<CorrectX>(&*it)) {
          merged = merge_x(merged, *x);
        } else {
          merged = merge_z(merged, std::get<CorrectZ>(*it));
        }
      }
      list.clear();
      meas.push_back(merged);
    } else {
      pending[correction_qubit(c)].push_back(c);
    }
  }
  std::vector<Command> tail;
  for (auto& [q, list] : pending) {
    if (!p.is_output(q)) continue;
    tail.insert(tail.end(), list.begin(), list.end());
  }
  tail = normalize_corrections(std::move(tail));
  std::vector<Command> out = std::move(preps);
  out.insert(out.end(), ents.begin(), ents.end());
  out.insert(out.end(), meas.begin(), meas.end());
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

}  // namespace

StandardizeResult standardize(const Pattern& p, Strategy strategy) {
  StandardizeResult r{p, {}};
  if (strategy == Strategy::LocalRewrite) {
    LocalRewriter rw(p.commands, r.trace);
    r.pattern.commands = rw.run();
  } else {
    r.pattern.commands = frame_propagate(p.commands, p);
  }
  return r;
}

bool is_standard(const Pattern& p) {
  int stage = 0;  // 0 N, 1 E, 2 M, 3 C
  for (const auto& c : p.commands) {
    int s = std::holds_alternative<Prepare>(c)    ? 0
            : std::holds_alternative<Entangle>(c) ? 1
            : std::holds_alternative<Measure>(c)  ? 2
                                                  : 3;
    if (s < stage) return false;
    stage = s;
    if (s == 3 && !p.is_output(correction_qubit(c))) return false;
  }
  return true;
}

nlohmann::json trace_to_json(const std::vector<RewriteStep>& trace) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : trace) {
    nlohmann::json j{{"rule", rule_name(s.rule)}, {"position", s.position}};
    if (s.rule == Rule::FreeCommute) j["span"] = s.span;
    out.push_back(j);
  }
  return out;
}

std::vector<RewriteStep> trace_from_json(const nlohmann::json& j) {
  static const std::map<std::string, Rule> names{
      {"FreeCommute", Rule::FreeCommute}, {"MergeZ", Rule::MergeZ},       {"MergeX", Rule::MergeX},
      {"CommuteEX", Rule::CommuteEX},     {"CommuteEZ", Rule::CommuteEZ}, {"CombineX", Rule::CombineX},
      {"CombineZ", Rule::CombineZ}};
  std::vector<RewriteStep> out;
  for (const auto& s : j) {
    out.push_back({names.at(s.at("rule").get<std::string>()), s.at("position").get<std::size_t>(),
                   s.value("span", std::ptrdiff_t{0})});
  }
  return out;
}

}  // namespace mbqc
