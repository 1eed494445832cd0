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

#include "mbqc/stabilizer.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "mbqc/errors.hpp"

namespace mbqc {

namespace bits {

int mul_into(std::uint64_t* x1, std::uint64_t* z1, const std::uint64_t* x2, const std::uint64_t* z2, std::size_t w) {
  // Two-bit counter per bit lane, summed across words.
  std::uint64_t cnt1 = 0, cnt2 = 0;
  for (std::size_t k = 0; k < w; ++k) {
    const std::uint64_t ox = x1[k], oz = z1[k];
    x1[k] ^= x2[k];
    z1[k] ^= z2[k];
    const std::uint64_t x1z2 = ox & z2[k];
    const std::uint64_t anti = (x2[k] & oz) ^ x1z2;
    cnt2 ^= (cnt1 ^ x1[k] ^ z1[k] ^ x1z2) & anti;
    cnt1 ^= anti;
  }
  return (std::popcount(cnt1) + 2 * std::popcount(cnt2)) & 3;
}

bool anticommute(const std::uint64_t* x1, const std::uint64_t* z1, const std::uint64_t* x2, const std::uint64_t* z2,
                 std::size_t w) {
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < w; ++k) acc ^= (x1[k] & z2[k]) ^ (z1[k] & x2[k]);
  return std::popcount(acc) & 1;
}

}  // namespace bits

// ---------------------------------------------------------------------------
// PauliOp

PauliOp PauliOp::parse(const std::string& text) {
  std::size_t i = 0;
  int phase = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) phase = text[i++] == '-' ? 2 : 0;
  if (i < text.size() && text[i] == 'i') {
    phase += 1;
    ++i;
  }
  PauliOp p(text.size() - i);
  for (std::size_t q = 0; i < text.size(); ++i, ++q) p.set(q, text[i]);
  p.set_phase(phase);
  return p;
}

PauliOp PauliOp::single(std::size_t n, std::size_t q, char c) {
  PauliOp p(n);
  p.set(q, c);
  return p;
}

char PauliOp::at(std::size_t q) const {
  static const char names[] = {'I', 'X', 'Z', 'Y'};
  return names[x(q) | (z(q) << 1)];
}

void PauliOp::set(std::size_t q, char c) {
  const std::uint64_t m = std::uint64_t{1} << (q % 64);
  bool xb = c == 'X' || c == 'Y', zb = c == 'Z' || c == 'Y';
  if (c != 'I' && c != '_' && !xb && !zb) throw std::invalid_argument(std::string("bad Pauli letter ") + c);
  x_[q / 64] = xb ? x_[q / 64] | m : x_[q / 64] & ~m;
  z_[q / 64] = zb ? z_[q / 64] | m : z_[q / 64] & ~m;
}

bool PauliOp::is_identity() const {
  return std::all_of(x_.begin(), x_.end(), [](auto w) { return w == 0; }) &&
         std::all_of(z_.begin(), z_.end(), [](auto w) { return w == 0; });
}

std::size_t PauliOp::weight() const {
  std::size_t c = 0;
  for (std::size_t k = 0; k < x_.size(); ++k) c += std::popcount(x_[k] | z_[k]);
  return c;
}

PauliOp PauliOp::operator*(const PauliOp& o) const {
  if (o.n_ != n_) throw DimensionMismatch("Pauli operators of different length");
  PauliOp r = *this;
  const int log_i = bits::mul_into(r.x_.data(), r.z_.data(), o.x_.data(), o.z_.data(), x_.size());
  r.set_phase(phase_ + o.phase_ + log_i);
  return r;
}

bool PauliOp::commutes(const PauliOp& o) const {
  return !bits::anticommute(x_.data(), z_.data(), o.x_.data(), o.z_.data(), x_.size());
}

std::string PauliOp::str() const {
  static const char* prefix[] = {"+", "+i", "-", "-i"};
  std::string s = prefix[phase_];
  for (std::size_t q = 0; q < n_; ++q) s += at(q);
  return s;
}

// ---------------------------------------------------------------------------
// Tableau

Tableau::Tableau(std::size_t n) : n_(n), w_(bits::words_for(n)), xs_(2 * n * w_), zs_(2 * n * w_), sign_(2 * n) {
  for (std::size_t i = 0; i < n; ++i) {
    xr(i)[i / 64] |= std::uint64_t{1} << (i % 64);
    zr(n + i)[i / 64] |= std::uint64_t{1} << (i % 64);
  }
}

void Tableau::h(std::size_t q) {
  const std::size_t k = q / 64;
  const std::uint64_t m = std::uint64_t{1} << (q % 64);
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    std::uint64_t& x = xr(r)[k];
    std::uint64_t& z = zr(r)[k];
    if ((x & m) && (z & m)) sign_[r] ^= 1;
    const std::uint64_t d = (x ^ z) & m;
    x ^= d;
    z ^= d;
  }
}

void Tableau::s(std::size_t q) {
  const std::size_t k = q / 64;
  const std::uint64_t m = std::uint64_t{1} << (q % 64);
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    std::uint64_t x = xr(r)[k] & m;
    std::uint64_t& z = zr(r)[k];
    if (x && (z & m)) sign_[r] ^= 1;
    z ^= x;
  }
}

void Tableau::x(std::size_t q) {
  for (std::size_t r = 0; r < 2 * n_; ++r) sign_[r] ^= zb(r, q);
}

void Tableau::z(std::size_t q) {
  for (std::size_t r = 0; r < 2 * n_; ++r) sign_[r] ^= xb(r, q);
}

void Tableau::y(std::size_t q) {
  for (std::size_t r = 0; r < 2 * n_; ++r) sign_[r] ^= xb(r, q) ^ zb(r, q);
}

void Tableau::cz(std::size_t a, std::size_t b) {
  const std::uint64_t ma = std::uint64_t{1} << (a % 64), mb = std::uint64_t{1} << (b % 64);
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    const bool xa = xr(r)[a / 64] & ma, xbv = xr(r)[b / 64] & mb;
    const bool za = zr(r)[a / 64] & ma, zbv = zr(r)[b / 64] & mb;
    if (xa && xbv && (za != zbv)) sign_[r] ^= 1;
    if (xbv) zr(r)[a / 64] ^= ma;
    if (xa) zr(r)[b / 64] ^= mb;
  }
}

void Tableau::apply_pauli(const PauliOp& p) {
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    sign_[r] ^= bits::anticommute(xr(r), zr(r), p.xw(), p.zw(), w_);
  }
}

void Tableau::row_mul(std::size_t target, std::size_t source) {
  const int log_i = bits::mul_into(xr(target), zr(target), xr(source), zr(source), w_);
  sign_[target] ^= sign_[source] ^ ((log_i >> 1) & 1);
}

PauliOp Tableau::row(std::size_t r) const {
  PauliOp p(n_);
  std::copy(xr(r), xr(r) + w_, p.xw());
  std::copy(zr(r), zr(r) + w_, p.zw());
  p.set_phase(sign_[r] ? 2 : 0);
  return p;
}

PauliOp Tableau::stabilizer(std::size_t i) const { return row(n_ + i); }
PauliOp Tableau::destabilizer(std::size_t i) const { return row(i); }

std::optional<int> Tableau::peek(const PauliOp& p) const {
  if (p.phase() & 1) throw std::invalid_argument("measured Pauli must be Hermitian");
  for (std::size_t r = n_; r < 2 * n_; ++r) {
    if (bits::anticommute(xr(r), zr(r), p.xw(), p.zw(), w_)) return std::nullopt;
  }
  // Product of the stabilizers whose destabilizer partners anticommute with p.
  std::vector<std::uint64_t> ax(w_), az(w_);
  int phase = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!bits::anticommute(xr(i), zr(i), p.xw(), p.zw(), w_)) continue;
    phase += bits::mul_into(ax.data(), az.data(), xr(n_ + i), zr(n_ + i), w_) + 2 * sign_[n_ + i];
  }
  return (phase & 3) == p.phase() ? 0 : 1;
}

MeasureResult Tableau::measure(const PauliOp& p, std::mt19937_64& rng, std::optional<int> forced) {
  if (p.size() != n_) throw DimensionMismatch("Pauli length does not match tableau");
  if (p.phase() & 1) throw std::invalid_argument("measured Pauli must be Hermitian");
  std::size_t pivot = 2 * n_;
  for (std::size_t r = n_; r < 2 * n_; ++r) {
    if (bits::anticommute(xr(r), zr(r), p.xw(), p.zw(), w_)) {
      pivot = r;
      break;
    }
  }
  if (pivot == 2 * n_) {
    const int out = *peek(p);
    if (forced && *forced != out) {
      throw ForcedOutcomeImpossible("forced outcome " + std::to_string(*forced) + " on deterministic measurement of " +
                                    p.str());
    }
    return {out, true};
  }
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    if (r != pivot && bits::anticommute(xr(r), zr(r), p.xw(), p.zw(), w_)) row_mul(r, pivot);
  }
  const std::size_t d = pivot - n_;
  std::copy(xr(pivot), xr(pivot) + w_, xr(d));
  std::copy(zr(pivot), zr(pivot) + w_, zr(d));
  sign_[d] = sign_[pivot];
  const int out = forced ? *forced : static_cast<int>(rng() >> 63);
  std::copy(p.xw(), p.xw() + w_, xr(pivot));
  std::copy(p.zw(), p.zw() + w_, zr(pivot));
  sign_[pivot] = static_cast<std::uint8_t>((p.phase() == 2) ^ out);
  return {out, false};
}

bool Tableau::is_consistent() const {
  for (std::size_t i = 0; i < 2 * n_; ++i) {
    for (std::size_t j = i + 1; j < 2 * n_; ++j) {
      const bool anti = bits::anticommute(xr(i), zr(i), xr(j), zr(j), w_);
      if (anti != (i < n_ && j == i + n_)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Pattern execution

nlohmann::json to_json(const NoiseModel& m) {
  return {{"p_prep", m.p_prep}, {"p_ent", m.p_ent}, {"p_meas", m.p_meas}, {"p_idle", m.p_idle}, {"seed", m.seed}};
}

NoiseModel noise_model_from_json(const nlohmann::json& j) {
  NoiseModel m;
  m.p_prep = j.value("p_prep", 0.0);
  m.p_ent = j.value("p_ent", 0.0);
  m.p_meas = j.value("p_meas", 0.0);
  m.p_idle = j.value("p_idle", 0.0);
  m.seed = j.value("seed", std::uint64_t{0});
  for (double v : {m.p_prep, m.p_ent, m.p_meas, m.p_idle}) {
    if (!(v >= 0 && v <= 1)) throw std::invalid_argument("noise probabilities must lie in [0,1]");
  }
  return m;
}

nlohmann::json to_json(const std::vector<NoiseEvent>& log) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : log) {
    if (e.kind == NoiseEvent::Kind::MeasurementFlip) {
      out.push_back({{"command", e.command}, {"kind", "flip"}});
    } else {
      out.push_back({{"command", e.command}, {"kind", "pauli"}, {"qubits", e.qubits}, {"paulis", e.paulis}});
    }
  }
  return out;
}

std::vector<NoiseEvent> noise_log_from_json(const nlohmann::json& j) {
  std::vector<NoiseEvent> out;
  for (const auto& e : j) {
    NoiseEvent ev;
    ev.command = e.at("command").get<std::size_t>();
    if (e.at("kind") == "flip") {
      ev.kind = NoiseEvent::Kind::MeasurementFlip;
    } else {
      ev.qubits = e.at("qubits").get<std::vector<QubitId>>();
      ev.paulis = e.at("paulis").get<std::string>();
    }
    out.push_back(std::move(ev));
  }
  return out;
}

std::size_t StabRun::index_of(QubitId q) const {
  auto it = std::lower_bound(qubit_order.begin(), qubit_order.end(), q);
  if (it == qubit_order.end() || *it != q) throw InvalidPattern("unknown qubit " + std::to_string(q));
  return static_cast<std::size_t>(it - qubit_order.begin());
}

PauliOp StabRun::lift(const std::vector<QubitId>& qubits, const PauliOp& local) const {
  PauliOp out(qubit_order.size());
  for (std::size_t i = 0; i < qubits.size(); ++i) out.set(index_of(qubits[i]), local.at(i));
  out.set_phase(local.phase());
  return out;
}

PauliOp measurement_observable(std::size_t n, std::size_t q, Angle a) {
  if (!a.is_clifford()) throw NonClifford("measurement angle is not a multiple of pi/2");
  const int k = a.quarter_turns();
  PauliOp p = PauliOp::single(n, q, k % 2 ? 'Y' : 'X');
  p.set_phase(k >= 2 ? 2 : 0);
  return p;
}

void require_clifford(const Pattern& p) {
  for (std::size_t i = 0; i < p.commands.size(); ++i) {
    const auto& c = p.commands[i];
    bool ok = true;
    if (const auto* n = std::get_if<Prepare>(&c)) ok = n->angle.is_clifford();
    if (const auto* z = std::get_if<CorrectZ>(&c)) ok = z->angle.is_clifford();
    if (const auto* m = std::get_if<Measure>(&c)) ok = m->angle.all_clifford();
    if (!ok) throw NonClifford("command " + std::to_string(i) + " uses an angle outside multiples of pi/2");
  }
}

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

void prepare_input(Tableau& t, std::size_t q, const std::string& name) {
  if (name == "zero") return;
  if (name == "one") return t.x(q);
  t.h(q);
  if (name == "plus") return;
  if (name == "minus") return t.z(q);
  t.s(q);
  if (name == "plus_pi2") return;
  if (name == "minus_pi2") return t.z(q);
  throw UnknownName("unknown stabilizer input state '" + name + "'");
}

void apply_single(Tableau& t, std::size_t q, char c) {
  if (c == 'X') t.x(q);
  if (c == 'Y') t.y(q);
  if (c == 'Z') t.z(q);
}

constexpr char kSingle[] = {'X', 'Y', 'Z'};
constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};

}  // namespace

StabProgram::StabProgram(const Pattern& p) : pattern_(p) {
  require_valid(p);
  require_clifford(p);
  const std::size_t n = p.qubits.size();
  auto idx = [&](QubitId q) {
    return static_cast<std::uint32_t>(std::lower_bound(p.qubits.begin(), p.qubits.end(), q) - p.qubits.begin());
  };
  auto cond_of = [&](const SignalParity& c, Op& op) {
    op.cond_const = c.constant;
    for (QubitId q : c.signals) op.cond.push_back(idx(q));
  };
  std::vector<char> live(n, 0);
  for (QubitId q : p.inputs) live[idx(q)] = 1;
  for (const auto& c : p.commands) {
    Op op;
    if (const auto* np = std::get_if<Prepare>(&c)) {
      op.kind = Op::Prep;
      op.a = idx(np->qubit);
      op.k = np->angle.quarter_turns();
      live[op.a] = 1;
    } else if (const auto* e = std::get_if<Entangle>(&c)) {
      op.kind = Op::Ent;
      op.a = idx(e->a);
      op.b = idx(e->b);
    } else if (const auto* m = std::get_if<Measure>(&c)) {
      op.kind = Op::Meas;
      op.a = idx(m->qubit);
      for (const auto& [mono, coeff] : m->angle.terms()) {
        if (mono.empty()) {
          op.k = coeff.quarter_turns();
          continue;
        }
        std::vector<std::uint32_t> ids;
        for (QubitId q : mono) ids.push_back(idx(q));
        op.terms.emplace_back(std::move(ids), coeff.quarter_turns());
      }
      live[op.a] = 0;
    } else if (const auto* x = std::get_if<CorrectX>(&c)) {
      op.kind = Op::X;
      op.a = idx(x->qubit);
      cond_of(x->cond, op);
    } else if (const auto* z = std::get_if<CorrectZ>(&c)) {
      op.kind = Op::Z;
      op.a = idx(z->qubit);
      op.k = z->angle.quarter_turns();
      cond_of(z->cond, op);
    }
    std::vector<std::uint32_t> idle;
    for (std::uint32_t q = 0; q < n; ++q) {
      if (live[q] && !acts_on(c, p.qubits[q])) idle.push_back(q);
    }
    idle_.push_back(std::move(idle));
    ops_.push_back(std::move(op));
  }
}

std::vector<NoiseEvent> StabProgram::sample_noise(const NoiseModel& m, std::mt19937_64& rng) const {
  std::vector<NoiseEvent> out;
  if (m.is_noiseless()) return out;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto& q = pattern_.qubits;
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Op& op = ops_[i];
    if (op.kind == Op::Prep && m.p_prep > 0 && u(rng) < m.p_prep) {
      out.push_back({i, NoiseEvent::Kind::Pauli, {q[op.a]}, std::string(1, kSingle[rng() % 3])});
    } else if (op.kind == Op::Ent && m.p_ent > 0 && u(rng) < m.p_ent) {
      const int k = 1 + static_cast<int>(rng() % 15);
      out.push_back({i, NoiseEvent::Kind::Pauli, {q[op.a], q[op.b]}, std::string{kLetters[k / 4], kLetters[k % 4]}});
    } else if (op.kind == Op::Meas && m.p_meas > 0 && u(rng) < m.p_meas) {
      out.push_back({i, NoiseEvent::Kind::MeasurementFlip, {}, {}});
    }
    if (m.p_idle > 0) {
      for (std::uint32_t k : idle_[i]) {
        if (u(rng) < m.p_idle) out.push_back({i, NoiseEvent::Kind::Pauli, {q[k]}, std::string(1, kSingle[rng() % 3])});
      }
    }
  }
  return out;
}

StabRun StabProgram::run(const StabOptions& options) const {
  const Pattern& p = pattern_;
  const std::size_t n = p.qubits.size();
  StabRun run;
  run.qubit_order = p.qubits;
  run.tableau = Tableau(n);
  Tableau& t = run.tableau;
  std::mt19937_64 rng(options.seed);

  std::vector<NoiseEvent> sampled;
  const std::vector<NoiseEvent>* events = &sampled;
  if (options.replay) {
    events = &*options.replay;
  } else if (!options.noise.is_noiseless()) {
    std::mt19937_64 noise_rng(splitmix64(options.seed, 1));
    sampled = sample_noise(options.noise, noise_rng);
  }

  for (QubitId q : p.inputs) {
    auto it = options.input_states.find(q);
    prepare_input(t, run.index_of(q), it != options.input_states.end() ? it->second : options.input_state);
  }
  std::vector<std::int8_t> sig(n, -1);
  auto cond = [&](const Op& op) {
    bool v = op.cond_const;
    for (std::uint32_t k : op.cond) v ^= sig[k] != 0;
    return v;
  };
  std::vector<int> forced(n, -1);
  for (auto [q, v] : options.forced) forced[run.index_of(q)] = v;
  PauliOp obs(n);
  std::size_t ev = 0;

  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Op& op = ops_[i];
    bool flip = false;
    const std::size_t first_event = ev;
    while (ev < events->size() && (*events)[ev].command == i) {
      if ((*events)[ev].kind == NoiseEvent::Kind::MeasurementFlip) flip = true;
      ++ev;
    }
    switch (op.kind) {
      case Op::Prep:
        t.h(op.a);
        for (int k = 0; k < op.k; ++k) t.s(op.a);
        break;
      case Op::Ent:
        t.cz(op.a, op.b);
        break;
      case Op::Meas: {
        int k = op.k;
        for (const auto& [ids, c] : op.terms) {
          bool on = true;
          for (std::uint32_t q : ids) on = on && sig[q];
          if (on) k += c;
        }
        k &= 3;
        obs.set(op.a, k % 2 ? 'Y' : 'X');
        obs.set_phase(k >= 2 ? 2 : 0);
        std::optional<int> f;
        if (forced[op.a] >= 0) f = forced[op.a] ^ int(flip);
        const auto r = t.measure(obs, rng, f);
        obs.set(op.a, 'I');
        sig[op.a] = static_cast<std::int8_t>(r.outcome ^ int(flip));
        break;
      }
      case Op::X:
        if (cond(op)) t.x(op.a);
        break;
      case Op::Z:
        if (cond(op)) {
          for (int k = 0; k < op.k; ++k) t.s(op.a);
        }
        break;
    }
    for (std::size_t e = first_event; e < ev; ++e) {
      const NoiseEvent& ne = (*events)[e];
      for (std::size_t k = 0; k < ne.qubits.size(); ++k) apply_single(t, run.index_of(ne.qubits[k]), ne.paulis[k]);
      run.noise_log.push_back(ne);
    }
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (sig[q] >= 0) run.signals[p.qubits[q]] = sig[q];
  }
  return run;
}

StabRun apply(const Pattern& p, const StabOptions& options) { return StabProgram(p).run(options); }

}  // namespace mbqc
