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

#include "mbqc/angle.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace mbqc {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

Angle::Angle(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("Angle: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  num /= g;
  den /= g;
  num_ = mod(num, 2 * den);
  den_ = den;
  if (num_ == 0) den_ = 1;
}

Angle Angle::operator+(const Angle& o) const {
  std::int64_t l = std::lcm(den_, o.den_);
  return {num_ * (l / den_) + o.num_ * (l / o.den_), l};
}

Angle Angle::operator*(std::int64_t k) const {
  // Keep the product small: num_ < 2·den_, so reduce k first.
  return {num_ * mod(k, 2 * den_), den_};
}

std::int64_t Angle::period() const {
  if (num_ == 0) return 1;
  return 2 * den_ / std::gcd(num_, 2 * den_);
}

int Angle::quarter_turns() const {
  if (!is_clifford()) throw std::logic_error("Angle::quarter_turns on non-Clifford angle");
  return static_cast<int>(mod(num_ * (2 / den_), 4));
}

double Angle::radians() const {
  return static_cast<double>(num_) * std::numbers::pi / static_cast<double>(den_);
}

Monomial monomial_union(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void int_poly_add_term(IntPoly& p, const Monomial& m, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = p.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

IntPoly int_poly_mul(const IntPoly& a, const IntPoly& b, std::int64_t modulus) {
  IntPoly out;
  for (const auto& [ma, ca] : a) {
    std::int64_t ra = modulus > 0 ? mod(ca, modulus) : ca;
    if (ra == 0) continue;
    for (const auto& [mb, cb] : b) {
      std::int64_t rb = modulus > 0 ? mod(cb, modulus) : cb;
      if (rb == 0) continue;
      std::int64_t c = modulus > 0 ? mod(ra * rb, modulus) : ra * rb;
      int_poly_add_term(out, monomial_union(ma, mb), c);
    }
  }
  if (modulus > 0) {
    for (auto it = out.begin(); it != out.end();) {
      it->second = mod(it->second, modulus);
      it = it->second == 0 ? out.erase(it) : std::next(it);
    }
  }
  return out;
}

SignalParity SignalParity::on(std::vector<QubitId> s) {
  std::sort(s.begin(), s.end());
  // Repeated signals cancel pairwise.
  std::vector<QubitId> out;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(s[i]);
    i = j;
  }
  return {false, std::move(out)};
}

bool SignalParity::eval(const std::function<bool(QubitId)>& outcome) const {
  bool v = constant;
  for (QubitId q : signals) v ^= outcome(q);
  return v;
}

IntPoly SignalParity::as_int_poly(std::int64_t modulus) const {
  // parity(S ∪ {k}) = parity(S)·(1 − 2 s_k) + s_k
  IntPoly p;
  if (constant) p[{}] = 1;
  for (QubitId k : signals) {
    IntPoly next;
    for (const auto& [m, c] : p) {
      if (std::binary_search(m.begin(), m.end(), k)) {
        int_poly_add_term(next, m, -c);
      } else {
        int_poly_add_term(next, m, c);
        int_poly_add_term(next, monomial_union(m, {k}), -2 * c);
      }
    }
    int_poly_add_term(next, {k}, 1);
    if (modulus > 0) {
      for (auto it = next.begin(); it != next.end();) {
        it->second = mod(it->second, modulus);
        it = it->second == 0 ? next.erase(it) : std::next(it);
      }
    }
    p = std::move(next);
  }
  return p;
}

SignalParity SignalParity::operator^(const SignalParity& o) const {
  std::vector<QubitId> all = signals;
  all.insert(all.end(), o.signals.begin(), o.signals.end());
  SignalParity r = on(std::move(all));
  r.constant = constant != o.constant;
  return r;
}

AnglePoly::AnglePoly(Angle constant) { add_term({}, constant); }

AnglePoly AnglePoly::term(Monomial m, Angle coeff) {
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  AnglePoly p;
  p.add_term(m, coeff);
  return p;
}

AnglePoly AnglePoly::from_int_poly(const IntPoly& ip, Angle coeff) {
  AnglePoly p;
  for (const auto& [m, c] : ip) p.add_term(m, coeff * c);
  return p;
}

void AnglePoly::add_term(const Monomial& m, Angle c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Angle AnglePoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Angle{} : it->second;
}

bool AnglePoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

std::set<QubitId> AnglePoly::signals() const {
  std::set<QubitId> out;
  for (const auto& [m, c] : terms_) out.insert(m.begin(), m.end());
  return out;
}

Angle AnglePoly::eval(const std::function<bool(QubitId)>& outcome) const {
  Angle total;
  for (const auto& [m, c] : terms_) {
    if (std::all_of(m.begin(), m.end(), outcome)) total += c;
  }
  return total;
}

AnglePoly AnglePoly::operator+(const AnglePoly& o) const {
  AnglePoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

AnglePoly AnglePoly::operator-() const {
  AnglePoly r;
  for (const auto& [m, c] : terms_) r.add_term(m, -c);
  return r;
}

AnglePoly AnglePoly::operator-(const AnglePoly& o) const { return *this + (-o); }

AnglePoly AnglePoly::operator*(std::int64_t k) const {
  AnglePoly r;
  for (const auto& [m, c] : terms_) r.add_term(m, c * k);
  return r;
}

AnglePoly AnglePoly::scale_by_one_minus_two_s(QubitId k) const {
  AnglePoly r;
  for (const auto& [m, c] : terms_) {
    if (std::binary_search(m.begin(), m.end(), k)) {
      r.add_term(m, -c);
    } else {
      r.add_term(m, c);
      r.add_term(monomial_union(m, {k}), c * -2);
    }
  }
  return r;
}

AnglePoly AnglePoly::negate_if(const SignalParity& cond) const {
  AnglePoly r = cond.constant ? -*this : *this;
  for (QubitId k : cond.signals) r = r.scale_by_one_minus_two_s(k);
  return r;
}

AnglePoly AnglePoly::relabel(const std::function<QubitId(QubitId)>& map) const {
  AnglePoly r;
  for (const auto& [m, c] : terms_) {
    Monomial nm;
    for (QubitId q : m) nm.push_back(map(q));
    std::sort(nm.begin(), nm.end());
    nm.erase(std::unique(nm.begin(), nm.end()), nm.end());
    r.add_term(nm, c);
  }
  return r;
}

AnglePoly AnglePoly::substitute(const std::function<IntPoly(QubitId)>& sub) const {
  AnglePoly r;
  for (const auto& [m, c] : terms_) {
    const std::int64_t period = c.period();
    IntPoly prod{{{}, 1}};
    for (QubitId q : m) {
      prod = int_poly_mul(prod, sub(q), period);
      if (prod.empty()) break;
    }
    r = r + from_int_poly(prod, c);
  }
  return r;
}

bool AnglePoly::all_clifford() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.is_clifford(); });
}

}  // namespace mbqc
