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
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace mbqc {

using QubitId = int;

/// Exact angle (num/den)·π, reduced and kept in [0, 2π).
class Angle {
 public:
  constexpr Angle() = default;
  Angle(std::int64_t num, std::int64_t den = 1);

  static Angle zero() { return {}; }
  static Angle pi() { return {1, 1}; }
  static Angle half_pi() { return {1, 2}; }
  static Angle quarter_pi() { return {1, 4}; }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  /// True iff the angle is an integer multiple of π/2.
  bool is_clifford() const { return den_ <= 2; }
  /// Smallest k > 0 with k·angle ≡ 0 (mod 2π).
  std::int64_t period() const;
  /// Multiple of π/2 as an element of Z_4. Requires is_clifford().
  int quarter_turns() const;
  double radians() const;

  Angle operator-() const { return {-num_, den_}; }
  Angle operator+(const Angle& o) const;
  Angle operator-(const Angle& o) const { return *this + (-o); }
  Angle operator*(std::int64_t k) const;
  Angle& operator+=(const Angle& o) { return *this = *this + o; }
  Angle& operator-=(const Angle& o) { return *this = *this - o; }

  auto operator<=>(const Angle&) const = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// A signal monomial: sorted, duplicate-free set of measured qubits whose
/// outcomes are multiplied together.  The empty monomial is the constant 1.
using Monomial = std::vector<QubitId>;

Monomial monomial_union(const Monomial& a, const Monomial& b);

/// Multilinear integer polynomial over 0/1 signals.
using IntPoly = std::map<Monomial, std::int64_t>;

/// Product with s² = s reduction.  A positive `modulus` reduces every
/// coefficient mod that value and drops zeros, which keeps parity products
/// of large signal sets small.
IntPoly int_poly_mul(const IntPoly& a, const IntPoly& b, std::int64_t modulus = 0);
void int_poly_add_term(IntPoly& p, const Monomial& m, std::int64_t c);

/// XOR of measurement outcomes, optionally complemented by a constant bit.
/// Unconditional commands carry {constant=true, signals={}}.
struct SignalParity {
  bool constant = false;
  std::vector<QubitId> signals;

  static SignalParity always() { return {true, {}}; }
  static SignalParity on(std::vector<QubitId> s);

  bool is_always() const { return constant && signals.empty(); }
  bool is_never() const { return !constant && signals.empty(); }
  bool eval(const std::function<bool(QubitId)>& outcome) const;

  /// Multilinear integer form of the parity (values 0/1).
  IntPoly as_int_poly(std::int64_t modulus = 0) const;

  SignalParity operator^(const SignalParity& o) const;
  auto operator<=>(const SignalParity&) const = default;
};

/// Multilinear polynomial in signals with angle coefficients.  Holds every
/// adaptive measurement angle; zero coefficients are never stored.
class AnglePoly {
 public:
  AnglePoly() = default;
  AnglePoly(Angle constant);  // NOLINT: implicit lift of constants

  static AnglePoly term(Monomial m, Angle coeff);
  /// coeff·p evaluated term-wise: Σ p_m·coeff·Π_m.
  static AnglePoly from_int_poly(const IntPoly& p, Angle coeff);

  const std::map<Monomial, Angle>& terms() const { return terms_; }
  Angle coefficient(const Monomial& m) const;
  Angle constant() const { return coefficient({}); }
  bool is_constant() const;
  std::set<QubitId> signals() const;

  Angle eval(const std::function<bool(QubitId)>& outcome) const;

  AnglePoly operator+(const AnglePoly& o) const;
  AnglePoly operator-(const AnglePoly& o) const;
  AnglePoly operator-() const;
  AnglePoly operator*(std::int64_t k) const;

  /// (1 − 2·s_k)·p, reduced with s_k² = s_k.
  AnglePoly scale_by_one_minus_two_s(QubitId k) const;
  /// (−1)^{cond}·p.
  AnglePoly negate_if(const SignalParity& cond) const;

  /// Replace every signal through `map` (used when relabeling qubits).
  AnglePoly relabel(const std::function<QubitId(QubitId)>& map) const;

  /// Substitute each signal by an integer polynomial in other signals.
  AnglePoly substitute(const std::function<IntPoly(QubitId)>& sub) const;

  bool all_clifford() const;

  bool operator==(const AnglePoly& o) const = default;

 private:
  void add_term(const Monomial& m, Angle c);
  std::map<Monomial, Angle> terms_;
};

}  // namespace mbqc
