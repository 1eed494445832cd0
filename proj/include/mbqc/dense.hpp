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

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "mbqc/errors.hpp"
#include "mbqc/pattern.hpp"

namespace mbqc {

using Signals = std::map<QubitId, int>;

/// Pure state on the live qubits of a running pattern, carried for K inputs at
/// once (one column each).  Bit k of a row index is live()[k]; preparations
/// push a new most-significant qubit and measurements remove theirs.
template <class Scalar>
class BasicDenseState {
 public:
  using Complex = std::complex<Scalar>;
  using Amplitudes = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

  /// `columns` rows are indexed big-endian over `inputs` (inputs[0] is the MSB).
  BasicDenseState(const std::vector<QubitId>& inputs, Amplitudes columns)
      : live_(inputs.rbegin(), inputs.rend()), amp_(std::move(columns)) {
    if (amp_.rows() != (Eigen::Index{1} << inputs.size())) {
      throw DimensionMismatch("input state has " + std::to_string(amp_.rows()) + " amplitudes, expected 2^" +
                              std::to_string(inputs.size()));
    }
  }

  const Amplitudes& amplitudes() const { return amp_; }
  const std::vector<QubitId>& live() const { return live_; }
  Signals& signals() { return signals_; }
  const Signals& signals() const { return signals_; }

  int bit_of(QubitId q) const {
    for (std::size_t k = 0; k < live_.size(); ++k) {
      if (live_[k] == q) return static_cast<int>(k);
    }
    throw InvalidPattern("qubit " + std::to_string(q) + " is not live");
  }

  void prepare(QubitId q, Angle a) {
    const Eigen::Index rows = amp_.rows();
    Amplitudes next(2 * rows, amp_.cols());
    const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
    next.topRows(rows) = amp_ * r;
    next.bottomRows(rows) = amp_ * (std::polar(r, Scalar(a.radians())));
    amp_ = std::move(next);
    live_.push_back(q);
  }

  void entangle(QubitId a, QubitId b) {
    const Eigen::Index mask = (Eigen::Index{1} << bit_of(a)) | (Eigen::Index{1} << bit_of(b));
    for (Eigen::Index r = 0; r < amp_.rows(); ++r) {
      if ((r & mask) == mask) amp_.row(r) *= Scalar(-1);
    }
  }

  void correct_x(QubitId q) {
    const Eigen::Index m = Eigen::Index{1} << bit_of(q);
    for (Eigen::Index r = 0; r < amp_.rows(); ++r) {
      if (!(r & m)) amp_.row(r).swap(amp_.row(r | m));
    }
  }

  /// diag(1, e^{iα})
  void correct_z(QubitId q, Angle a) {
    const Eigen::Index m = Eigen::Index{1} << bit_of(q);
    const Complex ph = std::polar(Scalar(1), Scalar(a.radians()));
    for (Eigen::Index r = 0; r < amp_.rows(); ++r) {
      if (r & m) amp_.row(r) *= ph;
    }
  }

  /// Amplitudes after applying the bra (<0| + (-1)^s e^{-iα} <1|)/√2 on q.
  Amplitudes projected(QubitId q, Angle a, int s) const {
    const int k = bit_of(q);
    const Eigen::Index half = amp_.rows() / 2;
    const Eigen::Index low_mask = (Eigen::Index{1} << k) - 1;
    const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
    const Complex c = std::polar(r, Scalar(-a.radians())) * Scalar(s ? -1 : 1);
    Amplitudes out(half, amp_.cols());
    for (Eigen::Index i = 0; i < half; ++i) {
      const Eigen::Index r0 = ((i >> k) << (k + 1)) | (i & low_mask);
      out.row(i) = amp_.row(r0) * r + amp_.row(r0 | (Eigen::Index{1} << k)) * c;
    }
    return out;
  }

  /// Projects onto outcome s and removes q.  Not renormalized.
  void measure(QubitId q, Angle a, int s) {
    amp_ = projected(q, a, s);
    live_.erase(live_.begin() + bit_of(q));
    signals_[q] = s;
  }

  void apply_unitary(const Command& c) {
    if (const auto* n = std::get_if<Prepare>(&c)) {
      prepare(n->qubit, n->angle);
    } else if (const auto* e = std::get_if<Entangle>(&c)) {
      entangle(e->a, e->b);
    } else if (const auto* x = std::get_if<CorrectX>(&c)) {
      if (x->cond.eval(lookup())) correct_x(x->qubit);
    } else if (const auto* z = std::get_if<CorrectZ>(&c)) {
      if (z->cond.eval(lookup())) correct_z(z->qubit, z->angle);
    }
  }

  Angle angle_of(const Measure& m) const { return m.angle.eval(lookup()); }

  Scalar norm_squared() const { return amp_.squaredNorm(); }
  void normalize() { amp_ /= std::sqrt(norm_squared()); }

  /// Rows reindexed big-endian over `order`, which must list the live qubits.
  Amplitudes output(const std::vector<QubitId>& order) const {
    if (order.size() != live_.size()) throw DimensionMismatch("output order does not match live qubits");
    std::vector<int> bits;
    for (QubitId q : order) bits.push_back(bit_of(q));
    Amplitudes out(amp_.rows(), amp_.cols());
    const int m = static_cast<int>(order.size());
    for (Eigen::Index r = 0; r < amp_.rows(); ++r) {
      Eigen::Index j = 0;
      for (int t = 0; t < m; ++t) {
        if (r >> bits[t] & 1) j |= Eigen::Index{1} << (m - 1 - t);
      }
      out.row(j) = amp_.row(r);
    }
    return out;
  }

 private:
  std::function<bool(QubitId)> lookup() const {
    return [this](QubitId q) {
      auto it = signals_.find(q);
      if (it == signals_.end()) throw InvalidPattern("signal s" + std::to_string(q) + " read before measurement");
      return it->second != 0;
    };
  }

  std::vector<QubitId> live_;
  Amplitudes amp_;
  Signals signals_;
};

using DenseState = BasicDenseState<double>;

struct RunResult {
  Eigen::VectorXcd output;  // big-endian over p.outputs
  Signals signals;
  std::uint64_t seed = 0;
};

/// One sampled trajectory with Born-rule outcomes.
RunResult run(const Pattern& p, const Eigen::VectorXcd& input, std::uint64_t seed);

struct BranchResult {
  Signals outcomes;
  double probability = 0;
  Eigen::VectorXcd output;  // normalized when probability > 0
};

inline constexpr int kDefaultBranchCap = 20;

/// All 2^m branches ordered by outcome vector (measurement order, first
/// measured qubit most significant).
std::vector<BranchResult> enumerate_branches(const Pattern& p, const Eigen::VectorXcd& input,
                                             int cap = kDefaultBranchCap);

/// Unnormalized linear map of one branch, 2^|O| x 2^|I|.
struct BranchOperator {
  Signals outcomes;
  Eigen::MatrixXcd op;
};
std::vector<BranchOperator> branch_operators(const Pattern& p, int cap = kDefaultBranchCap);

/// Common unitary of all branches, phase-fixed so that its first nonzero
/// entry (row-major) is positive real.  Throws NotDeterministic naming two
/// disagreeing branches.
Eigen::MatrixXcd extract_unitary(const Pattern& p);

bool equal_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol = 1e-10);
Eigen::MatrixXcd phase_fixed(Eigen::MatrixXcd m);

/// Both patterns have identical input/output lists and, for every outcome
/// assignment, branch maps equal up to a global phase.  Branches are matched
/// by qubit-keyed outcomes.
bool same_branch_channels(const Pattern& a, const Pattern& b, double tol = 1e-10);

/// Outcome distribution over signals, keyed by measured qubit.
std::map<Signals, double> outcome_distribution(const Pattern& p, const Eigen::VectorXcd& input);

/// zero, one, plus, minus, plus_pi4 (|0> + e^{iπ/4}|1>)/√2, plus_pi2.
Eigen::VectorXcd named_state(const std::string& name);
Eigen::VectorXcd product_state(const std::string& name, int n);
Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);
/// JSON list of [re, im] pairs, or a named state string (tensored n times).
Eigen::VectorXcd state_from_json(const nlohmann::json& j, int n);
nlohmann::json state_to_json(const Eigen::VectorXcd& v);

}  // namespace mbqc
