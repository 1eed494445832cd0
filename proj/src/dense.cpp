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

#include "mbqc/dense.hpp"

#include <random>
#include <sstream>

namespace mbqc {

namespace {

std::string format_signals(const Signals& s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto [q, v] : s) {
    os << (first ? "" : ",") << "s" << q << "=" << v;
    first = false;
  }
  os << "}";
  return os.str();
}

int count_measurements(const Pattern& p) {
  int m = 0;
  for (const auto& c : p.commands) m += std::holds_alternative<Measure>(c);
  return m;
}

// Depth-first walk over all outcome branches, carrying unnormalized states.
template <class Visit>
void walk(const Pattern& p, DenseState state, std::size_t from, Visit& visit) {
  for (std::size_t i = from; i < p.commands.size(); ++i) {
    const auto* m = std::get_if<Measure>(&p.commands[i]);
    if (!m) {
      state.apply_unitary(p.commands[i]);
      continue;
    }
    const Angle a = state.angle_of(*m);
    DenseState one = state;
    state.measure(m->qubit, a, 0);
    one.measure(m->qubit, a, 1);
    walk(p, std::move(state), i + 1, visit);
    walk(p, std::move(one), i + 1, visit);
    return;
  }
  visit(state);
}

}  // namespace

RunResult run(const Pattern& p, const Eigen::VectorXcd& input, std::uint64_t seed) {
  require_valid(p);
  DenseState state(p.inputs, input);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& c : p.commands) {
    if (const auto* m = std::get_if<Measure>(&c)) {
      const Angle a = state.angle_of(*m);
      const double total = state.norm_squared();
      const double p0 = state.projected(m->qubit, a, 0).squaredNorm() / total;
      state.measure(m->qubit, a, u(rng) < p0 ? 0 : 1);
    } else {
      state.apply_unitary(c);
    }
    state.normalize();
  }
  return {state.output(p.outputs).col(0), state.signals(), seed};
}

std::vector<BranchResult> enumerate_branches(const Pattern& p, const Eigen::VectorXcd& input, int cap) {
  require_valid(p);
  if (count_measurements(p) > cap) {
    throw TooManyBranches(std::to_string(count_measurements(p)) + " measurements exceed the cap of " +
                          std::to_string(cap));
  }
  std::vector<BranchResult> out;
  const double norm = input.squaredNorm();
  auto visit = [&](const DenseState& s) {
    BranchResult b;
    b.outcomes = s.signals();
    b.probability = s.norm_squared() / norm;
    b.output = s.output(p.outputs).col(0);
    if (b.probability > 0) b.output /= b.output.norm();
    out.push_back(std::move(b));
  };
  walk(p, DenseState(p.inputs, input), 0, visit);
  return out;
}

std::vector<BranchOperator> branch_operators(const Pattern& p, int cap) {
  require_valid(p);
  if (count_measurements(p) > cap) throw TooManyBranches("too many measurements for branch enumeration");
  const Eigen::Index dim = Eigen::Index{1} << p.inputs.size();
  std::vector<BranchOperator> out;
  auto visit = [&](const DenseState& s) { out.push_back({s.signals(), s.output(p.outputs)}); };
  walk(p, DenseState(p.inputs, Eigen::MatrixXcd::Identity(dim, dim)), 0, visit);
  return out;
}

Eigen::MatrixXcd phase_fixed(Eigen::MatrixXcd m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (std::abs(m(r, c)) > 1e-12) return m * (std::conj(m(r, c)) / std::abs(m(r, c)));
    }
  }
  return m;
}

bool equal_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const std::complex<double> overlap = (b.adjoint() * a).trace();
  const std::complex<double> phase = std::abs(overlap) > 1e-300 ? overlap / std::abs(overlap) : 1.0;
  return (a - phase * b).cwiseAbs().maxCoeff() <= tol;
}

Eigen::MatrixXcd extract_unitary(const Pattern& p) {
  if (p.inputs.size() > 4) throw DimensionMismatch("extract_unitary supports at most 4 inputs");
  const double dim = static_cast<double>(Eigen::Index{1} << p.inputs.size());
  const BranchOperator* ref = nullptr;
  Eigen::MatrixXcd u;
  for (const auto& b : branch_operators(p)) {
    const double f = b.op.norm();
    if (f < 1e-12) continue;
    Eigen::MatrixXcd v = b.op * (std::sqrt(dim) / f);
    if (!ref) {
      ref = &b;
      u = std::move(v);
    } else if (!equal_up_to_phase(v, u, 1e-9)) {
      throw NotDeterministic("branches " + format_signals(ref->outcomes) + " and " + format_signals(b.outcomes) +
                             " implement different maps");
    }
  }
  if (!ref) throw NotDeterministic("every branch has zero weight");
  return phase_fixed(std::move(u));
}

bool same_branch_channels(const Pattern& a, const Pattern& b, double tol) {
  if (a.inputs != b.inputs || a.outputs != b.outputs) return false;
  auto ba = branch_operators(a);
  auto bb = branch_operators(b);
  if (ba.size() != bb.size()) return false;
  std::map<Signals, const Eigen::MatrixXcd*> index;
  for (const auto& x : bb) index[x.outcomes] = &x.op;
  for (const auto& x : ba) {
    auto it = index.find(x.outcomes);
    if (it == index.end() || !equal_up_to_phase(x.op, *it->second, tol)) return false;
  }
  return true;
}

std::map<Signals, double> outcome_distribution(const Pattern& p, const Eigen::VectorXcd& input) {
  std::map<Signals, double> out;
  for (const auto& b : enumerate_branches(p, input)) out[b.outcomes] += b.probability;
  return out;
}

Eigen::VectorXcd named_state(const std::string& name) {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd v(2);
  if (name == "zero") {
    v << 1, 0;
  } else if (name == "one") {
    v << 0, 1;
  } else if (name == "plus") {
    v << r, r;
  } else if (name == "minus") {
    v << r, -r;
  } else if (name == "plus_pi4") {
    v << r, std::polar(r, M_PI / 4);
  } else if (name == "plus_pi2") {
    v << r, std::complex<double>(0, r);
  } else {
    throw UnknownName("unknown state '" + name + "'");
  }
  return v;
}

Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Eigen::VectorXcd product_state(const std::string& name, int n) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
  for (int i = 0; i < n; ++i) v = kron(v, named_state(name));
  return v;
}

Eigen::VectorXcd state_from_json(const nlohmann::json& j, int n) {
  if (j.is_string()) return product_state(j.get<std::string>(), n);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = {j[i].at(0).get<double>(), j[i].at(1).get<double>()};
  if (v.size() != (Eigen::Index{1} << n)) throw DimensionMismatch("input state has the wrong dimension");
  return v;
}

nlohmann::json state_to_json(const Eigen::VectorXcd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

}  // namespace mbqc
