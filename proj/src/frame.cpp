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

#include "mbqc/frame.hpp"

#include <map>
#include <random>

#include "mbqc/errors.hpp"
#include "mbqc/rewrite.hpp"

namespace mbqc {

namespace {
int mod(int a, int m) { return ((a % m) + m) % m; }
}  // namespace

CliffordFrame CliffordFrame::operator*(const CliffordFrame& o) const {
  // S^k X^b = i^{kb} X^b S^{(-1)^b k}
  CliffordFrame r;
  r.x = x ^ o.x;
  r.s = mod((o.x ? -s : s) + o.s, 4);
  r.phase = mod(phase + o.phase + 2 * s * o.x, 8);
  return r;
}

Eigen::Matrix2cd CliffordFrame::matrix() const {
  Eigen::Matrix2cd xm, sm;
  xm << 0, 1, 1, 0;
  sm << 1, 0, 0, std::complex<double>(0, 1);
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  if (x) m = xm;
  for (int k = 0; k < s; ++k) m = m * sm;
  return std::polar(1.0, M_PI * phase / 4) * m;
}

int PlannedMeasurement::shift_at(const Signals& s) const {
  std::int64_t total = 0;
  for (const auto& [mono, c] : shift) {
    bool on = true;
    for (QubitId q : mono) on = on && s.at(q);
    if (on) total += c;
  }
  return mod(static_cast<int>(total % 4), 4);
}

CliffordFrame PlannedMeasurement::frame(const Signals& s) const { return {0, mod(-shift_at(s), 4), 0}; }

const PlannedMeasurement& FramePlan::at(QubitId q) const {
  for (const auto& m : measurements) {
    if (m.qubit == q) return m;
  }
  throw InvalidPattern("qubit " + std::to_string(q) + " is not measured");
}

FramePlan frame_track(const Pattern& p) {
  FramePlan plan;
  plan.pattern = is_standard(p) ? p : standardize(p).pattern;
  for (auto& c : plan.pattern.commands) {
    auto* m = std::get_if<Measure>(&c);
    if (!m) continue;
    PlannedMeasurement pm;
    pm.qubit = m->qubit;
    pm.fixed = m->angle.constant();
    for (const auto& [mono, coeff] : m->angle.terms()) {
      if (mono.empty()) continue;
      if (!coeff.is_clifford()) {
        throw NonCliffordDependency("measurement of qubit " + std::to_string(m->qubit) +
                                    " depends on signals through a non-Clifford angle");
      }
      const int k = coeff.quarter_turns();
      pm.shift[mono] = k;
      pm.flip_deps.insert(mono.begin(), mono.end());
      if (k % 2) pm.basis_deps.insert(mono.begin(), mono.end());
    }
    m->angle = AnglePoly(pm.fixed);
    plan.measurements.push_back(std::move(pm));
  }
  return plan;
}

DependencyDag rounds(const FramePlan& plan) {
  // available[k]: round after which s_k is known classically
  std::map<QubitId, int> round, available;
  DependencyDag dag;
  for (const auto& pm : plan.measurements) {
    int r = 0;
    for (QubitId k : pm.basis_deps) {
      r = std::max(r, available.at(k) + 1);
      dag.arcs.insert({k, pm.qubit});
    }
    int a = r;
    for (QubitId k : pm.flip_deps) a = std::max(a, available.at(k));
    round[pm.qubit] = r;
    available[pm.qubit] = a;
    dag.nodes.push_back(pm.qubit);
    if (static_cast<int>(dag.rounds.size()) <= r) dag.rounds.resize(r + 1);
    dag.rounds[r].push_back(pm.qubit);
  }
  return dag;
}

namespace {

// Measures qubit q under the plan: quantum S for the odd part of the frame,
// classical flip for the even part.
void planned_measure(DenseState& st, const PlannedMeasurement& pm, int raw) {
  const int f = mod(-pm.shift_at(st.signals()), 4);
  st.measure(pm.qubit, pm.fixed, raw);
  st.signals()[pm.qubit] = raw ^ (f >> 1);
}

void pre_rotate(DenseState& st, const PlannedMeasurement& pm) {
  const int f = mod(-pm.shift_at(st.signals()), 4);
  if (f & 1) st.correct_z(pm.qubit, Angle::half_pi());
}

template <class Visit>
void walk_plan(const FramePlan& plan, DenseState st, std::size_t from, Visit& visit) {
  const auto& cmds = plan.pattern.commands;
  for (std::size_t i = from; i < cmds.size(); ++i) {
    const auto* m = std::get_if<Measure>(&cmds[i]);
    if (!m) {
      st.apply_unitary(cmds[i]);
      continue;
    }
    const auto& pm = plan.at(m->qubit);
    pre_rotate(st, pm);
    DenseState one = st;
    planned_measure(st, pm, 0);
    planned_measure(one, pm, 1);
    walk_plan(plan, std::move(st), i + 1, visit);
    walk_plan(plan, std::move(one), i + 1, visit);
    return;
  }
  visit(st);
}

}  // namespace

RunResult run_plan(const FramePlan& plan, const Eigen::VectorXcd& input, std::uint64_t seed) {
  const Pattern& p = plan.pattern;
  DenseState st(p.inputs, input);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& c : p.commands) {
    if (const auto* m = std::get_if<Measure>(&c)) {
      const auto& pm = plan.at(m->qubit);
      pre_rotate(st, pm);
      const double p0 = st.projected(m->qubit, pm.fixed, 0).squaredNorm() / st.norm_squared();
      planned_measure(st, pm, u(rng) < p0 ? 0 : 1);
    } else {
      st.apply_unitary(c);
    }
    st.normalize();
  }
  return {st.output(p.outputs).col(0), st.signals(), seed};
}

std::vector<BranchResult> enumerate_plan_branches(const FramePlan& plan, const Eigen::VectorXcd& input) {
  std::vector<BranchResult> out;
  const double norm = input.squaredNorm();
  auto visit = [&](const DenseState& s) {
    BranchResult b{s.signals(), s.norm_squared() / norm, s.output(plan.pattern.outputs).col(0)};
    if (b.probability > 0) b.output /= b.output.norm();
    out.push_back(std::move(b));
  };
  walk_plan(plan, DenseState(plan.pattern.inputs, input), 0, visit);
  return out;
}

}  // namespace mbqc
