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

// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "mbqc/dense.hpp"
#include "mbqc/frame.hpp"
#include "mbqc/ft_transform.hpp"
#include "mbqc/montecarlo.hpp"
#include "mbqc/rewrite.hpp"
#include "mbqc/stabilizer.hpp"
#include "mbqc/steane.hpp"
#include "support/random_patterns.hpp"
#include "support/rule_contexts.hpp"
#include "support/steane_checks.hpp"

using namespace mbqc;
using cd = std::complex<double>;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && dt > budget_s) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(budget_s)) + " s budget)";
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), dt);
  std::fflush(stdout);
}

Eigen::Matrix2cd h_times_z(double a) {
  Eigen::Matrix2cd h, z;
  h << 1, 1, 1, -1;
  z << 1, 0, 0, std::polar(1.0, a);
  return h / std::sqrt(2.0) * z;
}

Outcome generators() {
  int ok = 0, total = 0;
  for (int k : {0, 1, 2, 4, 6}) {
    const Angle a(k, 4);
    ++total;
    ok += equal_up_to_phase(extract_unitary(build_j(a)), h_times_z(a.radians()), 1e-10);
  }
  Eigen::Matrix2cd x;
  x << 0, 1, 1, 0;
  for (int k : {1, 2}) {
    const Angle a(k, 4);
    const Eigen::Matrix2cd expect =
        std::cos(a.radians() / 2) * Eigen::Matrix2cd::Identity() - cd(0, 1) * std::sin(a.radians() / 2) * x;
    ++total;
    ok += equal_up_to_phase(extract_unitary(build_xrot(a)), expect, 1e-10);
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " unitaries match"};
}

Outcome rule_soundness() {
  std::mt19937_64 rng(2);
  std::string detail;
  bool pass = true;
  for (Rule r : {Rule::MergeZ, Rule::MergeX, Rule::CommuteEX, Rule::CommuteEZ}) {
    int ok = 0;
    for (int t = 0; t < 200; ++t) {
      const auto ctx = testing::random_rule_context(rng, r);
      Pattern after = ctx.pattern;
      apply_step(after.commands, ctx.step);
      after = make_pattern(after.inputs, after.outputs, after.commands);
      ok += validate(after).empty() && same_branch_channels(ctx.pattern, after, 1e-10);
    }
    pass = pass && ok == 200;
    detail += rule_name(r) + " " + std::to_string(ok) + "/200 ";
  }
  return {pass, detail};
}

Outcome standardization() {
  std::mt19937_64 rng(3);
  int ok = 0, agree = 0;
  for (int t = 0; t < 500; ++t) {
    testing::RandomPatternOptions o;
    o.max_qubits = 6;
    o.max_measurements = 4;
    o.pmm = t % 2 == 0;
    const Pattern p = testing::random_pattern(rng, o);
    const Pattern local = standardize(p, Strategy::LocalRewrite).pattern;
    const Pattern frame = standardize(p, Strategy::FramePropagation).pattern;
    ok += is_standard(local) && validate(local).empty() && is_pmm(local) == is_pmm(p) &&
          same_branch_channels(p, local, 1e-10);
    agree += same_branch_channels(local, frame, 1e-10);
  }
  return {ok == 500 && agree == 500,
          std::to_string(ok) + "/500 standardized soundly, strategies agree on " + std::to_string(agree) + "/500"};
}

Outcome teleport_determinism() {
  const Pattern jj = compose_serial(build_j(Angle::zero()), build_j(Angle::zero()));
  const Pattern tr = build_teleport_with_resource();
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  int checked = 0;
  bool pass = true;
  for (const Pattern* p : {&jj, &tr}) {
    for (int t = 0; t < 5; ++t) {
      Eigen::VectorXcd in(2);
      in << cd(g(rng), g(rng)), cd(g(rng), g(rng));
      in.normalize();
      const auto branches = enumerate_branches(*p, in);
      const double uniform = 1.0 / static_cast<double>(branches.size());
      for (const auto& b : branches) {
        const double fidelity = std::abs(b.output.dot(in));
        pass = pass && std::abs(fidelity - 1) < 1e-10 && std::abs(b.probability - uniform) < 1e-10;
        ++checked;
      }
    }
  }
  return {pass, std::to_string(checked) + " branches with fidelity 1 and probability 1/2^m"};
}

Outcome steane() {
  const auto problems = CodeSpec::steane().self_check();
  int enc = 0;
  for (const char* in : {"zero", "one", "plus", "plus_pi4"}) enc += testing::encoder_preserves(build_encoder(), in);
  int cases = 0;
  for (int pos = 0; pos < 7; ++pos) {
    for (char c : {'X', 'Y', 'Z'}) {
      bool ok = true;
      for (bool zero : {false, true}) {
        const auto r = testing::syndrome_teleport_case(pos, c, zero, 17 + pos);
        ok = ok && r.syndrome_ok && r.state_ok;
      }
      cases += ok;
    }
  }
  const CodeSpec& code = CodeSpec::steane();
  int cz = 0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const char* na = a ? "one" : "zero";
      const char* nb = b ? "one" : "zero";
      using testing::encoded_cz_value;
      using testing::on_block;
      cz += encoded_cz_value(na, nb, on_block(code.logical_z(), 0), 5) == std::optional<int>(a) &&
            encoded_cz_value(na, nb, on_block(code.logical_z(), 1), 5) == std::optional<int>(b) &&
            encoded_cz_value("plus", nb, on_block(code.logical_x(), 0), 5) == std::optional<int>(b) &&
            encoded_cz_value(na, "plus", on_block(code.logical_x(), 1), 5) == std::optional<int>(a);
    }
  }
  return {problems.empty() && enc == 4 && cases == 21 && cz == 4,
          "self-check " + std::string(problems.empty() ? "ok" : problems.front()) + ", encoder " +
              std::to_string(enc) + "/4, syndrome teleport " + std::to_string(cases) + "/21, transversal CZ " +
              std::to_string(cz) + "/4"};
}

Outcome scaling() {
  const std::vector<double> ps{1e-3, 2e-3, 5e-3, 1e-2};
  const unsigned jobs = 4;
  Experiment ft;
  ft.pattern_id = "ft_wire";
  ft.trials = 100000;
  ft.seed = 2024;
  ft.policy = Policy::RejectOnDirty;
  ft.min_failures = kMinFitFailures;
  ft.max_trials = 4000000;
  Experiment bare;
  bare.pattern_id = "bare_wire";
  bare.trials = 100000;
  bare.seed = 2024;
  bare.policy = Policy::AcceptAll;
  // Tighter per-point error bars; the bare wire is cheap to sample.
  bare.min_failures = 2000;
  bare.max_trials = 2000000;
  const SweepResult a = sweep(ft, ps, jobs);
  const SweepResult b = sweep(bare, ps, jobs);
  bool enough = true;
  for (const auto& pt : a.points) enough = enough && pt.estimate.trials >= 100000;
  for (const auto& pt : b.points) enough = enough && pt.estimate.trials >= 100000;
  const bool pass = enough && a.has_fit() && b.has_fit() && std::abs(a.slope - 2.0) <= 0.3 &&
                    std::abs(b.slope - 1.0) <= 0.1;
  char buf[256];
  std::snprintf(buf, sizeof buf, "FT slope %.3f over %zu points, bare slope %.3f over %zu points", a.slope, a.fitted,
                b.slope, b.fitted);
  std::string detail = buf;
  for (const auto& pt : a.points) {
    std::snprintf(buf, sizeof buf, "; p=%g rate %.3g (%llu/%llu, acc %.2f)", pt.p, pt.estimate.rate,
                  static_cast<unsigned long long>(pt.estimate.failures),
                  static_cast<unsigned long long>(pt.estimate.trials), pt.estimate.acceptance);
    detail += buf;
  }
  return {pass, detail};
}

Outcome depth() {
  const Pattern j0 = build_j(Angle::zero());
  const Pattern jj = compose_serial(j0, j0);
  const Pattern cz = compose_serial(build_cz(), compose_parallel(j0, j0));
  std::string detail;
  bool pass = true;
  for (const auto& [name, p] : std::vector<std::pair<std::string, Pattern>>{{"J0", j0}, {"J0.J0", jj}, {"CZ", cz}}) {
    const int before = rounds(frame_track(p)).depth();
    const int after = rounds(frame_track(ft_transform(p).pattern)).depth();
    pass = pass && before == after;
    detail += name + " " + std::to_string(before) + "->" + std::to_string(after) + " ";
  }
  return {pass, detail};
}

double two_sample_chi_square_p(const std::map<Signals, int>& a, const std::map<Signals, int>& b, int na, int nb) {
  std::map<Signals, std::pair<int, int>> joint;
  for (const auto& [k, v] : a) joint[k].first = v;
  for (const auto& [k, v] : b) joint[k].second = v;
  if (joint.size() < 2) return 1.0;
  const double ra = std::sqrt(static_cast<double>(nb) / na), rb = std::sqrt(static_cast<double>(na) / nb);
  double stat = 0;
  for (const auto& [k, v] : joint) {
    const double d = ra * v.first - rb * v.second;
    stat += d * d / (v.first + v.second);
  }
  boost::math::chi_squared dist(static_cast<double>(joint.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

Outcome backend_agreement() {
  std::mt19937_64 rng(8);
  const int samples = 10000;
  int ok = 0;
  double worst = 1;
  for (int t = 0; t < 50; ++t) {
    testing::RandomPatternOptions o;
    o.clifford = true;
    o.max_qubits = 8;
    o.max_measurements = 6;
    o.extra_commands = 10;
    const Pattern p = testing::random_pattern(rng, o);
    const Eigen::VectorXcd in = product_state("plus", static_cast<int>(p.inputs.size()));
    const StabProgram prog(p);
    std::map<Signals, int> dense, stab;
    for (int s = 0; s < samples; ++s) {
      ++dense[run(p, in, splitmix64(t, 2 * s)).signals];
      StabOptions so;
      so.seed = splitmix64(t, 2 * s + 1);
      ++stab[prog.run(so).signals];
    }
    const double pv = two_sample_chi_square_p(dense, stab, samples, samples);
    worst = std::min(worst, pv);
    ok += pv > 1e-3;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d/50 patterns with p > 0.001 (smallest p %.4f)", ok, worst);
  return {ok == 50, buf};
}

}  // namespace

int main() {
  criterion(1, "generator correctness", 1, generators);
  criterion(2, "rule soundness", 30, rule_soundness);
  criterion(3, "standardization", 300, standardization);
  criterion(4, "teleportation determinism", 0, teleport_determinism);
  criterion(5, "Steane machinery", 120, steane);
  criterion(6, "error-rate scaling", 900, scaling);
  criterion(7, "depth preservation", 0, depth);
  criterion(8, "backend agreement", 0, backend_agreement);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
