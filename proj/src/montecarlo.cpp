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

#include "mbqc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <mutex>
#include <thread>

#include "mbqc/builder.hpp"
#include "mbqc/errors.hpp"
#include "mbqc/pattern_io.hpp"
#include "mbqc/steane.hpp"

namespace mbqc {

namespace {

/// A pattern with every qubit measured, plus how to read its logical bit.
struct Workload {
  Pattern pattern;
  std::vector<QubitId> readout;  // XOR of these signals (bare)
  std::optional<Block> decoded;  // Hamming-decoded X word (encoded)
  std::vector<VerificationHook> verifications;
  std::vector<SyndromeHook> syndromes;

  int logical(const std::map<QubitId, int>& s) const {
    if (decoded) {
      Word w{};
      for (int i = 0; i < 7; ++i) w[i] = s.at((*decoded)[i]);
      return decode_transversal(w, 'X').logical;
    }
    int v = 0;
    for (QubitId q : readout) v ^= s.at(q);
    return v;
  }

  bool accepted(const std::map<QubitId, int>& s, Policy policy) const {
    if (policy == Policy::AcceptAll) return true;
    for (const auto& v : verifications) {
      if (!v.accepts(s)) return false;
    }
    for (const auto& h : syndromes) {
      if (!h.syndrome(s).trivial()) return false;
    }
    return true;
  }
};

Workload bare_measure() {
  PatternBuilder b;
  QubitId q = b.prepare();
  b.measure(q);
  return {b.build({}, {}), {q}, {}, {}, {}};
}

/// |+> carried through two one-bit teleportations and measured in X.
Workload bare_wire() {
  PatternBuilder b;
  QubitId q = b.prepare();
  q = b.j0(b.j0(q));
  b.measure(q);
  return {b.build({}, {}), {q}, {}, {}, {}};
}

/// Encoded |+>, one syndrome-extracting teleportation, transversal X readout.
Workload ft_wire(bool verified) {
  Pattern enc = build_plus_graph_encoder();
  Block data{};
  std::copy(enc.outputs.begin(), enc.outputs.end(), data.begin());
  TeleportOptions opt;
  opt.second_half = verified ? PlusSource::Verified : PlusSource::Graph;
  SyndromeTeleport t = build_syndrome_teleport_gadget(data, opt, enc.max_qubit() + 1);
  std::vector<Command> cmds = enc.commands;
  cmds.insert(cmds.end(), t.pattern.commands.begin(), t.pattern.commands.end());
  for (QubitId q : t.hook.outputs) cmds.push_back(Measure{q, AnglePoly{}});
  return {make_pattern({}, {}, cmds), {}, t.hook.outputs, t.verification, {t.hook}};
}

Workload workload(const std::string& id) {
  if (id == "bare_measure") return bare_measure();
  if (id == "bare_wire") return bare_wire();
  if (id == "ft_wire") return ft_wire(true);
  if (id == "ft_wire_unverified") return ft_wire(false);
  throw UnknownName("unknown pattern id '" + id + "'");
}

struct Tally {
  std::uint64_t attempted = 0, accepted = 0, failures = 0;
  Tally& operator+=(const Tally& o) {
    attempted += o.attempted;
    accepted += o.accepted;
    failures += o.failures;
    return *this;
  }
};

constexpr std::uint64_t kChunk = 8192;
constexpr int kReferenceRuns = 64;

}  // namespace

std::string policy_name(Policy p) { return p == Policy::AcceptAll ? "accept_all" : "reject_on_dirty"; }

Policy policy_from_name(const std::string& s) {
  if (s == "accept_all") return Policy::AcceptAll;
  if (s == "reject_on_dirty") return Policy::RejectOnDirty;
  throw UnknownName("unknown post-selection policy '" + s + "'");
}

std::vector<std::string> pattern_ids() { return {"bare_measure", "bare_wire", "ft_wire", "ft_wire_unverified"}; }

nlohmann::json to_json(const Experiment& e) {
  return {{"format_version", kFormatVersion},
          {"pattern_id", e.pattern_id},
          {"noise", to_json(e.noise)},
          {"trials", e.trials},
          {"seed", e.seed},
          {"policy", policy_name(e.policy)},
          {"min_failures", e.min_failures},
          {"max_trials", e.max_trials}};
}

Experiment experiment_from_json(const nlohmann::json& j) {
  Experiment e;
  e.pattern_id = j.at("pattern_id").get<std::string>();
  if (j.contains("noise")) e.noise = noise_model_from_json(j.at("noise"));
  e.trials = j.value("trials", e.trials);
  e.seed = j.value("seed", e.seed);
  if (j.contains("policy")) e.policy = policy_from_name(j.at("policy").get<std::string>());
  e.min_failures = j.value("min_failures", e.min_failures);
  e.max_trials = j.value("max_trials", e.max_trials);
  return e;
}

nlohmann::json to_json(const RateEstimate& e) {
  return {{"failures", e.failures}, {"trials", e.trials},   {"attempted", e.attempted}, {"rate", e.rate},
          {"ci_lo", e.ci_lo},       {"ci_hi", e.ci_hi},     {"acceptance", e.acceptance}};
}

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n), ph = static_cast<double>(k) / nn, z2 = z * z;
  const double centre = (ph + z2 / (2 * nn)) / (1 + z2 / nn);
  const double half = z / (1 + z2 / nn) * std::sqrt(ph * (1 - ph) / nn + z2 / (4 * nn * nn));
  return {k == 0 ? 0.0 : std::max(0.0, centre - half), k == n ? 1.0 : std::min(1.0, centre + half)};
}

RateEstimate run_experiment(const Experiment& e, unsigned jobs) {
  const Workload w = workload(e.pattern_id);
  const StabProgram prog(w.pattern);

  int reference = -1;
  for (int i = 0; i < kReferenceRuns; ++i) {
    StabOptions o;
    o.seed = splitmix64(e.seed ^ 0x5eedULL, i);
    const StabRun r = prog.run(o);
    if (!w.accepted(r.signals, Policy::RejectOnDirty)) throw std::logic_error("noiseless run of " + e.pattern_id + " was rejected");
    const int v = w.logical(r.signals);
    if (reference >= 0 && v != reference) throw std::logic_error("noiseless logical outcome of " + e.pattern_id + " is random");
    reference = v;
  }

  auto trial = [&](std::uint64_t index, Tally& t) {
    const std::uint64_t seed = splitmix64(e.seed, index);
    std::mt19937_64 noise_rng(splitmix64(seed, 1));
    std::vector<NoiseEvent> events = prog.sample_noise(e.noise, noise_rng);
    ++t.attempted;
    if (events.empty()) {
      ++t.accepted;
      return;
    }
    StabOptions o;
    o.seed = seed;
    o.replay = std::move(events);
    const StabRun r = prog.run(o);
    if (!w.accepted(r.signals, e.policy)) return;
    ++t.accepted;
    if (w.logical(r.signals) != reference) ++t.failures;
  };

  const unsigned workers = std::max(1u, jobs);
  const std::uint64_t cap = e.max_trials ? e.max_trials : 20 * std::max<std::uint64_t>(e.trials, 1);
  Tally total;
  // Fixed-size chunks keep the stopping point independent of the worker count.
  while (total.attempted < cap) {
    if (total.accepted >= e.trials && (e.min_failures == 0 || total.failures >= e.min_failures)) break;
    const std::uint64_t begin = total.attempted, end = std::min(cap, begin + kChunk);
    std::vector<Tally> part(workers);
    std::vector<std::jthread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned k = 0; k < workers; ++k) {
      pool.emplace_back([&, k] {
        try {
          for (std::uint64_t i = begin + k; i < end; i += workers) trial(i, part[k]);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
    for (const auto& t : part) total += t;
  }

  RateEstimate r;
  r.failures = total.failures;
  r.trials = total.accepted;
  r.attempted = total.attempted;
  r.rate = r.trials ? static_cast<double>(r.failures) / static_cast<double>(r.trials) : 0.0;
  std::tie(r.ci_lo, r.ci_hi) = wilson_interval(r.failures, r.trials);
  r.acceptance = r.attempted ? static_cast<double>(r.trials) / static_cast<double>(r.attempted) : 1.0;
  return r;
}

SweepResult sweep(const Experiment& e, const std::vector<double>& p_values, unsigned jobs) {
  if (p_values.empty()) throw std::invalid_argument("sweep needs at least one p value");
  SweepResult out;
  out.pattern_id = e.pattern_id;
  std::vector<double> xs, ys;
  for (double p : p_values) {
    Experiment point = e;
    point.noise.p_prep = point.noise.p_ent = point.noise.p_meas = p;
    SweepPoint sp{p, point.noise, run_experiment(point, jobs), false};
    sp.insufficient = sp.estimate.failures < kMinFitFailures;
    if (!sp.insufficient) {
      xs.push_back(std::log(p));
      ys.push_back(std::log(sp.estimate.rate));
    }
    out.points.push_back(sp);
  }
  out.fitted = xs.size();
  if (out.has_fit()) {
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    if (xs.size() > 2) {
      double rss = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = ys[i] - out.intercept - out.slope * xs[i];
        rss += d * d;
      }
      out.slope_stderr = std::sqrt(rss / (n - 2) / sxx);
    }
  }
  return out;
}

std::string csv_header() { return "p_prep,p_ent,p_meas,trials,accepted,failures,rate,ci_lo,ci_hi"; }

std::string csv_row(const NoiseModel& m, const RateEstimate& e) {
  std::ostringstream os;
  os << std::setprecision(10) << m.p_prep << ',' << m.p_ent << ',' << m.p_meas << ',' << e.attempted << ','
     << e.trials << ',' << e.failures << ',' << e.rate << ',' << e.ci_lo << ',' << e.ci_hi;
  return os.str();
}

std::string to_csv(const SweepResult& r) {
  std::string s = csv_header() + "\n";
  for (const auto& p : r.points) s += csv_row(p.noise, p.estimate) + "\n";
  return s;
}

nlohmann::json to_json(const SweepResult& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& p : r.points) {
    rows.push_back({{"p_prep", p.noise.p_prep},
                    {"p_ent", p.noise.p_ent},
                    {"p_meas", p.noise.p_meas},
                    {"trials", p.estimate.attempted},
                    {"accepted", p.estimate.trials},
                    {"failures", p.estimate.failures},
                    {"rate", p.estimate.rate},
                    {"ci_lo", p.estimate.ci_lo},
                    {"ci_hi", p.estimate.ci_hi},
                    {"insufficient_failures", p.insufficient}});
  }
  nlohmann::json j = {{"format_version", kFormatVersion}, {"pattern_id", r.pattern_id}, {"rows", rows},
                      {"fitted_points", r.fitted}};
  if (r.has_fit()) j["fit"] = {{"slope", r.slope}, {"intercept", r.intercept}, {"slope_stderr", r.slope_stderr}};
  return j;
}

}  // namespace mbqc
