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
#include <string>
#include <vector>

#include <json.hpp>

#include "mbqc/stabilizer.hpp"

namespace mbqc {

enum class Policy {
  AcceptAll,
  /// Reject when a verification check fails or a teleportation syndrome is nonzero.
  RejectOnDirty,
};

std::string policy_name(Policy p);
Policy policy_from_name(const std::string& s);

/// Registered workloads: bare_measure, bare_wire, ft_wire, ft_wire_unverified.
std::vector<std::string> pattern_ids();

struct Experiment {
  std::string pattern_id = "bare_wire";
  NoiseModel noise;
  /// Accepted trials to collect.
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  Policy policy = Policy::RejectOnDirty;
  /// Keep sampling past `trials` until this many failures are seen, up to
  /// `max_trials` attempts.  0 disables the extension.
  std::uint64_t min_failures = 0;
  /// Cap on attempted trials; 0 means 20x `trials`.
  std::uint64_t max_trials = 0;
};

nlohmann::json to_json(const Experiment& e);
Experiment experiment_from_json(const nlohmann::json& j);

struct RateEstimate {
  std::uint64_t failures = 0;
  std::uint64_t trials = 0;  // accepted
  std::uint64_t attempted = 0;
  double rate = 0, ci_lo = 0, ci_hi = 1;
  double acceptance = 1;
  bool operator==(const RateEstimate&) const = default;
};

/// 95% Wilson score interval for k successes out of n.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z = 1.959963984540054);

/// Workers only change wall time; results depend on the experiment alone.
RateEstimate run_experiment(const Experiment& e, unsigned jobs = 1);

struct SweepPoint {
  double p = 0;
  NoiseModel noise;
  RateEstimate estimate;
  bool insufficient = false;  // fewer than kMinFitFailures failures, left out of the fit
};

inline constexpr std::uint64_t kMinFitFailures = 100;

struct SweepResult {
  std::string pattern_id;
  std::vector<SweepPoint> points;
  std::size_t fitted = 0;
  /// log rate = intercept + slope log p, valid when fitted >= 2.
  double slope = 0, intercept = 0, slope_stderr = 0;
  bool has_fit() const { return fitted >= 2; }
};

/// Runs `e` with p_prep = p_ent = p_meas = p for each p.  Throws
/// std::invalid_argument on an empty list.
SweepResult sweep(const Experiment& e, const std::vector<double>& p_values, unsigned jobs = 1);

std::string to_csv(const SweepResult& r);
std::string csv_header();
std::string csv_row(const NoiseModel& m, const RateEstimate& e);
nlohmann::json to_json(const SweepResult& r);
nlohmann::json to_json(const RateEstimate& e);

}  // namespace mbqc
