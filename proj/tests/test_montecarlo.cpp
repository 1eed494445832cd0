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

#include <doctest.h>

#include <cmath>

#include "mbqc/errors.hpp"
#include "mbqc/montecarlo.hpp"

using namespace mbqc;

TEST_CASE("Wilson interval") {
  const auto [lo, hi] = wilson_interval(10, 1000);
  CHECK(lo < 0.01);
  CHECK(hi > 0.01);
  CHECK(lo == doctest::Approx(0.00544).epsilon(0.01));
  CHECK(hi == doctest::Approx(0.01831).epsilon(0.01));
  CHECK(wilson_interval(0, 100).first == 0.0);
  CHECK(wilson_interval(0, 0) == std::pair<double, double>{0.0, 1.0});
}

TEST_CASE("noiseless experiments never fail") {
  for (const auto& id : pattern_ids()) {
    Experiment e;
    e.pattern_id = id;
    e.trials = 2000;
    const RateEstimate r = run_experiment(e);
    CHECK(r.failures == 0);
    CHECK(r.rate == 0.0);
    CHECK(r.acceptance == 1.0);
    CHECK(r.trials >= 2000);
  }
}

TEST_CASE("a bare X measurement fails at the flip rate") {
  Experiment e;
  e.pattern_id = "bare_measure";
  e.noise.p_meas = 0.01;
  e.trials = 100000;
  e.seed = 4;
  const RateEstimate r = run_experiment(e, 2);
  CHECK(r.ci_lo <= 0.01);
  CHECK(r.ci_hi >= 0.01);
  CHECK(r.ci_lo <= r.rate);
  CHECK(r.rate <= r.ci_hi);
}

TEST_CASE("results do not depend on the worker count") {
  Experiment e;
  e.pattern_id = "ft_wire";
  e.noise.p_prep = e.noise.p_ent = e.noise.p_meas = 0.01;
  e.trials = 5000;
  e.seed = 99;
  const RateEstimate one = run_experiment(e, 1);
  CHECK(run_experiment(e, 3) == one);
  CHECK(run_experiment(experiment_from_json(to_json(e)), 2) == one);
  CHECK(one.acceptance < 1.0);
  Experiment all = e;
  all.policy = Policy::AcceptAll;
  CHECK(run_experiment(all).acceptance == 1.0);
}

TEST_CASE("rates grow with the noise") {
  Experiment e;
  e.pattern_id = "bare_wire";
  e.trials = 20000;
  e.noise.p_ent = 0.002;
  const RateEstimate low = run_experiment(e);
  e.noise.p_ent = 0.02;
  const RateEstimate high = run_experiment(e);
  const double sigma = std::sqrt(low.rate / low.trials + high.rate / high.trials);
  CHECK(high.rate - low.rate > -5 * sigma);
  CHECK(high.rate > low.rate);
}

TEST_CASE("sweep fits a slope and flags thin points") {
  Experiment e;
  e.pattern_id = "bare_measure";
  e.trials = 20000;
  const SweepResult s = sweep(e, {0.0005, 0.02, 0.05});
  REQUIRE(s.points.size() == 3);
  CHECK(s.points[0].insufficient);
  CHECK(s.fitted == 2);
  CHECK(s.slope == doctest::Approx(1.0).epsilon(0.1));
  CHECK(to_csv(s).rfind("p_prep,p_ent,p_meas,trials,accepted,failures,rate,ci_lo,ci_hi\n", 0) == 0);
  CHECK(to_json(s).at("rows").size() == 3);
  CHECK_THROWS_AS(sweep(e, {}), std::invalid_argument);
}

TEST_CASE("configuration errors") {
  Experiment e;
  e.pattern_id = "nope";
  CHECK_THROWS_AS(run_experiment(e), UnknownName);
  CHECK_THROWS_AS(policy_from_name("sometimes"), UnknownName);
  CHECK(policy_from_name(policy_name(Policy::AcceptAll)) == Policy::AcceptAll);
}
