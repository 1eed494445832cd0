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

#include <algorithm>
#include <random>
#include <vector>

#include "mbqc/pattern.hpp"
#include "mbqc/rewrite.hpp"

namespace mbqc::testing {

/// A valid pattern on 4 qubits in which the rule applies at `step`.
struct RuleContext {
  Pattern pattern;
  RewriteStep step;
};

inline RuleContext random_rule_context(std::mt19937_64& rng, Rule rule) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coin = [&] { return std::bernoulli_distribution(0.5)(rng); };
  auto angle = [&] { return Angle(uniform(0, 7), 4); };

  std::vector<QubitId> q{1, 2, 3, 4};
  std::shuffle(q.begin(), q.end(), rng);
  const QubitId s = q[0], i = q[1], j = q[2], o = q[3];
  std::vector<QubitId> pool = q;
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<QubitId> inputs(pool.begin(), pool.begin() + uniform(1, 2));
  std::vector<Command> cmds;
  for (QubitId x : q) {
    if (std::find(inputs.begin(), inputs.end(), x) == inputs.end()) cmds.push_back(Prepare{x, angle()});
  }
  auto entangle_some = [&](std::vector<QubitId> among, int count) {
    for (int k = 0; k < count; ++k) {
      std::shuffle(among.begin(), among.end(), rng);
      cmds.push_back(Entangle{among[0], among[1]});
    }
  };
  entangle_some({s, i, j, o}, uniform(1, 3));
  cmds.push_back(Measure{s, AnglePoly(angle())});
  entangle_some({i, j, o}, uniform(0, 2));

  const SignalParity cond{coin(), {s}};
  RuleContext ctx{{}, {rule, cmds.size(), 0}};
  const AnglePoly theta = AnglePoly(angle()) + AnglePoly::term({s}, angle());
  std::vector<QubitId> outputs{o, j};
  switch (rule) {
    case Rule::MergeZ:
      cmds.push_back(CorrectZ{i, Angle(uniform(1, 7), 4), cond});
      cmds.push_back(Measure{i, theta});
      break;
    case Rule::MergeX:
      cmds.push_back(CorrectX{i, cond});
      cmds.push_back(Measure{i, theta});
      break;
    case Rule::CommuteEX:
    case Rule::CommuteEZ:
      if (rule == Rule::CommuteEX) {
        cmds.push_back(CorrectX{i, cond});
      } else {
        cmds.push_back(CorrectZ{i, Angle(uniform(1, 7), 4), cond});
      }
      cmds.push_back(Entangle{i, j});
      if (coin()) {
        cmds.push_back(Measure{i, theta});
      } else {
        outputs.push_back(i);
      }
      break;
    default:
      break;
  }
  std::shuffle(outputs.begin(), outputs.end(), rng);
  ctx.pattern = make_pattern(inputs, outputs, cmds);
  return ctx;
}

}  // namespace mbqc::testing
