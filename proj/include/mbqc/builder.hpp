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
#include <vector>

#include "mbqc/pattern.hpp"

namespace mbqc {

/// Appends commands to a growing pattern, handing out fresh qubit ids.
class PatternBuilder {
 public:
  explicit PatternBuilder(QubitId next = 1) : next_(next) {}

  QubitId fresh() { return next_++; }
  QubitId next() const { return next_; }
  void reserve_through(QubitId q) { next_ = std::max(next_, q + 1); }

  QubitId prepare(Angle a = Angle::zero()) {
    QubitId q = fresh();
    cmds_.push_back(Prepare{q, a});
    return q;
  }
  void entangle(QubitId a, QubitId b) { cmds_.push_back(Entangle{a, b}); }
  void measure(QubitId q, AnglePoly a = {}) { cmds_.push_back(Measure{q, std::move(a)}); }
  void correct_x(QubitId q, SignalParity c) { cmds_.push_back(CorrectX{q, std::move(c)}); }
  void correct_z(QubitId q, Angle a, SignalParity c) { cmds_.push_back(CorrectZ{q, a, std::move(c)}); }
  void push(Command c) { cmds_.push_back(std::move(c)); }

  /// Hadamard by one-bit teleportation; returns the qubit now carrying the state.
  QubitId j0(QubitId q) {
    QubitId w = prepare();
    entangle(q, w);
    measure(q);
    correct_x(w, SignalParity::on({q}));
    return w;
  }

  std::vector<Command>& commands() { return cmds_; }
  Pattern build(std::vector<QubitId> inputs, std::vector<QubitId> outputs) const {
    return make_pattern(std::move(inputs), std::move(outputs), cmds_);
  }

 private:
  QubitId next_;
  std::vector<Command> cmds_;
};

}  // namespace mbqc
