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

#include <map>
#include <string>

#include <json.hpp>

#include "mbqc/pattern.hpp"

namespace mbqc {

inline constexpr int kFormatVersion = 1;

using AngleParams = std::map<std::string, Angle>;

/// Parses `n*pi/d`, `-pi/4`, `3pi/2`, `0`, `-a+pi/4`, `+2a` (named parameters
/// resolved through `params`).
Angle parse_angle(const std::string& text, const AngleParams& params = {});
std::string format_angle(Angle a);

std::string format_poly(const AnglePoly& p);
std::string format_parity(const SignalParity& c);

/// Line-oriented pattern DSL, one command per line in execution order:
///   IN: 1            OUT: 3
///   N 2 0            E 1 2
///   M 1 -a           M 2 poly{const:-a+pi/4; s1:+2a}
///   X 2 if s1        Z 3 pi if s1^s4
Pattern parse_dsl(const std::string& text, const AngleParams& params = {});
std::string to_dsl(const Pattern& p);

/// Right-to-left textbook notation, e.g. "X_2^{s1} M_1^{0} E_{1,2} N_2^{0}".
std::string to_textbook_notation(const Pattern& p);

nlohmann::json angle_to_json(Angle a);
Angle angle_from_json(const nlohmann::json& j);
nlohmann::json poly_to_json(const AnglePoly& p);
AnglePoly poly_from_json(const nlohmann::json& j);
nlohmann::json command_to_json(const Command& c);
Command command_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Pattern& p);
Pattern pattern_from_json(const nlohmann::json& j);

/// Dispatch on content: JSON if the first non-space character is '{'.
Pattern parse_pattern(const std::string& text, const AngleParams& params = {});

}  // namespace mbqc
