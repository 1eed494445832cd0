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

#include "mbqc/pattern_io.hpp"

#include <cctype>
#include <sstream>

#include "mbqc/errors.hpp"

namespace mbqc {

using nlohmann::json;

namespace {

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

// term := [int ['*']] atom ['/' int] | int ['/' int]
// atom := "pi" | identifier
Angle parse_term(const std::string& t, const AngleParams& params) {
  std::size_t i = 0;
  std::int64_t coef = 1;
  bool have_coef = false;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
  if (i > 0) {
    coef = std::stoll(t.substr(0, i));
    have_coef = true;
  }
  if (i < t.size() && t[i] == '*') ++i;
  std::size_t start = i;
  while (i < t.size() && (std::isalnum(static_cast<unsigned char>(t[i])) || t[i] == '_')) ++i;
  std::string atom = t.substr(start, i - start);
  std::int64_t den = 1;
  if (i < t.size() && t[i] == '/') {
    std::string d = t.substr(i + 1);
    if (d.empty() || !std::all_of(d.begin(), d.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw ParseError("bad angle denominator in '" + t + "'");
    }
    den = std::stoll(d);
    i = t.size();
  }
  if (i != t.size()) throw ParseError("bad angle term '" + t + "'");
  if (atom.empty()) {
    if (!have_coef) throw ParseError("empty angle term");
    // Bare integers denote multiples of π only when zero; anything else is ambiguous.
    if (coef != 0) throw ParseError("bare number '" + t + "' in angle; write n*pi/d");
    return Angle::zero();
  }
  Angle base;
  if (atom == "pi") {
    base = Angle::pi();
  } else {
    auto it = params.find(atom);
    if (it == params.end()) throw ParseError("unresolved angle parameter '" + atom + "'");
    base = it->second;
  }
  // (coef/den)·base, exact.
  return Angle(base.num() * coef, base.den() * den);
}

Monomial parse_monomial(const std::string& s) {
  Monomial m;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, '*');) {
    part = trim(part);
    if (part.size() < 2 || part[0] != 's') throw ParseError("bad signal '" + part + "'");
    m.push_back(std::stoi(part.substr(1)));
  }
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

AnglePoly parse_poly_or_angle(const std::string& text, const AngleParams& params) {
  std::string t = trim(text);
  if (t.rfind("poly{", 0) != 0) return AnglePoly(parse_angle(t, params));
  if (t.back() != '}') throw ParseError("unterminated poly{...}");
  std::string body = t.substr(5, t.size() - 6);
  AnglePoly p;
  std::stringstream ss(body);
  for (std::string item; std::getline(ss, item, ';');) {
    item = trim(item);
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos) throw ParseError("poly term without ':' in '" + item + "'");
    std::string key = trim(item.substr(0, colon));
    Angle coeff = parse_angle(item.substr(colon + 1), params);
    Monomial m = key == "const" ? Monomial{} : parse_monomial(key);
    p = p + AnglePoly::term(m, coeff);
  }
  return p;
}

SignalParity parse_parity(const std::string& text) {
  std::vector<QubitId> sig;
  bool constant = false;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, '^');) {
    part = trim(part);
    if (part == "1") {
      constant = !constant;
    } else if (part.size() >= 2 && part[0] == 's') {
      sig.push_back(std::stoi(part.substr(1)));
    } else {
      throw ParseError("bad condition term '" + part + "'");
    }
  }
  SignalParity c = SignalParity::on(std::move(sig));
  c.constant = constant;
  return c;
}

std::vector<QubitId> parse_id_list(const std::string& s) {
  std::vector<QubitId> out;
  std::string t = s;
  std::replace(t.begin(), t.end(), ',', ' ');
  for (const auto& tok : split_ws(t)) out.push_back(std::stoi(tok));
  return out;
}

QubitId parse_id(const std::string& s) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw ParseError("bad qubit id '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad qubit id '" + s + "'");
  }
}

}  // namespace

Angle parse_angle(const std::string& text, const AngleParams& params) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t.empty()) throw ParseError("empty angle");
  Angle total;
  std::size_t i = 0;
  while (i < t.size()) {
    int sign = 1;
    if (t[i] == '+' || t[i] == '-') {
      sign = t[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t j = i;
    while (j < t.size() && t[j] != '+' && t[j] != '-') ++j;
    Angle a = parse_term(t.substr(i, j - i), params);
    total += sign < 0 ? -a : a;
    i = j;
  }
  return total;
}

std::string format_angle(Angle a) {
  if (a.is_zero()) return "0";
  std::string s = a.num() == 1 ? "pi" : std::to_string(a.num()) + "*pi";
  if (a.den() != 1) s += "/" + std::to_string(a.den());
  return s;
}

std::string format_poly(const AnglePoly& p) {
  if (p.is_constant()) return format_angle(p.constant());
  std::string s = "poly{";
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) s += "; ";
    first = false;
    if (m.empty()) {
      s += "const";
    } else {
      for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "*s" : "s") + std::to_string(m[i]);
    }
    s += ":" + format_angle(c);
  }
  return s + "}";
}

std::string format_parity(const SignalParity& c) {
  std::string s;
  if (c.constant) s = "1";
  for (QubitId q : c.signals) s += (s.empty() ? "s" : "^s") + std::to_string(q);
  return s.empty() ? "0" : s;
}

Pattern parse_dsl(const std::string& text, const AngleParams& params) {
  std::vector<QubitId> in, out;
  std::vector<Command> cmds;
  std::istringstream is(text);
  int lineno = 0;
  for (std::string line; std::getline(is, line);) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    try {
      if (line.rfind("IN:", 0) == 0) {
        auto ids = parse_id_list(line.substr(3));
        in.insert(in.end(), ids.begin(), ids.end());
        continue;
      }
      if (line.rfind("OUT:", 0) == 0) {
        auto ids = parse_id_list(line.substr(4));
        out.insert(out.end(), ids.begin(), ids.end());
        continue;
      }
      // split off a trailing "if <cond>"
      SignalParity cond = SignalParity::always();
      if (auto pos = line.find(" if "); pos != std::string::npos) {
        cond = parse_parity(line.substr(pos + 4));
        line = trim(line.substr(0, pos));
      }
      auto tok = split_ws(line);
      const std::string& op = tok.at(0);
      if (op == "N") {
        if (tok.size() < 2 || tok.size() > 3) throw ParseError("N expects: N <q> [angle]");
        cmds.push_back(Prepare{parse_id(tok[1]), tok.size() == 3 ? parse_angle(tok[2], params) : Angle{}});
      } else if (op == "E") {
        if (tok.size() != 3) throw ParseError("E expects two qubits");
        cmds.push_back(Entangle{parse_id(tok[1]), parse_id(tok[2])});
      } else if (op == "M") {
        if (tok.size() < 2) throw ParseError("M expects: M <q> [angle|poly{...}]");
        std::string rest;
        for (std::size_t i = 2; i < tok.size(); ++i) rest += tok[i] + " ";
        cmds.push_back(Measure{parse_id(tok[1]), rest.empty() ? AnglePoly{} : parse_poly_or_angle(rest, params)});
      } else if (op == "X") {
        if (tok.size() != 2) throw ParseError("X expects: X <q> [if cond]");
        cmds.push_back(CorrectX{parse_id(tok[1]), cond});
      } else if (op == "Z") {
        if (tok.size() < 2 || tok.size() > 3) throw ParseError("Z expects: Z <q> [angle] [if cond]");
        cmds.push_back(CorrectZ{parse_id(tok[1]), tok.size() == 3 ? parse_angle(tok[2], params) : Angle::pi(), cond});
      } else {
        throw ParseError("unknown command '" + op + "'");
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::out_of_range&) {
      throw ParseError("line " + std::to_string(lineno) + ": malformed command");
    }
  }
  return make_pattern(std::move(in), std::move(out), std::move(cmds));
}

std::string to_dsl(const Pattern& p) {
  std::ostringstream os;
  auto ids = [](const std::vector<QubitId>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
  };
  os << "IN: " << ids(p.inputs) << "\n";
  os << "OUT: " << ids(p.outputs) << "\n";
  auto suffix = [](const SignalParity& c) {
    return c.is_always() ? std::string() : " if " + format_parity(c);
  };
  for (const auto& c : p.commands) {
    if (const auto* n = std::get_if<Prepare>(&c)) {
      os << "N " << n->qubit << " " << format_angle(n->angle) << "\n";
    } else if (const auto* e = std::get_if<Entangle>(&c)) {
      os << "E " << e->a << " " << e->b << "\n";
    } else if (const auto* m = std::get_if<Measure>(&c)) {
      os << "M " << m->qubit << " " << format_poly(m->angle) << "\n";
    } else if (const auto* x = std::get_if<CorrectX>(&c)) {
      os << "X " << x->qubit << suffix(x->cond) << "\n";
    } else if (const auto* z = std::get_if<CorrectZ>(&c)) {
      os << "Z " << z->qubit << " " << format_angle(z->angle) << suffix(z->cond) << "\n";
    }
  }
  return os.str();
}

std::string to_textbook_notation(const Pattern& p) {
  std::vector<std::string> parts;
  auto cond = [](const SignalParity& c) {
    if (c.is_always()) return std::string();
    return "^{" + format_parity(c) + "}";
  };
  for (const auto& c : p.commands) {
    if (const auto* n = std::get_if<Prepare>(&c)) {
      parts.push_back("N_" + std::to_string(n->qubit) + "^{" + format_angle(n->angle) + "}");
    } else if (const auto* e = std::get_if<Entangle>(&c)) {
      parts.push_back("E_{" + std::to_string(e->a) + "," + std::to_string(e->b) + "}");
    } else if (const auto* m = std::get_if<Measure>(&c)) {
      parts.push_back("M_" + std::to_string(m->qubit) + "^{" + format_poly(m->angle) + "}");
    } else if (const auto* x = std::get_if<CorrectX>(&c)) {
      parts.push_back("X_" + std::to_string(x->qubit) + cond(x->cond));
    } else if (const auto* z = std::get_if<CorrectZ>(&c)) {
      parts.push_back("Z_" + std::to_string(z->qubit) + "(" + format_angle(z->angle) + ")" + cond(z->cond));
    }
  }
  std::string s;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) s += (s.empty() ? "" : " ") + *it;
  return s;
}

json angle_to_json(Angle a) { return json{{"num", a.num()}, {"den", a.den()}}; }

Angle angle_from_json(const json& j) { return Angle(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>()); }

json poly_to_json(const AnglePoly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    terms.push_back(json{{"signals", m}, {"num", c.num()}, {"den", c.den()}});
  }
  return json{{"terms", terms}};
}

AnglePoly poly_from_json(const json& j) {
  AnglePoly p;
  for (const auto& t : j.at("terms")) {
    p = p + AnglePoly::term(t.at("signals").get<Monomial>(), angle_from_json(t));
  }
  return p;
}

namespace {

json parity_to_json(const SignalParity& c) { return json{{"constant", c.constant}, {"signals", c.signals}}; }

SignalParity parity_from_json(const json& j) {
  SignalParity c = SignalParity::on(j.at("signals").get<std::vector<QubitId>>());
  c.constant = j.at("constant").get<bool>();
  return c;
}

}  // namespace

json command_to_json(const Command& c) {
  if (const auto* n = std::get_if<Prepare>(&c)) return json{{"op", "N"}, {"qubit", n->qubit}, {"angle", angle_to_json(n->angle)}};
  if (const auto* e = std::get_if<Entangle>(&c)) return json{{"op", "E"}, {"qubits", {e->a, e->b}}};
  if (const auto* m = std::get_if<Measure>(&c)) return json{{"op", "M"}, {"qubit", m->qubit}, {"angle", poly_to_json(m->angle)}};
  if (const auto* x = std::get_if<CorrectX>(&c)) return json{{"op", "X"}, {"qubit", x->qubit}, {"cond", parity_to_json(x->cond)}};
  const auto& z = std::get<CorrectZ>(c);
  return json{{"op", "Z"}, {"qubit", z.qubit}, {"angle", angle_to_json(z.angle)}, {"cond", parity_to_json(z.cond)}};
}

Command command_from_json(const json& j) {
  const std::string op = j.at("op").get<std::string>();
  if (op == "N") return Prepare{j.at("qubit").get<QubitId>(), angle_from_json(j.at("angle"))};
  if (op == "E") {
    auto q = j.at("qubits").get<std::vector<QubitId>>();
    if (q.size() != 2) throw ParseError("E needs two qubits");
    return Entangle{q[0], q[1]};
  }
  if (op == "M") return Measure{j.at("qubit").get<QubitId>(), poly_from_json(j.at("angle"))};
  if (op == "X") return CorrectX{j.at("qubit").get<QubitId>(), parity_from_json(j.at("cond"))};
  if (op == "Z") return CorrectZ{j.at("qubit").get<QubitId>(), angle_from_json(j.at("angle")), parity_from_json(j.at("cond"))};
  throw ParseError("unknown op '" + op + "'");
}

json to_json(const Pattern& p) {
  json cmds = json::array();
  for (const auto& c : p.commands) cmds.push_back(command_to_json(c));
  return json{{"format_version", kFormatVersion},
              {"qubits", p.qubits},
              {"inputs", p.inputs},
              {"outputs", p.outputs},
              {"commands", cmds}};
}

Pattern pattern_from_json(const json& j) {
  try {
    if (j.value("format_version", kFormatVersion) != kFormatVersion) throw ParseError("unsupported format_version");
    Pattern p;
    p.inputs = j.at("inputs").get<std::vector<QubitId>>();
    p.outputs = j.at("outputs").get<std::vector<QubitId>>();
    for (const auto& c : j.at("commands")) p.commands.push_back(command_from_json(c));
    Pattern q = make_pattern(p.inputs, p.outputs, p.commands);
    if (j.contains("qubits")) {
      auto v = j.at("qubits").get<std::vector<QubitId>>();
      std::sort(v.begin(), v.end());
      q.qubits = v;
    }
    return q;
  } catch (const json::exception& e) {
    throw ParseError(std::string("pattern json: ") + e.what());
  }
}

Pattern parse_pattern(const std::string& text, const AngleParams& params) {
  auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && text[pos] == '{') {
    try {
      return pattern_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw ParseError(e.what());
    }
  }
  return parse_dsl(text, params);
}

}  // namespace mbqc
