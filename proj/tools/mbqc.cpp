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

#include <complex>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mbqc/dense.hpp"
#include "mbqc/errors.hpp"
#include "mbqc/frame.hpp"
#include "mbqc/ft_transform.hpp"
#include "mbqc/graph.hpp"
#include "mbqc/montecarlo.hpp"
#include "mbqc/pattern_io.hpp"
#include "mbqc/rewrite.hpp"
#include "mbqc/stabilizer.hpp"

namespace {

using nlohmann::json;
using namespace mbqc;

enum Exit { kOk = 0, kDiagnostics = 1, kUsage = 2, kInternal = 3 };

/// Reported as exit 1: a problem with the user's input rather than ours.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AngleParams parse_params(const std::vector<std::string>& items) {
  AngleParams out;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("--param expects name=angle, got '" + item + "'");
    out[item.substr(0, eq)] = parse_angle(item.substr(eq + 1));
  }
  return out;
}

struct Common {
  std::string input;
  std::string output;
  std::vector<std::string> params;

  Pattern pattern() const { return parse_pattern(slurp(input), parse_params(params)); }

  void emit(const std::string& text) const {
    if (output.empty() || output == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(output);
    if (!out) throw InputError("cannot write " + output);
    out << text;
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("pattern", c.input, "pattern file (DSL or JSON)")->required()->check(CLI::ExistingFile);
  app->add_option("-o,--output", c.output, "output path (default stdout)");
  app->add_option("--param", c.params, "angle parameter, e.g. a=pi/4");
}

std::string emit_pattern(const Pattern& p, const std::string& format) {
  return format == "json" ? to_json(p).dump(2) + "\n" : to_dsl(p);
}

std::string complex_str(std::complex<double> z) {
  auto clean = [](double v) { return std::abs(v) < 5e-13 ? 0.0 : v; };
  std::ostringstream os;
  os << std::setprecision(10) << clean(z.real()) << (clean(z.imag()) < 0 ? "-" : "+") << std::abs(clean(z.imag()))
     << "i";
  return os.str();
}

std::string matrix_str(const Eigen::MatrixXcd& m) {
  std::ostringstream os;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? "  " : "") << complex_str(m(r, c));
    os << "\n";
  }
  return os.str();
}

json signals_json(const std::map<QubitId, int>& s) {
  json j = json::object();
  for (auto [q, v] : s) j[std::to_string(q)] = v;
  return j;
}

int cmd_validate(const Common& c) {
  Pattern p = c.pattern();
  auto problems = validate(p);
  std::ostringstream os;
  for (const auto& v : problems) {
    os << (v.index == Violation::npos ? std::string("pattern") : "command " + std::to_string(v.index)) << ": "
       << v.rule << ": " << v.message << "\n";
  }
  if (problems.empty()) {
    os << "valid: " << p.qubits.size() << " qubits, " << p.commands.size() << " commands, pmm "
       << (is_pmm(p) ? "yes" : "no") << ", standard " << (is_standard(p) ? "yes" : "no") << "\n";
  }
  c.emit(os.str());
  return problems.empty() ? kOk : kDiagnostics;
}

int cmd_standardize(const Common& c, const std::string& strategy, const std::string& format,
                    const std::string& trace_path) {
  Pattern p = c.pattern();
  require_valid(p);
  auto r = standardize(p, strategy == "frame" ? Strategy::FramePropagation : Strategy::LocalRewrite);
  c.emit(emit_pattern(r.pattern, format));
  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    if (!out) throw InputError("cannot write " + trace_path);
    out << trace_to_json(r.trace).dump(2) << "\n";
  }
  return kOk;
}

int cmd_graph(const Common& c, const std::string& format) {
  Pattern p = c.pattern();
  require_valid(p);
  if (!is_standard(p)) p = standardize(p).pattern;
  auto g = extract_graph(p);
  auto dag = rounds(p);
  if (format == "json") {
    c.emit(to_json(g, dag).dump(2) + "\n");
  } else {
    c.emit(to_dot(g, &dag));
  }
  return kOk;
}

int cmd_simulate(const Common& c, const std::string& backend, bool branches, std::uint64_t seed,
                 const std::string& input_state, const std::string& noise_path) {
  Pattern p = c.pattern();
  require_valid(p);
  json out;
  if (backend == "stab") {
    StabOptions o;
    o.seed = seed;
    if (!input_state.empty()) o.input_state = input_state;
    if (!noise_path.empty()) o.noise = noise_model_from_json(json::parse(slurp(noise_path)));
    StabRun r = apply(p, o);
    out = {{"backend", "stab"}, {"seed", seed}, {"signals", signals_json(r.signals)}, {"noise_log", to_json(r.noise_log)}};
    json stabs = json::array();
    for (std::size_t i = 0; i < r.tableau.size(); ++i) stabs.push_back(r.tableau.stabilizer(i).str());
    out["qubit_order"] = r.qubit_order;
    out["stabilizers"] = stabs;
  } else {
    if (!noise_path.empty()) throw InputError("--noise needs --backend stab");
    const int n = static_cast<int>(p.inputs.size());
    Eigen::VectorXcd in = input_state.empty()                  ? product_state("plus", n)
                          : input_state.front() == '['         ? state_from_json(json::parse(input_state), n)
                                                               : state_from_json(json(input_state), n);
    out = {{"backend", "dense"}};
    if (branches) {
      json list = json::array();
      for (const auto& b : enumerate_branches(p, in)) {
        list.push_back({{"outcomes", signals_json(b.outcomes)},
                        {"probability", b.probability},
                        {"output", state_to_json(b.output)}});
      }
      out["branches"] = list;
    } else {
      RunResult r = run(p, in, seed);
      out["seed"] = seed;
      out["signals"] = signals_json(r.signals);
      out["output"] = state_to_json(r.output);
    }
  }
  c.emit(out.dump(2) + "\n");
  return kOk;
}

int cmd_unitary(const Common& c) {
  Pattern p = c.pattern();
  require_valid(p);
  c.emit(matrix_str(extract_unitary(p)));
  return kOk;
}

int cmd_ft(const Common& c, const FtOptions& options, const std::string& format, bool apply_frame) {
  Pattern p = c.pattern();
  require_valid(p);
  FtResult r = ft_transform(p, options);
  Pattern body = apply_frame ? with_output_frame(r) : r.pattern;
  if (format == "json") {
    json j = to_json(body);
    j["classical"] = to_json(r.meta);
    c.emit(j.dump(2) + "\n");
  } else {
    std::string text = to_dsl(body);
    std::istringstream meta(to_json(r.meta).dump(2));
    text += "# classical\n";
    for (std::string line; std::getline(meta, line);) text += "# " + line + "\n";
    c.emit(text);
  }
  return kOk;
}

int cmd_mc(const std::string& config_path, const std::string& output, unsigned jobs, const std::string& format) {
  json cfg = json::parse(slurp(config_path));
  Experiment e = experiment_from_json(cfg);
  std::ostringstream os;
  if (cfg.contains("p_values")) {
    SweepResult r = sweep(e, cfg.at("p_values").get<std::vector<double>>(), jobs);
    if (format == "json") {
      os << to_json(r).dump(2) << "\n";
    } else {
      os << to_csv(r);
      if (r.has_fit()) {
        os << "# slope " << r.slope << " +- " << r.slope_stderr << " over " << r.fitted << " points\n";
      } else {
        os << "# slope unavailable: fewer than 2 points with " << kMinFitFailures << " failures\n";
      }
      for (const auto& pt : r.points) {
        if (pt.insufficient) os << "# insufficient failures at p=" << pt.p << "\n";
      }
    }
  } else {
    RateEstimate r = run_experiment(e, jobs);
    if (format == "json") {
      os << to_json(r).dump(2) << "\n";
    } else {
      os << csv_header() << "\n" << csv_row(e.noise, r) << "\n";
    }
  }
  Common sink;
  sink.output = output;
  sink.emit(os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-calculus patterns: rewriting, simulation and fault-tolerant compilation"};
  app.require_subcommand(1, 1);

  Common common;
  std::string format = "dsl", strategy = "local", trace, backend = "dense", input_state, noise, config, mc_format = "csv";
  bool branches = false, apply_frame = false;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  FtOptions ft_opts;

  auto* validate_cmd = app.add_subcommand("validate", "check pattern well-formedness");
  add_common(validate_cmd, common);

  auto* standardize_cmd = app.add_subcommand("standardize", "rewrite into N E M C order");
  add_common(standardize_cmd, common);
  standardize_cmd->add_option("--strategy", strategy, "local (traced rewriting) or frame")
      ->check(CLI::IsMember({"local", "frame"}));
  standardize_cmd->add_option("--emit", format, "dsl or json")->check(CLI::IsMember({"dsl", "json"}));
  standardize_cmd->add_option("--trace", trace, "write the rewrite trace as JSON to this path");

  auto* graph_cmd = app.add_subcommand("graph", "entanglement graph and measurement rounds");
  add_common(graph_cmd, common);
  std::string graph_format = "dot";
  graph_cmd->add_option("--format", graph_format, "dot or json")->check(CLI::IsMember({"dot", "json"}));

  auto* simulate_cmd = app.add_subcommand("simulate", "run a pattern");
  add_common(simulate_cmd, common);
  simulate_cmd->add_option("--backend", backend, "dense or stab")->check(CLI::IsMember({"dense", "stab"}));
  simulate_cmd->add_flag("--branches", branches, "enumerate every branch (dense)");
  simulate_cmd->add_option("--seed", seed, "outcome seed");
  simulate_cmd->add_option("--input-state", input_state, "named state or JSON amplitude list");
  simulate_cmd->add_option("--noise", noise, "noise model JSON (stab)")->check(CLI::ExistingFile);

  auto* unitary_cmd = app.add_subcommand("unitary", "extract the implemented unitary");
  add_common(unitary_cmd, common);

  auto* ft_cmd = app.add_subcommand("ft", "Steane-encoded fault-tolerant version of a PMM pattern");
  add_common(ft_cmd, common);
  ft_cmd->add_option("--emit", format, "dsl or json")->check(CLI::IsMember({"dsl", "json"}));
  ft_cmd->add_flag("--verify-prep", ft_opts.verify_prep, "post-selected |+> blocks");
  bool sparse_teleports = false;
  ft_cmd->add_flag("--sparse-teleports", sparse_teleports, "teleport only after entangling gadgets");
  ft_cmd->add_flag("--verify-teleport-output", ft_opts.verify_teleport_output, "verified second half in teleports");
  ft_cmd->add_flag("--partial-syndrome", ft_opts.partial_syndrome, "experimental partial syndrome extraction");
  ft_cmd->add_flag("--apply-frame", apply_frame, "append the output Pauli frame as corrections");

  auto* mc_cmd = app.add_subcommand("mc", "logical error rate estimation from an experiment config");
  mc_cmd->add_option("config", config, "experiment JSON, optionally with p_values")->required()->check(CLI::ExistingFile);
  mc_cmd->add_option("-o,--output", common.output, "output path (default stdout)");
  mc_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  mc_cmd->add_option("--format", mc_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  ft_opts.teleport_every_gadget = !sparse_teleports;

  try {
    if (*validate_cmd) return cmd_validate(common);
    if (*standardize_cmd) return cmd_standardize(common, strategy, format, trace);
    if (*graph_cmd) return cmd_graph(common, graph_format);
    if (*simulate_cmd) return cmd_simulate(common, backend, branches, seed, input_state, noise);
    if (*unitary_cmd) return cmd_unitary(common);
    if (*ft_cmd) return cmd_ft(common, ft_opts, format, apply_frame);
    if (*mc_cmd) return cmd_mc(config, common.output, jobs, mc_format);
  } catch (const mbqc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDiagnostics;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDiagnostics;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDiagnostics;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDiagnostics;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
