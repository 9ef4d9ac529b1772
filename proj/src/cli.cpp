// Copyright 2026 The espec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "espec/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "espec/error.hpp"
#include "espec/oracle.hpp"
#include "espec/protocol.hpp"
#include "espec/random.hpp"
#include "espec/specfile.hpp"
#include "espec/version.hpp"

namespace espec {

namespace {

using nlohmann::ordered_json;

/// Ends the command with the given exit code after its message is printed.
struct Exit {
  int code;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string fixed(double x) {
  if (std::abs(x) < 5e-7) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string fixed(Complex c) {
  const double im = std::abs(c.imag()) < 5e-7 ? 0.0 : c.imag();
  return fixed(c.real()) + (im < 0 ? "-" : "+") + fixed(std::abs(im)) + "i";
}

void print_matrix(std::ostream& o, const CMatrix& m, const std::string& indent) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    o << indent << "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) o << " " << fixed(m(r, c));
    o << " ]\n";
  }
}

ordered_json matrix_json(const CMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json label_json(const FunctionalLabel& l) {
  return {{"linearity", to_string(l.linearity())}, {"matrix", matrix_json(l.matrix())}};
}

std::string read_file(const std::string& file, std::ostream& err) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    err << "error: cannot read '" << file << "'\n";
    throw Exit{2};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& file, const std::string& text, std::ostream& err) {
  std::ofstream o(file, std::ios::binary);
  if (!(o << text)) {
    err << "error: cannot write '" << file << "'\n";
    throw Exit{2};
  }
}

void print_parse_diagnostics(std::ostream& o, const std::string& file,
                             const std::vector<SpecDiagnostic>& diags) {
  for (const auto& d : diags) {
    o << file << ":" << d.line << ":" << d.column << ": " << d.code << ": " << d.message << "\n";
  }
}

int event_line(const SpecDocument& doc, const std::string& id) {
  for (const auto& e : doc.events) {
    if (e.event.id == id) return e.line;
  }
  return 0;
}

/// Structural diagnostics of the network and of every path, anchored to
/// source lines.
int check_document(const SpecDocument& doc, const Network& n, const std::string& file,
                   std::ostream& o) {
  int count = 0;
  for (const auto& d : validate(n)) {
    o << file << ":" << event_line(doc, d.event) << ":1: " << d.code << ": " << d.message << "\n";
    ++count;
  }
  if (count) return count;
  for (const auto& p : doc.paths) {
    for (const auto& d : validate_path(n, p.path)) {
      o << file << ":" << p.line << ":1: " << d.code << ": path '" << p.path.name
        << "': " << d.message << "\n";
      ++count;
    }
  }
  return count;
}

struct Loaded {
  SpecDocument doc;
  Network network;
};

Loaded load(const std::string& file, std::ostream& err) {
  ParseResult r = parse(read_file(file, err));
  if (!r.ok()) {
    print_parse_diagnostics(err, file, r.diagnostics);
    throw Exit{2};
  }
  Network n = to_network(r.document);
  if (check_document(r.document, n, file, err) > 0) throw Exit{1};
  return {std::move(r.document), std::move(n)};
}

const Path& find_path(const Loaded& l, const std::string& name, std::ostream& err) {
  const PathRecord* p = l.doc.find_path(name);
  if (!p) {
    err << "error: no path named '" << name << "'\n";
    throw Exit{1};
  }
  return p->path;
}

std::uint64_t default_seed(std::ostream& err) {
  const char* env = std::getenv("ESPEC_SEED");
  if (!env || !*env) return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  err << "error: ESPEC_SEED must be a non-negative integer\n";
  throw Exit{2};
}

std::string echo(const std::vector<std::string>& args) {
  std::string s = "espec";
  for (const auto& a : args) s += " " + a;
  return s;
}

void header(std::ostream& o, const std::string& command, std::optional<std::uint64_t> seed) {
  o << "# espec " << kVersion << "\n# command: " << command << "\n";
  if (seed) o << "# seed: " << *seed << "\n";
}

const char* status_name(TrialStatus s) {
  switch (s) {
    case TrialStatus::Pass: return "pass";
    case TrialStatus::Fail: return "fail";
    case TrialStatus::Zero: return "zero-amplitude";
  }
  return "";
}

const char* start_name(StartKind k) {
  switch (k) {
    case StartKind::Input: return "input";
    case StartKind::Anchored: return "anchored";
    case StartKind::Open: return "open";
  }
  return "";
}

ordered_json report_json(const VerifyReport& r) {
  ordered_json trials = ordered_json::array();
  for (const auto& t : r.trials) {
    trials.push_back({{"trial", t.trial},
                      {"seed", t.seed},
                      {"status", status_name(t.status)},
                      {"residual", t.residual},
                      {"mismatch", t.mismatch}});
  }
  return {{"trials", std::move(trials)},
          {"passed", r.passed},
          {"failed", r.failed},
          {"zero_amplitude", r.zero}};
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& file, std::ostream& out, std::ostream& err) {
  ParseResult r = parse(read_file(file, err));
  if (!r.ok()) {
    print_parse_diagnostics(out, file, r.diagnostics);
    return 1;
  }
  const Network n = to_network(r.document);
  if (check_document(r.document, n, file, out) > 0) return 1;
  out << file << ": ok (" << r.document.tracks.size() << " tracks, " << r.document.events.size()
      << " events, " << r.document.paths.size() << " paths)\n";
  return 0;
}

int cmd_predict(const std::string& file, const std::string& path_name, bool json,
                const std::string& command, std::ostream& out, std::ostream& err) {
  const Loaded l = load(file, err);
  const Path& p = find_path(l, path_name, err);
  FunctionalLabel c(identity(1), Linearity::Linear);
  FunctionalLabel f = c;
  try {
    c = composite(l.network, p);
    f = path_function(l.network, p);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  const StartKind kind = start_kind(l.network, p);
  std::optional<CVector> prediction;
  if (kind != StartKind::Open && (kind == StartKind::Anchored || l.network.inputs().count(p.start.track))) {
    prediction = predict_output(l.network, p);
  }
  const int k = projector_count(l.network, p);

  if (json) {
    ordered_json j{{"version", kVersion},
                   {"command", command},
                   {"path", p.name},
                   {"projectors", k},
                   {"start", start_name(kind)},
                   {"input_track", p.start.track},
                   {"output_track", p.end.track},
                   {"composite", label_json(c)},
                   {"function", label_json(f)}};
    if (prediction) j["prediction"] = matrix_json(prediction->transpose());
    out << j.dump(2) << "\n";
    return 0;
  }
  header(out, command, std::nullopt);
  out << "path " << p.name << ": " << k << " projectors, " << start_name(kind)
      << " start on track " << p.start.track << ", output on track " << p.end.track << "\n";
  out << "composite: " << to_string(c.linearity()) << " " << c.cod_dim() << "x" << c.dom_dim()
      << "\n";
  print_matrix(out, c.matrix(), "  ");
  if (f.linearity() != c.linearity()) {
    out << "input-to-output map: " << to_string(f.linearity()) << " (argument enters conjugated)\n";
  }
  if (prediction) {
    out << "prediction:\n";
    print_matrix(out, prediction->transpose(), "  ");
  }
  return 0;
}

int cmd_verify(const std::string& file, const std::string& path_name, int trials,
               std::uint64_t seed, double tol, bool json, const std::string& command,
               std::ostream& out, std::ostream& err) {
  const Loaded l = load(file, err);
  const Path& p = find_path(l, path_name, err);
  VerifyReport r;
  try {
    r = verify_theorem(l.network, p, trials, seed, tol);
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (json) {
    ordered_json j{{"version", kVersion}, {"command", command}, {"seed", seed},
                   {"path", p.name},      {"tolerance", tol},   {"report", report_json(r)},
                   {"result", r.ok() ? "PASS" : "FAIL"}};
    out << j.dump(2) << "\n";
    return r.ok() ? 0 : 1;
  }
  header(out, command, seed);
  out << "path " << p.name << ", tolerance " << sci(tol) << "\n";
  out << "trial seed status residual mismatch\n";
  for (const auto& t : r.trials) {
    out << t.trial << " " << t.seed << " " << status_name(t.status);
    if (t.status != TrialStatus::Zero) out << " " << sci(t.residual) << " " << sci(t.mismatch);
    out << "\n";
  }
  out << "summary: " << r.trials.size() << " trials, " << r.passed << " passed, " << r.failed
      << " failed, " << r.zero << " zero-amplitude\n";
  out << "result: " << (r.ok() ? "PASS" : "FAIL") << "\n";
  return r.ok() ? 0 : 1;
}

struct ProtocolRun {
  CompiledProtocol compiled;
  std::vector<BranchReport> reports;
};

void print_protocol(std::ostream& o, const CompiledProtocol& c,
                    const std::vector<BranchReport>* reports, std::optional<int> tensor_split) {
  o << "target: " << to_string(c.target.linearity()) << " " << c.target.cod_dim() << "x"
    << c.target.dom_dim() << "\n";
  print_matrix(o, c.target.matrix(), "  ");
  o << "branches: " << c.branches.size() << "\n";
  for (std::size_t i = 0; i < c.branches.size(); ++i) {
    const auto& b = c.branches[i];
    o << "branch " << b.key << " correction:";
    if (tensor_split) {
      const auto f = factor_tensor(b.correction, *tensor_split, b.correction.rows() / *tensor_split);
      o << " tensor residual " << sci(f.residual);
    }
    if (reports) {
      const auto& r = (*reports)[i].report;
      o << " verified " << r.passed << "/" << r.trials.size();
      if (r.zero) o << " (" << r.zero << " zero-amplitude)";
    }
    o << "\n";
    print_matrix(o, b.correction, "  ");
  }
}

ordered_json protocol_json(const CompiledProtocol& c, const std::vector<BranchReport>* reports,
                           std::optional<int> tensor_split) {
  ordered_json branches = ordered_json::array();
  for (std::size_t i = 0; i < c.branches.size(); ++i) {
    const auto& b = c.branches[i];
    ordered_json j{{"key", b.key}, {"correction", matrix_json(b.correction)}};
    if (tensor_split) {
      j["tensor_residual"] =
          factor_tensor(b.correction, *tensor_split, b.correction.rows() / *tensor_split).residual;
    }
    if (reports) j["report"] = report_json((*reports)[i].report);
    branches.push_back(std::move(j));
  }
  return {{"target", label_json(c.target)}, {"branches", std::move(branches)}};
}

int cmd_compile(const std::string& file, const std::string& path_name,
                const std::optional<std::string>& target_name, const std::string& output,
                bool json, const std::string& command, std::ostream& out, std::ostream& err) {
  Loaded l = load(file, err);
  const Path& p = find_path(l, path_name, err);
  const MeasurementPlan plan = to_plan(l.doc);
  if (plan.empty()) {
    err << "error: the document declares no measurements\n";
    return 1;
  }
  std::optional<CompiledProtocol> c;
  try {
    FunctionalLabel target = path_function(l.network, p);
    if (target_name) {
      auto named = named_label(*target_name);
      if (!named) {
        err << "error: unknown label '" << *target_name << "'\n";
        return 2;
      }
      target = named->with_linearity(target.linearity());
    }
    c.emplace(compile_unconditional(l.network, p, plan, target));
  } catch (const NotCompilable& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  attach_protocol(l.doc, p.name + "_compiled", p.name, *c);
  if (!output.empty()) write_file(output, serialize(l.doc), err);
  if (json) {
    ordered_json j{{"version", kVersion}, {"command", command}, {"path", p.name}};
    j["protocol"] = protocol_json(*c, nullptr, std::nullopt);
    out << j.dump(2) << "\n";
    return 0;
  }
  header(out, command, std::nullopt);
  out << "path " << p.name << "\n";
  print_protocol(out, *c, nullptr, std::nullopt);
  if (!output.empty()) out << "wrote " << output << "\n";
  return 0;
}

struct DemoOptions {
  std::string which;
  std::string gate = "cnot";
  int m = 3;
  bool two_stage = false;
  int trials = 20;
  std::uint64_t seed = 0;
  bool json = false;
  std::string output;
};

int cmd_demo(const DemoOptions& o, const std::string& command, std::ostream& out,
             std::ostream& err) {
  Builtin b = builtin_teleportation(o.two_stage);
  std::optional<int> split;
  if (o.which == "gateteleport") {
    auto g = named_label(o.gate);
    if (!g) {
      err << "error: unknown gate '" << o.gate << "'\n";
      return 2;
    }
    b = builtin_gate_teleportation(*g);
    if (g->dom_dim() == 4) split = 2;
  } else if (o.which == "swap") {
    b = builtin_swap();
  } else if (o.which == "parallel") {
    if (o.m < 1) {
      err << "error: -m must be at least 1\n";
      return 2;
    }
    Rng rng(o.seed);
    std::vector<FunctionalLabel> fs;
    for (int i = 0; i < o.m; ++i) fs.emplace_back(random_unitary(rng, 2), Linearity::AntiLinear);
    b = builtin_parallel(fs);
  }

  std::optional<CompiledProtocol> compiled;
  std::vector<BranchReport> reports;
  try {
    compiled.emplace(compile_unconditional(b.network, b.path, b.plan, b.target));
    reports = verify_protocol(*compiled, o.trials, o.seed);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  const CompiledProtocol& c = *compiled;
  bool ok = true;
  int verified = 0;
  for (const auto& r : reports) {
    const bool good = r.report.ok() && r.report.passed > 0;
    ok = ok && good;
    verified += good;
  }

  if (!o.output.empty()) {
    SpecDocument doc = to_document(b.network, {b.path}, b.plan);
    attach_protocol(doc, o.which, b.path.name, c);
    write_file(o.output, serialize(doc), err);
  }
  if (o.json) {
    ordered_json j{{"version", kVersion}, {"command", command}, {"seed", o.seed},
                   {"demo", o.which}};
    j["protocol"] = protocol_json(c, &reports, split);
    j["verified_branches"] = verified;
    j["result"] = ok ? "PASS" : "FAIL";
    out << j.dump(2) << "\n";
    return ok ? 0 : 1;
  }
  header(out, command, o.seed);
  out << "demo " << o.which << "\n";
  print_protocol(out, c, &reports, split);
  out << "summary: " << c.branches.size() << " branches, " << verified << " verified\n";
  if (!o.output.empty()) out << "wrote " << o.output << "\n";
  out << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement specification networks: prediction, verification and protocol "
               "compilation.",
               "espec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string file;
  std::string path;
  std::optional<std::string> target;
  std::string output;
  int trials = 20;
  std::optional<std::uint64_t> seed;
  double tol = kDefaultTol;
  bool json = false;
  DemoOptions demo;

  auto* v = app.add_subcommand("validate", "Check a specification file");
  v->add_option("file", file, "Specification file")->required();

  auto* p = app.add_subcommand("predict", "Print the composite a path induces");
  p->add_option("file", file, "Specification file")->required();
  p->add_option("--path", path, "Path name")->required();
  p->add_flag("--json", json, "Machine-readable report");

  auto* ver = app.add_subcommand("verify", "Check a path's prediction against the simulator");
  ver->add_option("file", file, "Specification file")->required();
  ver->add_option("--path", path, "Path name")->required();
  ver->add_option("--trials", trials, "Number of trials")->check(CLI::NonNegativeNumber);
  ver->add_option("--seed", seed, "Random seed (default: $ESPEC_SEED or 0)");
  ver->add_option("--tol", tol, "Tolerance")->check(CLI::NonNegativeNumber);
  ver->add_flag("--json", json, "Machine-readable report");

  auto* com = app.add_subcommand("compile", "Synthesize end-of-path corrections");
  com->add_option("file", file, "Specification file")->required();
  com->add_option("--path", path, "Path name")->required();
  com->add_option("--target", target, "Named target label (default: the path's own map)");
  com->add_option("-o,--output", output, "Write the compiled specification here");
  com->add_flag("--json", json, "Machine-readable report");

  auto* dem = app.add_subcommand("demo", "Compile and verify a built-in protocol");
  dem->add_option("protocol", demo.which, "teleport, gateteleport, swap or parallel")
      ->required()
      ->check(CLI::IsMember({"teleport", "gateteleport", "swap", "parallel"}));
  dem->add_option("--gate", demo.gate, "Gate for gateteleport");
  dem->add_option("-m", demo.m, "Chain length for parallel");
  dem->add_flag("--two-stage", demo.two_stage, "Split the Bell measurement into two stages");
  dem->add_option("--trials", demo.trials, "Trials per branch")->check(CLI::NonNegativeNumber);
  dem->add_option("--seed", seed, "Random seed (default: $ESPEC_SEED or 0)");
  dem->add_flag("--json", demo.json, "Machine-readable report");
  dem->add_option("-o,--output", demo.output, "Write the compiled specification here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const std::string command = echo(args);
  try {
    if (*v) return cmd_validate(file, out, err);
    if (*p) return cmd_predict(file, path, json, command, out, err);
    if (*ver) {
      return cmd_verify(file, path, trials, seed ? *seed : default_seed(err), tol, json, command,
                        out, err);
    }
    if (*com) return cmd_compile(file, path, target, output, json, command, out, err);
    demo.seed = seed ? *seed : default_seed(err);
    return cmd_demo(demo, command, out, err);
  } catch (const Exit& e) {
    return e.code;
  }
}

}  // namespace espec
