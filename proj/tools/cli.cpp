// Copyright 2026 The mcsterm Authors
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

#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcsterm/closure_decider.hpp"
#include "mcsterm/dsl.hpp"
#include "mcsterm/elaboration.hpp"
#include "mcsterm/oracle.hpp"
#include "mcsterm/ranking.hpp"
#include "report.hpp"

namespace mcsterm::tools {

namespace {

using Clock = std::chrono::steady_clock;

// Unreadable or invalid input; maps to the usage exit code.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ConstraintSystem load_system(const std::string& path, std::ostream& err) {
  const std::string text = read_file(path);
  ConstraintSystem cs;
  try {
    cs = parse_system(text);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.what());
  }
  std::string errors;
  for (const Diagnostic& d : validate_system(cs)) {
    if (d.severity == Severity::kWarning) {
      err << path << ": warning: " << d.message << "\n";
    } else {
      errors += (errors.empty() ? "" : "\n") + path + ": " + d.message;
    }
  }
  if (!errors.empty()) throw InputError(errors);
  return cs;
}

struct AnalyzeArgs {
  std::string file;
  std::string algo = "elaborate";
  bool subsumption = false;
  bool idempotent_only = false;
  bool witness = false;
  bool json = false;
};

int analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  ClosureOptions copts;
  copts.subsumption = a.subsumption;
  copts.idempotent_only = a.idempotent_only;
  if (a.subsumption && a.idempotent_only) {
    err << "error: " << kIdempotentSubsumptionWarning << "\n";
    return kExitUsage;
  }

  auto start = Clock::now();
  const ConstraintSystem cs = load_system(a.file, err);
  nlohmann::json timings = {{"parse_ms", millis_since(start)}};

  std::optional<Verdict> closure;
  std::optional<Verdict> elaborate;
  if (a.algo != "elaborate") {
    start = Clock::now();
    closure = decide_closure(cs, copts);
    timings["closure_ms"] = millis_since(start);
  }
  if (a.algo != "closure") {
    start = Clock::now();
    elaborate = decide_elaborate(cs);
    timings["elaborate_ms"] = millis_since(start);
  }
  const bool disagree = closure && elaborate && closure->result != elaborate->result;
  const Verdict& main = elaborate ? *elaborate : *closure;
  const std::optional<Witness>& witness =
      closure && closure->witness ? closure->witness : main.witness;

  if (a.json) {
    nlohmann::json j = {{"verdict", to_string(main.result)},
                        {"algorithm", a.algo},
                        {"closure_set_size", nullptr},
                        {"elaborated_points", nullptr},
                        {"ranking", nullptr},
                        {"witness", nullptr},
                        {"timings", timings}};
    if (closure) j["closure_set_size"] = closure->stats.closure_set_size;
    if (elaborate) j["elaborated_points"] = elaborate->stats.elaborated_points;
    if (main.ranking) j["ranking"] = ranking_json(*main.ranking, cs);
    if (!main.terminating() && witness) j["witness"] = witness_json(*witness, cs);
    if (closure && elaborate) j["agreement"] = !disagree;
    out << j.dump(2) << "\n";
  } else {
    out << "verdict: " << to_string(main.result) << "\n";
    out << "algorithm: " << a.algo << "\n";
    if (closure) out << "closure set size: " << closure->stats.closure_set_size << "\n";
    if (elaborate) {
      out << "elaborated points: " << elaborate->stats.elaborated_points << "\n";
    }
    if (!main.terminating() && witness) {
      out << "witness: " << witness_text(*witness, cs) << "\n";
      if (a.witness) {
        for (const std::string& id : witness->cycle) {
          const MonotonicityConstraint& mc = cs.mcs[*cs.find_mc(id)];
          out << "  " << id << ": " << cs.points[mc.src_point()].name << " -> "
              << cs.points[mc.dst_point()].name << " "
              << format_mc(mc, cs.var_names) << "\n";
        }
        int k = 1;
        while (k <= 8 && satisfiable_power(witness->mc, k)) ++k;
        out << "  powers satisfiable: " << (k > 8 ? "1..8" : "up to " + std::to_string(k - 1))
            << "\n";
      }
    }
  }
  if (disagree) {
    err << "error: the closure-based and elaboration-based deciders disagree\n";
    return kExitInternal;
  }
  return main.terminating() ? kExitOk : kExitNegative;
}

struct RankArgs {
  std::string file;
  std::string verify = "symbolic";
  int domain = kDefaultDomainSize;
  bool json = false;
};

int rank(const RankArgs& a, std::ostream& out, std::ostream& err) {
  const ConstraintSystem cs = load_system(a.file, err);
  const Verdict v = decide_elaborate(cs);
  if (!v.terminating()) {
    if (a.json) {
      nlohmann::json j = {{"verdict", to_string(v.result)}, {"ranking", nullptr}};
      if (v.witness) j["witness"] = witness_json(*v.witness, cs);
      out << j.dump(2) << "\n";
    } else {
      out << "# verdict: " << to_string(v.result) << "\n";
      if (v.witness) out << "# witness: " << witness_text(*v.witness, cs) << "\n";
    }
    return kExitNegative;
  }

  const RankingFunction& r = *v.ranking;
  bool ok = true;
  std::optional<SymbolicReport> symbolic;
  std::optional<NumericReport> numeric;
  if (a.verify != "numeric") {
    symbolic = verify_ranking_symbolic(cs, r);
    ok = ok && symbolic->valid();
  }
  if (a.verify != "symbolic") {
    numeric = verify_ranking_numeric(cs, r, a.domain);
    ok = ok && numeric->valid;
  }

  if (a.json) {
    nlohmann::json verification = nlohmann::json::object();
    if (symbolic) verification["symbolic"] = symbolic_json(*symbolic);
    if (numeric) verification["numeric"] = numeric_json(*numeric, a.domain);
    out << nlohmann::json{{"verdict", to_string(v.result)},
                          {"elaborated_points", v.stats.elaborated_points},
                          {"ranking", ranking_json(r, cs)},
                          {"verification", verification}}
               .dump(2)
        << "\n";
  } else {
    out << "# verdict: " << to_string(v.result) << "\n";
    out << format_ranking(r, cs);
    if (symbolic) out << "# symbolic check: " << symbolic_text(*symbolic) << "\n";
    if (numeric) out << "# numeric check: " << numeric_text(*numeric, a.domain) << "\n";
  }
  if (!ok) {
    err << "error: the synthesized ranking failed verification\n";
    return kExitInternal;
  }
  return kExitOk;
}

int elaborate(const std::string& file, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  const ConstraintSystem cs = load_system(file, err);
  const ElaboratedSystem elab = fully_elaborate(cs);
  std::string text = "# y<k> is the k-th smallest variable of the ordering after '@'\n";
  text += format_system(elab.system);
  if (out_path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file_out(out_path, std::ios::binary);
  if (!file_out || !(file_out << text)) throw InputError("cannot write " + out_path);
  return kExitOk;
}

struct CheckArgs {
  std::string file;
  std::string rank_file;
  std::optional<int> domain;
  bool json = false;
};

int check_ranking(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  const ConstraintSystem cs = load_system(a.file, err);
  RankingFunction r;
  try {
    r = parse_ranking(read_file(a.rank_file), cs);
  } catch (const ParseError& e) {
    throw InputError(a.rank_file + ":" + e.what());
  }

  nlohmann::json j = {{"valid", false}};
  std::optional<SymbolicReport> symbolic;
  try {
    symbolic = verify_ranking_symbolic(cs, r);
  } catch (const GuardError& e) {
    if (a.json) {
      j["guards"] = e.what();
      out << j.dump(2) << "\n";
    } else {
      out << "guards: " << e.what() << "\n";
    }
    return kExitNegative;
  }
  std::optional<NumericReport> numeric;
  if (a.domain) numeric = verify_ranking_numeric(cs, r, *a.domain);

  const bool valid = symbolic->valid() && (!numeric || numeric->valid);
  if (a.json) {
    j["valid"] = valid;
    j["symbolic"] = symbolic_json(*symbolic);
    if (numeric) j["numeric"] = numeric_json(*numeric, *a.domain);
    out << j.dump(2) << "\n";
  } else {
    out << "symbolic check: " << symbolic_text(*symbolic) << "\n";
    if (numeric) out << "numeric check: " << numeric_text(*numeric, *a.domain) << "\n";
    out << (valid ? "valid" : "invalid") << "\n";
  }
  return valid ? kExitOk : kExitNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Termination analysis for monotonicity constraint systems", "mcsterm"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Decide termination of a system");
  analyze_cmd->add_option("FILE", analyze_args.file, "System file")->required();
  analyze_cmd->add_option("--algo", analyze_args.algo, "Decision procedure")
      ->check(CLI::IsMember({"closure", "elaborate", "both"}))
      ->capture_default_str();
  analyze_cmd->add_flag("--subsumption", analyze_args.subsumption,
                        "Prune subsumed closure-set members");
  analyze_cmd->add_flag("--idempotent-only", analyze_args.idempotent_only,
                        "Test only idempotent closure-set members");
  analyze_cmd->add_flag("--witness", analyze_args.witness,
                        "Print the MCs along the non-termination witness");
  analyze_cmd->add_flag("--json", analyze_args.json, "Structured output");

  RankArgs rank_args;
  auto* rank_cmd = app.add_subcommand("rank", "Synthesize and verify a ranking function");
  rank_cmd->add_option("FILE", rank_args.file, "System file")->required();
  rank_cmd->add_option("--verify", rank_args.verify, "Verification of the result")
      ->check(CLI::IsMember({"symbolic", "numeric", "both"}))
      ->capture_default_str();
  rank_cmd->add_option("--domain-size", rank_args.domain, "Numeric domain {0..D}")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  rank_cmd->add_flag("--json", rank_args.json, "Structured output");

  std::string elab_file;
  std::string elab_out;
  auto* elab_cmd = app.add_subcommand("elaborate", "Print the fully elaborated system");
  elab_cmd->add_option("FILE", elab_file, "System file")->required();
  elab_cmd->add_option("--out", elab_out, "Write to this file instead of stdout");

  CheckArgs check_args;
  auto* check_cmd =
      app.add_subcommand("check-ranking", "Verify a ranking function against a system");
  check_cmd->add_option("FILE", check_args.file, "System file")->required();
  check_cmd->add_option("RANKFILE", check_args.rank_file, "Ranking file")->required();
  check_cmd->add_option("--domain-size", check_args.domain,
                        "Also check numerically over {0..D}")
      ->check(CLI::PositiveNumber);
  check_cmd->add_flag("--json", check_args.json, "Structured output");

  RandomParams params;
  auto* random_cmd = app.add_subcommand("random", "Print a seeded random system");
  random_cmd->add_option("--vars", params.num_vars, "Variables")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  random_cmd->add_option("--points", params.points, "Flow points")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();
  random_cmd->add_option("--mcs", params.mcs, "Monotonicity constraints")
      ->check(CLI::Range(0, 100000))
      ->capture_default_str();
  random_cmd->add_option("--density", params.density, "Arc probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  random_cmd->add_option("--seed", params.seed, "Generator seed")->capture_default_str();
  random_cmd->add_option("--invariant-density", params.invariant_density,
                         "Invariant arc probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  std::vector<std::string> storage = {"mcsterm"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : storage) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analyze_cmd->parsed()) return analyze(analyze_args, out, err);
    if (rank_cmd->parsed()) return rank(rank_args, out, err);
    if (elab_cmd->parsed()) return elaborate(elab_file, elab_out, out, err);
    if (check_cmd->parsed()) return check_ranking(check_args, out, err);
    if (random_cmd->parsed()) {
      out << format_system(random_system(params));
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace mcsterm::tools
