#include "mmlp/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>

#include "mmlp/error.hpp"
#include "mmlp/evaluation.hpp"
#include "mmlp/generators.hpp"
#include "mmlp/hypergraph.hpp"
#include "mmlp/io.hpp"
#include "mmlp/local.hpp"
#include "mmlp/lowerbound.hpp"
#include "mmlp/maxmin.hpp"

namespace mmlp {

namespace {

struct RunConfig {
  std::string command;
  std::string in;
  std::string out;
  std::string assignment;
  std::string meta_out;
  std::string csv;
  std::string alg = "safe";
  int alg_R = 1;
  int d = 2;
  int D = 1;
  int r = 1;
  int R = 2;
  int dim = 2;
  int side = 8;
  bool perturb = false;
  std::size_t n_agents = 10;
  std::size_t max_support = 3;
  double coeff_min = 0.5;
  double coeff_max = 1.0;
  std::uint64_t seed = 1;
  std::size_t n_per_side = 0;
  std::size_t node_cap = kDefaultNodeCap;
  std::size_t oracle_cap = kDefaultOracleCap;
  int rmax = 3;
  double tol = 1e-9;
  unsigned workers = 1;
};

Json to_json(const RunConfig& c) {
  return Json{{"command", c.command},       {"in", c.in},
              {"out", c.out},               {"assignment", c.assignment},
              {"meta_out", c.meta_out},     {"csv", c.csv},
              {"alg", c.alg},               {"alg_R", c.alg_R},
              {"d", c.d},                   {"D", c.D},
              {"r", c.r},                   {"R", c.R},
              {"dim", c.dim},               {"n", c.side},
              {"perturb", c.perturb},       {"n_agents", c.n_agents},
              {"max_support", c.max_support}, {"coeff_min", c.coeff_min},
              {"coeff_max", c.coeff_max},   {"seed", c.seed},
              {"n_per_side", c.n_per_side}, {"node_cap", c.node_cap},
              {"oracle_cap", c.oracle_cap}, {"rmax", c.rmax},
              {"tol", c.tol},               {"workers", c.workers}};
}

/// Invalid input data (as opposed to a malformed command line).
class InputError : public Error {
 public:
  using Error::Error;
};

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Instance load_instance(const std::string& path) {
  auto instance = instance_from_json(read_json_file(path));
  const auto report = validate(instance);
  if (!report.valid()) {
    std::string msg = "invalid instance " + path + ":";
    for (const auto& v : report.violations) msg += "\n  " + to_string(v.kind) + ": " + v.detail;
    throw InputError(msg);
  }
  return instance;
}

void emit(const RunConfig& cfg, Json doc, std::ostream& out) {
  doc["run_config"] = to_json(cfg);
  if (cfg.out.empty()) {
    out << doc.dump(2) << "\n";
  } else {
    write_json_file(cfg.out, doc);
  }
}

int run_command(const RunConfig& cfg, std::ostream& out) {
  const auto& cmd = cfg.command;
  if (cmd == "gen-torus") {
    emit(cfg, instance_to_json(gen_torus({cfg.dim, cfg.side, cfg.perturb, cfg.seed, cfg.node_cap})),
         out);
  } else if (cmd == "gen-random") {
    emit(cfg,
         instance_to_json(gen_random(
             {cfg.n_agents, cfg.max_support, cfg.coeff_min, cfg.coeff_max, cfg.seed})),
         out);
  } else if (cmd == "gen-lowerbound") {
    const auto [S, meta] =
        build_instance_S({cfg.d, cfg.D, cfg.r, cfg.R, cfg.seed, cfg.n_per_side, cfg.node_cap});
    if (!cfg.meta_out.empty()) {
      auto doc = to_json(meta);
      doc["run_config"] = to_json(cfg);
      write_json_file(cfg.meta_out, doc);
    }
    emit(cfg, instance_to_json(S), out);
  } else if (cmd == "solve") {
    const auto instance = load_instance(cfg.in);
    const auto sol = solve_maxmin(instance);
    out << "omega = " << number(sol.omega) << "\n";
    if (!cfg.out.empty()) {
      auto doc = assignment_to_json(sol.x);
      doc["omega"] = sol.omega;
      emit(cfg, std::move(doc), out);
    }
  } else if (cmd == "run") {
    const auto instance = load_instance(cfg.in);
    const auto alg = make_algorithm(cfg.alg, cfg.alg_R);
    const auto x = run_local(instance, *alg, {cfg.workers});
    const double omega = objective(instance, x);
    out << "omega = " << number(omega) << "\n";
    if (!cfg.out.empty()) {
      auto doc = assignment_to_json(x);
      doc["algorithm"] = alg->name();
      doc["horizon"] = alg->horizon();
      doc["omega"] = omega;
      doc["feasible"] = feasibility(instance, x, cfg.tol).feasible;
      emit(cfg, std::move(doc), out);
    }
  } else if (cmd == "adversary") {
    const auto alg = make_algorithm(cfg.alg, cfg.alg_R);
    const auto report = adversarial_lower_bound(
        *alg, {cfg.d, cfg.D, cfg.r, cfg.R, cfg.seed, cfg.n_per_side, cfg.node_cap});
    emit(cfg, to_json(report), out);
  } else if (cmd == "eval") {
    const auto instance = load_instance(cfg.in);
    Assignment x;
    std::string label;
    EvaluationOptions options{cfg.oracle_cap, cfg.tol, std::nullopt};
    if (!cfg.assignment.empty()) {
      x = assignment_from_json(read_json_file(cfg.assignment));
      label = "file:" + cfg.assignment;
    } else {
      const auto alg = make_algorithm(cfg.alg, cfg.alg_R);
      x = run_local(instance, *alg, {cfg.workers});
      label = alg->name();
      if (cfg.alg == "local-avg") options.averaging_R = cfg.alg_R;
    }
    if (!x.covers(instance)) throw InputError("assignment does not cover the instance's agents");
    const auto report = evaluate(instance, x, options);
    if (!cfg.csv.empty()) {
      write_text_file(cfg.csv, "# run_config " + to_json(cfg).dump() + "\n" + csv_header() + "\n" +
                                   csv_row(cfg.in, label, report) + "\n");
    }
    auto doc = to_json(report);
    doc["algorithm"] = label;
    emit(cfg, std::move(doc), out);
  } else if (cmd == "growth") {
    const auto instance = load_instance(cfg.in);
    const Hypergraph graph(instance);
    Json gammas = Json::object();
    for (int r = 1; r <= cfg.rmax; ++r) {
      const auto g = graph.growth(r);
      out << "gamma(" << r << ") = " << g.to_string() << "\n";
      gammas[std::to_string(r)] = g.to_string();
    }
    if (!cfg.out.empty()) emit(cfg, Json{{"gamma", gammas}}, out);
  }
  return kExitOk;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv(kOracleCapEnv)) {
    try {
      cfg.oracle_cap = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: " << kOracleCapEnv << " must be a nonnegative integer\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Max-min linear programs under local computation"};
  app.require_subcommand(1);

  auto* torus = app.add_subcommand("gen-torus", "Generate a toroidal grid instance");
  torus->add_option("--dim", cfg.dim, "Grid dimension")->check(CLI::PositiveNumber);
  torus->add_option("--n", cfg.side, "Side length (>= 3)")->check(CLI::Range(3, 1 << 20));
  torus->add_flag("--perturb", cfg.perturb, "Draw coefficients from [1/2, 1]");
  torus->add_option("--seed", cfg.seed);
  torus->add_option("--node-cap", cfg.node_cap);
  torus->add_option("--out", cfg.out);

  auto* random = app.add_subcommand("gen-random", "Generate a random bounded-degree instance");
  random->add_option("--n", cfg.n_agents, "Number of agents")->check(CLI::PositiveNumber);
  random->add_option("--max-support", cfg.max_support)->check(CLI::PositiveNumber);
  random->add_option("--coeff-min", cfg.coeff_min);
  random->add_option("--coeff-max", cfg.coeff_max);
  random->add_option("--seed", cfg.seed);
  random->add_option("--out", cfg.out);

  auto add_construction = [&cfg](CLI::App* sub) {
    sub->add_option("--d", cfg.d, "Delta_VI - 1")->check(CLI::PositiveNumber);
    sub->add_option("--D", cfg.D, "Delta_VK - 1")->check(CLI::PositiveNumber);
    sub->add_option("--r", cfg.r, "Horizon the construction defeats")->check(CLI::PositiveNumber);
    sub->add_option("--R", cfg.R, "Tree height parameter (trees have height 2R-1)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed);
    sub->add_option("--n-per-side", cfg.n_per_side, "Template vertices per side (0: automatic)");
    sub->add_option("--node-cap", cfg.node_cap);
    sub->add_option("--out", cfg.out);
  };
  auto* lower = app.add_subcommand("gen-lowerbound", "Generate the adversarial instance S");
  add_construction(lower);
  lower->add_option("--meta-out", cfg.meta_out, "Write construction bookkeeping here");

  auto* solve = app.add_subcommand("solve", "Solve the global max-min LP exactly");
  solve->add_option("--in", cfg.in)->required();
  solve->add_option("--out", cfg.out);

  auto add_algorithm = [&cfg](CLI::App* sub, const char* radius_flag) {
    sub->add_option("--alg", cfg.alg)->check(CLI::IsMember({"zero", "safe", "local-avg"}));
    sub->add_option(radius_flag, cfg.alg_R, "Inner radius of local-avg")->check(CLI::PositiveNumber);
    sub->add_option("--workers", cfg.workers)->check(CLI::PositiveNumber);
  };
  auto* run = app.add_subcommand("run", "Run a local algorithm");
  run->add_option("--in", cfg.in)->required();
  run->add_option("--out", cfg.out);
  add_algorithm(run, "--R");
  run->add_option("--tol", cfg.tol);

  auto* adversary = app.add_subcommand("adversary", "Attack a local algorithm with S and S'");
  add_construction(adversary);
  add_algorithm(adversary, "--alg-R");

  auto* eval = app.add_subcommand("eval", "Evaluate an assignment or algorithm on an instance");
  eval->add_option("--in", cfg.in)->required();
  eval->add_option("--assignment", cfg.assignment, "Assignment JSON (otherwise --alg is run)");
  eval->add_option("--out", cfg.out);
  eval->add_option("--csv", cfg.csv, "Also write a CSV row here");
  eval->add_option("--oracle-cap", cfg.oracle_cap);
  eval->add_option("--tol", cfg.tol);
  add_algorithm(eval, "--R");

  auto* growth = app.add_subcommand("growth", "Print gamma(r) for r = 1..rmax");
  growth->add_option("--in", cfg.in)->required();
  growth->add_option("--rmax", cfg.rmax)->check(CLI::PositiveNumber);
  growth->add_option("--out", cfg.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    return run_command(cfg, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace mmlp
