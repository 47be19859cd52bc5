#include "mulab/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mulab/corpus.hpp"
#include "mulab/csv.hpp"
#include "mulab/dynamics.hpp"
#include "mulab/errors.hpp"
#include "mulab/infotheory.hpp"
#include "mulab/pipeline.hpp"

namespace mulab::cli {

namespace {

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io", "cannot open for writing: " + path);
  out << content;
  if (!out) throw Error("io", "write failed: " + path);
}

dynamics::RootPolicy make_policy(const std::string& name, double p_plus) {
  if (name == "plus") return dynamics::RootPolicy::always_plus();
  if (name == "minus") return dynamics::RootPolicy::always_minus();
  return dynamics::RootPolicy::random_sign(p_plus);
}

// Each family takes exactly one of --a/--b/--c/--d (or generic --param).
double pick_parameter(const dynamics::MapKind& probe, std::optional<double> a,
                      std::optional<double> b, std::optional<double> c,
                      std::optional<double> d, std::optional<double> generic) {
  const char* expected = "";
  std::optional<double> match;
  switch (probe.family()) {
    case dynamics::MapFamily::Logistic:
    case dynamics::MapFamily::Incursive:
    case dynamics::MapFamily::DoubleContingency:
      expected = "--a";
      match = a;
      break;
    case dynamics::MapFamily::Interaction:
      expected = "--b";
      match = b;
      break;
    case dynamics::MapFamily::SelfOrganization:
      expected = "--c";
      match = c;
      break;
    case dynamics::MapFamily::Organization:
      expected = "--d";
      match = d;
      break;
  }
  int given = 0;
  for (const auto& opt : {a, b, c, d})
    if (opt) ++given;
  if (generic && given > 0)
    throw CLI::ValidationError("give either --param or a map letter, not both");
  if (generic) return *generic;
  if (given != 1 || !match)
    throw CLI::ValidationError(std::string("map ") + probe.name() + " takes " +
                               expected + " (or --param)");
  return *match;
}

struct SimulateArgs {
  std::string map;
  std::optional<double> a, b, c, d, param;
  double x0 = 0.0;
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
  std::string policy = "random";
  double p_plus = 0.5;
  std::string out = "-";
};

struct SweepArgs {
  std::string map;
  std::string grid;
  int runs = 1000;
  std::uint64_t seed = 0;
  std::uint64_t cap = 1000000;
  double x0 = 0.5;
  std::string policy = "random";
  double p_plus = 0.5;
  std::string out = "-";
  std::string summary;
};

struct MeasureArgs {
  std::string table;
  double tol = 1e-10;
  int max_iter = 10000;
  std::string out = "-";
};

struct PipelineArgs {
  std::string corpus_path;
  std::uint32_t word_threshold = 2;
  std::uint32_t author_threshold = 1;
  double tau = 0.1;
  double tol = 1e-10;
  int max_iter = 10000;
  std::string out = "-";
};

std::vector<double> parse_grid(const std::string& grid) {
  std::vector<double> values;
  std::istringstream ss(grid);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError("bad grid value: " + item);
    }
  }
  if (values.empty()) throw CLI::ValidationError("empty grid");
  return values;
}

int run_simulate(const SimulateArgs& args) {
  auto probe = dynamics::MapKind::from_name(args.map, 1.0);
  const double param =
      pick_parameter(probe, args.a, args.b, args.c, args.d, args.param);
  dynamics::SimConfig config{dynamics::MapKind::from_name(args.map, param),
                             args.x0, args.steps, args.seed,
                             make_policy(args.policy, args.p_plus)};
  const dynamics::Trajectory trajectory = dynamics::simulate(config);
  write_output(args.out, dynamics::trajectory_csv(trajectory, config));
  return 0;
}

int run_sweep(const SweepArgs& args) {
  auto probe = dynamics::MapKind::from_name(args.map, 1.0);
  const auto grid = parse_grid(args.grid);
  const auto policy = make_policy(args.policy, args.p_plus);
  const auto stats = dynamics::sweep(probe, grid, args.runs, args.seed, args.cap,
                                     args.x0, policy);
  write_output(args.out, dynamics::sweep_csv(stats, probe, args.runs, args.seed,
                                             args.cap, args.x0, policy));
  if (!args.summary.empty())
    write_output(args.summary,
                 dynamics::sweep_summary_json(stats, probe, args.runs, args.seed,
                                              args.cap, args.x0, policy) +
                     "\n");
  return 0;
}

int run_measure(const MeasureArgs& args) {
  std::ifstream in(args.table, std::ios::binary);
  if (!in) throw Error("io", "cannot open contingency CSV: " + args.table);
  const auto table = infotheory::ContingencyTable::read_csv(in);
  const auto report =
      infotheory::analyze(table.normalized(), args.tol, args.max_iter);
  nlohmann::json j = nlohmann::json::parse(report.to_json());
  j["provenance"] = {{"tool", "mulab"},
                     {"version", kVersion},
                     {"table", args.table},
                     {"tol", args.tol},
                     {"max_iter", args.max_iter}};
  write_output(args.out, j.dump(2) + "\n");
  return 0;
}

int run_pipeline(const PipelineArgs& args) {
  std::ifstream in(args.corpus_path, std::ios::binary);
  if (!in) throw Error("io", "cannot open corpus CSV: " + args.corpus_path);
  const auto docs = corpus::read_corpus_csv(in);
  pipeline::MeasureConfig config;
  config.word_threshold = args.word_threshold;
  config.author_threshold = args.author_threshold;
  config.binning = pipeline::BinningPolicy::sign_ternary(args.tau);
  config.ipf_tol = args.tol;
  config.ipf_max_iter = args.max_iter;
  const auto report = pipeline::measure(docs, config);
  write_output(args.out, report.to_json() + "\n");
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"recursive/incursive map simulation and three-way information measurement"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  const std::vector<std::string> map_names = {
      "logistic",  "incursive",         "double-contingency",
      "interaction", "self-organization", "organization"};
  const std::vector<std::string> policies = {"random", "plus", "minus"};

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "iterate one seeded trajectory");
  simulate->add_option("--map", sim.map, "map family")
      ->required()
      ->check(CLI::IsMember(map_names));
  simulate->add_option("--a", sim.a, "parameter a");
  simulate->add_option("--b", sim.b, "parameter b");
  simulate->add_option("--c", sim.c, "parameter c");
  simulate->add_option("--d", sim.d, "parameter d");
  simulate->add_option("--param", sim.param, "map parameter (family-agnostic)");
  simulate->add_option("--x0", sim.x0, "initial state")->required();
  simulate->add_option("--steps", sim.steps, "step count")->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "RNG seed (default 0)");
  simulate->add_option("--policy", sim.policy, "root sign policy")
      ->check(CLI::IsMember(policies));
  simulate->add_option("--p-plus", sim.p_plus, "plus probability under random")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--out", sim.out, "output CSV path or - (default -)");

  SweepArgs swp;
  auto* sweep = app.add_subcommand("sweep", "survival statistics over a parameter grid");
  sweep->add_option("--map", swp.map, "map family")
      ->required()
      ->check(CLI::IsMember(map_names));
  sweep->add_option("--grid", swp.grid, "comma-separated parameter values")->required();
  sweep->add_option("--runs", swp.runs, "runs per grid point (default 1000)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", swp.seed, "base seed; run j uses base+j (default 0)");
  sweep->add_option("--cap", swp.cap, "step cap per run (default 1e6)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--x0", swp.x0, "initial state (default 0.5)");
  sweep->add_option("--policy", swp.policy, "root sign policy")
      ->check(CLI::IsMember(policies));
  sweep->add_option("--p-plus", swp.p_plus, "plus probability under random")
      ->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--out", swp.out, "per-run CSV path or - (default -)");
  sweep->add_option("--summary", swp.summary, "survival stats JSON path or -");

  MeasureArgs mea;
  auto* measure = app.add_subcommand(
      "measure", "entropy decomposition of a trivariate contingency table");
  measure->add_option("--table", mea.table, "contingency CSV (x,y,z,count)")->required();
  measure->add_option("--tol", mea.tol, "IPF marginal tolerance (default 1e-10)");
  measure->add_option("--max-iter", mea.max_iter, "IPF cycle cap (default 10000)")
      ->check(CLI::PositiveNumber);
  measure->add_option("--out", mea.out, "report JSON path or - (default -)");

  PipelineArgs pip;
  auto* pipe = app.add_subcommand(
      "pipeline", "corpus CSV -> thresholded matrices -> rotated components -> report");
  pipe->add_option("--corpus", pip.corpus_path, "corpus CSV (id,title,authors,year)")
      ->required();
  pipe->add_option("--word-threshold", pip.word_threshold,
                   "keep words with total > this (default 2)");
  pipe->add_option("--author-threshold", pip.author_threshold,
                   "keep authors with total > this (default 1)");
  pipe->add_option("--tau", pip.tau, "sign-ternary cutoff (default 0.1)")
      ->check(CLI::PositiveNumber);
  pipe->add_option("--tol", pip.tol, "IPF marginal tolerance (default 1e-10)");
  pipe->add_option("--max-iter", pip.max_iter, "IPF cycle cap (default 10000)")
      ->check(CLI::PositiveNumber);
  pipe->add_option("--out", pip.out, "report JSON path or - (default -)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (sweep->parsed()) return run_sweep(swp);
    if (measure->parsed()) return run_measure(mea);
    if (pipe->parsed()) return run_pipeline(pip);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    nlohmann::json j{{"error", e.code()}, {"message", e.what()}};
    std::cerr << j.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    nlohmann::json j{{"error", "invalid_argument"}, {"message", e.what()}};
    std::cerr << j.dump() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace mulab::cli
