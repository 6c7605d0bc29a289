// ume — unreactive Markovian evader interdiction toolkit.
// Subcommands: generate, solve, benchmark, export-mip, oracle, transform.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ume/benchgen.hpp"
#include "ume/errors.hpp"
#include "ume/evaluator.hpp"
#include "ume/format.hpp"
#include "ume/io.hpp"
#include "ume/mip.hpp"
#include "ume/oracle.hpp"
#include "ume/solvers.hpp"
#include "ume/transforms.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalFlags {
  std::uint64_t seed = 1;
  double tolerance = 0.0;  // 0: keep the instance's own tolerance
  int threads = 1;
  std::string out;
};

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

struct BenchRecord {
  std::string instance;
  std::string solver;
  std::int32_t budget = 0;
  std::int32_t nodes = 0;
  std::int32_t edges = 0;
  std::int32_t evaders = 0;
  double objective = 0.0;
  std::int64_t eval_count = 0;
  double wall_time = 0.0;
  std::uint64_t seed = 0;
};

constexpr const char* kRecordHeader =
    "instance,solver,budget,nodes,edges,evaders,objective,eval_count,"
    "wall_time,seed";

void append_record(std::ostream& os, const BenchRecord& r) {
  os << r.instance << ',' << r.solver << ',' << r.budget << ',' << r.nodes
     << ',' << r.edges << ',' << r.evaders << ','
     << ume::format_double(r.objective) << ',' << r.eval_count << ','
     << ume::format_double(r.wall_time) << ',' << r.seed << '\n';
}

void write_records(const std::string& path,
                   const std::vector<BenchRecord>& records) {
  std::ofstream os(path);
  if (!os) throw ume::DataError("cannot write " + path);
  os << kRecordHeader << '\n';
  for (const BenchRecord& r : records) append_record(os, r);
}

BenchRecord make_record(const std::string& instance, std::uint64_t seed,
                        const ume::ProblemInstance& p,
                        const ume::Solution& sol) {
  BenchRecord r;
  r.instance = instance;
  r.solver = sol.solver;
  r.budget = p.budget;
  r.nodes = p.graph.node_count();
  r.edges = p.graph.edge_count();
  r.evaders = static_cast<std::int32_t>(p.evaders.size());
  r.objective = sol.objective;
  r.eval_count = sol.eval_count;
  r.wall_time = sol.wall_time;
  r.seed = seed;
  return r;
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double cov_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  if (m == 0.0) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1)) / m;
}

// Least-squares slope of ln(y) vs ln(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

// ---------------------------------------------------------------- generate

struct GenerateCommon {
  std::vector<double> lambdas{0.1, 1000.0};
  double d = 0.5;
  std::int32_t budget = 10;
  bool unrestricted_sources = false;
  int seeds = 1;
};

ume::InstanceConfig instance_config(const GenerateCommon& common,
                                    std::uint64_t seed, bool unit_costs) {
  ume::InstanceConfig cfg;
  cfg.lambdas = common.lambdas;
  cfg.d_uniform = common.d;
  cfg.budget = common.budget;
  cfg.seed = seed ^ 0x517cc1b727220a95ULL;  // decouple from the graph stream
  cfg.unit_costs = unit_costs;
  cfg.restrict_sources = !common.unrestricted_sources;
  return cfg;
}

void write_manifest(const std::string& dir,
                    const std::vector<std::array<std::string, 5>>& rows) {
  std::ofstream os(fs::path(dir) / "manifest.csv");
  if (!os) throw ume::DataError("cannot write manifest.csv in " + dir);
  os << "instance,seed,nodes,edges,config_hash\n";
  for (const auto& r : rows) {
    os << r[0] << ',' << r[1] << ',' << r[2] << ',' << r[3] << ',' << r[4]
       << '\n';
  }
}

int cmd_generate_gtg(const GlobalFlags& flags, const ume::GtgConfig& base,
                     const GenerateCommon& common, bool geometric_costs) {
  const std::string dir = flags.out.empty() ? "." : flags.out;
  fs::create_directories(dir);
  std::vector<std::array<std::string, 5>> manifest;
  const std::string config_desc =
      "gtg;n=" + std::to_string(base.n) +
      ";theta=" + ume::format_double(base.theta) +
      ";alpha=" + ume::format_double(base.alpha) +
      ";wscale=" + ume::format_double(base.weight_scale) +
      ";d=" + ume::format_double(common.d) +
      ";B=" + std::to_string(common.budget) +
      ";K=" + std::to_string(common.lambdas.size());
  const std::string config_hash = hex64(fnv1a64(config_desc));
  for (int i = 0; i < common.seeds; ++i) {
    const std::uint64_t seed = flags.seed + static_cast<std::uint64_t>(i);
    ume::GtgConfig cfg = base;
    cfg.seed = seed;
    const ume::Graph graph = ume::gtg_generate(cfg);
    ume::ProblemInstance inst = ume::make_instance(
        graph, instance_config(common, seed, !geometric_costs));
    if (flags.tolerance > 0.0) inst.tolerance = flags.tolerance;
    const std::string name = "gtg_n" + std::to_string(base.n) + "_t" +
                             ume::format_double(base.theta) + "_s" +
                             std::to_string(seed);
    ume::write_instance(inst, (fs::path(dir) / (name + ".json")).string());
    manifest.push_back({name, std::to_string(seed),
                        std::to_string(inst.graph.node_count()),
                        std::to_string(inst.graph.edge_count()), config_hash});
  }
  write_manifest(dir, manifest);
  std::cout << "wrote " << common.seeds << " instance(s) to " << dir << "\n";
  return 0;
}

int cmd_generate_grid(const GlobalFlags& flags, const ume::GridConfig& base,
                      const GenerateCommon& common) {
  const std::string dir = flags.out.empty() ? "." : flags.out;
  fs::create_directories(dir);
  std::vector<std::array<std::string, 5>> manifest;
  const std::string config_desc =
      "grid;rows=" + std::to_string(base.rows) +
      ";cols=" + std::to_string(base.cols) +
      ";extra=" + std::to_string(base.extra) +
      ";d=" + ume::format_double(common.d) +
      ";B=" + std::to_string(common.budget) +
      ";K=" + std::to_string(common.lambdas.size());
  const std::string config_hash = hex64(fnv1a64(config_desc));
  for (int i = 0; i < common.seeds; ++i) {
    const std::uint64_t seed = flags.seed + static_cast<std::uint64_t>(i);
    ume::GridConfig cfg = base;
    cfg.seed = seed;
    const ume::Graph graph = ume::grid_generate(cfg);
    ume::ProblemInstance inst =
        ume::make_instance(graph, instance_config(common, seed, true));
    if (flags.tolerance > 0.0) inst.tolerance = flags.tolerance;
    const std::string name = "grid_" + std::to_string(base.rows) + "x" +
                             std::to_string(base.cols) + "_s" +
                             std::to_string(seed);
    ume::write_instance(inst, (fs::path(dir) / (name + ".json")).string());
    manifest.push_back({name, std::to_string(seed),
                        std::to_string(inst.graph.node_count()),
                        std::to_string(inst.graph.edge_count()), config_hash});
  }
  write_manifest(dir, manifest);
  std::cout << "wrote " << common.seeds << " instance(s) to " << dir << "\n";
  return 0;
}

// ------------------------------------------------------------------- solve

int cmd_solve(const GlobalFlags& flags, const std::string& input,
              const std::string& solver, std::int32_t budget_override,
              bool early_stop, bool at_most, std::int64_t max_combinations,
              const std::string& record_path) {
  ume::ProblemInstance inst = ume::read_instance(input);
  if (budget_override >= 0) {
    inst.budget = budget_override;
    inst.validate();
  }
  if (flags.tolerance > 0.0) inst.tolerance = flags.tolerance;

  ume::SolveOptions opts;
  opts.early_stop = early_stop;
  opts.threads = flags.threads;

  ume::Solution sol;
  if (solver == "greedy") {
    sol = ume::greedy_solve(inst, opts);
  } else if (solver == "priority") {
    sol = ume::priority_greedy_solve(inst, opts);
  } else {
    sol = ume::brute_force_solve(inst, max_combinations, at_most);
  }

  json echo;
  echo["instance"] = input;
  echo["solver"] = solver;
  echo["budget"] = inst.budget;
  echo["tolerance"] = inst.tolerance;
  echo["early_stop"] = early_stop;
  echo["threads"] = flags.threads;
  if (solver == "exact") {
    echo["max_combinations"] = max_combinations;
    echo["at_most"] = at_most;
  }

  const std::string out =
      flags.out.empty()
          ? fs::path(input).stem().string() + "." + solver + ".solution.json"
          : flags.out;
  ume::write_solution(sol, echo, out);
  if (!record_path.empty()) {
    const bool fresh = !fs::exists(record_path);
    std::ofstream os(record_path, std::ios::app);
    if (!os) throw ume::DataError("cannot write " + record_path);
    if (fresh) os << kRecordHeader << '\n';
    append_record(os,
                  make_record(fs::path(input).stem().string(), 0, inst, sol));
  }
  std::cout << "solver=" << sol.solver
            << " J=" << ume::format_double(sol.objective)
            << " evals=" << sol.eval_count << " selected=[";
  for (std::size_t i = 0; i < sol.selected.size(); ++i) {
    std::cout << (i ? "," : "") << sol.selected[i];
  }
  std::cout << "] -> " << out << "\n";
  return 0;
}

// --------------------------------------------------------------- benchmark

struct SuiteParams {
  std::int32_t n = 100;
  double theta = 30.0;
  double alpha = 2.0;
  double weight_scale = 1.021;
  GenerateCommon common;
  int seeds = 50;
};

struct SuitePoint {
  std::string label;
  std::vector<BenchRecord> records;
};

void summarize(const std::string& suite, const std::vector<SuitePoint>& points,
               const std::string& dir) {
  std::ofstream os(fs::path(dir) / ("summary_" + suite + ".csv"));
  if (!os) throw ume::DataError("cannot write summary CSV");
  os << "suite,point,solver,runs,mean_edges,mean_eval,cov_eval,mean_objective,"
        "mean_wall_time\n";
  for (const SuitePoint& pt : points) {
    for (const std::string solver : {"greedy", "priority"}) {
      std::vector<double> evals, edges, objs, walls;
      for (const BenchRecord& r : pt.records) {
        if (r.solver != solver) continue;
        evals.push_back(static_cast<double>(r.eval_count));
        edges.push_back(static_cast<double>(r.edges));
        objs.push_back(r.objective);
        walls.push_back(r.wall_time);
      }
      if (evals.empty()) continue;
      os << suite << ',' << pt.label << ',' << solver << ',' << evals.size()
         << ',' << ume::format_double(mean_of(edges)) << ','
         << ume::format_double(mean_of(evals)) << ','
         << ume::format_double(cov_of(evals)) << ','
         << ume::format_double(mean_of(objs)) << ','
         << ume::format_double(mean_of(walls)) << '\n';
    }
  }
}

std::vector<double> solver_means(const std::vector<SuitePoint>& points,
                                 const std::string& solver) {
  std::vector<double> means;
  for (const SuitePoint& pt : points) {
    std::vector<double> evals;
    for (const BenchRecord& r : pt.records) {
      if (r.solver == solver) {
        evals.push_back(static_cast<double>(r.eval_count));
      }
    }
    means.push_back(mean_of(evals));
  }
  return means;
}

int cmd_benchmark(const GlobalFlags& flags, const SuiteParams& params,
                  const std::string& suite) {
  const std::string dir = flags.out.empty() ? "." : flags.out;
  fs::create_directories(dir);
  ume::SolveOptions opts;
  opts.threads = flags.threads;

  auto build_instance = [&](double theta, std::uint64_t seed) {
    ume::GtgConfig g;
    g.n = params.n;
    g.theta = theta;
    g.alpha = params.alpha;
    g.weight_scale = params.weight_scale;
    g.seed = seed;
    ume::ProblemInstance inst = ume::make_instance(
        ume::gtg_generate(g), instance_config(params.common, seed, true));
    if (flags.tolerance > 0.0) inst.tolerance = flags.tolerance;
    return inst;
  };
  auto run_both = [&](const ume::ProblemInstance& inst, const std::string& id,
                      std::uint64_t seed, SuitePoint& pt) {
    pt.records.push_back(
        make_record(id, seed, inst, ume::greedy_solve(inst, opts)));
    pt.records.push_back(
        make_record(id, seed, inst, ume::priority_greedy_solve(inst, opts)));
  };

  if (suite == "main" || suite == "all") {
    SuitePoint pt;
    pt.label = "B" + std::to_string(params.common.budget);
    for (int i = 0; i < params.seeds; ++i) {
      const std::uint64_t seed = flags.seed + static_cast<std::uint64_t>(i);
      const ume::ProblemInstance inst = build_instance(params.theta, seed);
      const std::string id = "gtg_n" + std::to_string(params.n) + "_t" +
                             ume::format_double(params.theta) + "_s" +
                             std::to_string(seed);
      run_both(inst, id, seed, pt);
    }
    std::vector<SuitePoint> points{pt};
    write_records((fs::path(dir) / "records_main.csv").string(), pt.records);
    summarize("main", points, dir);
    const double mg = solver_means(points, "greedy")[0];
    const double mp = solver_means(points, "priority")[0];
    std::cout << "main: greedy mean evals " << ume::format_double(mg)
              << ", priority mean evals " << ume::format_double(mp)
              << ", speedup " << ume::format_double(mp > 0 ? mg / mp : 0)
              << "\n";
  }

  if (suite == "budget" || suite == "all") {
    std::vector<SuitePoint> points;
    std::vector<BenchRecord> all;
    std::vector<double> budgets;
    for (std::int32_t b = 1; b <= params.common.budget; ++b) {
      SuitePoint pt;
      pt.label = "B" + std::to_string(b);
      for (int i = 0; i < params.seeds; ++i) {
        const std::uint64_t seed = flags.seed + static_cast<std::uint64_t>(i);
        ume::ProblemInstance inst = build_instance(params.theta, seed);
        inst.budget = b;
        const std::string id = "gtg_n" + std::to_string(params.n) + "_t" +
                               ume::format_double(params.theta) + "_B" +
                               std::to_string(b) + "_s" + std::to_string(seed);
        run_both(inst, id, seed, pt);
      }
      budgets.push_back(static_cast<double>(b));
      all.insert(all.end(), pt.records.begin(), pt.records.end());
      points.push_back(std::move(pt));
    }
    write_records((fs::path(dir) / "records_budget.csv").string(), all);
    summarize("budget", points, dir);
    std::cout << "budget sweep: greedy eval slope "
              << ume::format_double(
                     loglog_slope(budgets, solver_means(points, "greedy")))
              << ", priority eval slope "
              << ume::format_double(
                     loglog_slope(budgets, solver_means(points, "priority")))
              << "\n";
  }

  if (suite == "theta" || suite == "all") {
    const std::vector<double> thetas{50, 45, 40, 35, 30, 25, 20};
    std::vector<SuitePoint> points;
    std::vector<BenchRecord> all;
    for (double theta : thetas) {
      SuitePoint pt;
      pt.label = "theta" + ume::format_double(theta);
      for (int i = 0; i < params.seeds; ++i) {
        const std::uint64_t seed = flags.seed + static_cast<std::uint64_t>(i);
        const ume::ProblemInstance inst = build_instance(theta, seed);
        const std::string id = "gtg_n" + std::to_string(params.n) + "_t" +
                               ume::format_double(theta) + "_s" +
                               std::to_string(seed);
        run_both(inst, id, seed, pt);
      }
      all.insert(all.end(), pt.records.begin(), pt.records.end());
      points.push_back(std::move(pt));
    }
    write_records((fs::path(dir) / "records_theta.csv").string(), all);
    summarize("theta", points, dir);
    const std::vector<double> means = solver_means(points, "priority");
    const auto [lo, hi] = std::minmax_element(means.begin(), means.end());
    std::cout << "theta sweep: priority mean evals max/min ratio "
              << ume::format_double(*lo > 0 ? *hi / *lo : 0) << "\n";
  }
  return 0;
}

// ------------------------------------------------------- export-mip, oracle

int cmd_export_mip(const GlobalFlags& flags, const std::string& input,
                   bool budget_inequality, bool pi_upper_bounds) {
  ume::ProblemInstance inst = ume::read_instance(input);
  if (flags.tolerance > 0.0) inst.tolerance = flags.tolerance;
  ume::MipOptions opts;
  opts.budget_inequality = budget_inequality;
  opts.pi_upper_bounds = pi_upper_bounds;
  const std::string out =
      flags.out.empty() ? fs::path(input).stem().string() + ".lp" : flags.out;
  ume::write_text_file(out, ume::write_lp(ume::build_mip(inst, opts)));
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_oracle(const GlobalFlags& flags, const std::string& input,
               const std::vector<std::int32_t>& edges, std::int64_t max_paths) {
  ume::ProblemInstance inst = ume::read_instance(input);
  if (flags.tolerance > 0.0) inst.tolerance = flags.tolerance;
  const ume::InterdictionSet s =
      ume::InterdictionSet::from_edges(edges, inst.graph.edge_count());
  double j_oracle = 0.0;
  for (const ume::EvaderSpec& ev : inst.evaders) {
    j_oracle +=
        ev.weight * ume::path_objective_oracle(ev, s, inst.graph, max_paths);
  }
  const double j_linear = ume::objective(inst, s);
  json out;
  out["oracle_objective"] = j_oracle;
  out["linear_objective"] = j_linear;
  out["difference"] = j_oracle - j_linear;
  const std::string text = out.dump(1) + "\n";
  std::cout << text;
  if (!flags.out.empty()) ume::write_text_file(flags.out, text);
  return 0;
}

// --------------------------------------------------------------- transform

int cmd_transform(const GlobalFlags& flags, const std::string& direction,
                  const std::string& input, const std::string& map_path) {
  if (direction == "edge-to-node") {
    const ume::ProblemInstance inst = ume::read_instance(input);
    auto [np, map] = ume::edge_problem_to_node_problem(inst);
    const std::string out = flags.out.empty()
                                ? fs::path(input).stem().string() + ".node.json"
                                : flags.out;
    ume::write_node_problem(np, out);
    const std::string mp = map_path.empty() ? out + ".map.json" : map_path;
    ume::write_text_file(mp, ume::transform_map_to_json(map).dump(1) + "\n");
    std::cout << "wrote " << out << " and " << mp << "\n";
    return 0;
  }
  const ume::NodeProblem np = ume::read_node_problem(input);
  auto [inst, map] = ume::node_problem_to_edge_problem(np);
  const std::string out = flags.out.empty()
                              ? fs::path(input).stem().string() + ".edge.json"
                              : flags.out;
  ume::write_instance(inst, out);
  const std::string mp = map_path.empty() ? out + ".map.json" : map_path;
  ume::write_text_file(mp, ume::transform_map_to_json(map).dump(1) + "\n");
  std::cout << "wrote " << out << " and " << mp << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ume: interdiction of unreactive Markovian evaders"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--seed", flags.seed, "base seed for generators");
  app.add_option("--tolerance", flags.tolerance,
                 "override the linear-solve tolerance");
  app.add_option("--threads", flags.threads, "concurrent gain evaluations")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", flags.out, "output file or directory");

  // generate
  auto* gen = app.add_subcommand("generate", "generate benchmark instances");
  gen->require_subcommand(1);
  gen->fallthrough();
  GenerateCommon common;
  ume::GtgConfig gtg_cfg;
  bool geometric_costs = false;
  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("--lambdas", common.lambdas,
                    "chain spread parameter per evader")
        ->delimiter(',');
    sub->add_option("--d", common.d, "uniform interdiction efficiency");
    sub->add_option("--budget", common.budget, "interdiction budget");
    sub->add_flag("--unrestricted-sources", common.unrestricted_sources,
                  "allow sources that cannot reach the target");
    sub->add_option("--seeds", common.seeds, "number of seeded instances");
  };
  auto* gtg = gen->add_subcommand("gtg", "geographical threshold graph");
  gtg->fallthrough();
  gtg->add_option("--n", gtg_cfg.n, "node count");
  gtg->add_option("--theta", gtg_cfg.theta, "threshold parameter");
  gtg->add_option("--alpha", gtg_cfg.alpha, "distance decay exponent");
  gtg->add_option("--weight-scale", gtg_cfg.weight_scale,
                  "exponential weight mean");
  gtg->add_flag("--geometric-costs", geometric_costs,
                "keep Euclidean costs instead of unit costs");
  add_common(gtg);
  ume::GridConfig grid_cfg;
  auto* grid = gen->add_subcommand("grid", "lattice plus random edges");
  grid->fallthrough();
  grid->add_option("--rows", grid_cfg.rows, "lattice rows");
  grid->add_option("--cols", grid_cfg.cols, "lattice columns");
  grid->add_option("--extra", grid_cfg.extra,
                   "extra random out-edges per node");
  add_common(grid);

  // solve
  auto* solve = app.add_subcommand("solve", "run a solver on an instance");
  solve->fallthrough();
  std::string solve_in, solver = "greedy", record_path;
  std::int32_t budget_override = -1;
  bool early_stop = false, at_most = false;
  std::int64_t max_combinations = 2'000'000;
  solve->add_option("--in", solve_in, "instance JSON")->required();
  solve->add_option("--solver", solver, "greedy | priority | exact")
      ->check(CLI::IsMember({"greedy", "priority", "exact"}));
  solve->add_option("--budget", budget_override, "override the budget");
  solve->add_flag("--early-stop", early_stop,
                  "stop when the best gain is <= 0");
  solve->add_flag("--at-most", at_most, "exact search over sizes <= B");
  solve->add_option("--max-combinations", max_combinations,
                    "exact-search combination cap");
  solve->add_option("--record", record_path, "append a benchmark CSV record");

  // benchmark
  auto* bench = app.add_subcommand("benchmark", "run the benchmark suites");
  bench->fallthrough();
  SuiteParams suite_params;
  std::string suite = "main";
  bench->add_option("--suite", suite, "main | budget | theta | all")
      ->check(CLI::IsMember({"main", "budget", "theta", "all"}));
  bench->add_option("--seeds", suite_params.seeds, "instances per point");
  bench->add_option("--n", suite_params.n, "GTG node count");
  bench->add_option("--theta", suite_params.theta, "GTG threshold");
  bench->add_option("--alpha", suite_params.alpha, "GTG decay exponent");
  bench->add_option("--weight-scale", suite_params.weight_scale,
                    "GTG weight mean");
  bench->add_option("--lambdas", suite_params.common.lambdas,
                    "chain spread parameter per evader")
      ->delimiter(',');
  bench->add_option("--d", suite_params.common.d, "interdiction efficiency");
  bench->add_option("--budget", suite_params.common.budget, "budget");

  // export-mip
  auto* exp = app.add_subcommand("export-mip", "write the LP-format MIP");
  exp->fallthrough();
  std::string exp_in;
  bool budget_inequality = false, pi_upper_bounds = false;
  exp->add_option("--in", exp_in, "instance JSON")->required();
  exp->add_flag("--budget-inequality", budget_inequality,
                "emit sum r <= B instead of equality");
  exp->add_flag("--pi-upper-bounds", pi_upper_bounds,
                "add pi <= 1 bounds (non-retreating chains)");

  // oracle
  auto* orc = app.add_subcommand("oracle", "path-enumeration objective");
  orc->fallthrough();
  std::string orc_in;
  std::vector<std::int32_t> orc_edges;
  std::int64_t max_paths = 1'000'000;
  orc->add_option("--in", orc_in, "instance JSON")->required();
  orc->add_option("--edges", orc_edges, "interdicted edge ids")->delimiter(',');
  orc->add_option("--max-paths", max_paths, "path enumeration cap");

  // transform
  auto* tr =
      app.add_subcommand("transform", "edge<->node interdiction reductions");
  tr->fallthrough();
  std::string tr_direction, tr_in, tr_map;
  tr->add_option("direction", tr_direction, "edge-to-node | node-to-edge")
      ->required()
      ->check(CLI::IsMember({"edge-to-node", "node-to-edge"}));
  tr->add_option("--in", tr_in, "input problem JSON")->required();
  tr->add_option("--map", tr_map, "transform map output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gtg->parsed()) {
      return cmd_generate_gtg(flags, gtg_cfg, common, geometric_costs);
    }
    if (grid->parsed()) return cmd_generate_grid(flags, grid_cfg, common);
    if (solve->parsed()) {
      return cmd_solve(flags, solve_in, solver, budget_override, early_stop,
                       at_most, max_combinations, record_path);
    }
    if (bench->parsed()) return cmd_benchmark(flags, suite_params, suite);
    if (exp->parsed()) {
      return cmd_export_mip(flags, exp_in, budget_inequality, pi_upper_bounds);
    }
    if (orc->parsed()) return cmd_oracle(flags, orc_in, orc_edges, max_paths);
    if (tr->parsed()) return cmd_transform(flags, tr_direction, tr_in, tr_map);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ume::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const ume::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
