#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "optbench/harness.hpp"
#include "optbench/report.hpp"
#include "optbench/stability.hpp"
#include "optbench/suite_config.hpp"

namespace fs = std::filesystem;
using namespace optbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // runtime or check failure
constexpr int kExitUsage = 2;    // bad flags or malformed config

ProblemKind parse_problem_kind(const std::string& token) {
  if (token == "quad" || token == "quadratic") return ProblemKind::Quadratic;
  if (token == "rosenbrock") return ProblemKind::Rosenbrock;
  if (token == "beale") return ProblemKind::Beale;
  throw std::invalid_argument("unknown problem '" + token + "' (expected quad|rosenbrock|beale)");
}

ProblemSpec make_problem_spec(const std::string& token, double kappa, std::size_t d,
                              double eta_flag, std::size_t max_iters_flag) {
  const ProblemKind kind = parse_problem_kind(token);
  ProblemSpec spec;
  switch (kind) {
    case ProblemKind::Quadratic:
      if (!(kappa >= 1.0)) throw std::invalid_argument("--kappa must be >= 1");
      spec = quadratic_spec(kappa, d);
      break;
    case ProblemKind::Rosenbrock: spec = rosenbrock_spec(); break;
    case ProblemKind::Beale: spec = beale_spec(); break;
  }
  if (eta_flag > 0.0) {
    spec.eta = eta_flag;
  } else if (!default_learning_rate(kind, kappa)) {
    throw std::invalid_argument("no default learning rate for this problem; pass --eta");
  }
  if (max_iters_flag > 0) spec.max_iters = max_iters_flag;
  return spec;
}

struct OptimizerFlags {
  std::string name = "sgd";
  double eta = 0.0;  // 0: use the problem default (Adam at half)
  double beta = -1.0;
  double alpha_max = -1.0;
  double tau = -1.0;
  double fixed_alpha = std::numeric_limits<double>::quiet_NaN();
};

OptimizerConfig make_optimizer(const OptimizerFlags& flags, double problem_eta) {
  OptimizerConfig cfg;
  bool safe_variant = false;
  if (flags.name == "sgd") cfg.method = Method::Sgd;
  else if (flags.name == "momentum") cfg.method = Method::Momentum;
  else if (flags.name == "nag") cfg.method = Method::Nag;
  else if (flags.name == "adam") cfg.method = Method::Adam;
  else if (flags.name == "hbsge") cfg.method = Method::HbSge;
  else if (flags.name == "hbsge-safe") { cfg.method = Method::HbSge; safe_variant = true; }
  else throw std::invalid_argument("unknown optimizer '" + flags.name + "'");

  cfg.beta = flags.beta >= 0.0 ? flags.beta : (safe_variant ? 0.95 : 0.9);
  if (flags.alpha_max >= 0.0) cfg.alpha_max = flags.alpha_max;
  if (flags.tau > 0.0) cfg.tau = flags.tau;
  if (!std::isnan(flags.fixed_alpha)) cfg.fixed_alpha = flags.fixed_alpha;
  cfg.eta = flags.eta > 0.0 ? flags.eta
                            : (cfg.method == Method::Adam ? 0.5 * problem_eta : problem_eta);
  if (safe_variant) {
    cfg.display = "HB-SGE-Safe(beta=" + format_plain(cfg.beta) + ")";
    cfg.slug = "hbsge_safe";
  }
  validate(cfg);
  return cfg;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
  std::vector<std::uint64_t> seeds;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    seeds.push_back(std::stoull(item));
  }
  if (seeds.empty()) throw std::invalid_argument("--seeds: empty seed list");
  return seeds;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out.good()) throw std::ios_base::failure("cannot write " + path.string());
}

int do_bench(const std::string& config_path, bool use_paper_grid, const std::string& seeds_csv,
             const std::string& out_override) {
  SuiteFileConfig cfg;
  if (use_paper_grid) {
    cfg = paper_grid_config();
  } else {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "bench: cannot read config file '" << config_path << "'\n";
      return kExitFailure;
    }
    std::ostringstream text;
    text << in.rdbuf();
    cfg = parse_suite_config(text.str());
  }
  if (!seeds_csv.empty()) cfg.seeds = parse_seed_list(seeds_csv);
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (cfg.suite.empty()) {
    std::cerr << "bench: config key 'problems' is missing or empty\n";
    return kExitUsage;
  }

  std::vector<CellResult> cells;
  for (std::uint64_t seed : cfg.seeds) {
    RunConfig rc = cfg.run;
    rc.seed = seed;
    std::vector<CellResult> batch = run_suite(cfg.suite, rc);
    cells.insert(cells.end(), std::make_move_iterator(batch.begin()),
                 std::make_move_iterator(batch.end()));
  }

  const fs::path out_dir(cfg.out_dir);
  const fs::path trace_dir = out_dir / "traces";
  fs::create_directories(trace_dir);
  for (const CellResult& cell : cells) {
    const std::string name =
        cell.problem_slug + "_" + cell.optimizer_slug + "_" + std::to_string(cell.seed) + ".csv";
    write_file(trace_dir / name, trace_csv(cell.result));
  }

  const std::vector<SummaryRow> rows = median_rows(cells);
  write_file(out_dir / "summary.csv", summary_csv(rows));
  const std::string markdown = summary_markdown(rows);
  write_file(out_dir / "summary.md", markdown);

  std::cout << markdown;
  std::cerr << "bench: " << cells.size() << " runs over " << cfg.seeds.size()
            << " seed(s); results in " << out_dir.string() << "\n";
  return kExitOk;
}

int do_run(const std::string& problem, double kappa, std::size_t d, const OptimizerFlags& opt_flags,
           std::uint64_t seed, std::size_t max_iters, const std::string& trace_path) {
  const ProblemSpec spec = make_problem_spec(problem, kappa, d, 0.0, max_iters);
  const OptimizerConfig opt = make_optimizer(opt_flags, spec.eta);

  RunConfig rc;
  rc.seed = seed;
  const std::vector<CellResult> cells = run_suite({{spec, {opt}}}, rc);
  const CellResult& cell = cells.front();
  const RunResult& r = cell.result;

  std::cerr << "problem=" << cell.problem << " optimizer=" << cell.optimizer << " seed=" << seed
            << " status=" << to_string(r.status);
  if (r.iters_to_primary) std::cerr << " iters_to_1e-3=" << *r.iters_to_primary;
  if (r.iters_to_high) std::cerr << " iters_to_1e-6=" << *r.iters_to_high;
  if (r.divergence_iter) std::cerr << " divergence_iter=" << *r.divergence_iter;
  std::cerr << " final_f=" << format_table(r.final_f)
            << " final_grad_norm=" << format_table(r.final_grad_norm)
            << " final_dist=" << format_table(r.final_dist) << "\n";

  const std::string csv = trace_csv(r);
  if (trace_path.empty() || trace_path == "-") {
    std::cout << csv;
  } else {
    write_file(trace_path, csv);
  }
  return kExitOk;
}

int do_stability(double kappa, std::size_t d, double eta, double beta, double alpha,
                 const std::string& out_path) {
  if (!(kappa >= 1.0)) throw std::invalid_argument("--kappa must be >= 1");
  if (eta <= 0.0) {
    const auto def = default_learning_rate(ProblemKind::Quadratic, kappa);
    if (!def) throw std::invalid_argument("no default learning rate for this kappa; pass --eta");
    eta = *def;
  }

  // Only the spectrum matters for the analysis; the instance seed is fixed.
  const QuadraticProblem problem = make_quadratic(kappa, d, std::uint64_t{1});

  std::string csv = stability_csv_header();
  auto analyzed = [&](Method method, double b, double a, const char* display,
                      const char* slug) {
    OptimizerConfig cfg;
    cfg.method = method;
    cfg.eta = eta;
    cfg.beta = b;
    if (display) cfg.display = display;
    if (slug) cfg.slug = slug;
    append_stability_rows(csv, predict(problem, cfg, a));
  };

  analyzed(Method::Sgd, beta, 0.0, nullptr, nullptr);
  analyzed(Method::Momentum, beta, 0.0, nullptr, nullptr);
  analyzed(Method::Nag, beta, 0.0, nullptr, nullptr);
  std::vector<double> lambdas(problem.eigenvalues().begin(), problem.eigenvalues().end());
  append_stability_placeholder_rows(csv, "Adam", lambdas);
  // Both schedule endpoints: alpha at its cap (worst case, t=0) and alpha=0
  // (the decayed late-time regime).
  analyzed(Method::HbSge, beta, alpha, nullptr, nullptr);
  analyzed(Method::HbSge, beta, 0.0, nullptr, nullptr);
  const std::string safe_name = "HB-SGE-Safe(beta=0.95)";
  analyzed(Method::HbSge, 0.95, alpha, safe_name.c_str(), "hbsge_safe");
  analyzed(Method::HbSge, 0.95, 0.0, safe_name.c_str(), "hbsge_safe");

  if (out_path.empty() || out_path == "-") {
    std::cout << csv;
  } else {
    write_file(out_path, csv);
  }
  return kExitOk;
}

int do_gradcheck(const std::string& problem, double kappa, std::size_t d, std::size_t points,
                 std::uint64_t seed, double h) {
  const ProblemSpec spec = make_problem_spec(problem, kappa, d, 1.0 /*unused*/, 0);
  SeededRng rng(derive_stream_seed(seed, 0));
  const std::unique_ptr<Problem> p = build_problem(spec, rng);

  double worst = 0.0;
  Vector worst_point;
  for (std::size_t k = 0; k < points; ++k) {
    Vector x(p->dim());
    for (double& xi : x) xi = -3.0 + 6.0 * rng.next_uniform();
    const Vector analytic = p->gradient(x);
    const Vector numeric = finite_diff_gradient(*p, x, h);
    const double rel = distance(analytic, numeric) / std::max(1.0, norm(analytic));
    if (rel > worst) {
      worst = rel;
      worst_point = x;
    }
  }

  const double tolerance = 1e-5;
  std::cout << "gradcheck " << spec.display << ": " << points
            << " points, max relative error " << format_table(worst) << "\n";
  if (worst <= tolerance) return kExitOk;
  std::cerr << "gradcheck: FAILED (tolerance " << format_table(tolerance) << ") at point [";
  for (std::size_t i = 0; i < worst_point.size(); ++i) {
    if (i) std::cerr << ", ";
    std::cerr << format_full(worst_point[i]);
  }
  std::cerr << "]\n";
  return kExitFailure;
}

int do_tune(const std::string& problem, double kappa, std::size_t d, const std::string& grid_csv,
            std::uint64_t seed, std::size_t budget) {
  const ProblemSpec spec = make_problem_spec(problem, kappa, d, 1.0 /*unused*/, budget);
  SeededRng rng(derive_stream_seed(seed, 0));
  const std::unique_ptr<Problem> p = build_problem(spec, rng);

  std::vector<double> grid;
  std::istringstream in(grid_csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) grid.push_back(std::stod(item));
  }

  RunConfig rc;
  rc.seed = seed;
  rc.max_iters = spec.max_iters;
  const TuneResult tuned = tune_learning_rate(*p, grid, rc);
  std::cout << "eta=" << format_plain(tuned.eta) << "\n";
  if (!tuned.converged) {
    std::cerr << "tune: no grid value converged; reporting the smallest\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-order optimizer benchmark: HB-SGE and classical baselines on "
               "ill-conditioned quadratics and non-convex test functions"};
  app.require_subcommand(1);

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite and write summary + traces");
  std::string bench_config;
  bool bench_paper_grid = false;
  std::string bench_seeds;
  std::string bench_out;
  bench->add_option("--config", bench_config, "Suite config file (key = value)");
  bench->add_flag("--paper-grid", bench_paper_grid, "Use the built-in benchmark grid");
  bench->add_option("--seeds", bench_seeds, "Comma-separated seeds (overrides config)");
  bench->add_option("--out", bench_out, "Output directory (overrides config)");

  // run
  auto* run_cmd = app.add_subcommand("run", "Run one (problem, optimizer) cell; trace to stdout");
  std::string run_problem = "quad";
  double run_kappa = 10.0;
  std::size_t run_d = 10;
  OptimizerFlags run_opt;
  std::uint64_t run_seed = 42;
  std::size_t run_max_iters = 0;
  std::string run_trace;
  run_cmd->add_option("--problem", run_problem, "quad|rosenbrock|beale")->required();
  run_cmd->add_option("--kappa", run_kappa, "Quadratic condition number");
  run_cmd->add_option("--d", run_d, "Quadratic dimension");
  run_cmd->add_option("--opt", run_opt.name, "sgd|momentum|nag|adam|hbsge|hbsge-safe")->required();
  run_cmd->add_option("--eta", run_opt.eta, "Learning rate (default: grid value; Adam at half)");
  run_cmd->add_option("--beta", run_opt.beta, "Momentum parameter");
  run_cmd->add_option("--alpha-max", run_opt.alpha_max, "HB-SGE max extrapolation coefficient");
  run_cmd->add_option("--tau", run_opt.tau, "HB-SGE extrapolation decay constant");
  run_cmd->add_option("--fixed-alpha", run_opt.fixed_alpha,
                      "Pin the HB-SGE extrapolation coefficient");
  run_cmd->add_option("--seed", run_seed, "Instance / starting point seed");
  run_cmd->add_option("--max-iters", run_max_iters, "Iteration budget override");
  run_cmd->add_option("--trace", run_trace, "Trace CSV path ('-' for stdout)");

  // stability
  auto* stab = app.add_subcommand("stability", "Per-mode spectral analysis on a quadratic");
  double stab_kappa = 10.0;
  std::size_t stab_d = 10;
  double stab_eta = 0.0;
  double stab_beta = 0.9;
  double stab_alpha = 1.2;
  std::string stab_out;
  stab->add_option("--kappa", stab_kappa, "Condition number")->required();
  stab->add_option("--d", stab_d, "Dimension (number of modes)");
  stab->add_option("--eta", stab_eta, "Learning rate (default: grid value for kappa)");
  stab->add_option("--beta", stab_beta, "Momentum parameter");
  stab->add_option("--alpha", stab_alpha, "Fixed HB-SGE extrapolation coefficient");
  stab->add_option("--out", stab_out, "Stability CSV path ('-' for stdout)");

  // gradcheck
  auto* grad = app.add_subcommand("gradcheck", "Analytic vs finite-difference gradients");
  std::string grad_problem = "quad";
  double grad_kappa = 50.0;
  std::size_t grad_d = 10;
  std::size_t grad_points = 100;
  std::uint64_t grad_seed = 42;
  double grad_h = 1e-6;
  grad->add_option("--problem", grad_problem, "quad|rosenbrock|beale")->required();
  grad->add_option("--kappa", grad_kappa, "Quadratic condition number");
  grad->add_option("--d", grad_d, "Quadratic dimension");
  grad->add_option("--points", grad_points, "Number of random probe points")
      ->check(CLI::PositiveNumber);
  grad->add_option("--seed", grad_seed, "Probe point seed");
  grad->add_option("--step", grad_h, "Finite-difference base step");

  // tune
  auto* tune = app.add_subcommand("tune", "Largest grid learning rate at which SGD converges");
  std::string tune_problem = "quad";
  double tune_kappa = 10.0;
  std::size_t tune_d = 10;
  std::string tune_grid = "0.1,0.05,0.01,0.005,0.001";
  std::uint64_t tune_seed = 42;
  std::size_t tune_budget = 0;
  tune->add_option("--problem", tune_problem, "quad|rosenbrock|beale")->required();
  tune->add_option("--kappa", tune_kappa, "Quadratic condition number");
  tune->add_option("--d", tune_d, "Quadratic dimension");
  tune->add_option("--grid", tune_grid, "Comma-separated learning-rate grid");
  tune->add_option("--seed", tune_seed, "Instance / starting point seed");
  tune->add_option("--budget", tune_budget, "Iteration budget override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (bench->parsed()) {
      if (!bench_paper_grid && bench_config.empty()) {
        std::cerr << "bench: pass --config FILE or --paper-grid\n";
        return kExitUsage;
      }
      if (bench_paper_grid && !bench_config.empty()) {
        std::cerr << "bench: --config and --paper-grid are mutually exclusive\n";
        return kExitUsage;
      }
      return do_bench(bench_config, bench_paper_grid, bench_seeds, bench_out);
    }
    if (run_cmd->parsed()) {
      return do_run(run_problem, run_kappa, run_d, run_opt, run_seed, run_max_iters, run_trace);
    }
    if (stab->parsed()) {
      return do_stability(stab_kappa, stab_d, stab_eta, stab_beta, stab_alpha, stab_out);
    }
    if (grad->parsed()) {
      return do_gradcheck(grad_problem, grad_kappa, grad_d, grad_points, grad_seed, grad_h);
    }
    if (tune->parsed()) {
      return do_tune(tune_problem, tune_kappa, tune_d, tune_grid, tune_seed, tune_budget);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
