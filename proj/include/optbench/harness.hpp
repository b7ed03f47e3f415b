#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "optbench/optimizers.hpp"
#include "optbench/problems.hpp"

namespace optbench {

enum class RunStatus { Converged, Stagnated, Diverged };
std::string to_string(RunStatus status);

struct RunConfig {
  std::size_t max_iters = 1000;
  double tol_primary = 1e-3;  // ||grad f|| threshold for the headline iteration count
  double tol_high = 1e-6;     // tighter threshold for asymptotic behavior
  double x_explode = 1e10;
  double f_explode = 1e10;
  std::uint64_t seed = 42;
};

struct TraceRow {
  std::size_t t = 0;
  double f = 0.0;
  double grad_norm = 0.0;
  std::optional<double> dist_to_opt;
  std::optional<double> alpha_t;
};

struct RunResult {
  RunStatus status = RunStatus::Stagnated;
  std::optional<std::size_t> iters_to_primary;
  std::optional<std::size_t> iters_to_high;
  std::optional<std::size_t> divergence_iter;
  double final_f = 0.0;
  double final_grad_norm = 0.0;
  double final_dist = 0.0;  // NaN when the problem has no known optimum
  std::vector<TraceRow> trace;
};

/// True iff ||x|| or f exceeds its explosion threshold, or either contains
/// NaN/Inf.
bool detect_divergence(const Vector& x, double f, const RunConfig& cfg);

/// Runs the optimizer from x0. The loop keeps going to the budget end even
/// after the primary tolerance is reached (so the high tolerance and finals
/// are captured); only divergence stops it early. Divergence is a result,
/// not an error.
RunResult run(const Problem& problem, const OptimizerConfig& opt, const RunConfig& cfg,
              const Vector& x0);

/// Quadratics draw from N(0, 4I); Rosenbrock starts at (-1.2, 1.0) and Beale
/// at (1.0, 1.0).
Vector initial_point(const Problem& problem, SeededRng& rng);

struct TuneResult {
  double eta = 0.0;
  bool converged = false;  // false: nothing on the grid converged; eta is the smallest value
};

/// Largest grid value for which plain SGD reaches the primary tolerance
/// within budget.
TuneResult tune_learning_rate(const Problem& problem, std::vector<double> grid,
                              const RunConfig& cfg);

struct ProblemSpec {
  ProblemKind kind = ProblemKind::Quadratic;
  double kappa = 10.0;
  std::size_t dim = 10;
  double eta = 0.1;  // base learning rate for this problem (Adam runs at half)
  std::size_t max_iters = 1000;
  std::string display;
  std::string slug;
};

struct SuiteEntry {
  ProblemSpec problem;
  std::vector<OptimizerConfig> optimizers;  // learning rates already resolved
};

struct CellResult {
  std::string problem;
  std::string problem_slug;
  std::string optimizer;
  std::string optimizer_slug;
  std::uint64_t seed = 0;
  std::size_t max_iters = 0;
  RunResult result;
};

ProblemSpec quadratic_spec(double kappa, std::size_t d = 10);
ProblemSpec rosenbrock_spec();
ProblemSpec beale_spec();

/// Published learning rate for the standard grid problems; nullopt when the
/// problem is not on the grid and the caller must choose.
std::optional<double> default_learning_rate(ProblemKind kind, double kappa);

/// The six standard optimizer configurations at a shared base learning rate:
/// SGD, Momentum(0.9), NAG(0.9), Adam (at eta/2), HB-SGE(0.9) and
/// HB-SGE-Safe(0.95).
std::vector<OptimizerConfig> standard_optimizers(double base_eta);

/// The full benchmark grid: quadratics at kappa 10/50/100/500 plus
/// Rosenbrock and Beale, each against the six standard configurations.
std::vector<SuiteEntry> paper_grid();

std::unique_ptr<Problem> build_problem(const ProblemSpec& spec, SeededRng& rng);

/// Runs every (problem, optimizer) cell. Each suite entry gets its own RNG
/// stream derived from (cfg.seed, entry index); all optimizers within an
/// entry share the instance and the starting point.
std::vector<CellResult> run_suite(const std::vector<SuiteEntry>& suite, const RunConfig& cfg);

}  // namespace optbench
