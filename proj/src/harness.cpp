#include "optbench/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace optbench {

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged: return "Converged";
    case RunStatus::Stagnated: return "Stagnated";
    case RunStatus::Diverged: return "Diverged";
  }
  return "Unknown";
}

bool detect_divergence(const Vector& x, double f, const RunConfig& cfg) {
  if (!std::isfinite(f) || f > cfg.f_explode) return true;
  double sq = 0.0;
  for (double v : x) {
    if (!std::isfinite(v)) return true;
    sq += v * v;
  }
  return std::sqrt(sq) > cfg.x_explode;
}

RunResult run(const Problem& problem, const OptimizerConfig& opt, const RunConfig& cfg,
              const Vector& x0) {
  validate(opt);
  OptimizerState st = init_state(opt, problem, x0);
  const std::optional<Vector> opt_x = problem.optimum();

  RunResult r;
  Vector x = x0;

  auto record = [&](std::size_t t, std::optional<double> alpha) {
    const double f = problem.value(x);
    const double grad_norm = norm(problem.gradient(x));
    std::optional<double> dist;
    if (opt_x) dist = distance(x, *opt_x);
    r.trace.push_back({t, f, grad_norm, dist, alpha});
    if (!r.iters_to_primary && grad_norm < cfg.tol_primary) r.iters_to_primary = t;
    if (!r.iters_to_high && grad_norm < cfg.tol_high) r.iters_to_high = t;
    return f;
  };

  double f = record(0, std::nullopt);
  bool diverged = detect_divergence(x, f, cfg);
  if (diverged) r.divergence_iter = 0;

  for (std::size_t t = 1; t <= cfg.max_iters && !diverged; ++t) {
    x = step(opt, st, x, problem);
    f = record(t, st.last_alpha);
    if (detect_divergence(x, f, cfg)) {
      r.divergence_iter = t;
      diverged = true;
    }
  }

  const TraceRow& last = r.trace.back();
  r.final_f = last.f;
  r.final_grad_norm = last.grad_norm;
  r.final_dist = last.dist_to_opt.value_or(std::numeric_limits<double>::quiet_NaN());
  r.status = diverged ? RunStatus::Diverged
                      : (r.iters_to_primary ? RunStatus::Converged : RunStatus::Stagnated);
  return r;
}

Vector initial_point(const Problem& problem, SeededRng& rng) {
  switch (problem.kind()) {
    case ProblemKind::Quadratic: {
      Vector x = standard_normal(rng, problem.dim());
      for (double& v : x) v *= 2.0;  // N(0, 4I): standard deviation 2 per coordinate
      return x;
    }
    case ProblemKind::Rosenbrock: return {-1.2, 1.0};
    case ProblemKind::Beale: return {1.0, 1.0};
  }
  throw std::logic_error("initial_point: unknown problem kind");
}

TuneResult tune_learning_rate(const Problem& problem, std::vector<double> grid,
                              const RunConfig& cfg) {
  if (grid.empty()) throw std::invalid_argument("tune_learning_rate: empty grid");
  std::sort(grid.begin(), grid.end(), std::greater<>());

  SeededRng rng(cfg.seed);
  const Vector x0 = initial_point(problem, rng);

  for (double eta : grid) {
    OptimizerConfig sgd;
    sgd.method = Method::Sgd;
    sgd.eta = eta;
    if (run(problem, sgd, cfg, x0).status == RunStatus::Converged) return {eta, true};
  }
  return {grid.back(), false};
}

namespace {

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

ProblemSpec quadratic_spec(double kappa, std::size_t d) {
  ProblemSpec s;
  s.kind = ProblemKind::Quadratic;
  s.kappa = kappa;
  s.dim = d;
  s.eta = default_learning_rate(s.kind, kappa).value_or(0.001);
  s.max_iters = 1000;
  s.display = "Quadratic(kappa=" + fmt_g(kappa) + ")";
  s.slug = "quad_k" + fmt_g(kappa);
  return s;
}

ProblemSpec rosenbrock_spec() {
  ProblemSpec s;
  s.kind = ProblemKind::Rosenbrock;
  s.dim = 2;
  s.eta = 0.005;
  s.max_iters = 5000;
  s.display = "Rosenbrock";
  s.slug = "rosenbrock";
  return s;
}

ProblemSpec beale_spec() {
  ProblemSpec s;
  s.kind = ProblemKind::Beale;
  s.dim = 2;
  s.eta = 0.01;
  s.max_iters = 5000;
  s.display = "Beale";
  s.slug = "beale";
  return s;
}

std::optional<double> default_learning_rate(ProblemKind kind, double kappa) {
  switch (kind) {
    case ProblemKind::Rosenbrock: return 0.005;
    case ProblemKind::Beale: return 0.01;
    case ProblemKind::Quadratic:
      if (kappa == 10.0) return 0.1;
      if (kappa == 50.0) return 0.05;
      if (kappa == 100.0) return 0.01;
      if (kappa == 500.0) return 0.005;
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<OptimizerConfig> standard_optimizers(double base_eta) {
  std::vector<OptimizerConfig> configs;

  OptimizerConfig sgd;
  sgd.method = Method::Sgd;
  sgd.eta = base_eta;
  configs.push_back(sgd);

  OptimizerConfig momentum;
  momentum.method = Method::Momentum;
  momentum.eta = base_eta;
  momentum.beta = 0.9;
  configs.push_back(momentum);

  OptimizerConfig nag;
  nag.method = Method::Nag;
  nag.eta = base_eta;
  nag.beta = 0.9;
  configs.push_back(nag);

  OptimizerConfig adam;
  adam.method = Method::Adam;
  adam.eta = 0.5 * base_eta;  // Adam runs at half the shared learning rate
  configs.push_back(adam);

  OptimizerConfig hbsge;
  hbsge.method = Method::HbSge;
  hbsge.eta = base_eta;
  hbsge.beta = 0.9;
  configs.push_back(hbsge);

  OptimizerConfig safe;
  safe.method = Method::HbSge;
  safe.eta = base_eta;
  safe.beta = 0.95;
  safe.display = "HB-SGE-Safe(beta=0.95)";
  safe.slug = "hbsge_safe";
  configs.push_back(safe);

  for (auto& c : configs) {
    if (c.display.empty()) c.display = method_display(c);
    if (c.slug.empty()) c.slug = method_slug(c);
  }
  return configs;
}

std::vector<SuiteEntry> paper_grid() {
  std::vector<SuiteEntry> suite;
  for (double kappa : {10.0, 50.0, 100.0, 500.0}) {
    ProblemSpec spec = quadratic_spec(kappa);
    suite.push_back({spec, standard_optimizers(spec.eta)});
  }
  {
    ProblemSpec spec = rosenbrock_spec();
    suite.push_back({spec, standard_optimizers(spec.eta)});
  }
  {
    ProblemSpec spec = beale_spec();
    suite.push_back({spec, standard_optimizers(spec.eta)});
  }
  return suite;
}

std::unique_ptr<Problem> build_problem(const ProblemSpec& spec, SeededRng& rng) {
  switch (spec.kind) {
    case ProblemKind::Quadratic:
      return std::make_unique<QuadraticProblem>(make_quadratic(spec.kappa, spec.dim, rng));
    case ProblemKind::Rosenbrock: return std::make_unique<RosenbrockProblem>();
    case ProblemKind::Beale: return std::make_unique<BealeProblem>();
  }
  throw std::logic_error("build_problem: unknown problem kind");
}

std::vector<CellResult> run_suite(const std::vector<SuiteEntry>& suite, const RunConfig& cfg) {
  std::vector<CellResult> out;
  for (std::size_t idx = 0; idx < suite.size(); ++idx) {
    const SuiteEntry& entry = suite[idx];
    SeededRng rng(derive_stream_seed(cfg.seed, idx));
    const std::unique_ptr<Problem> problem = build_problem(entry.problem, rng);
    const Vector x0 = initial_point(*problem, rng);

    for (const OptimizerConfig& opt : entry.optimizers) {
      RunConfig cell_cfg = cfg;
      cell_cfg.max_iters = entry.problem.max_iters;
      CellResult cell;
      cell.problem = entry.problem.display;
      cell.problem_slug = entry.problem.slug;
      cell.optimizer = method_display(opt);
      cell.optimizer_slug = method_slug(opt);
      cell.seed = cfg.seed;
      cell.max_iters = cell_cfg.max_iters;
      cell.result = run(*problem, opt, cell_cfg, x0);
      out.push_back(std::move(cell));
    }
  }
  return out;
}

}  // namespace optbench
