#pragma once

#include <string>
#include <vector>

#include "optbench/harness.hpp"

namespace optbench {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct SuiteFileConfig {
  std::vector<std::uint64_t> seeds = {42};
  std::vector<SuiteEntry> suite;
  RunConfig run;
  std::string out_dir = "out";
};

/// Flat `key = value` file, `#` comments, comma-separated lists. Unknown
/// keys are an error. Omitted keys take the standard-grid defaults.
///
/// Keys: seeds, problems, optimizers, quad_dim, max_iters_quad,
/// max_iters_nonconvex, tol_primary, tol_high, x_explode, f_explode, out_dir.
///
/// Problem items: `quad:kappa=50[:d=10][:eta=0.05]`, `rosenbrock[:eta=..]`,
/// `beale[:eta=..]`. Optimizer items: `sgd|momentum|nag|adam|hbsge|hbsge-safe`
/// with optional `:beta=..`, `:alpha_max=..`, `:tau=..`, `:eta=..`. When an
/// optimizer carries no eta it uses the problem's (Adam at half).
SuiteFileConfig parse_suite_config(const std::string& text);

/// The built-in grid as a ready-to-run configuration.
SuiteFileConfig paper_grid_config();

}  // namespace optbench
