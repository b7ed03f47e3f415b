#include "optbench/suite_config.hpp"

#include <cstdio>
#include <optional>
#include <sstream>

namespace optbench {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) {
    part = trim(part);
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

double parse_double(const std::string& value, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0') {
    throw ConfigError("config: cannot parse number '" + value + "' for " + where);
  }
  return v;
}

std::uint64_t parse_u64(const std::string& value, const std::string& where) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: cannot parse integer '" + value + "' for " + where);
  }
}

struct OptimizerTemplate {
  Method method = Method::Sgd;
  bool safe_variant = false;
  std::optional<double> beta;
  std::optional<double> alpha_max;
  std::optional<double> tau;
  std::optional<double> eta;
};

OptimizerTemplate parse_optimizer_item(const std::string& item) {
  const std::vector<std::string> parts = split(item, ':');
  OptimizerTemplate t;
  const std::string& kind = parts.at(0);
  if (kind == "sgd") t.method = Method::Sgd;
  else if (kind == "momentum") t.method = Method::Momentum;
  else if (kind == "nag") t.method = Method::Nag;
  else if (kind == "adam") t.method = Method::Adam;
  else if (kind == "hbsge") t.method = Method::HbSge;
  else if (kind == "hbsge-safe") { t.method = Method::HbSge; t.safe_variant = true; }
  else throw ConfigError("config: unknown optimizer '" + kind + "'");

  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: optimizer option '" + parts[i] + "' is not key=value");
    }
    const std::string key = trim(parts[i].substr(0, eq));
    const std::string value = trim(parts[i].substr(eq + 1));
    if (key == "beta") t.beta = parse_double(value, "optimizer beta");
    else if (key == "alpha_max") t.alpha_max = parse_double(value, "optimizer alpha_max");
    else if (key == "tau") t.tau = parse_double(value, "optimizer tau");
    else if (key == "eta") t.eta = parse_double(value, "optimizer eta");
    else throw ConfigError("config: unknown optimizer option '" + key + "'");
  }
  return t;
}

OptimizerConfig instantiate(const OptimizerTemplate& t, double problem_eta) {
  OptimizerConfig cfg;
  cfg.method = t.method;
  cfg.beta = t.beta.value_or(t.safe_variant ? 0.95 : 0.9);
  if (t.alpha_max) cfg.alpha_max = *t.alpha_max;
  if (t.tau) cfg.tau = *t.tau;
  cfg.eta = t.eta.value_or(t.method == Method::Adam ? 0.5 * problem_eta : problem_eta);
  if (t.safe_variant) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "HB-SGE-Safe(beta=%g)", cfg.beta);
    cfg.display = buf;
    cfg.slug = "hbsge_safe";
  } else {
    cfg.display = method_display(cfg);
    cfg.slug = method_slug(cfg);
  }
  return cfg;
}

struct ProblemItem {
  ProblemKind kind = ProblemKind::Quadratic;
  double kappa = 10.0;
  std::optional<std::size_t> dim;
  std::optional<double> eta;
};

ProblemItem parse_problem_item(const std::string& item) {
  const std::vector<std::string> parts = split(item, ':');
  ProblemItem p;
  const std::string& kind = parts.at(0);
  if (kind == "quad" || kind == "quadratic") p.kind = ProblemKind::Quadratic;
  else if (kind == "rosenbrock") p.kind = ProblemKind::Rosenbrock;
  else if (kind == "beale") p.kind = ProblemKind::Beale;
  else throw ConfigError("config: unknown problem '" + kind + "'");

  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: problem option '" + parts[i] + "' is not key=value");
    }
    const std::string key = trim(parts[i].substr(0, eq));
    const std::string value = trim(parts[i].substr(eq + 1));
    if (key == "kappa") p.kappa = parse_double(value, "problem kappa");
    else if (key == "d") p.dim = parse_u64(value, "problem d");
    else if (key == "eta") p.eta = parse_double(value, "problem eta");
    else throw ConfigError("config: unknown problem option '" + key + "'");
  }
  if (p.kind == ProblemKind::Quadratic && !(p.kappa >= 1.0)) {
    throw ConfigError("config: quadratic kappa must be >= 1");
  }
  return p;
}

}  // namespace

SuiteFileConfig parse_suite_config(const std::string& text) {
  SuiteFileConfig cfg;
  std::vector<ProblemItem> problems;
  std::vector<OptimizerTemplate> optimizers;
  bool have_optimizers = false;
  std::size_t quad_dim = 10;
  std::size_t max_iters_quad = 1000;
  std::size_t max_iters_nonconvex = 5000;

  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "seeds") {
      cfg.seeds.clear();
      for (const std::string& item : split(value, ',')) cfg.seeds.push_back(parse_u64(item, "seeds"));
    } else if (key == "problems") {
      for (const std::string& item : split(value, ',')) problems.push_back(parse_problem_item(item));
    } else if (key == "optimizers") {
      have_optimizers = true;
      for (const std::string& item : split(value, ',')) optimizers.push_back(parse_optimizer_item(item));
    } else if (key == "quad_dim") {
      quad_dim = parse_u64(value, key);
    } else if (key == "max_iters_quad") {
      max_iters_quad = parse_u64(value, key);
    } else if (key == "max_iters_nonconvex") {
      max_iters_nonconvex = parse_u64(value, key);
    } else if (key == "tol_primary") {
      cfg.run.tol_primary = parse_double(value, key);
    } else if (key == "tol_high") {
      cfg.run.tol_high = parse_double(value, key);
    } else if (key == "x_explode") {
      cfg.run.x_explode = parse_double(value, key);
    } else if (key == "f_explode") {
      cfg.run.f_explode = parse_double(value, key);
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }

  if (!have_optimizers) {
    for (const char* name : {"sgd", "momentum", "nag", "adam", "hbsge", "hbsge-safe"}) {
      optimizers.push_back(parse_optimizer_item(name));
    }
  }
  if (cfg.seeds.empty()) throw ConfigError("config: key 'seeds' must not be empty");
  if (!(cfg.run.tol_high < cfg.run.tol_primary)) {
    throw ConfigError("config: tol_high must be smaller than tol_primary");
  }

  for (const ProblemItem& item : problems) {
    ProblemSpec spec;
    switch (item.kind) {
      case ProblemKind::Quadratic:
        spec = quadratic_spec(item.kappa, item.dim.value_or(quad_dim));
        spec.max_iters = max_iters_quad;
        break;
      case ProblemKind::Rosenbrock:
        spec = rosenbrock_spec();
        spec.max_iters = max_iters_nonconvex;
        break;
      case ProblemKind::Beale:
        spec = beale_spec();
        spec.max_iters = max_iters_nonconvex;
        break;
    }
    if (item.eta) {
      spec.eta = *item.eta;
    } else if (!default_learning_rate(item.kind, item.kappa)) {
      throw ConfigError("config: no default learning rate for kappa=" + std::to_string(item.kappa) +
                        "; give the problem an explicit eta=");
    }
    std::vector<OptimizerConfig> configs;
    configs.reserve(optimizers.size());
    for (const OptimizerTemplate& t : optimizers) configs.push_back(instantiate(t, spec.eta));
    cfg.suite.push_back({std::move(spec), std::move(configs)});
  }
  return cfg;
}

SuiteFileConfig paper_grid_config() {
  SuiteFileConfig cfg;
  cfg.suite = paper_grid();
  return cfg;
}

}  // namespace optbench
