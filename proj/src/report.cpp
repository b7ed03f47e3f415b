#include "optbench/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

namespace optbench {

namespace {

std::string format_with(const char* spec, double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string format_full(double v) { return format_with("%.17g", v); }
std::string format_table(double v) { return format_with("%.5e", v); }
std::string format_plain(double v) { return format_with("%g", v); }

std::string trace_csv(const RunResult& r) {
  std::string out = "t,f,grad_norm,dist_to_opt,alpha_t\n";
  for (const TraceRow& row : r.trace) {
    out += std::to_string(row.t);
    out += ',';
    out += format_full(row.f);
    out += ',';
    out += format_full(row.grad_norm);
    out += ',';
    if (row.dist_to_opt) out += format_full(*row.dist_to_opt);
    out += ',';
    if (row.alpha_t) out += format_full(*row.alpha_t);
    out += '\n';
  }
  return out;
}

SummaryRow summarize(const CellResult& cell) {
  const RunResult& r = cell.result;
  const double budget = static_cast<double>(cell.max_iters);
  const double fallback =
      r.divergence_iter ? static_cast<double>(*r.divergence_iter) : budget;

  SummaryRow row;
  row.problem = cell.problem;
  row.optimizer = cell.optimizer;
  row.final_loss = r.final_f;
  row.final_grad_norm = r.final_grad_norm;
  row.iter_primary = r.iters_to_primary ? static_cast<double>(*r.iters_to_primary) : fallback;
  row.iter_high = r.iters_to_high ? static_cast<double>(*r.iters_to_high) : fallback;
  row.total_iters = static_cast<double>(r.trace.back().t);
  row.final_dist = r.final_dist;
  return row;
}

namespace {

double median(std::vector<double> values) {
  // NaN sorts last so it only surfaces when it is the middle value.
  std::sort(values.begin(), values.end(), [](double a, double b) {
    if (std::isnan(a)) return false;
    if (std::isnan(b)) return true;
    return a < b;
  });
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

std::vector<SummaryRow> median_rows(const std::vector<CellResult>& cells) {
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<SummaryRow>> groups;
  for (const CellResult& cell : cells) {
    const auto key = std::make_pair(cell.problem, cell.optimizer);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(summarize(cell));
  }

  std::vector<SummaryRow> rows;
  rows.reserve(order.size());
  for (const auto& key : order) {
    const std::vector<SummaryRow>& group = groups[key];
    auto column = [&](double SummaryRow::* field) {
      std::vector<double> values;
      values.reserve(group.size());
      for (const SummaryRow& r : group) values.push_back(r.*field);
      return median(std::move(values));
    };
    SummaryRow row;
    row.problem = key.first;
    row.optimizer = key.second;
    row.final_loss = column(&SummaryRow::final_loss);
    row.final_grad_norm = column(&SummaryRow::final_grad_norm);
    row.iter_primary = column(&SummaryRow::iter_primary);
    row.iter_high = column(&SummaryRow::iter_high);
    row.total_iters = column(&SummaryRow::total_iters);
    row.final_dist = column(&SummaryRow::final_dist);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

constexpr const char* kSummaryHeader =
    "Problem,Optimizer,Final Loss,Final Grad Norm,Iter to 1e-3,Iter to 1e-6,Total "
    "Iters,Final Dist";

}  // namespace

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = kSummaryHeader;
  out += '\n';
  for (const SummaryRow& r : rows) {
    out += r.problem + ',' + r.optimizer + ',';
    out += format_table(r.final_loss) + ',';
    out += format_table(r.final_grad_norm) + ',';
    out += format_plain(r.iter_primary) + ',';
    out += format_plain(r.iter_high) + ',';
    out += format_plain(r.total_iters) + ',';
    out += format_table(r.final_dist);
    out += '\n';
  }
  return out;
}

std::string summary_markdown(const std::vector<SummaryRow>& rows) {
  std::string out =
      "| Problem | Optimizer | Final Loss | Final Grad Norm | Iter to 1e-3 | Iter to 1e-6 "
      "| Total Iters | Final Dist |\n"
      "|---|---|---|---|---|---|---|---|\n";
  for (const SummaryRow& r : rows) {
    out += "| " + r.problem + " | " + r.optimizer + " | ";
    out += format_table(r.final_loss) + " | ";
    out += format_table(r.final_grad_norm) + " | ";
    out += format_plain(r.iter_primary) + " | ";
    out += format_plain(r.iter_high) + " | ";
    out += format_plain(r.total_iters) + " | ";
    out += format_table(r.final_dist) + " |\n";
  }
  return out;
}

std::vector<SummaryRow> parse_summary_csv(const std::string& text) {
  std::vector<SummaryRow> rows;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line == kSummaryHeader) continue;
    }
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 8) {
      throw std::runtime_error("parse_summary_csv: expected 8 fields, got " +
                               std::to_string(fields.size()));
    }
    SummaryRow r;
    r.problem = fields[0];
    r.optimizer = fields[1];
    r.final_loss = std::strtod(fields[2].c_str(), nullptr);
    r.final_grad_norm = std::strtod(fields[3].c_str(), nullptr);
    r.iter_primary = std::strtod(fields[4].c_str(), nullptr);
    r.iter_high = std::strtod(fields[5].c_str(), nullptr);
    r.total_iters = std::strtod(fields[6].c_str(), nullptr);
    r.final_dist = std::strtod(fields[7].c_str(), nullptr);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string stability_csv_header() {
  return "method,lambda_i,rho_exact,rho_closed_form,alpha_bound,predicted\n";
}

void append_stability_rows(std::string& out, const StabilityReport& rep) {
  for (std::size_t i = 0; i < rep.per_mode.size(); ++i) {
    const auto& [lambda, rho] = rep.per_mode[i];
    out += rep.method;
    out += ',';
    out += format_full(lambda);
    out += ',';
    out += format_full(rho);
    out += ',';
    if (rep.closed_form_hbsge) out += format_full(std::abs((*rep.closed_form_hbsge)[i]));
    out += ',';
    if (rep.alpha_bound) out += format_full(*rep.alpha_bound);
    out += ',';
    out += to_string(rep.predicted);
    out += '\n';
  }
}

void append_stability_placeholder_rows(std::string& out, const std::string& method,
                                       const std::vector<double>& lambdas) {
  for (double lambda : lambdas) {
    out += method;
    out += ',';
    out += format_full(lambda);
    out += ",,,,\n";
  }
}

}  // namespace optbench
