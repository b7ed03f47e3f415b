#pragma once

#include <string>
#include <vector>

#include "optbench/harness.hpp"
#include "optbench/stability.hpp"

namespace optbench {

/// 17 significant digits; enough to round-trip a double exactly. Non-finite
/// values serialize as inf/-inf/nan literals.
std::string format_full(double v);

/// 6 significant digits in scientific notation for table columns.
std::string format_table(double v);

/// Plain shortest formatting, used for iteration columns (medians can be
/// half-integers).
std::string format_plain(double v);

/// Header `t,f,grad_norm,dist_to_opt,alpha_t`; one row per trace entry at
/// full precision, empty fields for absent optionals.
std::string trace_csv(const RunResult& r);

struct SummaryRow {
  std::string problem;
  std::string optimizer;
  double final_loss = 0.0;
  double final_grad_norm = 0.0;
  double iter_primary = 0.0;
  double iter_high = 0.0;
  double total_iters = 0.0;
  double final_dist = 0.0;
};

/// Iteration columns fall back to the divergence iteration for divergent
/// runs and to the budget for stagnated ones, so they always carry a value.
SummaryRow summarize(const CellResult& cell);

/// Per-(problem, optimizer) medians over seeds, preserving first-appearance
/// order. NaNs sort after +inf when taking medians.
std::vector<SummaryRow> median_rows(const std::vector<CellResult>& cells);

std::string summary_csv(const std::vector<SummaryRow>& rows);
std::string summary_markdown(const std::vector<SummaryRow>& rows);

/// Parses what summary_csv produced; numeric fields come back exactly for
/// finite and non-finite values alike.
std::vector<SummaryRow> parse_summary_csv(const std::string& text);

std::string stability_csv_header();

/// Rows `method,lambda_i,rho_exact,rho_closed_form,alpha_bound,predicted`
/// for one analyzed optimizer. The closed-form column carries the magnitude
/// of the scalar formula.
void append_stability_rows(std::string& out, const StabilityReport& rep);

/// Rows for a method with no linear mode analysis (Adam): the analysis
/// fields stay empty.
void append_stability_placeholder_rows(std::string& out, const std::string& method,
                                       const std::vector<double>& lambdas);

}  // namespace optbench
