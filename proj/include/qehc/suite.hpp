#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qehc/checks.hpp"

namespace qehc {

/// Batch configuration. `checks` lists statement ids (see statement_ids());
/// grids left empty fall back to per-statement defaults. tol_override maps a
/// statement id to a replacement pass tolerance.
struct SuiteConfig {
  std::vector<std::string> checks;
  int n = 3;
  int samples = 50;
  std::uint64_t seed = 0;
  std::vector<double> eps_grid;
  std::vector<double> p_grid;
  std::vector<double> q_grid;
  std::map<std::string, double> tol_override;
};

/// All statement ids, in the fixed order suites run them.
const std::vector<std::string>& statement_ids();

/// Human-readable label for a statement id.
std::string statement_label(const std::string& id);

/// Config exercising every statement.
SuiteConfig default_config();

/// Parse a config document (JSON: checks, n, samples, seed, eps_grid,
/// p_grid, q_grid, tol_override). Unknown statement ids are rejected.
SuiteConfig config_from_json_text(const std::string& text);

/// Deterministic batch run: instance i of a statement derives its randomness
/// from (seed, statement, i), so results are independent of thread count.
/// Reports come back in (statement order, index) order; aux carries the
/// generated parameters for reporting.
std::vector<CheckReport> run_suite(const SuiteConfig& cfg);

/// CSV with one row per report: statement, label, index, n, p, q, eps, m,
/// lhs, rhs, gap, tol, pass. '.' decimal, 17 significant digits.
std::string reports_to_csv(const std::vector<CheckReport>& reports);

/// Machine-readable summary with per-statement pass/fail counts.
std::string summary_json(const std::vector<CheckReport>& reports);

/// Number of failed reports.
int count_failures(const std::vector<CheckReport>& reports);

}  // namespace qehc
