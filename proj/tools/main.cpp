// Command-line front end: suites, sweeps, searches and bound tables with
// seeded reproducibility. Identical config + seed gives byte-identical output.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qehc/io.hpp"
#include "qehc/parallel.hpp"
#include "qehc/rng.hpp"
#include "qehc/suite.hpp"

using namespace qehc;

namespace {

// Grid syntax: "v", "a,b,c" or "start:stop:step" (stop inclusive to 1e-12).
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double a, b, s;
    char c1, c2;
    std::istringstream ss(text);
    if (!(ss >> a >> c1 >> b >> c2 >> s) || c1 != ':' || c2 != ':' || s <= 0.0) {
      throw CLI::ValidationError("grid", "expected start:stop:step with step > 0");
    }
    for (double v = a; v <= b + 1e-12; v += s) out.push_back(v);
    return out;
  }
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw CLI::ValidationError("grid", "empty grid");
  return out;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    atomic_write_file(out_path, content);
  }
}

int cmd_verify(const std::string& suite, const std::string& config_path,
               const std::vector<std::string>& checks, std::uint64_t seed, int n,
               int samples, const std::vector<std::string>& tol_overrides,
               const std::string& out_path, const std::string& format) {
  SuiteConfig cfg;
  if (!config_path.empty()) {
    cfg = config_from_json_text(read_text_file(config_path));
  } else {
    cfg = default_config();
  }
  if (suite == "smoke") cfg.samples = 5;

  // flags override the config file
  if (!checks.empty()) cfg.checks = checks;
  if (seed != static_cast<std::uint64_t>(-1)) cfg.seed = seed;
  if (n > 0) cfg.n = n;
  if (samples > 0) cfg.samples = samples;
  for (const auto& ov : tol_overrides) {
    const auto pos = ov.find('=');
    if (pos == std::string::npos) {
      throw CLI::ValidationError("--tol-override", "expected check=tolerance");
    }
    cfg.tol_override[ov.substr(0, pos)] = std::stod(ov.substr(pos + 1));
  }

  const auto reports = run_suite(cfg);
  const int failures = count_failures(reports);
  if (format == "structured") {
    nlohmann::json doc;
    doc["summary"] = nlohmann::json::parse(summary_json(reports));
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : reports) {
      nlohmann::json row;
      row["statement"] = r.id;
      row["label"] = statement_label(r.id);
      row["lhs"] = r.lhs;
      row["rhs"] = r.rhs;
      row["gap"] = r.gap;
      row["tol"] = r.tol;
      row["pass"] = r.pass;
      row["aux"] = r.aux;
      rows.push_back(std::move(row));
    }
    doc["reports"] = std::move(rows);
    emit(doc.dump(2) + "\n", out_path);
  } else {
    emit(reports_to_csv(reports), out_path);
    if (!out_path.empty()) {
      atomic_write_file(out_path + ".summary.json", summary_json(reports));
    }
  }
  std::cerr << "checks: " << reports.size() << ", failures: " << failures << "\n";
  return failures == 0 ? 0 : 1;
}

int cmd_entropy_sweep(std::uint64_t seed, int n, int samples, int m_cap,
                      const std::string& eps_grid_text, const std::string& q_grid_text,
                      const std::string& out_path) {
  const std::vector<double> eps_grid =
      eps_grid_text.empty() ? std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}
                            : parse_grid(eps_grid_text);
  const std::vector<double> q_grid =
      q_grid_text.empty() ? std::vector<double>{1.0, 1.25, 1.5, 1.75, 2.0}
                          : parse_grid(q_grid_text);
  const int mmax = (m_cap < 0) ? n : std::min(m_cap, n);

  struct Row {
    int m;
    double eps, q, lhs, rhs, gap;
    bool pass;
  };
  std::vector<std::vector<Row>> rows(samples);
  parallel_for(static_cast<std::size_t>(samples), [&](std::size_t i) {
    const QubitOperator X = random_psd(n, mix_seed(seed, "entropy-sweep", i));
    for (int m = 0; m <= mmax; ++m) {
      for (double eps : eps_grid) {
        for (double q : q_grid) {
          const CheckReport r = log_sobolev_gap(X, m, eps, q);
          rows[i].push_back(Row{m, eps, q, r.lhs, r.rhs, r.gap, r.pass});
        }
      }
    }
  });

  std::ostringstream csv;
  csv << "m,eps,q,lhs,rhs,gap,pass\n";
  for (const auto& per_instance : rows) {
    for (const auto& row : per_instance) {
      csv << row.m << ',' << fmt_double(row.eps) << ',' << fmt_double(row.q) << ','
          << fmt_double(row.lhs) << ',' << fmt_double(row.rhs) << ','
          << fmt_double(row.gap) << ',' << (row.pass ? 1 : 0) << '\n';
    }
  }
  emit(csv.str(), out_path);
  return 0;
}

int cmd_search_ratio(int n, double p, double q, double eps, int restarts, int iters,
                     std::uint64_t seed, const std::string& out_path) {
  SearchBudget budget;
  if (restarts > 0) budget.restarts = restarts;
  if (iters > 0) budget.iterations = iters;
  budget.seed = seed;
  const Candidate cand = certify(maximize_ratio(n, p, q, eps, budget));
  emit(candidate_to_json(cand).dump(2) + "\n", out_path);
  std::cerr << "best ratio: " << fmt_double(cand.objective)
            << (cand.certified ? " (certified)" : " (NOT certified)") << "\n";
  return 0;
}

int cmd_search_monotone(int n, double p, double c, double q_override,
                        const std::string& t_grid_text, int restarts, int iters,
                        std::uint64_t seed, const std::string& out_path) {
  SearchBudget budget;
  if (restarts > 0) budget.restarts = restarts;
  if (iters > 0) budget.iterations = iters;
  budget.seed = seed;
  const std::vector<double> t_grid =
      t_grid_text.empty() ? std::vector<double>{0.5, 1.0, 2.0, 3.0, 4.0}
                          : parse_grid(t_grid_text);
  std::vector<Candidate> found = scan_monotonicity(n, p, c, q_override, t_grid, budget);
  nlohmann::json arr = nlohmann::json::array();
  int certified = 0;
  for (auto& cand : found) {
    cand = certify(cand);
    if (cand.certified) ++certified;
    arr.push_back(candidate_to_json(cand));
  }
  emit(arr.dump(2) + "\n", out_path);
  std::cerr << "candidates: " << found.size() << ", certified: " << certified << "\n";
  return 0;
}

int cmd_crg_bound(double eps, double gamma, const std::string& gamma_grid_text,
                  double k, double c, const std::string& out_path) {
  const std::vector<double> gammas =
      gamma_grid_text.empty() ? std::vector<double>{gamma} : parse_grid(gamma_grid_text);
  std::ostringstream csv;
  csv << "eps,gamma,k,c,lower_bound,delta_star,classical_upper\n";
  for (double g : gammas) {
    const CrgParams params{eps, g, k, c};
    const CrgBound lb = lower_bound(params);
    const DeltaOpt opt = optimize_delta(params);
    const CrgBound ub = classical_upper_bound(eps, g, k);
    csv << fmt_double(eps) << ',' << fmt_double(g) << ',' << fmt_double(k) << ','
        << fmt_double(c) << ',' << fmt_double(lb.bits) << ','
        << fmt_double(opt.delta_star) << ',' << fmt_double(ub.bits) << '\n';
  }
  emit(csv.str(), out_path);
  return 0;
}

int cmd_crg_sim(const std::string& strategy_path, int n, double eps,
                const std::string& out_path) {
  Strategy strat;
  if (!strategy_path.empty()) {
    strat = strategy_from_json(nlohmann::json::parse(read_text_file(strategy_path)));
  } else {
    strat = guess_zero_strategy(n);
  }
  const double success = success_probability(strat, eps);
  std::ostringstream csv;
  csv << "n,eps,success\n"
      << strat.n << ',' << fmt_double(eps) << ',' << fmt_double(success) << '\n';
  emit(csv.str(), out_path);
  return 0;
}

int cmd_norm(const std::string& in_path, std::optional<double> p,
             std::optional<double> eps, std::optional<double> q,
             const std::string& out_path) {
  const QubitOperator X =
      qubit_operator_from_json(nlohmann::json::parse(read_text_file(in_path)));
  std::ostringstream csv;
  csv << "kind,p,eps,q,value\n";
  if (p) {
    csv << "schatten," << fmt_double(*p) << ",,," << fmt_double(
        schatten_norm_normalized(X.mat, *p)) << '\n';
  }
  if (eps && q) {
    csv << "eps-q,," << fmt_double(*eps) << ',' << fmt_double(*q) << ','
        << fmt_double(eps_q_norm(X, *eps, *q)) << '\n';
  }
  if (!p && !(eps && q)) {
    throw CLI::ValidationError("norm", "need --p and/or both --eps and --q");
  }
  emit(csv.str(), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerics for erasure-channel hypercontractivity, entropy "
               "inequalities and common-randomness bounds"};
  app.require_subcommand(1);

  std::uint64_t seed = static_cast<std::uint64_t>(-1);
  int n = 0, samples = 0;
  std::string out_path, format = "csv";

  // verify
  auto* verify = app.add_subcommand("verify", "run statement suites");
  std::string suite = "default", config_path;
  std::vector<std::string> checks, tol_overrides;
  verify->add_option("--suite", suite, "suite name: default|smoke");
  verify->add_option("--config", config_path, "JSON config file (flags override it)");
  verify->add_option("--checks", checks, "statement ids to run")->delimiter(',');
  verify->add_option("--seed", seed);
  verify->add_option("--n", n, "qubit count cap for generated instances");
  verify->add_option("--samples", samples, "instances per statement");
  verify->add_option("--tol-override", tol_overrides, "check=tol pairs");
  verify->add_option("--out", out_path, "output path (stdout when omitted)");
  verify->add_option("--format", format)->check(CLI::IsMember({"csv", "structured"}));

  // entropy-sweep
  auto* sweep = app.add_subcommand("entropy-sweep", "log-Sobolev gap sweep");
  int m_cap = -1;
  std::string eps_grid_text, q_grid_text;
  sweep->add_option("--seed", seed);
  sweep->add_option("--n", n)->default_val(3);
  sweep->add_option("--samples", samples)->default_val(10);
  sweep->add_option("--m", m_cap, "largest m (default n)");
  sweep->add_option("--eps", eps_grid_text, "eps grid: v | a,b,c | a:b:s");
  sweep->add_option("--q", q_grid_text, "q grid: v | a,b,c | a:b:s");
  sweep->add_option("--out", out_path);

  // search-ratio
  auto* sratio = app.add_subcommand("search-ratio", "maximize the norm ratio");
  double p_flag = 1.5, q_flag = 2.0, eps_flag = 0.5, c_flag = 2.0;
  int restarts = 0, iters = 0;
  sratio->add_option("--n", n)->default_val(2);
  sratio->add_option("--p", p_flag);
  sratio->add_option("--q", q_flag);
  sratio->add_option("--eps", eps_flag);
  sratio->add_option("--restarts", restarts);
  sratio->add_option("--iters", iters);
  sratio->add_option("--seed", seed);
  sratio->add_option("--out", out_path);

  // search-monotone
  auto* smono = app.add_subcommand("search-monotone", "hunt for g'(t) > 0");
  double q_override = 0.0;
  std::string t_grid_text;
  smono->add_option("--n", n)->default_val(2);
  smono->add_option("--p", p_flag);
  smono->add_option("--c", c_flag);
  smono->add_option("--q", q_override, "target q(t) instead of a t grid");
  smono->add_option("--t-grid", t_grid_text, "t grid: v | a,b,c | a:b:s");
  smono->add_option("--restarts", restarts);
  smono->add_option("--iters", iters);
  smono->add_option("--seed", seed);
  smono->add_option("--out", out_path);

  // crg-bound
  auto* crgb = app.add_subcommand("crg-bound", "communication bound table");
  double gamma = 0.1, k_bits = 1000.0;
  std::string gamma_grid_text;
  crgb->add_option("--eps", eps_flag)->required();
  crgb->add_option("--gamma", gamma);
  crgb->add_option("--gamma-grid", gamma_grid_text, "gamma grid a:b:s");
  crgb->add_option("--k", k_bits);
  crgb->add_option("--c", c_flag);
  crgb->add_option("--out", out_path);

  // crg-sim
  auto* crgs = app.add_subcommand("crg-sim", "evaluate a strategy's success");
  std::string strategy_path;
  crgs->add_option("--strategy", strategy_path, "strategy document (JSON)");
  crgs->add_option("--n", n)->default_val(1);
  crgs->add_option("--eps", eps_flag)->required();
  crgs->add_option("--out", out_path);

  // norm
  auto* norm = app.add_subcommand("norm", "norms of a matrix document");
  std::string in_path;
  std::optional<double> p_opt, eps_opt, q_opt;
  norm->add_option("--in", in_path)->required();
  norm->add_option("--p", p_opt);
  norm->add_option("--eps", eps_opt);
  norm->add_option("--q", q_opt);
  norm->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      return cmd_verify(suite, config_path, checks, seed, n, samples, tol_overrides,
                        out_path, format);
    }
    if (*sweep) {
      return cmd_entropy_sweep(seed == static_cast<std::uint64_t>(-1) ? 0 : seed, n,
                               samples, m_cap, eps_grid_text, q_grid_text, out_path);
    }
    if (*sratio) {
      return cmd_search_ratio(n, p_flag, q_flag, eps_flag, restarts, iters,
                              seed == static_cast<std::uint64_t>(-1) ? 0 : seed,
                              out_path);
    }
    if (*smono) {
      return cmd_search_monotone(n, p_flag, c_flag, q_override, t_grid_text, restarts,
                                 iters, seed == static_cast<std::uint64_t>(-1) ? 0 : seed,
                                 out_path);
    }
    if (*crgb) {
      return cmd_crg_bound(eps_flag, gamma, gamma_grid_text, k_bits, c_flag, out_path);
    }
    if (*crgs) return cmd_crg_sim(strategy_path, n, eps_flag, out_path);
    if (*norm) return cmd_norm(in_path, p_opt, eps_opt, q_opt, out_path);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
