#include "qehc/suite.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qehc/io.hpp"
#include "qehc/parallel.hpp"
#include "qehc/rng.hpp"

namespace qehc {

using nlohmann::json;

namespace {

const std::vector<std::pair<std::string, std::string>>& statement_table() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"hc-qec-case1", "erasure hypercontractivity, c=1 branch (1<=p<=2<=q)"},
      {"hc-qec-case2", "erasure hypercontractivity, c=2 branch (1<=p<=q<=2)"},
      {"log-sobolev-variable", "variable log-Sobolev bound Ent <= 2J + 2K"},
      {"gross-refined", "refined Gross inequality for one traced qubit"},
      {"ds-vector-power", "doubly stochastic q/2-power vector bound"},
      {"two-point-bound", "two-point entropy linear bound on [b,16b]"},
      {"pt-sandwich", "one-qubit partial-trace moment sandwich"},
      {"norm-compression", "block norm compression for PSD matrices"},
      {"entrywise-2x2", "entrywise domination controls 2x2 norms"},
      {"watrous-reduction", "norm ratio dominated by the PSD split"},
      {"depolarizing-hc", "depolarizing hypercontractivity corollary"},
      {"bec-classical", "classical erasure-channel hypercontractivity"},
  };
  return table;
}

double eps_boundary(double p, double q, double c) {
  if (q <= p) return 0.25;  // any eps admissible; keep some noise in play
  if (p == 1.0) return 1.0;
  return 1.0 - std::pow((p - 1.0) / (q - 1.0), c);
}

std::vector<double> grid_or(const std::vector<double>& user, std::vector<double> fallback) {
  return user.empty() ? fallback : user;
}

std::vector<double> filter_range(std::vector<double> grid, double lo, double hi,
                                 std::vector<double> fallback) {
  std::vector<double> out;
  for (double v : grid) {
    if (v >= lo && v <= hi) out.push_back(v);
  }
  return out.empty() ? fallback : out;
}

struct InstanceContext {
  const SuiteConfig& cfg;
  std::size_t index;
  std::uint64_t seed;  // already mixed with the statement id and index
};

CheckReport gen_hc(const InstanceContext& ctx, int hc_case) {
  const auto& cfg = ctx.cfg;
  const int nmax = std::clamp(cfg.n, 1, 4);
  const int n = 1 + static_cast<int>(ctx.index % nmax);
  std::vector<double> pg =
      filter_range(grid_or(cfg.p_grid, {1.0, 1.25, 1.5, 1.75, 2.0}), 1.0, 2.0,
                   {1.0, 1.25, 1.5, 1.75, 2.0});
  double p, q;
  if (hc_case == 1) {
    std::vector<double> qg = filter_range(grid_or(cfg.q_grid, {2.0, 2.5, 3.0, 4.0}),
                                          2.0, 64.0, {2.0, 2.5, 3.0, 4.0});
    p = pg[ctx.index % pg.size()];
    q = qg[(ctx.index / pg.size()) % qg.size()];
  } else {
    p = pg[ctx.index % pg.size()];
    static const double fractions[] = {0.25, 0.5, 0.75, 1.0};
    const double f = fractions[(ctx.index / pg.size()) % 4];
    q = p + f * (2.0 - p);
  }
  const double eps = eps_boundary(p, q, hc_case == 1 ? 1.0 : 2.0);
  return check_hc(random_hermitian(n, ctx.seed), p, q, eps, hc_case);
}

CheckReport gen_log_sobolev(const InstanceContext& ctx) {
  const int n = std::clamp(ctx.cfg.n, 1, 3);
  const int m = static_cast<int>(ctx.index % (n + 1));
  const std::vector<double> eg = grid_or(ctx.cfg.eps_grid, {0.0, 0.25, 0.5, 0.75, 1.0});
  const std::vector<double> qg =
      filter_range(grid_or(ctx.cfg.q_grid, {1.0, 1.25, 1.5, 1.75, 2.0}), 1.0, 2.0,
                   {1.0, 1.25, 1.5, 1.75, 2.0});
  const double eps = eg[(ctx.index / (n + 1)) % eg.size()];
  const double q = qg[(ctx.index / ((n + 1) * eg.size())) % qg.size()];
  CheckReport r = log_sobolev_gap(random_psd(n, ctx.seed), m, eps, q);
  r.aux["param_m"] = m;
  return r;
}

CheckReport gen_gross(const InstanceContext& ctx) {
  const int n = 1 + static_cast<int>(ctx.index % std::clamp(ctx.cfg.n, 1, 4));
  static const double qs[] = {1.1, 1.5, 1.9, 2.0};
  return check_refined_gross(random_psd(n, ctx.seed), qs[ctx.index % 4]);
}

CheckReport gen_ds_vector(const InstanceContext& ctx) {
  const int dim = 1 << (1 + static_cast<int>(ctx.index % 4));
  std::mt19937_64 rng(ctx.seed);
  const RealMatrix D = sinkhorn_ds(dim, rng);
  std::normal_distribution<double> normal(0.0, 1.0);
  RealVector lambda(dim);
  for (int i = 0; i < dim; ++i) lambda(i) = std::abs(normal(rng));
  static const double qs[] = {1.1, 1.5, 1.9, 2.0};
  return check_ds_vector(lambda, D, qs[ctx.index % 4]);
}

CheckReport gen_two_point(const InstanceContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double b = 0.1 + 5.0 * uni(rng);
  const double a = b * (1.0 + 15.0 * uni(rng));
  static const double es[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  return check_tech_lemma(a, b, es[ctx.index % 5]);
}

CheckReport gen_pt_sandwich(const InstanceContext& ctx) {
  const int n = 1 + static_cast<int>(ctx.index % std::clamp(ctx.cfg.n, 1, 3));
  static const double qs[] = {1.0, 2.0, 3.0};
  return check_pt_sandwich(random_psd(n, ctx.seed), qs[ctx.index % 3]);
}

CheckReport gen_norm_compression(const InstanceContext& ctx) {
  const int n = 2 + static_cast<int>(ctx.index % 2);  // 4x4 or 8x8
  static const double ps[] = {1.5, 2.0, 3.0};
  return check_norm_compression(random_psd(n, ctx.seed).mat, ps[ctx.index % 3]);
}

CheckReport gen_entrywise(const InstanceContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double a = 0.2 + 1.8 * uni(rng);
  const double b = 0.2 + 1.8 * uni(rng);
  const double c = 0.95 * std::sqrt(a * b) * uni(rng);
  Eigen::Matrix2d X;
  X << a, c, c, b;
  const double d1 = uni(rng), d2 = uni(rng);
  const double emax = std::sqrt((a + d1) * (b + d2)) - c;
  const double e = 0.95 * emax * uni(rng);
  Eigen::Matrix2d Y;
  Y << a + d1, c + e, c + e, b + d2;
  static const double ps[] = {1.5, 3.0};
  return check_entrywise_2x2(X, Y, ps[ctx.index % 2]);
}

CheckReport gen_watrous(const InstanceContext& ctx) {
  const int n = 1 + static_cast<int>(ctx.index % std::clamp(ctx.cfg.n, 1, 3));
  static const double es[] = {0.25, 0.5, 0.75};
  static const double qs[] = {1.5, 2.5};
  static const double ps[] = {1.2, 2.0};
  return check_watrous(random_hermitian(n, ctx.seed), es[ctx.index % 3],
                       qs[(ctx.index / 3) % 2], ps[(ctx.index / 6) % 2]);
}

CheckReport gen_depolarizing(const InstanceContext& ctx) {
  static const double pqs[][2] = {
      {1.5, 2.5}, {1.3, 1.8}, {1.2, 3.0}, {1.5, 1.9}, {2.0, 2.0}};
  const auto& pq = pqs[ctx.index % 5];
  const double p = pq[0], q = pq[1];
  const double c = (q >= 2.0) ? 1.0 : 2.0;
  const double rho = (q == p) ? 1.0 : std::pow((p - 1.0) / (q - 1.0), c / 2.0);
  const int n = 1 + static_cast<int>(ctx.index % std::clamp(ctx.cfg.n, 1, 3));
  return check_depolarizing_hc(random_hermitian(n, ctx.seed), p, q, rho);
}

CheckReport gen_bec(const InstanceContext& ctx) {
  const int n = std::clamp(ctx.cfg.n, 1, 3);
  std::mt19937_64 rng(ctx.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> f(std::size_t{1} << n);
  for (double& v : f) v = normal(rng);
  static const double pqs[][2] = {{1.5, 2.0}, {1.25, 1.75}, {2.0, 3.0}, {1.5, 1.5}};
  const auto& pq = pqs[ctx.index % 4];
  const double eps = eps_boundary(pq[0], pq[1], 1.0);
  return check_classical_bec(f, pq[0], pq[1], eps);
}

CheckReport dispatch(const std::string& id, const InstanceContext& ctx) {
  if (id == "hc-qec-case1") return gen_hc(ctx, 1);
  if (id == "hc-qec-case2") return gen_hc(ctx, 2);
  if (id == "log-sobolev-variable") return gen_log_sobolev(ctx);
  if (id == "gross-refined") return gen_gross(ctx);
  if (id == "ds-vector-power") return gen_ds_vector(ctx);
  if (id == "two-point-bound") return gen_two_point(ctx);
  if (id == "pt-sandwich") return gen_pt_sandwich(ctx);
  if (id == "norm-compression") return gen_norm_compression(ctx);
  if (id == "entrywise-2x2") return gen_entrywise(ctx);
  if (id == "watrous-reduction") return gen_watrous(ctx);
  if (id == "depolarizing-hc") return gen_depolarizing(ctx);
  if (id == "bec-classical") return gen_bec(ctx);
  throw std::invalid_argument("run_suite: unknown check id '" + id + "'");
}

// Pull the generated parameters out of the witness for self-describing rows.
void annotate(CheckReport& r, std::size_t index) {
  r.aux["index"] = static_cast<double>(index);
  const json w = json::parse(r.witness);
  if (w.contains("matrix") && w.at("matrix").contains("n")) {
    r.aux["param_n"] = w.at("matrix").at("n").get<int>();
  }
  for (const char* key : {"p", "q", "eps", "m", "a", "b", "rho"}) {
    if (w.contains(key) && w.at(key).is_number()) {
      r.aux[std::string("param_") + key] = w.at(key).get<double>();
    }
  }
}

}  // namespace

const std::vector<std::string>& statement_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, label] : statement_table()) out.push_back(id);
    return out;
  }();
  return ids;
}

std::string statement_label(const std::string& id) {
  for (const auto& [sid, label] : statement_table()) {
    if (sid == id) return label;
  }
  throw std::invalid_argument("unknown statement id '" + id + "'");
}

SuiteConfig default_config() {
  SuiteConfig cfg;
  cfg.checks = statement_ids();
  return cfg;
}

SuiteConfig config_from_json_text(const std::string& text) {
  const json j = json::parse(text);
  SuiteConfig cfg;
  if (j.contains("checks")) {
    cfg.checks = j.at("checks").get<std::vector<std::string>>();
  } else {
    cfg.checks = statement_ids();
  }
  for (const auto& id : cfg.checks) statement_label(id);  // validate
  cfg.n = j.value("n", cfg.n);
  cfg.samples = j.value("samples", cfg.samples);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.eps_grid = j.value("eps_grid", cfg.eps_grid);
  cfg.p_grid = j.value("p_grid", cfg.p_grid);
  cfg.q_grid = j.value("q_grid", cfg.q_grid);
  if (j.contains("tol_override")) {
    cfg.tol_override = j.at("tol_override").get<std::map<std::string, double>>();
  }
  return cfg;
}

std::vector<CheckReport> run_suite(const SuiteConfig& cfg) {
  if (cfg.samples < 0 || cfg.n < 0) {
    throw std::invalid_argument("run_suite: samples and n must be nonnegative");
  }
  for (const auto& id : cfg.checks) statement_label(id);

  std::vector<CheckReport> all;
  for (const auto& id : cfg.checks) {
    std::vector<CheckReport> batch(cfg.samples);
    parallel_for(static_cast<std::size_t>(cfg.samples), [&](std::size_t i) {
      InstanceContext ctx{cfg, i, mix_seed(cfg.seed, id, i)};
      CheckReport r = dispatch(id, ctx);
      annotate(r, i);
      const auto ov = cfg.tol_override.find(id);
      if (ov != cfg.tol_override.end()) {
        r.tol = ov->second;
        r.pass = r.gap >= -r.tol;
      }
      batch[i] = std::move(r);
    });
    for (auto& r : batch) all.push_back(std::move(r));
  }
  return all;
}

namespace {

std::string aux_field(const CheckReport& r, const std::string& key) {
  const auto it = r.aux.find(key);
  return it == r.aux.end() ? std::string() : fmt_double(it->second);
}

}  // namespace

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  out << "statement,label,index,n,p,q,eps,m,lhs,rhs,gap,tol,pass\n";
  for (const auto& r : reports) {
    out << r.id << ",\"" << statement_label(r.id) << "\"," << aux_field(r, "index")
        << ',' << aux_field(r, "param_n") << ',' << aux_field(r, "param_p") << ','
        << aux_field(r, "param_q") << ',' << aux_field(r, "param_eps") << ','
        << aux_field(r, "param_m") << ',' << fmt_double(r.lhs) << ','
        << fmt_double(r.rhs) << ',' << fmt_double(r.gap) << ',' << fmt_double(r.tol)
        << ',' << (r.pass ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string summary_json(const std::vector<CheckReport>& reports) {
  json per;
  int failures = 0;
  for (const auto& r : reports) {
    json& slot = per[r.id];
    if (slot.is_null()) slot = json{{"pass", 0}, {"fail", 0}};
    if (r.pass) {
      slot["pass"] = slot["pass"].get<int>() + 1;
    } else {
      slot["fail"] = slot["fail"].get<int>() + 1;
      ++failures;
    }
  }
  json out;
  out["total"] = reports.size();
  out["failures"] = failures;
  out["statements"] = std::move(per);
  return out.dump(2) + "\n";
}

int count_failures(const std::vector<CheckReport>& reports) {
  int failures = 0;
  for (const auto& r : reports) {
    if (!r.pass) ++failures;
  }
  return failures;
}

}  // namespace qehc
