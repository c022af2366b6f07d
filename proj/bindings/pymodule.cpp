#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qehc/io.hpp"
#include "qehc/suite.hpp"

namespace py = pybind11;
using namespace qehc;

namespace {

QubitOperator op_from_array(const Matrix& mat) {
  int n = 0;
  while ((Eigen::Index{1} << n) < mat.rows()) ++n;
  return QubitOperator::make(n, mat);
}

py::dict report_to_dict(const CheckReport& r) {
  py::dict d;
  d["id"] = r.id;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["gap"] = r.gap;
  d["tol"] = r.tol;
  d["pass"] = r.pass;
  d["witness"] = r.witness;
  d["aux"] = r.aux;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Erasure-channel hypercontractivity and entropy-inequality numerics";

  // norms and linear algebra
  m.def("schatten_norm_normalized",
        [](const Matrix& X, double p) { return schatten_norm_normalized(X, p); },
        py::arg("x"), py::arg("p"));
  m.def("schatten_norm",
        [](const Matrix& X, double p) { return schatten_norm(X, p); },
        py::arg("x"), py::arg("p"));
  m.def("holder_conjugate", &holder_conjugate, py::arg("p"));
  m.def("eps_q_norm",
        [](const Matrix& X, double eps, double q) {
          return eps_q_norm(op_from_array(X), eps, q);
        },
        py::arg("x"), py::arg("eps"), py::arg("q"));
  m.def("dense_oracle",
        [](const Matrix& X, double eps, double q) {
          return dense_oracle(op_from_array(X), eps, q);
        },
        py::arg("x"), py::arg("eps"), py::arg("q"));
  m.def("partial_trace_normalized",
        [](const Matrix& X, const std::vector<int>& subset) {
          const QubitOperator op = op_from_array(X);
          return partial_trace_normalized(op, SubsetMask::from_members(op.n, subset)).mat;
        },
        py::arg("x"), py::arg("subset"));
  m.def("depolarize",
        [](const Matrix& X, double rho) { return depolarize(op_from_array(X), rho).mat; },
        py::arg("x"), py::arg("rho"));
  m.def("abs_op", [](const Matrix& X) { return abs_op(op_from_array(X)).mat; },
        py::arg("x"));
  m.def("random_hermitian",
        [](int n, std::uint64_t seed) { return random_hermitian(n, seed).mat; },
        py::arg("n"), py::arg("seed"));
  m.def("random_psd",
        [](int n, std::uint64_t seed) { return random_psd(n, seed).mat; },
        py::arg("n"), py::arg("seed"));

  // entropy functionals
  m.def("ent_two_point", &ent_two_point, py::arg("a"), py::arg("b"), py::arg("eps"));
  m.def("ent_q", [](const Matrix& X, double q) { return ent_q(op_from_array(X), q); },
        py::arg("x"), py::arg("q"));
  m.def("ent_multipartite",
        [](const Matrix& X, int mm, double eps, double q) {
          return ent_multipartite(op_from_array(X), mm, eps, q);
        },
        py::arg("x"), py::arg("m"), py::arg("eps"), py::arg("q"));
  m.def("dirichlet_j",
        [](const Matrix& X, int mm, double eps, double q) {
          return dirichlet_J(op_from_array(X), mm, eps, q);
        },
        py::arg("x"), py::arg("m"), py::arg("eps"), py::arg("q"));
  m.def("dirichlet_k",
        [](const Matrix& X, int mm, double eps, double q) {
          return dirichlet_K(op_from_array(X), mm, eps, q);
        },
        py::arg("x"), py::arg("m"), py::arg("eps"), py::arg("q"));
  m.def("log_sobolev_gap",
        [](const Matrix& X, int mm, double eps, double q) {
          return report_to_dict(log_sobolev_gap(op_from_array(X), mm, eps, q));
        },
        py::arg("x"), py::arg("m"), py::arg("eps"), py::arg("q"));
  m.def("g_value",
        [](const Matrix& X, double t, double p, double c) {
          return g_value(op_from_array(X), PathPoint{t, p, c});
        },
        py::arg("x"), py::arg("t"), py::arg("p"), py::arg("c"));
  m.def("g_prime_closed",
        [](const Matrix& X, double t, double p, double c) {
          return g_prime_closed(op_from_array(X), PathPoint{t, p, c});
        },
        py::arg("x"), py::arg("t"), py::arg("p"), py::arg("c"));
  m.def("g_prime_fd",
        [](const Matrix& X, double t, double p, double c, double h) {
          return g_prime_fd(op_from_array(X), PathPoint{t, p, c}, h);
        },
        py::arg("x"), py::arg("t"), py::arg("p"), py::arg("c"), py::arg("h") = 1e-5);
  m.def("ent_classical", &ent_classical, py::arg("f"), py::arg("m"), py::arg("eps"),
        py::arg("q"));

  // statement checks
  m.def("check_hc",
        [](const Matrix& X, double p, double q, double eps, int hc_case, bool enforce) {
          return report_to_dict(check_hc(op_from_array(X), p, q, eps, hc_case, enforce));
        },
        py::arg("x"), py::arg("p"), py::arg("q"), py::arg("eps"), py::arg("hc_case"),
        py::arg("enforce_constraint") = true);
  m.def("check_refined_gross",
        [](const Matrix& X, double q) {
          return report_to_dict(check_refined_gross(op_from_array(X), q));
        },
        py::arg("x"), py::arg("q"));
  m.def("check_classical_bec",
        [](const std::vector<double>& f, double p, double q, double eps) {
          return report_to_dict(check_classical_bec(f, p, q, eps));
        },
        py::arg("f"), py::arg("p"), py::arg("q"), py::arg("eps"));
  m.def("replay_check",
        [](const std::string& witness) { return report_to_dict(replay_check(witness)); },
        py::arg("witness"));

  // suite
  m.def("run_suite_json",
        [](const std::string& config_text) {
          const SuiteConfig cfg = config_from_json_text(config_text);
          const auto reports = run_suite(cfg);
          py::list out;
          for (const auto& r : reports) out.append(report_to_dict(r));
          return out;
        },
        py::arg("config_text"));
  m.def("suite_csv",
        [](const std::string& config_text) {
          return reports_to_csv(run_suite(config_from_json_text(config_text)));
        },
        py::arg("config_text"));

  // common randomness bounds
  m.def("crg_lower_bound",
        [](double eps, double gamma, double k, double c) {
          return lower_bound(CrgParams{eps, gamma, k, c}).bits;
        },
        py::arg("eps"), py::arg("gamma"), py::arg("k"), py::arg("c") = 2.0);
  m.def("crg_optimize_delta",
        [](double eps, double gamma, double k, double c) {
          const DeltaOpt o = optimize_delta(CrgParams{eps, gamma, k, c});
          return py::make_tuple(o.delta_star, o.bits);
        },
        py::arg("eps"), py::arg("gamma"), py::arg("k"), py::arg("c") = 2.0);
  m.def("crg_classical_upper_bound",
        [](double eps, double gamma, double k) {
          return classical_upper_bound(eps, gamma, k).bits;
        },
        py::arg("eps"), py::arg("gamma"), py::arg("k"));
  m.def("min_entropy", &min_entropy, py::arg("probs"));
  m.def("guess_zero_success",
        [](int n, double eps) { return success_probability(guess_zero_strategy(n), eps); },
        py::arg("n"), py::arg("eps"));

  // search
  m.def("maximize_ratio",
        [](int n, double p, double q, double eps, int restarts, int iterations,
           std::uint64_t seed) {
          SearchBudget b;
          b.restarts = restarts;
          b.iterations = iterations;
          b.seed = seed;
          Candidate cand = certify(maximize_ratio(n, p, q, eps, b));
          py::dict d;
          d["objective"] = cand.objective;
          d["certified"] = cand.certified;
          d["matrix"] = cand.X.mat;
          d["witness"] = candidate_to_json(cand).dump();
          return d;
        },
        py::arg("n"), py::arg("p"), py::arg("q"), py::arg("eps"),
        py::arg("restarts") = 20, py::arg("iterations") = 500, py::arg("seed") = 0);
}
