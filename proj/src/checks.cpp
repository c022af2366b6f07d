#include "qehc/checks.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qehc/io.hpp"

namespace qehc {

using nlohmann::json;

namespace {

double ineq_tol(double rhs) { return 1e-8 * std::max(1.0, rhs); }

// 1 - eps <= ((p-1)/(q-1))^c with the p = q and p = 1 edges resolved by
// continuity; slack 1e-12 so boundary grids are admissible.
bool noise_admissible(double p, double q, double eps, double c) {
  if (q == p) return true;
  if (q < p) return true;  // ratio above 1, any eps
  if (p == 1.0) return 1.0 - eps <= 1e-12;
  const double ratio = (p - 1.0) / (q - 1.0);
  return 1.0 - eps <= std::pow(ratio, c) + 1e-12;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

RealVector psd_spectrum_or_throw(const Matrix& M, const char* who) {
  Spectrum S = hermitian_eig(M);
  const double lmax = S.eigenvalues.cwiseAbs().maxCoeff();
  if (S.eigenvalues.minCoeff() < -1e-12 * std::max(lmax, 1e-300)) {
    throw std::invalid_argument(std::string(who) + ": input is not PSD");
  }
  return S.eigenvalues.cwiseMax(0.0);
}

double mean_pow(const RealVector& lambda, double q) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > 0.0) acc += std::pow(lambda(i), q);
  }
  return acc / static_cast<double>(lambda.size());
}

}  // namespace

CheckReport check_hc(const QubitOperator& X, double p, double q, double eps,
                     int hc_case, bool enforce_constraint) {
  require(hc_case == 1 || hc_case == 2, "check_hc: case must be 1 or 2");
  require(eps >= 0.0 && eps <= 1.0, "check_hc: violated 0 <= eps <= 1");
  const double c = (hc_case == 1) ? 1.0 : 2.0;
  if (enforce_constraint) {
    require(p >= 1.0, "check_hc: violated p >= 1");
    require(p <= 2.0, "check_hc: violated p <= 2");
    if (hc_case == 1) {
      require(q >= 2.0, "check_hc: case 1 violated q >= 2");
    } else {
      require(q >= p, "check_hc: case 2 violated q >= p");
      require(q <= 2.0, "check_hc: case 2 violated q <= 2");
    }
    require(noise_admissible(p, q, eps, c),
            "check_hc: violated 1 - eps <= ((p-1)/(q-1))^c");
  }

  const double lhs = eps_q_norm(X, eps, q);
  const double rhs = schatten_norm_normalized(X.mat, p);

  json w;
  w["check"] = (hc_case == 1) ? "hc-qec-case1" : "hc-qec-case2";
  w["p"] = p;
  w["q"] = q;
  w["eps"] = eps;
  w["case"] = hc_case;
  w["enforce"] = enforce_constraint;
  w["matrix"] = qubit_operator_to_json(X);
  return make_report(w["check"].get<std::string>(), lhs, rhs, ineq_tol(rhs), w.dump());
}

CheckReport check_refined_gross(const QubitOperator& X, double q) {
  require(q > 1.0 && q <= 2.0, "check_refined_gross: q must lie in (1, 2]");
  require(X.n >= 1, "check_refined_gross: needs at least one qubit");
  const Spectrum spectrum = hermitian_eig(X.mat);
  const RealVector lambda = psd_spectrum_or_throw(X.mat, "check_refined_gross");
  const SubsetMask last{X.n, 1u << (X.n - 1)};

  const double hq = mean_pow(lambda, q);
  const Matrix half = psd_power(spectrum, q / 2.0);
  const Matrix traced_half = partial_trace_normalized(QubitOperator{X.n, half}, last).mat;
  const double second = traced_half.squaredNorm() / static_cast<double>(traced_half.rows());
  const QubitOperator traced = partial_trace_normalized(X, last);
  const double hq_traced =
      mean_pow(psd_spectrum_or_throw(traced.mat, "check_refined_gross"), q);

  const double lhs = hq - second;
  const double rhs = (hq - hq_traced) / (q - 1.0);

  json w;
  w["check"] = "gross-refined";
  w["q"] = q;
  w["matrix"] = qubit_operator_to_json(X);
  return make_report("gross-refined", lhs, rhs, ineq_tol(rhs), w.dump());
}

CheckReport check_ds_vector(const RealVector& lambda, const RealMatrix& D, double q) {
  require(q > 1.0 && q <= 2.0, "check_ds_vector: q must lie in (1, 2]");
  require(lambda.size() == D.rows() && D.rows() == D.cols(),
          "check_ds_vector: dimension mismatch");
  require(lambda.minCoeff() >= 0.0, "check_ds_vector: lambda must be nonnegative");
  require(is_doubly_stochastic(D, 1e-10),
          "check_ds_vector: matrix is not doubly stochastic at 1e-10");

  const auto vec_q = [&](const RealVector& v, double power) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v(i)), power);
    return acc;
  };
  RealVector half = lambda;
  for (Eigen::Index i = 0; i < half.size(); ++i) half(i) = std::pow(lambda(i), q / 2.0);

  const double lq = vec_q(lambda, q);
  const double lhs = lq - (D * half).squaredNorm();
  const double rhs = (lq - vec_q(D * lambda, q)) / (q - 1.0);

  json w;
  w["check"] = "ds-vector-power";
  w["q"] = q;
  w["lambda"] = std::vector<double>(lambda.data(), lambda.data() + lambda.size());
  Matrix Dc = D.cast<Complex>();
  w["ds"] = matrix_to_json(Dc);
  return make_report("ds-vector-power", lhs, rhs, ineq_tol(rhs), w.dump());
}

CheckReport check_tech_lemma(double a, double b, double eps) {
  require(b > 0.0, "check_tech_lemma: violated b > 0");
  require(a >= b, "check_tech_lemma: violated a >= b");
  require(16.0 * b >= a, "check_tech_lemma: violated 16b >= a");
  const double lhs = ent_two_point(a, b, eps);
  const double rhs = 2.0 * (1.0 - eps) * (a - b);

  json w;
  w["check"] = "two-point-bound";
  w["a"] = a;
  w["b"] = b;
  w["eps"] = eps;
  return make_report("two-point-bound", lhs, rhs, ineq_tol(rhs), w.dump());
}

CheckReport check_pt_sandwich(const QubitOperator& A, double q) {
  require(q >= 1.0, "check_pt_sandwich: q must be >= 1");
  require(A.n >= 1, "check_pt_sandwich: needs at least one qubit");
  const RealVector lambda = psd_spectrum_or_throw(A.mat, "check_pt_sandwich");
  const QubitOperator traced = partial_trace_normalized(A, SubsetMask{A.n, 1u});
  const RealVector tl = psd_spectrum_or_throw(traced.mat, "check_pt_sandwich");

  const double mid = mean_pow(lambda, q);
  const double lower = mean_pow(tl, q);
  const double upper = std::pow(4.0, q) * lower;
  const double gap_lower = mid - lower;
  const double gap_upper = upper - mid;

  json w;
  w["check"] = "pt-sandwich";
  w["q"] = q;
  w["matrix"] = qubit_operator_to_json(A);

  CheckReport r = (gap_lower <= gap_upper)
                      ? make_report("pt-sandwich", lower, mid, ineq_tol(mid), w.dump())
                      : make_report("pt-sandwich", mid, upper, ineq_tol(upper), w.dump());
  r.aux["gap_lower"] = gap_lower;
  r.aux["gap_upper"] = gap_upper;
  r.pass = r.pass && std::min(gap_lower, gap_upper) >= -r.tol;
  return r;
}

CheckReport check_norm_compression(const Matrix& M, double p) {
  require(p >= 1.0, "check_norm_compression: p must be >= 1");
  require(M.rows() == M.cols(), "check_norm_compression: matrix must be square");
  require(M.rows() % 2 == 0 && M.rows() >= 2,
          "check_norm_compression: dimension must be even");
  psd_spectrum_or_throw(M, "check_norm_compression");

  const Eigen::Index m = M.rows() / 2;
  const Matrix Xb = M.topLeftCorner(m, m);
  const Matrix Yb = M.topRightCorner(m, m);
  const Matrix Zb = M.bottomRightCorner(m, m);
  Matrix mp(2, 2);
  mp(0, 0) = schatten_norm(Xb, p);
  mp(0, 1) = mp(1, 0) = schatten_norm(Yb, p);
  mp(1, 1) = schatten_norm(Zb, p);

  const double norm_M = schatten_norm(M, p);
  const double norm_mp = schatten_norm(mp, p);

  json w;
  w["check"] = "norm-compression";
  w["p"] = p;
  w["matrix"] = matrix_to_json(M);

  // compressed side is the lower bound for p <= 2 and the upper bound beyond
  CheckReport r = (p <= 2.0)
                      ? make_report("norm-compression", norm_mp, norm_M,
                                    ineq_tol(norm_M), w.dump())
                      : make_report("norm-compression", norm_M, norm_mp,
                                    ineq_tol(norm_mp), w.dump());
  const Spectrum mp_spectrum = hermitian_eig(mp);
  r.aux["compressed_min_eig"] = mp_spectrum.eigenvalues.minCoeff();
  return r;
}

CheckReport check_entrywise_2x2(const Eigen::Matrix2d& X, const Eigen::Matrix2d& Y,
                                double p) {
  require(p >= 1.0, "check_entrywise_2x2: p must be >= 1");
  require(std::abs(X(0, 1) - X(1, 0)) <= 1e-12 && std::abs(Y(0, 1) - Y(1, 0)) <= 1e-12,
          "check_entrywise_2x2: inputs must be symmetric");
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      require(X(i, j) <= Y(i, j) + 1e-12,
              "check_entrywise_2x2: violated entrywise X <= Y");
    }
  }
  psd_spectrum_or_throw(X.cast<Complex>(), "check_entrywise_2x2");
  psd_spectrum_or_throw(Y.cast<Complex>(), "check_entrywise_2x2");

  const double lhs = schatten_norm(X.cast<Complex>(), p);
  const double rhs = schatten_norm(Y.cast<Complex>(), p);

  json w;
  w["check"] = "entrywise-2x2";
  w["p"] = p;
  w["x"] = matrix_to_json(X.cast<Complex>());
  w["y"] = matrix_to_json(Y.cast<Complex>());
  return make_report("entrywise-2x2", lhs, rhs, ineq_tol(rhs), w.dump());
}

CheckReport check_watrous(const QubitOperator& X, double eps, double q, double p) {
  require(X.mat.norm() > 0.0, "check_watrous: X must be nonzero");
  require(p >= 1.0 && q >= 1.0, "check_watrous: norms need p, q >= 1");
  require(eps >= 0.0 && eps <= 1.0, "check_watrous: eps must be in [0, 1]");

  const auto ratio = [&](const QubitOperator& A) {
    return eps_q_norm(A, eps, q) / schatten_norm_normalized(A.mat, p);
  };
  const auto [left, right] = watrous_split(X);
  const double lhs = ratio(X);
  const double rhs = std::max(ratio(left), ratio(right));

  json w;
  w["check"] = "watrous-reduction";
  w["p"] = p;
  w["q"] = q;
  w["eps"] = eps;
  w["matrix"] = qubit_operator_to_json(X);
  return make_report("watrous-reduction", lhs, rhs, ineq_tol(rhs), w.dump());
}

CheckReport check_depolarizing_hc(const QubitOperator& X, double p, double q, double rho) {
  require(p >= 1.0 && p <= 2.0, "check_depolarizing_hc: violated 1 <= p <= 2");
  require(q >= p, "check_depolarizing_hc: violated q >= p");
  require(rho >= 0.0 && rho <= 1.0, "check_depolarizing_hc: rho must be in [0, 1]");
  const double c = (q >= 2.0) ? 1.0 : 2.0;
  // rho plays the role of 1 - eps at half the original exponent
  require(noise_admissible(p, q, 1.0 - rho, c / 2.0),
          "check_depolarizing_hc: violated rho <= ((p-1)/(q-1))^{c/2}");

  const double lhs = schatten_norm_normalized(depolarize(X, rho).mat, q);
  const double rhs = schatten_norm_normalized(X.mat, p);

  json w;
  w["check"] = "depolarizing-hc";
  w["p"] = p;
  w["q"] = q;
  w["rho"] = rho;
  w["matrix"] = qubit_operator_to_json(X);
  return make_report("depolarizing-hc", lhs, rhs, ineq_tol(rhs), w.dump());
}

CheckReport check_classical_bec(const std::vector<double>& f, double p, double q,
                                double eps) {
  const std::size_t size = f.size();
  require(size > 0 && (size & (size - 1)) == 0, "check_classical_bec: |f| must be 2^n");
  int n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  require(n <= 8, "check_classical_bec: brute force supports n <= 8 only");
  require(p >= 1.0 && q >= 1.0, "check_classical_bec: norms need p, q >= 1");
  require(eps >= 0.0 && eps <= 1.0, "check_classical_bec: eps must be in [0, 1]");
  require(noise_admissible(p, q, eps, 1.0),
          "check_classical_bec: violated 1 - eps <= (p-1)/(q-1)");

  // enumerate receiver views y in {0,1,*}^n; digit 2 marks an erasure
  std::uint64_t views = 1;
  for (int i = 0; i < n; ++i) views *= 3;
  double acc = 0.0;
  for (std::uint64_t y = 0; y < views; ++y) {
    std::uint64_t rest = y;
    double mu = 1.0;
    std::uint32_t seen_bits = 0;
    std::uint32_t erased_mask = 0;
    for (int k = 1; k <= n; ++k) {
      const int digit = static_cast<int>(rest % 3);
      rest /= 3;
      if (digit == 2) {
        mu *= eps;
        erased_mask |= 1u << (n - k);
      } else {
        mu *= (1.0 - eps) / 2.0;
        if (digit == 1) seen_bits |= 1u << (n - k);
      }
    }
    if (mu == 0.0) continue;
    const int erased = std::popcount(erased_mask);
    double g = 0.0;
    // average f over the erased coordinates
    std::uint32_t sub = erased_mask;
    while (true) {
      g += f[seen_bits | sub];
      if (sub == 0) break;
      sub = (sub - 1) & erased_mask;
    }
    g /= static_cast<double>(1u << erased);
    acc += mu * std::pow(std::abs(g), q);
  }
  const double lhs = std::pow(acc, 1.0 / q);

  double rp = 0.0;
  for (double v : f) rp += std::pow(std::abs(v), p);
  const double rhs = std::pow(rp / static_cast<double>(size), 1.0 / p);

  Matrix diag = Matrix::Zero(size, size);
  for (std::size_t i = 0; i < size; ++i) diag(i, i) = f[i];
  const double bridge = eps_q_norm(QubitOperator{n, std::move(diag)}, eps, q);

  json w;
  w["check"] = "bec-classical";
  w["p"] = p;
  w["q"] = q;
  w["eps"] = eps;
  w["f"] = f;
  CheckReport r = make_report("bec-classical", lhs, rhs, ineq_tol(rhs), w.dump());
  r.aux["bridge_gap"] = std::abs(lhs - bridge);
  return r;
}

RealMatrix sinkhorn_ds(int dim, std::mt19937_64& rng, int iterations) {
  require(dim >= 1, "sinkhorn_ds: dimension must be >= 1");
  std::uniform_real_distribution<double> uni(0.5, 1.5);
  RealMatrix M(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) M(i, j) = uni(rng);
  }
  for (int it = 0; it < iterations; ++it) {
    for (int i = 0; i < dim; ++i) M.row(i) /= M.row(i).sum();
    for (int j = 0; j < dim; ++j) M.col(j) /= M.col(j).sum();
  }
  return M;
}

CheckReport replay_check(const std::string& witness) {
  const json w = json::parse(witness);
  const std::string id = w.at("check").get<std::string>();
  if (id == "hc-qec-case1" || id == "hc-qec-case2") {
    return check_hc(qubit_operator_from_json(w.at("matrix")), w.at("p").get<double>(),
                    w.at("q").get<double>(), w.at("eps").get<double>(),
                    w.at("case").get<int>(), w.value("enforce", true));
  }
  if (id == "log-sobolev-variable") {
    return log_sobolev_gap(qubit_operator_from_json(w.at("matrix")),
                           w.at("m").get<int>(), w.at("eps").get<double>(),
                           w.at("q").get<double>());
  }
  if (id == "gross-refined") {
    return check_refined_gross(qubit_operator_from_json(w.at("matrix")),
                               w.at("q").get<double>());
  }
  if (id == "ds-vector-power") {
    const std::vector<double> lv = w.at("lambda").get<std::vector<double>>();
    const RealVector lambda = Eigen::Map<const RealVector>(lv.data(), lv.size());
    const Matrix D = matrix_from_json(w.at("ds"));
    return check_ds_vector(lambda, D.real(), w.at("q").get<double>());
  }
  if (id == "two-point-bound") {
    return check_tech_lemma(w.at("a").get<double>(), w.at("b").get<double>(),
                            w.at("eps").get<double>());
  }
  if (id == "pt-sandwich") {
    return check_pt_sandwich(qubit_operator_from_json(w.at("matrix")),
                             w.at("q").get<double>());
  }
  if (id == "norm-compression") {
    return check_norm_compression(matrix_from_json(w.at("matrix")),
                                  w.at("p").get<double>());
  }
  if (id == "entrywise-2x2") {
    const Matrix X = matrix_from_json(w.at("x"));
    const Matrix Y = matrix_from_json(w.at("y"));
    return check_entrywise_2x2(X.real().topLeftCorner<2, 2>(),
                               Y.real().topLeftCorner<2, 2>(), w.at("p").get<double>());
  }
  if (id == "watrous-reduction") {
    return check_watrous(qubit_operator_from_json(w.at("matrix")),
                         w.at("eps").get<double>(), w.at("q").get<double>(),
                         w.at("p").get<double>());
  }
  if (id == "depolarizing-hc") {
    return check_depolarizing_hc(qubit_operator_from_json(w.at("matrix")),
                                 w.at("p").get<double>(), w.at("q").get<double>(),
                                 w.at("rho").get<double>());
  }
  if (id == "bec-classical") {
    return check_classical_bec(w.at("f").get<std::vector<double>>(),
                               w.at("p").get<double>(), w.at("q").get<double>(),
                               w.at("eps").get<double>());
  }
  throw std::invalid_argument("replay_check: unknown check id '" + id + "'");
}

}  // namespace qehc
