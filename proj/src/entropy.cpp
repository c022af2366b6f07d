#include "qehc/entropy.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qehc/io.hpp"

namespace qehc {

namespace {

constexpr double kZeroFloor = 1e-300;  // below this an eigenvalue counts as 0

// PSD eigenvalues with the usual clamp; rejects genuinely negative spectra.
RealVector psd_eigenvalues(const Matrix& X, const char* who) {
  Spectrum S = hermitian_eig(X);
  const double lmax = S.eigenvalues.size() ? S.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  const double clip = 1e-12 * lmax;
  RealVector lambda = S.eigenvalues;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -clip) {
      std::ostringstream msg;
      msg << who << ": eigenvalue " << lambda(i) << " makes the input non-PSD";
      throw std::invalid_argument(msg.str());
    }
    if (lambda(i) < kZeroFloor) lambda(i) = 0.0;
  }
  return lambda;
}

double phi(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// mean of lambda^q over the spectrum: tau[X^q]
double mean_pow(const RealVector& lambda, double q) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > 0.0) acc += std::pow(lambda(i), q);
  }
  return acc / static_cast<double>(lambda.size());
}

// mean of lambda^q ln(lambda^q): tau[X^q ln X^q]
double mean_pow_log(const RealVector& lambda, double q) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > 0.0) acc += std::pow(lambda(i), q) * q * std::log(lambda(i));
  }
  return acc / static_cast<double>(lambda.size());
}

void check_ent_args(const QubitOperator& X, int m, double eps, double q, const char* who) {
  if (m < 0 || m > X.n) {
    std::ostringstream msg;
    msg << who << ": m = " << m << " must lie in [0, n = " << X.n << "]";
    throw std::invalid_argument(msg.str());
  }
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument(std::string(who) + ": eps must be in [0, 1]");
  }
  if (!(q >= 1.0) || std::isinf(q)) {
    throw std::invalid_argument(std::string(who) + ": q must be a finite real >= 1");
  }
}

double pattern_weight(int m, double eps, std::uint32_t s) {
  const int k = std::popcount(s);
  return std::pow(1.0 - eps, m - k) * std::pow(eps, k);
}

}  // namespace

double ent_two_point(double a, double b, double eps) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("ent_two_point: a and b must be positive");
  }
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("ent_two_point: eps must be in [0, 1]");
  }
  const double mix = (1.0 - eps) * a + eps * b;
  return (1.0 - eps) * a * std::log(a) + eps * b * std::log(b) - phi(mix);
}

double ent_q(const QubitOperator& X, double q) {
  if (!(q >= 1.0) || std::isinf(q)) {
    throw std::invalid_argument("ent_q: q must be a finite real >= 1");
  }
  const RealVector lambda = psd_eigenvalues(X.mat, "ent_q");
  return mean_pow_log(lambda, q) - phi(mean_pow(lambda, q));
}

double ent_multipartite(const QubitOperator& X, int m, double eps, double q) {
  check_ent_args(X, m, eps, q, "ent_multipartite");
  double first = 0.0;
  double mixed = 0.0;
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    const double w = pattern_weight(m, eps, s);
    if (w == 0.0) continue;
    const RealVector lambda =
        psd_eigenvalues(partial_trace_normalized(X, s).mat, "ent_multipartite");
    first += w * mean_pow_log(lambda, q);
    mixed += w * mean_pow(lambda, q);
  }
  return first - phi(mixed);
}

namespace {

// tau[X_S^q] for every S ⊆ [m], PSD-validated.
std::vector<double> traced_moments(const QubitOperator& X, int m, double q,
                                   const char* who) {
  std::vector<double> h(std::size_t{1} << m);
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    h[s] = mean_pow(psd_eigenvalues(partial_trace_normalized(X, s).mat, who), q);
  }
  return h;
}

}  // namespace

DirichletDetail dirichlet_J_detail(const QubitOperator& X, int m, double eps, double q) {
  check_ent_args(X, m, eps, q, "dirichlet_J");
  const std::vector<double> h = traced_moments(X, m, q, "dirichlet_J");
  DirichletDetail out{0.0, 0.0};
  bool first_term = true;
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    const double w = pattern_weight(m, eps, s);
    for (int k = 1; k <= m; ++k) {
      if ((s >> (k - 1)) & 1u) continue;
      const double term = h[s] - h[s | (1u << (k - 1))];
      if (first_term || term < out.min_term) out.min_term = term;
      first_term = false;
      out.value += w * term;
    }
  }
  return out;
}

DirichletDetail dirichlet_K_detail(const QubitOperator& X, int m, double eps, double q) {
  check_ent_args(X, m, eps, q, "dirichlet_K");
  const int n = X.n;
  DirichletDetail out{0.0, 0.0};
  bool first_term = true;
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    const double w = pattern_weight(m, eps, s);
    const QubitOperator XS = partial_trace_normalized(X, s);
    const Spectrum spectrum = hermitian_eig(XS.mat);
    const RealVector lambda = psd_eigenvalues(XS.mat, "dirichlet_K");
    const double hs = mean_pow(lambda, q);
    const Matrix half = psd_power(spectrum, q / 2.0);
    const QubitOperator halfop{XS.n, half};
    const SubsetMask mask{n, s};
    for (int k = 1; k <= n; ++k) {
      if (mask.contains(k)) continue;
      const int pos = survivor_position(mask, k);
      const Matrix traced =
          partial_trace_normalized(halfop, SubsetMask{XS.n, 1u << (pos - 1)}).mat;
      const double second = traced.squaredNorm() / static_cast<double>(traced.rows());
      const double term = hs - second;
      if (first_term || term < out.min_term) out.min_term = term;
      first_term = false;
      out.value += w * term;
    }
  }
  return out;
}

double dirichlet_J(const QubitOperator& X, int m, double eps, double q) {
  return dirichlet_J_detail(X, m, eps, q).value;
}

double dirichlet_K(const QubitOperator& X, int m, double eps, double q) {
  return dirichlet_K_detail(X, m, eps, q).value;
}

CheckReport log_sobolev_gap(const QubitOperator& X, int m, double eps, double q) {
  check_ent_args(X, m, eps, q, "log_sobolev_gap");
  if (q > 2.0) {
    throw std::invalid_argument("log_sobolev_gap: the inequality is stated for q in [1, 2]");
  }
  const double lhs = ent_multipartite(X, m, eps, q);
  const DirichletDetail J = dirichlet_J_detail(X, m, eps, q);
  const DirichletDetail K = dirichlet_K_detail(X, m, eps, q);
  const double rhs = 2.0 * J.value + 2.0 * K.value;

  nlohmann::json w;
  w["check"] = "log-sobolev-variable";
  w["m"] = m;
  w["eps"] = eps;
  w["q"] = q;
  w["matrix"] = qubit_operator_to_json(X);
  CheckReport r = make_report("log-sobolev-variable", lhs, rhs,
                              1e-8 * std::max(1.0, rhs), w.dump());
  r.aux["dirichlet_j"] = J.value;
  r.aux["dirichlet_k"] = K.value;
  r.aux["min_term_j"] = J.min_term;
  r.aux["min_term_k"] = K.min_term;
  return r;
}

namespace {

void check_nonzero(const QubitOperator& X, const char* who) {
  if (X.mat.norm() == 0.0) {
    throw std::invalid_argument(std::string(who) + ": X must be nonzero");
  }
}

}  // namespace

double g_value(const QubitOperator& X, const PathPoint& pt) {
  check_nonzero(X, "g_value");
  return std::log(eps_q_norm(X, pt.eps(), pt.q()));
}

double g_prime_closed(const QubitOperator& X, const PathPoint& pt) {
  check_nonzero(X, "g_prime_closed");
  const double q = pt.q();
  const double eps = pt.eps();
  if (!(q > 1.0)) {
    throw std::invalid_argument(
        "g_prime_closed: closed form needs q(t) > 1; use g_prime_fd instead");
  }
  const int n = X.n;
  const double norm = eps_q_norm(X, eps, q);
  const double F = std::pow(norm, q);
  const double ent = ent_multipartite(X, n, eps, q);
  const double J = dirichlet_J(X, n, eps, q);
  return (q - 1.0) / (pt.c * q * q * F) * (ent - (pt.c * q / (q - 1.0)) * J);
}

double g_prime_fd(const QubitOperator& X, const PathPoint& pt, double h) {
  check_nonzero(X, "g_prime_fd");
  if (!(h > 0.0)) {
    throw std::invalid_argument("g_prime_fd: step must be positive");
  }
  Spectrum S = hermitian_eig(X.mat);
  const double lmax = S.eigenvalues(0);
  if (!(lmax > 0.0)) {
    throw std::invalid_argument("g_prime_fd: X must have a positive part");
  }
  QubitOperator reg{X.n,
                    X.mat + 1e-8 * lmax * Matrix::Identity(X.dim(), X.dim())};
  const auto g = [&](double t) {
    PathPoint at{t, pt.p, pt.c};
    return std::log(eps_q_norm(reg, at.eps(), at.q()));
  };
  if (pt.t >= h) {
    return (g(pt.t + h) - g(pt.t - h)) / (2.0 * h);
  }
  // too close to t = 0 for a central stencil; one-sided second order
  return (-3.0 * g(pt.t) + 4.0 * g(pt.t + h) - g(pt.t + 2.0 * h)) / (2.0 * h);
}

double ent_classical(const std::vector<double>& f, int m, double eps, double q) {
  const std::size_t size = f.size();
  if (size == 0 || (size & (size - 1)) != 0) {
    throw std::invalid_argument("ent_classical: f must have length 2^n");
  }
  int n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  Matrix diag = Matrix::Zero(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    if (f[i] < 0.0) {
      throw std::invalid_argument("ent_classical: f must be entrywise nonnegative");
    }
    diag(i, i) = f[i];
  }
  return ent_multipartite(QubitOperator{n, std::move(diag)}, m, eps, q);
}

}  // namespace qehc
