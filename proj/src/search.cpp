#include "qehc/search.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "qehc/rng.hpp"

namespace qehc {

namespace {

constexpr double kViolationThreshold = 1e-7;
constexpr double kRouteAgreement = 0.1;  // closed vs fd, relative

void check_budget(const SearchBudget& b) {
  if (b.restarts < 1 || b.iterations < 1 || !(b.step_init > 0.0) ||
      !(b.step_decay > 0.0 && b.step_decay <= 1.0)) {
    throw std::invalid_argument("search: budget fields must be positive");
  }
}

Matrix gaussian(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix A(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      A(i, j) = Complex(normal(gen), normal(gen)) / std::sqrt(2.0);
    }
  }
  return A;
}

QubitOperator psd_from(int n, const Matrix& A) {
  Matrix X = A.adjoint() * A;
  X = (X + X.adjoint()) / 2.0;
  return QubitOperator{n, std::move(X)};
}

// Generic coordinate-probe ascent over A with X = A†A.
template <typename Objective>
Matrix ascend(int dim, const Objective& obj, const SearchBudget& budget,
              std::uint64_t restart_seed, double* best_value) {
  std::mt19937_64 gen(restart_seed);
  Matrix A = gaussian(dim, gen);
  double f = obj(A);
  double step = budget.step_init;
  const int coords = 2 * dim * dim;
  for (int it = 0; it < budget.iterations; ++it) {
    const int coord = it % coords;
    const int entry = coord / 2;
    const int i = entry / dim;
    const int j = entry % dim;
    const Complex delta = (coord % 2 == 0) ? Complex(step, 0.0) : Complex(0.0, step);

    Matrix probe = A;
    probe(i, j) += delta;
    const double fp = obj(probe);
    probe(i, j) -= 2.0 * delta;
    const double fm = obj(probe);
    if (fp >= fm && fp > f) {
      A(i, j) += delta;
      f = fp;
    } else if (fm > f) {
      A(i, j) -= delta;
      f = fm;
    }
    step *= budget.step_decay;
  }
  *best_value = f;
  return A;
}

double ratio_value(const QubitOperator& X, double p, double q, double eps) {
  const double denom = schatten_norm_normalized(X.mat, p);
  if (!(denom > 0.0)) return -std::numeric_limits<double>::infinity();
  return eps_q_norm(X, eps, q) / denom;
}

}  // namespace

Candidate maximize_ratio(int n, double p, double q, double eps,
                         const SearchBudget& budget) {
  check_budget(budget);
  if (n < 0 || n > kDefaultQubitCap) {
    throw std::invalid_argument("maximize_ratio: n out of range");
  }
  if (!(p >= 1.0) || !(q >= 1.0) || !(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("maximize_ratio: parameters out of range");
  }
  const int dim = 1 << n;

  const auto objective = [&](const Matrix& A) {
    const QubitOperator X = psd_from(n, A);
    if (X.mat.norm() < 1e-12) return -std::numeric_limits<double>::infinity();
    const double r = ratio_value(X, p, q, eps);
    return r > 0.0 ? std::log(r) : -std::numeric_limits<double>::infinity();
  };

  Matrix best_A;
  double best_f = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < budget.restarts; ++r) {
    double f = 0.0;
    Matrix A = ascend(dim, objective, budget, mix_seed(budget.seed, "ratio", r), &f);
    if (f > best_f) {
      best_f = f;
      best_A = A;
    }
  }

  QubitOperator X = psd_from(n, best_A);
  // Scale so the denominator norm is 1; the objective is homogeneous.
  X.mat /= schatten_norm_normalized(X.mat, p);

  // Rank-one lower-bound oracle; keeps the eps = 0, q > p report honest.
  Matrix spike = Matrix::Zero(dim, dim);
  spike(0, 0) = 1.0;
  QubitOperator spike_op{n, spike};
  spike_op.mat /= schatten_norm_normalized(spike_op.mat, p);

  const double ratio_best = ratio_value(X, p, q, eps);
  const double ratio_spike = ratio_value(spike_op, p, q, eps);
  Candidate cand;
  cand.kind = "ratio";
  if (ratio_spike > ratio_best) {
    cand.X = std::move(spike_op);
    cand.objective = ratio_spike;
  } else {
    cand.X = std::move(X);
    cand.objective = ratio_best;
  }
  cand.p = p;
  cand.q = q;
  cand.eps = eps;
  cand.c = std::numeric_limits<double>::quiet_NaN();
  cand.t = std::numeric_limits<double>::quiet_NaN();
  cand.diagnostics["restarts"] = budget.restarts;
  cand.diagnostics["iterations"] = budget.iterations;
  return cand;
}

std::vector<Candidate> scan_monotonicity(int n, double p, double c, double q_override,
                                         const std::vector<double>& t_grid,
                                         const SearchBudget& budget) {
  check_budget(budget);
  if (n < 0 || n > kDefaultQubitCap) {
    throw std::invalid_argument("scan_monotonicity: n out of range");
  }
  if (!(p > 1.0) || !(c >= 1.0)) {
    throw std::invalid_argument("scan_monotonicity: requires p > 1 and c >= 1");
  }
  std::vector<double> ts;
  if (q_override > 1.0) {
    if (!(q_override > p)) {
      throw std::invalid_argument("scan_monotonicity: q_override must exceed p");
    }
    ts.push_back(c * std::log((q_override - 1.0) / (p - 1.0)));
  } else {
    ts = t_grid;
  }
  const int dim = 1 << n;

  std::vector<Candidate> found;
  for (std::size_t ti = 0; ti < ts.size(); ++ti) {
    const double t = ts[ti];
    if (!(t >= 0.0)) {
      throw std::invalid_argument("scan_monotonicity: t must be >= 0");
    }
    const PathPoint pt{t, p, c};
    const auto objective = [&](const Matrix& A) {
      const QubitOperator X = psd_from(n, A);
      if (X.mat.norm() < 1e-12) return -std::numeric_limits<double>::infinity();
      return g_prime_closed(X, pt);
    };

    Matrix best_A;
    double best_f = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < budget.restarts; ++r) {
      double f = 0.0;
      Matrix A =
          ascend(dim, objective, budget, mix_seed(budget.seed, "monotone", ti * 1000 + r), &f);
      if (f > best_f) {
        best_f = f;
        best_A = A;
      }
    }

    QubitOperator X = psd_from(n, best_A);
    const double scale = schatten_norm_normalized(X.mat, 2.0);
    if (scale > 0.0) X.mat /= scale;
    const double closed = g_prime_closed(X, pt);
    if (!(closed > kViolationThreshold)) continue;
    const double fd = g_prime_fd(X, pt);
    if (!(fd > kViolationThreshold)) continue;
    if (std::abs(closed - fd) > kRouteAgreement * std::max(std::abs(closed), std::abs(fd))) {
      continue;
    }
    Candidate cand;
    cand.kind = "monotonicity";
    cand.X = std::move(X);
    cand.p = p;
    cand.c = c;
    cand.t = t;
    cand.q = pt.q();
    cand.eps = pt.eps();
    cand.objective = closed;
    cand.derivative_fd = fd;
    found.push_back(std::move(cand));
  }
  return found;
}

Candidate certify(const Candidate& cand) {
  Candidate out = cand;
  out.certified = false;
  if (cand.kind == "ratio") {
    double replay;
    {
      ResidualTolGuard tight(1e-12);
      replay = ratio_value(cand.X, cand.p, cand.q, cand.eps);
    }
    const double delta = std::abs(replay - cand.objective);
    out.diagnostics["replay_value"] = replay;
    out.diagnostics["replay_delta"] = delta;
    out.certified = delta <= 1e-10 * std::max(1.0, std::abs(cand.objective));
    return out;
  }
  if (cand.kind == "monotonicity") {
    const PathPoint pt{cand.t, cand.p, cand.c};
    double closed;
    {
      ResidualTolGuard tight(1e-12);
      closed = g_prime_closed(cand.X, pt);
    }
    const double f4 = g_prime_fd(cand.X, pt, 1e-4);
    const double f5 = g_prime_fd(cand.X, pt, 1e-5);
    const double f6 = g_prime_fd(cand.X, pt, 1e-6);
    const double r45 = (100.0 * f5 - f4) / 99.0;
    const double r56 = (100.0 * f6 - f5) / 99.0;
    const double replay_delta = std::abs(closed - cand.objective);
    out.diagnostics["closed_replay"] = closed;
    out.diagnostics["replay_delta"] = replay_delta;
    out.diagnostics["fd_h4"] = f4;
    out.diagnostics["fd_h5"] = f5;
    out.diagnostics["fd_h6"] = f6;
    out.diagnostics["richardson_45"] = r45;
    out.diagnostics["richardson_56"] = r56;

    const bool replay_ok = replay_delta <= 1e-10 * std::max(1.0, std::abs(cand.objective));
    const bool refine_ok = std::abs(r45 - r56) <= std::max(1e-7, 0.05 * std::abs(r56));
    bool route_ok = true;
    if (std::abs(closed) > kViolationThreshold || std::abs(r56) > kViolationThreshold) {
      route_ok = (closed > 0) == (r56 > 0) &&
                 std::abs(closed - r56) <=
                     kRouteAgreement * std::max(std::abs(closed), std::abs(r56));
    }
    out.certified = replay_ok && refine_ok && route_ok;
    return out;
  }
  throw std::invalid_argument("certify: unknown candidate kind '" + cand.kind + "'");
}

}  // namespace qehc
