#pragma once

#include "qehc/erasure.hpp"
#include "qehc/report.hpp"

namespace qehc {

/// Point on the coupled proof path: (p-1)/(q-1) = e^{-t/c} and
/// eps = 1 - e^{-t}, so q(0) = p and eps(0) = 0.
struct PathPoint {
  double t = 0.0;
  double p = 1.5;
  double c = 2.0;

  double q() const { return 1.0 + (p - 1.0) * std::exp(t / c); }
  double eps() const { return 1.0 - std::exp(-t); }
};

/// Two-point relative entropy of the pair (a, b) under weights (1-eps, eps).
/// Requires a, b > 0; always nonnegative.
double ent_two_point(double a, double b, double eps);

/// One-partite relative entropy tau[X^q ln X^q] - tau[X^q] ln tau[X^q] for
/// PSD X, computed in the eigenbasis with 0·ln 0 = 0.
double ent_q(const QubitOperator& X, double q);

/// Bernoulli multipartite relative entropy over the erasure patterns of the
/// first m qubits: weighted relative entropy of {(tau_T X)^q : T ⊆ [m]} with
/// weights (1-eps)^{m-|T|} eps^{|T|}. Reduces to ent_q at m = 0.
double ent_multipartite(const QubitOperator& X, int m, double eps, double q);

struct DirichletDetail {
  double value = 0.0;
  double min_term = 0.0;  // smallest single summand; negativity flags trouble
};

/// J(X,m) = sum_{S⊆[m]} w(S) sum_{k in [m]\S} (tau[X_S^q] - tau[X_{S∪k}^q]).
double dirichlet_J(const QubitOperator& X, int m, double eps, double q);
DirichletDetail dirichlet_J_detail(const QubitOperator& X, int m, double eps, double q);

/// K(X,m) = sum_{S⊆[m]} w(S) sum_{k in [n]\S}
///          (tau[X_S^q] - tau[(tau_k[X_S^{q/2}])^2]).
double dirichlet_K(const QubitOperator& X, int m, double eps, double q);
DirichletDetail dirichlet_K_detail(const QubitOperator& X, int m, double eps, double q);

/// Check Ent_{eps,[m],q}[X] <= 2J + 2K (q in [1,2]). lhs = entropy,
/// rhs = 2J + 2K, tol = 1e-8·max(1, rhs). aux carries the per-summand minima
/// of J and K so their implied nonnegativity is flagged separately.
CheckReport log_sobolev_gap(const QubitOperator& X, int m, double eps, double q);

/// g(t) = ln ‖X‖_{eps(t), q(t)}. Rejects X = 0.
double g_value(const QubitOperator& X, const PathPoint& pt);

/// Closed-form derivative of g along the coupled path (PSD X, q(t) > 1):
/// g'(t) = (q-1)/(c q^2 ‖X‖^q) · [Ent_{eps,[n],q}[X] - (cq/(q-1))·J(X, n)].
double g_prime_closed(const QubitOperator& X, const PathPoint& pt);

/// Central-difference oracle for g'. Regularizes with X + delta·I,
/// delta = 1e-8·lambda_max, to keep |X| kinks away from the stencil.
double g_prime_fd(const QubitOperator& X, const PathPoint& pt, double h = 1e-5);

/// Classical functional: embeds f >= 0 on {0,1}^n as a diagonal operator and
/// delegates to ent_multipartite.
double ent_classical(const std::vector<double>& f, int m, double eps, double q);

}  // namespace qehc
