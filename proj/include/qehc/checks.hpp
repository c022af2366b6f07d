#pragma once

#include <random>

#include "qehc/entropy.hpp"
#include "qehc/report.hpp"

namespace qehc {

/// Erasure hypercontractivity ‖X‖_{eps,q} <= ‖X‖_p. hc_case 1 requires
/// c = 1 with 1 <= p <= 2 <= q, hc_case 2 requires c = 2 with
/// 1 <= p <= q <= 2; both need 1 - eps <= ((p-1)/(q-1))^c, which is checked,
/// not assumed. Passing enforce_constraint = false evaluates the inequality
/// anyway (used to demonstrate that violated instances report fail).
CheckReport check_hc(const QubitOperator& X, double p, double q, double eps,
                     int hc_case, bool enforce_constraint = true);

/// tau[X^q] - tau[(tau_n[X^{q/2}])^2] <= (tau[X^q] - tau[(tau_n X)^q])/(q-1)
/// for PSD X and q in (1,2]; the partial trace acts on the last qubit.
CheckReport check_refined_gross(const QubitOperator& X, double q);

/// ‖λ‖_q^q - ‖Dλ^{q/2}‖_2^2 <= (‖λ‖_q^q - ‖Dλ‖_q^q)/(q-1) for entrywise
/// nonnegative λ, doubly stochastic D and q in (1,2]. Un-normalized vector
/// norms throughout.
CheckReport check_ds_vector(const RealVector& lambda, const RealMatrix& D, double q);

/// Ent_eps[a,b] <= 2(1-eps)(a-b) on the domain 16b >= a >= b > 0.
CheckReport check_tech_lemma(double a, double b, double eps);

/// tau[(tau_1 A)^q] <= tau[A^q] <= 4^q tau[(tau_1 A)^q] for PSD A on >= 1
/// qubits. Both gaps are recorded in aux; the report shows the tighter side.
CheckReport check_pt_sandwich(const QubitOperator& A, double q);

/// Norm compression for a PSD block matrix M = [[X,Y],[Y†,Z]] against the
/// 2x2 matrix of block norms: ‖M‖_p >= ‖m_p‖_p for 1 <= p <= 2 and <= for
/// p >= 2. Un-normalized Schatten norms as stated.
CheckReport check_norm_compression(const Matrix& M, double p);

/// Entrywise domination of 2x2 real PSD matrices implies Schatten-norm
/// domination.
CheckReport check_entrywise_2x2(const Eigen::Matrix2d& X, const Eigen::Matrix2d& Y,
                                double p);

/// ‖X‖_{eps,q}/‖X‖_p <= max of the same ratio over the PSD split (X_L, X_R).
CheckReport check_watrous(const QubitOperator& X, double eps, double q, double p);

/// ‖Δ_rho^{⊗n}(X)‖_q <= ‖X‖_p for rho <= ((p-1)/(q-1))^{c/2}, with c chosen
/// by the (p,q) region as in the erasure cases.
CheckReport check_depolarizing_hc(const QubitOperator& X, double p, double q, double rho);

/// Classical erasure hypercontractivity by brute force over {0,1,*}^n
/// (n <= 8). Also records in aux["bridge_gap"] the distance between the
/// brute-force left side and ‖diag(f)‖_{eps,q}; the two agree to 1e-10.
CheckReport check_classical_bec(const std::vector<double>& f, double p, double q,
                                double eps);

/// Strictly positive seed matrix alternately row/column normalized; after 50
/// rounds the result is doubly stochastic far below the 1e-10 gate.
RealMatrix sinkhorn_ds(int dim, std::mt19937_64& rng, int iterations = 50);

/// Re-run a check from its witness document; lhs/rhs replay to 1e-12.
CheckReport replay_check(const std::string& witness);

}  // namespace qehc
