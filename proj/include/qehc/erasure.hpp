#pragma once

#include <cstdint>
#include <vector>

#include "qehc/qubit_ops.hpp"

namespace qehc {

/// Subset decomposition of an expanding-operator output: one block per
/// erasure pattern S, the block for S acting on the surviving n-|S| qubits.
/// blocks[bits] uses the SubsetMask bit layout (bit k-1 marks qubit k).
struct ErasedFamily {
  int n = 0;
  std::vector<Matrix> blocks;

  std::size_t pattern_count() const { return std::size_t{1} << n; }
  const Matrix& block(std::uint32_t bits) const { return blocks.at(bits); }
};

/// Bernoulli pattern weights (1-eps)^{n-|S|} eps^{|S|}; they sum to 1.
struct ErasureWeights {
  int n = 0;
  double eps = 0.0;

  double weight(std::uint32_t bits) const;
};

/// Identity family: block(S) = I_{2^{n-|S|}} for every S (the image of the
/// identity under the expanding operator, and the completeness target for
/// good-form POVMs).
ErasedFamily identity_family(int n);

/// All 2^n normalized partial traces of X: block(S) = tau_S X.
ErasedFamily expand(const QubitOperator& X, int cap = kDefaultQubitCap);

/// (eps, q)-norm via the subset form:
/// (sum_S (1-eps)^{n-|S|} eps^{|S|} ‖tau_S X‖_q^q)^{1/q}, normalized norms.
double eps_q_norm(const QubitOperator& X, double eps, double q);
double eps_q_norm(const ErasedFamily& F, double eps, double q);

/// The same quantity evaluated literally on the 3^n output space:
/// (2^{-n} Tr[Pi_eps^{⊗n} |D^{⊗n}(X)|^q])^{1/q}, with D^{⊗n} built through
/// the Pauli decomposition. Deliberately small-scale: n <= 3 only.
double dense_oracle(const QubitOperator& X, double eps, double q);

/// D^{⊗n}(X) as a dense 3^n x 3^n matrix (Pauli route, n <= 3).
/// Local embedding: per qubit the 2x2 block occupies levels {0,1} and the
/// erasure flag is level 2; qubit 1 is the most significant base-3 digit.
Matrix qecr_dense(const QubitOperator& X);

/// Pi_eps^{⊗n} · D^{⊗n}(X) (n <= 3).
Matrix apply_qec_dense(const QubitOperator& X, double eps);

/// Diagonal of Pi_eps^{⊗n}: per qubit (1-eps, 1-eps, 2*eps).
RealVector noise_diag(int n, double eps);

/// Conjugate erasure map applied to a good-form family:
/// sum_S (1-eps)^{n-|S|} eps^{|S|} · (Y_S with identity on the erased slots).
QubitOperator conjugate_qec_apply(const ErasedFamily& Y, double eps);

/// Depolarizing product channel: Pauli coefficient c_x scaled by
/// rho^{#nonidentity digits of x}.
QubitOperator depolarize(const QubitOperator& X, double rho);

/// Dense good-form embedding of a family (n <= 4): sum_S Y_S ⊗ Err^{⊗S}.
Matrix family_to_dense(const ErasedFamily& Y);

/// Pinch a dense 3^n operator onto good form by keeping only entries whose
/// row and column share the same erasure pattern (n <= 4).
ErasedFamily pinch_to_family(int n, const Matrix& dense);

}  // namespace qehc
