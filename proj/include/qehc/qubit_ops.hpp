#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qehc/linalg.hpp"

namespace qehc {

inline constexpr int kDefaultQubitCap = 6;

/// Dense operator on n qubits. Basis convention throughout the library:
/// qubit 1 is the MOST significant bit of the row/column index, so for a
/// trailing subset the partial trace is a plain block average.
struct QubitOperator {
  int n = 0;
  Matrix mat = Matrix::Identity(1, 1);

  int dim() const { return 1 << n; }
  static QubitOperator make(int n, Matrix m);
};

/// Subset of {1..n}; bit k-1 of `bits` marks qubit k.
struct SubsetMask {
  int n = 0;
  std::uint32_t bits = 0;

  int count() const;
  bool contains(int qubit) const { return (bits >> (qubit - 1)) & 1u; }
  std::vector<int> members() const;
  static SubsetMask from_members(int n, const std::vector<int>& members);
};

/// Position of qubit k among the survivors of tracing out S (1-based).
/// k must not be a member of S.
int survivor_position(const SubsetMask& S, int k);

/// tau_S[X] = 2^{-|S|} Tr_S[X]. Surviving qubits are renumbered 1..n-|S|
/// preserving their relative order; the normalized trace is preserved.
QubitOperator partial_trace_normalized(const QubitOperator& X, const SubsetMask& S);
QubitOperator partial_trace_normalized(const QubitOperator& X, std::uint32_t subset_bits);

/// Normalized trace Tr[X]/2^n.
Complex normalized_trace(const QubitOperator& X);

/// Entry sigma_a(i, j) of the Pauli matrix a in {0,1,2,3}.
Complex pauli_entry(int a, int i, int j);

/// Coefficients c_x with X = sum_x c_x sigma_{x_1} ⊗ ... ⊗ sigma_{x_n} and
/// c_x = tau[(⊗ sigma_{x_i}) X]. Index layout: x = sum_k x_k 4^{n-k}
/// (qubit 1 is the most significant base-4 digit).
std::vector<Complex> pauli_decompose(const QubitOperator& X);
QubitOperator pauli_reconstruct(int n, const std::vector<Complex>& coeffs);

/// |X| = sqrt(X†X).
QubitOperator abs_op(const QubitOperator& X);

/// Seeded Gaussian samplers, deterministic per seed. n above the cap is
/// rejected to keep dense work desk-scale.
QubitOperator random_hermitian(int n, std::uint64_t seed, int cap = kDefaultQubitCap);
QubitOperator random_psd(int n, std::uint64_t seed, int cap = kDefaultQubitCap);

/// PSD pair (X_L, X_R) from the SVD X = sum_i l_i |u_i><v_i|:
/// X_L = sum l_i |u_i><u_i|, X_R = sum l_i |v_i><v_i|. Both share X's
/// singular values, hence all its Schatten norms.
std::pair<QubitOperator, QubitOperator> watrous_split(const QubitOperator& X);

/// Embed an operator on the non-members of S back to n qubits with identity
/// factors on the members of S.
QubitOperator embed_with_identity(const Matrix& block, const SubsetMask& S);

}  // namespace qehc
