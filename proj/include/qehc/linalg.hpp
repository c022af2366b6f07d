#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qehc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are sorted in
/// descending order and the columns of `eigenvectors` are the matching
/// unit eigenvectors, so X = U diag(eigenvalues) U^dagger.
struct Spectrum {
  RealVector eigenvalues;
  Matrix eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

/// Residual contract applied to every decomposition when the caller does not
/// pass one explicitly. 1e-10·‖X‖_F by default; certification replays tighten
/// it to 1e-12 through a scoped guard.
double default_residual_tol();
struct ResidualTolGuard {
  explicit ResidualTolGuard(double tol);
  ~ResidualTolGuard();
  ResidualTolGuard(const ResidualTolGuard&) = delete;
  ResidualTolGuard& operator=(const ResidualTolGuard&) = delete;

 private:
  double previous_;
};

/// Decompose a Hermitian matrix. Rejects non-square input and matrices whose
/// asymmetry ‖X - X†‖_F exceeds 1e-10·‖X‖_F. The returned factors satisfy
/// ‖X - UΛU†‖_F <= residual_tol·‖X‖_F (verified, not assumed);
/// residual_tol <= 0 selects the current default.
Spectrum hermitian_eig(const Matrix& X, double residual_tol = 0.0);

/// Kronecker product. Rejects results with more than 2^28 entries.
Matrix kron(const Matrix& A, const Matrix& B);

/// U λ^q U† for a PSD spectrum, q >= 0. Eigenvalues in [-tau_clip, 0) with
/// tau_clip = 1e-12·max|λ| are clamped to zero; anything below is rejected.
/// 0^0 is 0 here (continuity convention used by the entropy/norm chains).
Matrix psd_power(const Spectrum& S, double q);
Matrix psd_power(const Matrix& X, double q, double residual_tol = 0.0);

/// Singular values of X (descending), computed through the eigenvalues of
/// X†X with the PSD clamp applied before the square root.
RealVector singular_values(const Matrix& X, double residual_tol = 0.0);

/// Normalized Schatten norm (tr|X|^p / dim)^{1/p}, p >= 1. p = inf gives the
/// largest singular value.
double schatten_norm_normalized(const Matrix& X, double p,
                                double residual_tol = 0.0);

/// Un-normalized Schatten norm (Tr|X|^p)^{1/p}.
double schatten_norm(const Matrix& X, double p, double residual_tol = 0.0);

/// p* with 1/p + 1/p* = 1; maps 1 to inf and inf to 1. Rejects p < 1.
double holder_conjugate(double p);

/// Majorization test: equal sums (relative 1e-10) and every prefix sum of the
/// sorted-descending x dominates the corresponding prefix of y to -1e-10.
bool majorizes(const RealVector& x, const RealVector& y);
bool majorizes(const std::vector<double>& x, const std::vector<double>& y);

/// The doubly stochastic matrix D_ij = |U_ij|^2 realizing diag(X) = D·λ(X).
RealMatrix schur_horn_ds(const Spectrum& S);

/// Entries >= -tol and all row/column sums within tol of 1. A complex input
/// with imaginary parts beyond tol is not doubly stochastic.
bool is_doubly_stochastic(const RealMatrix& D, double tol);
bool is_doubly_stochastic(const Matrix& D, double tol);

}  // namespace qehc
