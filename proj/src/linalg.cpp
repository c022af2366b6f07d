#include "qehc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qehc {

namespace {

constexpr std::size_t kKronEntryCap = std::size_t{1} << 28;

double frobenius(const Matrix& X) { return X.norm(); }

thread_local double g_residual_tol = 1e-10;

}  // namespace

double default_residual_tol() { return g_residual_tol; }

ResidualTolGuard::ResidualTolGuard(double tol) : previous_(g_residual_tol) {
  g_residual_tol = tol;
}

ResidualTolGuard::~ResidualTolGuard() { g_residual_tol = previous_; }

Spectrum hermitian_eig(const Matrix& X, double residual_tol) {
  if (residual_tol <= 0.0) residual_tol = g_residual_tol;
  if (X.rows() != X.cols() || X.rows() < 1) {
    throw std::invalid_argument("hermitian_eig: matrix must be square and non-empty");
  }
  const double scale = frobenius(X);
  const double asym = (X - X.adjoint()).norm();
  if (asym > 1e-10 * scale && asym > 0.0) {
    std::ostringstream msg;
    msg << "hermitian_eig: input is not Hermitian, ‖X - X†‖_F = " << asym
        << " exceeds 1e-10·‖X‖_F = " << 1e-10 * scale;
    throw std::invalid_argument(msg.str());
  }

  // Symmetrize to remove representation-level rounding before factoring.
  Matrix H = (X + X.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(H);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  }

  const int d = static_cast<int>(X.rows());
  Spectrum S;
  S.eigenvalues = RealVector(d);
  S.eigenvectors = Matrix(d, d);
  for (int i = 0; i < d; ++i) {
    S.eigenvalues(i) = solver.eigenvalues()(d - 1 - i);
    S.eigenvectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }

  const double ortho = (S.eigenvectors.adjoint() * S.eigenvectors -
                        Matrix::Identity(d, d))
                           .norm();
  if (ortho > 1e-10 * d) {
    throw std::runtime_error("hermitian_eig: eigenvector basis lost orthonormality");
  }
  const double residual =
      (H - S.eigenvectors * S.eigenvalues.asDiagonal() * S.eigenvectors.adjoint())
          .norm();
  if (residual > residual_tol * std::max(scale, 1e-300)) {
    std::ostringstream msg;
    msg << "hermitian_eig: reconstruction residual " << residual
        << " exceeds contract " << residual_tol << "·‖X‖_F";
    throw std::runtime_error(msg.str());
  }
  return S;
}

Matrix kron(const Matrix& A, const Matrix& B) {
  const std::size_t rows = static_cast<std::size_t>(A.rows()) * B.rows();
  const std::size_t cols = static_cast<std::size_t>(A.cols()) * B.cols();
  if (rows == 0 || cols == 0 || rows > kKronEntryCap / cols) {
    throw std::invalid_argument("kron: dimension product overflows the dense cap");
  }
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return out;
}

namespace {

// Clamp a PSD spectrum in place; rejects genuinely negative eigenvalues.
RealVector clamp_psd(const RealVector& lambda, const char* who) {
  const double lmax = lambda.size() ? lambda.cwiseAbs().maxCoeff() : 0.0;
  const double clip = 1e-12 * lmax;
  RealVector out = lambda;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) < -clip) {
      std::ostringstream msg;
      msg << who << ": eigenvalue " << out(i) << " below -tau_clip = " << -clip
          << ", input is not PSD";
      throw std::invalid_argument(msg.str());
    }
    if (out(i) < 0.0) out(i) = 0.0;
  }
  return out;
}

double pow_or_zero(double x, double q) {
  if (x <= 0.0) return 0.0;  // covers the 0^0 = 0 convention
  return std::pow(x, q);
}

}  // namespace

Matrix psd_power(const Spectrum& S, double q) {
  if (!(q >= 0.0)) {
    throw std::invalid_argument("psd_power: exponent must be >= 0");
  }
  RealVector lambda = clamp_psd(S.eigenvalues, "psd_power");
  RealVector powered(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    powered(i) = pow_or_zero(lambda(i), q);
  }
  return S.eigenvectors * powered.asDiagonal() * S.eigenvectors.adjoint();
}

Matrix psd_power(const Matrix& X, double q, double residual_tol) {
  return psd_power(hermitian_eig(X, residual_tol), q);
}

RealVector singular_values(const Matrix& X, double residual_tol) {
  const Matrix gram = X.adjoint() * X;
  Spectrum S = hermitian_eig(gram, residual_tol);
  RealVector lambda = clamp_psd(S.eigenvalues, "singular_values");
  RealVector sv(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) sv(i) = std::sqrt(lambda(i));
  return sv;
}

namespace {

double schatten_from_singular(const RealVector& sv, double p, double scale) {
  if (std::isinf(p)) return sv.size() ? sv.maxCoeff() : 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += pow_or_zero(sv(i), p);
  return std::pow(acc * scale, 1.0 / p);
}

}  // namespace

double schatten_norm_normalized(const Matrix& X, double p, double residual_tol) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("schatten_norm_normalized: p must be >= 1");
  }
  RealVector sv = singular_values(X, residual_tol);
  return schatten_from_singular(sv, p, 1.0 / static_cast<double>(sv.size()));
}

double schatten_norm(const Matrix& X, double p, double residual_tol) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("schatten_norm: p must be >= 1");
  }
  return schatten_from_singular(singular_values(X, residual_tol), p, 1.0);
}

double holder_conjugate(double p) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("holder_conjugate: p must be in [1, inf]");
  }
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

bool majorizes(const RealVector& x, const RealVector& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("majorizes: vectors must have equal length");
  }
  std::vector<double> xs(x.data(), x.data() + x.size());
  std::vector<double> ys(y.data(), y.data() + y.size());
  std::sort(xs.begin(), xs.end(), std::greater<double>());
  std::sort(ys.begin(), ys.end(), std::greater<double>());

  const double sx = std::accumulate(xs.begin(), xs.end(), 0.0);
  const double sy = std::accumulate(ys.begin(), ys.end(), 0.0);
  const double sum_tol = 1e-10 * std::max({1.0, std::abs(sx), std::abs(sy)});
  if (std::abs(sx - sy) > sum_tol) return false;

  double px = 0.0, py = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    px += xs[k];
    py += ys[k];
    if (px < py - 1e-10) return false;
  }
  return true;
}

bool majorizes(const std::vector<double>& x, const std::vector<double>& y) {
  return majorizes(Eigen::Map<const RealVector>(x.data(), x.size()),
                   Eigen::Map<const RealVector>(y.data(), y.size()));
}

RealMatrix schur_horn_ds(const Spectrum& S) {
  return S.eigenvectors.cwiseAbs2();
}

bool is_doubly_stochastic(const RealMatrix& D, double tol) {
  if (D.rows() != D.cols() || D.rows() < 1) return false;
  if (D.minCoeff() < -tol) return false;
  for (Eigen::Index i = 0; i < D.rows(); ++i) {
    if (std::abs(D.row(i).sum() - 1.0) > tol) return false;
    if (std::abs(D.col(i).sum() - 1.0) > tol) return false;
  }
  return true;
}

bool is_doubly_stochastic(const Matrix& D, double tol) {
  if (D.imag().cwiseAbs().maxCoeff() > tol) return false;
  return is_doubly_stochastic(RealMatrix(D.real()), tol);
}

}  // namespace qehc
