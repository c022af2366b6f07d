#include "qehc/erasure.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qehc {

namespace {

void check_eps_q(double eps, double q) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("eps must be in [0, 1]");
  }
  if (!(q >= 1.0) || std::isinf(q)) {
    throw std::invalid_argument("q must be a finite real >= 1");
  }
}

void check_dense_cap(int n, int cap, const char* who) {
  if (n < 0 || n > cap) {
    std::ostringstream msg;
    msg << who << ": n = " << n << " outside the supported range [0, " << cap << "]";
    throw std::invalid_argument(msg.str());
  }
}

std::uint64_t pow3(int n) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}

}  // namespace

double ErasureWeights::weight(std::uint32_t bits) const {
  const int k = std::popcount(bits);
  return std::pow(1.0 - eps, n - k) * std::pow(eps, k);
}

ErasedFamily identity_family(int n) {
  ErasedFamily F{n, {}};
  F.blocks.reserve(std::size_t{1} << n);
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    const int keep = n - std::popcount(s);
    F.blocks.push_back(Matrix::Identity(Eigen::Index{1} << keep, Eigen::Index{1} << keep));
  }
  return F;
}

ErasedFamily expand(const QubitOperator& X, int cap) {
  check_dense_cap(X.n, cap, "expand");
  ErasedFamily F{X.n, {}};
  F.blocks.reserve(std::size_t{1} << X.n);
  for (std::uint32_t s = 0; s < (1u << X.n); ++s) {
    F.blocks.push_back(partial_trace_normalized(X, s).mat);
  }
  return F;
}

double eps_q_norm(const ErasedFamily& F, double eps, double q) {
  check_eps_q(eps, q);
  const ErasureWeights w{F.n, eps};
  double acc = 0.0;
  for (std::uint32_t s = 0; s < F.pattern_count(); ++s) {
    const double ws = w.weight(s);
    if (ws == 0.0) continue;
    acc += ws * std::pow(schatten_norm_normalized(F.blocks[s], q), q);
  }
  return std::pow(acc, 1.0 / q);
}

double eps_q_norm(const QubitOperator& X, double eps, double q) {
  check_eps_q(eps, q);
  return eps_q_norm(expand(X), eps, q);
}

Matrix qecr_dense(const QubitOperator& X) {
  check_dense_cap(X.n, 3, "qecr_dense");
  const int n = X.n;
  const std::uint64_t dim3 = pow3(n);
  const std::vector<Complex> coeffs = pauli_decompose(X);

  // Local 3x3 image of each Pauli under the expanding operator.
  Matrix local[4];
  for (int a = 0; a < 4; ++a) {
    local[a] = Matrix::Zero(3, 3);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) local[a](i, j) = pauli_entry(a, i, j);
    }
    local[a](2, 2) = (a == 0) ? 1.0 : 0.0;  // tau(sigma_a)
  }

  Matrix out = Matrix::Zero(dim3, dim3);
  for (std::size_t x = 0; x < coeffs.size(); ++x) {
    if (coeffs[x] == Complex(0, 0)) continue;
    Matrix term = Matrix::Identity(1, 1);
    std::uint64_t word = x;
    std::vector<int> digits(n);
    for (int k = n - 1; k >= 0; --k) {
      digits[k] = static_cast<int>(word & 3u);
      word >>= 2;
    }
    for (int k = 0; k < n; ++k) term = kron(term, local[digits[k]]);
    out += coeffs[x] * term;
  }
  return out;
}

RealVector noise_diag(int n, double eps) {
  const std::uint64_t dim3 = pow3(n);
  RealVector d(dim3);
  for (std::uint64_t idx = 0; idx < dim3; ++idx) {
    double w = 1.0;
    std::uint64_t rest = idx;
    for (int k = 0; k < n; ++k) {
      const int digit = static_cast<int>(rest % 3);
      rest /= 3;
      w *= (digit == 2) ? 2.0 * eps : 1.0 - eps;
    }
    d(idx) = w;
  }
  return d;
}

Matrix apply_qec_dense(const QubitOperator& X, double eps) {
  check_dense_cap(X.n, 3, "apply_qec_dense");
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("apply_qec_dense: eps must be in [0, 1]");
  }
  Matrix D = qecr_dense(X);
  const RealVector w = noise_diag(X.n, eps);
  for (Eigen::Index i = 0; i < D.rows(); ++i) D.row(i) *= w(i);
  return D;
}

double dense_oracle(const QubitOperator& X, double eps, double q) {
  check_dense_cap(X.n, 3, "dense_oracle");
  check_eps_q(eps, q);
  const Matrix D = qecr_dense(X);
  const Matrix absq = psd_power(hermitian_eig(D.adjoint() * D), q / 2.0);
  const RealVector w = noise_diag(X.n, eps);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < absq.rows(); ++i) {
    acc += w(i) * absq(i, i).real();
  }
  acc /= static_cast<double>(X.dim());
  return std::pow(std::max(acc, 0.0), 1.0 / q);
}

QubitOperator conjugate_qec_apply(const ErasedFamily& Y, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("conjugate_qec_apply: eps must be in [0, 1]");
  }
  const int n = Y.n;
  Matrix out = Matrix::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (std::uint32_t s = 0; s < Y.pattern_count(); ++s) {
    const int k = std::popcount(s);
    const double w = std::pow(1.0 - eps, n - k) * std::pow(eps, k);
    if (w == 0.0) continue;
    out += w * embed_with_identity(Y.blocks[s], SubsetMask{n, s}).mat;
  }
  return QubitOperator{n, std::move(out)};
}

QubitOperator depolarize(const QubitOperator& X, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("depolarize: rho must be in [0, 1]");
  }
  std::vector<Complex> coeffs = pauli_decompose(X);
  for (std::size_t x = 0; x < coeffs.size(); ++x) {
    int weight = 0;
    std::uint64_t word = x;
    for (int k = 0; k < X.n; ++k) {
      if ((word & 3u) != 0) ++weight;
      word >>= 2;
    }
    coeffs[x] *= std::pow(rho, weight);
  }
  return pauli_reconstruct(X.n, coeffs);
}

namespace {

// Base-3 index with digit 2 on the members of S and the bits of `survivor`
// elsewhere; qubit 1 is the most significant digit.
std::uint64_t compose_dense_index(int n, std::uint32_t s, std::uint32_t survivor) {
  std::uint64_t idx = 0;
  int si = 0;
  const int keep = n - std::popcount(s);
  for (int k = 1; k <= n; ++k) {
    int digit;
    if ((s >> (k - 1)) & 1u) {
      digit = 2;
    } else {
      digit = (survivor >> (keep - 1 - si)) & 1u;
      ++si;
    }
    idx = idx * 3 + digit;
  }
  return idx;
}

}  // namespace

Matrix family_to_dense(const ErasedFamily& Y) {
  check_dense_cap(Y.n, 4, "family_to_dense");
  const std::uint64_t dim3 = pow3(Y.n);
  Matrix out = Matrix::Zero(dim3, dim3);
  for (std::uint32_t s = 0; s < Y.pattern_count(); ++s) {
    const Matrix& B = Y.blocks[s];
    const std::uint32_t d = static_cast<std::uint32_t>(B.rows());
    for (std::uint32_t r = 0; r < d; ++r) {
      for (std::uint32_t c = 0; c < d; ++c) {
        out(compose_dense_index(Y.n, s, r), compose_dense_index(Y.n, s, c)) = B(r, c);
      }
    }
  }
  return out;
}

ErasedFamily pinch_to_family(int n, const Matrix& dense) {
  check_dense_cap(n, 4, "pinch_to_family");
  const Eigen::Index dim3 = static_cast<Eigen::Index>(pow3(n));
  if (dense.rows() != dim3 || dense.cols() != dim3) {
    throw std::invalid_argument("pinch_to_family: matrix must be 3^n x 3^n");
  }
  ErasedFamily F{n, {}};
  F.blocks.reserve(std::size_t{1} << n);
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    const std::uint32_t d = 1u << (n - std::popcount(s));
    Matrix B(d, d);
    for (std::uint32_t r = 0; r < d; ++r) {
      for (std::uint32_t c = 0; c < d; ++c) {
        B(r, c) = dense(compose_dense_index(n, s, r), compose_dense_index(n, s, c));
      }
    }
    F.blocks.push_back(std::move(B));
  }
  return F;
}

}  // namespace qehc
