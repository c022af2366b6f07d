#include "qehc/qubit_ops.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qehc {

QubitOperator QubitOperator::make(int n, Matrix m) {
  if (n < 0 || n > 30) {
    throw std::invalid_argument("QubitOperator: qubit count out of range");
  }
  const Eigen::Index d = Eigen::Index{1} << n;
  if (m.rows() != d || m.cols() != d) {
    std::ostringstream msg;
    msg << "QubitOperator: matrix is " << m.rows() << "x" << m.cols()
        << ", expected " << d << "x" << d << " for n = " << n;
    throw std::invalid_argument(msg.str());
  }
  return QubitOperator{n, std::move(m)};
}

int SubsetMask::count() const { return std::popcount(bits); }

std::vector<int> SubsetMask::members() const {
  std::vector<int> out;
  for (int k = 1; k <= n; ++k) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

SubsetMask SubsetMask::from_members(int n, const std::vector<int>& members) {
  SubsetMask S{n, 0};
  for (int k : members) {
    if (k < 1 || k > n) {
      throw std::invalid_argument("SubsetMask: member outside {1..n}");
    }
    S.bits |= (1u << (k - 1));
  }
  return S;
}

int survivor_position(const SubsetMask& S, int k) {
  if (k < 1 || k > S.n || S.contains(k)) {
    throw std::invalid_argument("survivor_position: qubit is not a survivor");
  }
  int pos = 0;
  for (int j = 1; j <= k; ++j) {
    if (!S.contains(j)) ++pos;
  }
  return pos;
}

namespace {

void validate_subset(const QubitOperator& X, const SubsetMask& S) {
  if (S.n != X.n) {
    throw std::invalid_argument("subset mask does not match the operator's qubit count");
  }
  if (S.n < 32 && (S.bits >> S.n) != 0) {
    throw std::invalid_argument("subset mask has members outside {1..n}");
  }
}

// Compose a full n-qubit basis index from survivor bits and traced bits.
// Qubit k sits at bit position n-k (qubit 1 = MSB).
std::uint32_t compose_index(int n, const SubsetMask& S, std::uint32_t survivor,
                            std::uint32_t traced) {
  std::uint32_t idx = 0;
  int si = 0, ti = 0;
  const int keep = n - S.count();
  const int drop = S.count();
  for (int k = 1; k <= n; ++k) {
    std::uint32_t bit;
    if (S.contains(k)) {
      bit = (traced >> (drop - 1 - ti)) & 1u;
      ++ti;
    } else {
      bit = (survivor >> (keep - 1 - si)) & 1u;
      ++si;
    }
    idx = (idx << 1) | bit;
  }
  return idx;
}

}  // namespace

QubitOperator partial_trace_normalized(const QubitOperator& X, const SubsetMask& S) {
  validate_subset(X, S);
  const int drop = S.count();
  const int keep = X.n - drop;
  const std::uint32_t dout = 1u << keep;
  const std::uint32_t dtr = 1u << drop;
  Matrix out = Matrix::Zero(dout, dout);
  for (std::uint32_t r = 0; r < dout; ++r) {
    for (std::uint32_t c = 0; c < dout; ++c) {
      Complex acc = 0.0;
      for (std::uint32_t a = 0; a < dtr; ++a) {
        acc += X.mat(compose_index(X.n, S, r, a), compose_index(X.n, S, c, a));
      }
      out(r, c) = acc / static_cast<double>(dtr);
    }
  }
  return QubitOperator{keep, std::move(out)};
}

QubitOperator partial_trace_normalized(const QubitOperator& X, std::uint32_t subset_bits) {
  return partial_trace_normalized(X, SubsetMask{X.n, subset_bits});
}

Complex normalized_trace(const QubitOperator& X) {
  return X.mat.trace() / static_cast<double>(X.dim());
}

Complex pauli_entry(int a, int i, int j) {
  switch (a) {
    case 0: return i == j ? 1.0 : 0.0;
    case 1: return i != j ? 1.0 : 0.0;
    case 2:
      if (i == j) return 0.0;
      return i == 0 ? Complex(0, -1) : Complex(0, 1);
    case 3:
      if (i != j) return 0.0;
      return i == 0 ? 1.0 : -1.0;
    default:
      throw std::invalid_argument("pauli_entry: index must be in {0,1,2,3}");
  }
}

namespace {

// A Pauli tensor has one nonzero per row; return its column and value.
// `digits` holds the base-4 word with qubit 1 as the most significant digit.
std::pair<std::uint32_t, Complex> pauli_row(const std::vector<int>& digits,
                                            std::uint32_t row) {
  const int n = static_cast<int>(digits.size());
  std::uint32_t col = 0;
  Complex val = 1.0;
  for (int k = 0; k < n; ++k) {
    const int rb = (row >> (n - 1 - k)) & 1;
    const int a = digits[k];
    const int cb = (a == 1 || a == 2) ? 1 - rb : rb;
    val *= pauli_entry(a, rb, cb);
    col = (col << 1) | static_cast<std::uint32_t>(cb);
  }
  return {col, val};
}

std::vector<int> base4_digits(int n, std::uint64_t x) {
  std::vector<int> digits(n);
  for (int k = n - 1; k >= 0; --k) {
    digits[k] = static_cast<int>(x & 3u);
    x >>= 2;
  }
  return digits;
}

}  // namespace

std::vector<Complex> pauli_decompose(const QubitOperator& X) {
  const int n = X.n;
  const std::uint64_t words = std::uint64_t{1} << (2 * n);
  const std::uint32_t dim = 1u << n;
  std::vector<Complex> coeffs(words);
  for (std::uint64_t x = 0; x < words; ++x) {
    const std::vector<int> digits = base4_digits(n, x);
    Complex acc = 0.0;
    for (std::uint32_t row = 0; row < dim; ++row) {
      auto [col, val] = pauli_row(digits, row);
      acc += val * X.mat(col, row);  // tau[P X] = (1/d) sum_r P(r,c) X(c,r)
    }
    coeffs[x] = acc / static_cast<double>(dim);
  }
  return coeffs;
}

QubitOperator pauli_reconstruct(int n, const std::vector<Complex>& coeffs) {
  const std::uint64_t words = std::uint64_t{1} << (2 * n);
  if (coeffs.size() != words) {
    throw std::invalid_argument("pauli_reconstruct: coefficient count must be 4^n");
  }
  const std::uint32_t dim = 1u << n;
  Matrix out = Matrix::Zero(dim, dim);
  for (std::uint64_t x = 0; x < words; ++x) {
    if (coeffs[x] == Complex(0, 0)) continue;
    const std::vector<int> digits = base4_digits(n, x);
    for (std::uint32_t row = 0; row < dim; ++row) {
      auto [col, val] = pauli_row(digits, row);
      out(row, col) += coeffs[x] * val;
    }
  }
  return QubitOperator{n, std::move(out)};
}

QubitOperator abs_op(const QubitOperator& X) {
  return QubitOperator{X.n, psd_power(X.mat.adjoint() * X.mat, 0.5)};
}

namespace {

void check_cap(int n, int cap) {
  if (n < 0) throw std::invalid_argument("sampler: n must be >= 0");
  if (n > cap) {
    std::ostringstream msg;
    msg << "sampler: n = " << n << " exceeds the dense-work cap " << cap;
    throw std::invalid_argument(msg.str());
  }
}

Matrix gaussian_matrix(int dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix G(dim, dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double re = normal(gen);
      const double im = normal(gen);
      G(i, j) = Complex(re, im) * inv_sqrt2;
    }
  }
  return G;
}

}  // namespace

QubitOperator random_hermitian(int n, std::uint64_t seed, int cap) {
  check_cap(n, cap);
  Matrix G = gaussian_matrix(1 << n, seed);
  return QubitOperator{n, (G + G.adjoint()) / 2.0};
}

QubitOperator random_psd(int n, std::uint64_t seed, int cap) {
  check_cap(n, cap);
  Matrix A = gaussian_matrix(1 << n, seed);
  return QubitOperator{n, A.adjoint() * A};
}

std::pair<QubitOperator, QubitOperator> watrous_split(const QubitOperator& X) {
  Eigen::JacobiSVD<Matrix> svd(X.mat, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix& U = svd.matrixU();
  const Matrix& V = svd.matrixV();
  const RealVector& sv = svd.singularValues();
  Matrix left = U * sv.asDiagonal() * U.adjoint();
  Matrix right = V * sv.asDiagonal() * V.adjoint();
  return {QubitOperator{X.n, std::move(left)}, QubitOperator{X.n, std::move(right)}};
}

QubitOperator embed_with_identity(const Matrix& block, const SubsetMask& S) {
  const int n = S.n;
  const int keep = n - S.count();
  const Eigen::Index dblock = Eigen::Index{1} << keep;
  if (block.rows() != dblock || block.cols() != dblock) {
    throw std::invalid_argument("embed_with_identity: block dimension mismatch");
  }
  Matrix out = Matrix::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  const std::uint32_t dtr = 1u << S.count();
  for (std::uint32_t r = 0; r < static_cast<std::uint32_t>(dblock); ++r) {
    for (std::uint32_t c = 0; c < static_cast<std::uint32_t>(dblock); ++c) {
      if (block(r, c) == Complex(0, 0) && r != c) continue;
      for (std::uint32_t a = 0; a < dtr; ++a) {
        out(compose_index(n, S, r, a), compose_index(n, S, c, a)) += block(r, c);
      }
    }
  }
  return QubitOperator{n, std::move(out)};
}

}  // namespace qehc
