#include <doctest.h>

#include "qehc/erasure.hpp"
#include "test_support.hpp"

using namespace qehc;
using qehc::testing::pauli;

TEST_SUITE_BEGIN("qubit_ops");

TEST_CASE("partial trace of the identity") {
  const QubitOperator I3{3, Matrix::Identity(8, 8)};
  for (std::uint32_t s = 0; s < 8; ++s) {
    const QubitOperator out = partial_trace_normalized(I3, s);
    CHECK((out.mat - Matrix::Identity(out.dim(), out.dim())).norm() <= 1e-14);
  }
}

TEST_CASE("traceless factor vanishes") {
  const QubitOperator X{2, kron(pauli(3), Matrix::Identity(2, 2))};
  const QubitOperator out = partial_trace_normalized(X, SubsetMask{2, 0b01});
  CHECK(out.n == 1);
  CHECK(out.mat.norm() <= 1e-15);
}

TEST_CASE("EPR reduction") {
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const QubitOperator proj{2, phi * phi.adjoint()};
  const QubitOperator out = partial_trace_normalized(proj, SubsetMask{2, 0b10});
  CHECK((out.mat - 0.25 * Matrix::Identity(2, 2)).norm() <= 1e-14);
}

TEST_CASE("normalized trace is preserved") {
  const QubitOperator X = random_hermitian(3, 7);
  const Complex before = normalized_trace(X);
  for (std::uint32_t s = 0; s < 8; ++s) {
    const Complex after = normalized_trace(partial_trace_normalized(X, s));
    CHECK(std::abs(after - before) <= 1e-12);
  }
}

TEST_CASE("partial traces compose over disjoint subsets") {
  const QubitOperator X = random_hermitian(3, 13);
  // trace {2}, then {1,3} of the original == full trace set {1,2,3}
  const QubitOperator once = partial_trace_normalized(X, SubsetMask{3, 0b010});
  // survivors of {2} are (1,3) renumbered (1,2)
  const QubitOperator twice = partial_trace_normalized(once, SubsetMask{2, 0b11});
  const QubitOperator direct = partial_trace_normalized(X, SubsetMask{3, 0b111});
  CHECK((twice.mat - direct.mat).norm() <= 1e-12);

  const QubitOperator t13 = partial_trace_normalized(X, SubsetMask{3, 0b101});
  const QubitOperator t13_then_2 = partial_trace_normalized(t13, SubsetMask{1, 0b1});
  CHECK((t13_then_2.mat - direct.mat).norm() <= 1e-12);
}

TEST_CASE("trailing-subset diagonal is a block average") {
  const QubitOperator X = random_hermitian(3, 19);
  for (int drop = 1; drop <= 2; ++drop) {
    std::uint32_t bits = 0;
    for (int k = 3 - drop + 1; k <= 3; ++k) bits |= 1u << (k - 1);
    const QubitOperator out = partial_trace_normalized(X, SubsetMask{3, bits});
    const int block = 1 << drop;
    for (int i = 0; i < out.dim(); ++i) {
      Complex want = 0.0;
      for (int j = 0; j < block; ++j) want += X.mat(block * i + j, block * i + j);
      want /= static_cast<double>(block);
      CHECK(std::abs(out.mat(i, i) - want) <= 1e-14);
    }
  }
}

TEST_CASE("invalid subset is rejected") {
  const QubitOperator X = random_hermitian(2, 3);
  CHECK_THROWS_AS(partial_trace_normalized(X, SubsetMask{2, 0b100}),
                  std::invalid_argument);
  CHECK_THROWS_AS(partial_trace_normalized(X, SubsetMask{3, 0b1}),
                  std::invalid_argument);
}

TEST_CASE("pauli_decompose fixed operators") {
  const std::vector<Complex> id = pauli_decompose(QubitOperator{1, Matrix::Identity(2, 2)});
  CHECK(std::abs(id[0] - 1.0) <= 1e-14);
  for (int a = 1; a < 4; ++a) CHECK(std::abs(id[a]) <= 1e-14);

  const QubitOperator xz{2, kron(pauli(1), pauli(3))};
  const std::vector<Complex> coeffs = pauli_decompose(xz);
  for (std::size_t w = 0; w < coeffs.size(); ++w) {
    const double want = (w == (1u * 4 + 3)) ? 1.0 : 0.0;
    CHECK(std::abs(coeffs[w] - want) <= 1e-14);
  }
}

TEST_CASE("pauli round trip") {
  const QubitOperator X = random_hermitian(3, 29);
  const QubitOperator back = pauli_reconstruct(3, pauli_decompose(X));
  CHECK((back.mat - X.mat).norm() <= 1e-10 * X.mat.norm());
}

TEST_CASE("abs_op") {
  CHECK((abs_op(QubitOperator{1, pauli(3)}).mat - Matrix::Identity(2, 2)).norm() <= 1e-12);

  Matrix d(2, 2);
  d << -2.0, 0.0, 0.0, 1.0;
  Matrix want(2, 2);
  want << 2.0, 0.0, 0.0, 1.0;
  CHECK((abs_op(QubitOperator{1, d}).mat - want).norm() <= 1e-12);

  const QubitOperator X = random_hermitian(2, 31);
  CHECK(schatten_norm_normalized(abs_op(X).mat, 2.0) ==
        doctest::Approx(schatten_norm_normalized(X.mat, 2.0)).epsilon(1e-10));
}

TEST_CASE("samplers are deterministic and shaped") {
  const QubitOperator a = random_hermitian(2, 42);
  const QubitOperator b = random_hermitian(2, 42);
  CHECK((a.mat - b.mat).norm() == 0.0);
  CHECK((a.mat - a.mat.adjoint()).norm() == 0.0);

  const QubitOperator psd = random_psd(2, 42);
  const Spectrum S = hermitian_eig(psd.mat);
  CHECK(S.eigenvalues.minCoeff() >= -1e-10);

  CHECK_THROWS_AS(random_hermitian(7, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_psd(3, 1, 2), std::invalid_argument);
}

TEST_CASE("watrous_split of a PSD operator returns it") {
  Matrix d(2, 2);
  d << 3.0, 0.5, 0.5, 1.0;  // distinct eigenvalues
  const QubitOperator X{1, d};
  const auto [left, right] = watrous_split(X);
  CHECK((left.mat - d).norm() <= 1e-8);
  CHECK((right.mat - d).norm() <= 1e-8);
}

TEST_CASE("watrous_split explicit 2x2") {
  Matrix d(2, 2);
  d << 2.0, 0.0, 0.0, 1.0;
  const QubitOperator X{1, pauli(1) * d};
  const auto [left, right] = watrous_split(X);
  for (const auto& part : {left, right}) {
    const Spectrum S = hermitian_eig(part.mat);
    CHECK(S.eigenvalues(0) == doctest::Approx(2.0));
    CHECK(S.eigenvalues(1) == doctest::Approx(1.0));
  }
}

TEST_CASE("watrous_split preserves Schatten norms") {
  const QubitOperator X = random_hermitian(2, 37);
  const auto [left, right] = watrous_split(X);
  const double want = schatten_norm_normalized(X.mat, 3.0);
  CHECK(schatten_norm_normalized(left.mat, 3.0) == doctest::Approx(want).epsilon(1e-10));
  CHECK(schatten_norm_normalized(right.mat, 3.0) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("split dominates the eps-q ratio") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    QubitOperator X = random_hermitian(2, 500 + seed);
    X.mat /= schatten_norm_normalized(X.mat, 1.5);
    const auto [left, right] = watrous_split(X);
    for (double eps : {0.25, 0.75}) {
      for (double q : {1.5, 2.5}) {
        const double lhs = eps_q_norm(X, eps, q);
        const double rhs = std::max(eps_q_norm(left, eps, q), eps_q_norm(right, eps, q));
        CHECK(lhs <= rhs + 1e-9);
      }
    }
  }
}

TEST_SUITE_END();
