#include <doctest.h>

#include "qehc/linalg.hpp"
#include "test_support.hpp"

using namespace qehc;
using qehc::testing::pauli;

TEST_SUITE_BEGIN("linalg");

TEST_CASE("hermitian_eig on fixed spectra") {
  const Spectrum id = hermitian_eig(Matrix::Identity(2, 2));
  CHECK(id.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(id.eigenvalues(1) == doctest::Approx(1.0));

  const Spectrum sx = hermitian_eig(pauli(1));
  CHECK(sx.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(sx.eigenvalues(1) == doctest::Approx(-1.0));
}

TEST_CASE("hermitian_eig residual contract on random input") {
  const QubitOperator X = random_hermitian(3, 11);
  const Spectrum S = hermitian_eig(X.mat);
  const double residual =
      (X.mat * S.eigenvectors - S.eigenvectors * S.eigenvalues.asDiagonal()).norm();
  CHECK(residual <= 1e-10 * X.mat.norm());
  CHECK((S.eigenvectors.adjoint() * S.eigenvectors - Matrix::Identity(8, 8)).norm() <=
        1e-10 * 8);
  for (int i = 0; i + 1 < 8; ++i) {
    CHECK(S.eigenvalues(i) >= S.eigenvalues(i + 1));
  }
}

TEST_CASE("hermitian_eig rejections") {
  Matrix bad(2, 2);
  bad << 1.0, 2.0, 0.0, 1.0;
  CHECK_THROWS_AS(hermitian_eig(bad), std::invalid_argument);
  CHECK_THROWS_AS(hermitian_eig(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("kron basics") {
  CHECK((kron(Matrix::Identity(2, 2), Matrix::Identity(2, 2)) -
         Matrix::Identity(4, 4)).norm() == 0.0);

  const Matrix z = kron(pauli(3), Matrix::Identity(2, 2));
  Matrix want = Matrix::Zero(4, 4);
  want.diagonal() << 1, 1, -1, -1;
  CHECK((z - want).norm() == 0.0);
}

TEST_CASE("kron mixed-product identity") {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> normal;
  const auto rnd = [&] {
    Matrix M(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) M(i, j) = Complex(normal(gen), normal(gen));
    return M;
  };
  const Matrix A = rnd(), B = rnd(), C = rnd(), D = rnd();
  CHECK((kron(A, B) * kron(C, D) - kron(A * C, B * D)).norm() <= 1e-12);
}

TEST_CASE("kron overflow rejection") {
  const Matrix big = Matrix::Identity(1 << 13, 1 << 13);
  CHECK_THROWS_AS(kron(big, big), std::invalid_argument);
}

TEST_CASE("psd_power fixed values") {
  CHECK((psd_power(hermitian_eig(Matrix::Identity(4, 4)), 3.0) -
         Matrix::Identity(4, 4)).norm() <= 1e-12);

  Matrix d(2, 2);
  d << 4.0, 0.0, 0.0, 1.0;
  Matrix want(2, 2);
  want << 2.0, 0.0, 0.0, 1.0;
  CHECK((psd_power(hermitian_eig(d), 0.5) - want).norm() <= 1e-12);
}

TEST_CASE("psd_power squares PSD matrices") {
  const QubitOperator X = random_psd(2, 17);
  CHECK((psd_power(hermitian_eig(X.mat), 2.0) - X.mat * X.mat).norm() <=
        1e-10 * (X.mat * X.mat).norm());
}

TEST_CASE("psd_power composes") {
  const QubitOperator X = random_psd(2, 23);
  for (double a : {0.5, 2.0}) {
    for (double b : {0.5, 2.0}) {
      const Matrix once = psd_power(hermitian_eig(psd_power(hermitian_eig(X.mat), a)), b);
      const Matrix direct = psd_power(hermitian_eig(X.mat), a * b);
      CHECK((once - direct).norm() <= 1e-9 * std::max(1.0, direct.norm()));
    }
  }
}

TEST_CASE("psd_power rejections") {
  Matrix neg(2, 2);
  neg << -1.0, 0.0, 0.0, 1.0;
  CHECK_THROWS_AS(psd_power(hermitian_eig(neg), 2.0), std::invalid_argument);
  CHECK_THROWS_AS(psd_power(hermitian_eig(Matrix::Identity(2, 2)), -1.0),
                  std::invalid_argument);
}

TEST_CASE("normalized Schatten norm fixed values") {
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    CHECK(schatten_norm_normalized(Matrix::Identity(8, 8), p) == doctest::Approx(1.0));
    CHECK(schatten_norm_normalized(pauli(3), p) == doctest::Approx(1.0));
  }
  Matrix d(2, 2);
  d << 2.0, 0.0, 0.0, 0.0;
  for (double q : {1.0, 1.7, 2.0, 4.0}) {
    CHECK(schatten_norm_normalized(d, q) ==
          doctest::Approx(std::pow(2.0, (q - 1.0) / q)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(schatten_norm_normalized(d, 0.5), std::invalid_argument);
}

TEST_CASE("normalized norm is non-decreasing in p") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const QubitOperator X = random_hermitian(3, seed);
    double prev = 0.0;
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      const double now = schatten_norm_normalized(X.mat, p);
      CHECK(now >= prev - 1e-10);
      prev = now;
    }
  }
}

TEST_CASE("matrix Hoelder inequality") {
  std::mt19937_64 gen(9);
  std::normal_distribution<double> normal;
  Matrix A(8, 8), B(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      A(i, j) = Complex(normal(gen), normal(gen));
      B(i, j) = Complex(normal(gen), normal(gen));
    }
  }
  const double inner = std::abs((B.adjoint() * A).trace());
  for (double p : {1.0, 4.0 / 3.0, 2.0, 4.0}) {
    const double pc = holder_conjugate(p);
    CHECK(inner <= schatten_norm(A, p) * schatten_norm(B, pc) + 1e-10);
  }
}

TEST_CASE("holder_conjugate") {
  CHECK(holder_conjugate(2.0) == doctest::Approx(2.0));
  CHECK(std::isinf(holder_conjugate(1.0)));
  CHECK(holder_conjugate(std::numeric_limits<double>::infinity()) == doctest::Approx(1.0));
  CHECK(holder_conjugate(4.0 / 3.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(holder_conjugate(0.9), std::invalid_argument);
}

TEST_CASE("majorizes") {
  CHECK(majorizes(std::vector<double>{1.0, 0.0}, std::vector<double>{0.5, 0.5}));
  CHECK_FALSE(majorizes(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 0.0}));
  CHECK_THROWS_AS(majorizes(std::vector<double>{1.0}, std::vector<double>{0.5, 0.5}),
                  std::invalid_argument);
}

TEST_CASE("Schur-Horn: spectrum majorizes the diagonal") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const QubitOperator X = random_hermitian(3, 100 + seed);
    const Spectrum S = hermitian_eig(X.mat);
    const RealVector diag = X.mat.diagonal().real();
    CHECK(majorizes(S.eigenvalues, diag));
  }
}

TEST_CASE("schur_horn_ds fixed bases") {
  Spectrum S;
  S.eigenvalues = RealVector::Ones(2);
  S.eigenvectors = Matrix::Identity(2, 2);
  CHECK((schur_horn_ds(S) - RealMatrix::Identity(2, 2)).norm() == 0.0);

  const RealMatrix D = schur_horn_ds(hermitian_eig(pauli(1)));
  CHECK((D - RealMatrix::Constant(2, 2, 0.5)).norm() <= 1e-12);
}

TEST_CASE("schur_horn_ds reproduces the diagonal") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const QubitOperator X = random_hermitian(4, 300 + seed);
    const Spectrum S = hermitian_eig(X.mat);
    const RealMatrix D = schur_horn_ds(S);
    CHECK(is_doubly_stochastic(D, 1e-10));
    const RealVector via = D * S.eigenvalues;
    CHECK((via - X.mat.diagonal().real()).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("is_doubly_stochastic") {
  CHECK(is_doubly_stochastic(RealMatrix(RealMatrix::Identity(3, 3)), 1e-12));
  CHECK(is_doubly_stochastic(RealMatrix(RealMatrix::Constant(4, 4, 0.25)), 1e-12));
  RealMatrix bad = RealMatrix::Zero(2, 2);
  bad(0, 0) = 2.0;
  CHECK_FALSE(is_doubly_stochastic(bad, 1e-12));
}

TEST_SUITE_END();
