#pragma once

// Shared helpers and independent oracles for the unit and acceptance suites.
// Everything here stays off the library's implementation paths: the oracles
// recompute quantities from first principles (brute force, sub-cube sums,
// explicit Kraus algebra) so agreement is evidence, not tautology.

#include <bit>
#include <cmath>
#include <random>
#include <vector>

#include "qehc/crg.hpp"
#include "qehc/entropy.hpp"
#include "qehc/rng.hpp"

namespace qehc::testing {

inline Matrix pauli(int a) {
  Matrix s(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) s(i, j) = pauli_entry(a, i, j);
  }
  return s;
}

// U lambda^{-1/2} U† for a PD matrix; test-side only.
inline Matrix inv_sqrt(const Matrix& W) {
  const Spectrum S = hermitian_eig(W);
  RealVector d(S.eigenvalues.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = 1.0 / std::sqrt(S.eigenvalues(i));
  return S.eigenvectors * d.asDiagonal() * S.eigenvectors.adjoint();
}

// Random one-way strategy with completeness built in by symmetric
// normalization of random PSD seeds (Alice globally, Bob blockwise).
inline Strategy random_strategy(int n, int outcomes, int messages, std::uint64_t seed) {
  Strategy strat;
  strat.n = n;
  const Eigen::Index dim = Eigen::Index{1} << n;

  std::vector<Matrix> seeds;
  Matrix total = Matrix::Zero(dim, dim);
  for (int a = 0; a < outcomes; ++a) {
    for (int m = 0; m < messages; ++m) {
      Matrix G = random_psd(n, mix_seed(seed, "alice", a * 97 + m)).mat +
                 0.05 * Matrix::Identity(dim, dim);
      total += G;
      seeds.push_back(std::move(G));
    }
  }
  const Matrix wfix = inv_sqrt(total);
  std::size_t idx = 0;
  for (int a = 0; a < outcomes; ++a) {
    for (int m = 0; m < messages; ++m) {
      strat.alice.push_back({std::to_string(a), std::to_string(m),
                             wfix * seeds[idx++] * wfix});
    }
  }

  for (int m = 0; m < messages; ++m) {
    std::vector<BobElement> povm(outcomes);
    for (int a = 0; a < outcomes; ++a) {
      povm[a].outcome = std::to_string(a);
      povm[a].family.n = n;
      povm[a].family.blocks.resize(std::size_t{1} << n);
    }
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      const int keep = n - std::popcount(s);
      const Eigen::Index bd = Eigen::Index{1} << keep;
      Matrix bsum = Matrix::Zero(bd, bd);
      std::vector<Matrix> bseeds;
      for (int a = 0; a < outcomes; ++a) {
        Matrix G = random_psd(keep, mix_seed(seed, "bob", (m * 31 + a) * 67 + s)).mat +
                   0.05 * Matrix::Identity(bd, bd);
        bsum += G;
        bseeds.push_back(std::move(G));
      }
      const Matrix bfix = inv_sqrt(bsum);
      for (int a = 0; a < outcomes; ++a) {
        povm[a].family.blocks[s] = bfix * bseeds[a] * bfix;
      }
    }
    strat.bob[std::to_string(m)] = std::move(povm);
  }
  return strat;
}

// Classical multipartite entropy straight from sub-cube averages; the
// commutative brute-force twin of the diagonal-embedding route.
inline double classical_entropy_direct(const std::vector<double>& f, int m, double eps,
                                       double q) {
  int n = 0;
  while ((std::size_t{1} << n) < f.size()) ++n;
  double first = 0.0, mixed = 0.0;
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    // average f over the coordinates in s (bit k-1 of s marks coordinate k,
    // coordinate k sits at index bit n-k)
    std::uint32_t avg_mask = 0;
    for (int k = 1; k <= n; ++k) {
      if ((s >> (k - 1)) & 1u) avg_mask |= 1u << (n - k);
    }
    const std::uint32_t keep_mask = ~avg_mask & ((1u << n) - 1);
    const int kept = n - std::popcount(avg_mask);
    double esum = 0.0, elog = 0.0;
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
      if ((x & avg_mask) != 0) continue;  // enumerate representatives
      double avg = 0.0;
      std::uint32_t sub = avg_mask;
      while (true) {
        avg += f[(x & keep_mask) | sub];
        if (sub == 0) break;
        sub = (sub - 1) & avg_mask;
      }
      avg /= static_cast<double>(1u << std::popcount(avg_mask));
      const double powq = avg > 0.0 ? std::pow(avg, q) : 0.0;
      esum += powq;
      if (avg > 0.0) elog += powq * q * std::log(avg);
    }
    esum /= static_cast<double>(1u << kept);
    elog /= static_cast<double>(1u << kept);
    const int sz = std::popcount(s);
    const double w = std::pow(1.0 - eps, m - sz) * std::pow(eps, sz);
    first += w * elog;
    mixed += w * esum;
  }
  return first - (mixed > 0.0 ? mixed * std::log(mixed) : 0.0);
}

// Right-hand side of the one-partite log-Sobolev bound with A = X^{q/2},
// written as the plain sum over coordinates.
inline double kt_log_sobolev_rhs(const QubitOperator& X, double q) {
  const Matrix A = psd_power(hermitian_eig(X.mat), q / 2.0);
  const QubitOperator Aop{X.n, A};
  const double a2 = (A * A).trace().real() / X.dim();
  double acc = 0.0;
  for (int k = 1; k <= X.n; ++k) {
    const Matrix tk = partial_trace_normalized(Aop, SubsetMask{X.n, 1u << (k - 1)}).mat;
    acc += a2 - (tk * tk).trace().real() / tk.rows();
  }
  return 2.0 * acc;
}

inline QubitOperator strictly_pd(int n, std::uint64_t seed) {
  QubitOperator X = random_psd(n, seed);
  const Spectrum S = hermitian_eig(X.mat);
  X.mat += (0.25 * S.eigenvalues(0) + 0.05) * Matrix::Identity(X.dim(), X.dim());
  return X;
}

}  // namespace qehc::testing
