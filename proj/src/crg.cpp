#include "qehc/crg.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qehc {

namespace {

void check_params(const CrgParams& p) {
  if (!(p.eps >= 0.0 && p.eps <= 1.0)) {
    throw std::invalid_argument("crg: eps must be in [0, 1]");
  }
  if (!(p.gamma >= 0.0 && p.gamma <= 1.0)) {
    throw std::invalid_argument("crg: gamma must be in [0, 1]");
  }
  if (!(p.k >= 1.0)) {
    throw std::invalid_argument("crg: k must be >= 1");
  }
  if (!(p.c >= 1.0)) {
    throw std::invalid_argument("crg: c must be >= 1");
  }
}

CrgBound clamp_bound(double raw) {
  CrgBound b;
  b.raw = raw;
  b.clamped = raw < 0.0;
  b.bits = b.clamped ? 0.0 : raw;
  return b;
}

}  // namespace

CrgBound lower_bound(const CrgParams& params) {
  check_params(params);
  const double e = params.eps_prime();
  const double g = params.gamma;
  return clamp_bound((e * (1.0 - g) - 2.0 * std::sqrt(e * (1.0 - e) * g)) * params.k);
}

double bound_via_delta(const CrgParams& params, double delta) {
  check_params(params);
  if (!(delta > 0.0)) {
    throw std::invalid_argument("bound_via_delta: delta must be positive");
  }
  const double e = params.eps_prime();
  const double g = params.gamma;
  return (e / (1.0 + (1.0 - e) * delta) - g / delta - g) * params.k;
}

DeltaOpt optimize_delta(const CrgParams& params) {
  check_params(params);
  // golden section on ln(delta); the objective is unimodal in delta
  const double lo0 = std::log(1e-6), hi0 = std::log(1e6);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  const auto f = [&](double u) { return bound_via_delta(params, std::exp(u)); };
  double lo = lo0, hi = hi0;
  double m1 = hi - gr * (hi - lo), m2 = lo + gr * (hi - lo);
  double f1 = f(m1), f2 = f(m2);
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + gr * (hi - lo);
      f2 = f(m2);
    } else {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - gr * (hi - lo);
      f1 = f(m1);
    }
  }
  DeltaOpt out;
  out.delta_star = std::exp((lo + hi) / 2.0);
  out.raw = f((lo + hi) / 2.0);
  out.bits = std::max(0.0, out.raw);
  return out;
}

CrgBound classical_upper_bound(double eps, double gamma, double k) {
  check_params(CrgParams{eps, gamma, k, 1.0});
  return clamp_bound((eps * (1.0 - gamma) - 2.0 * std::sqrt(eps * (1.0 - eps) * gamma)) * k);
}

namespace {

void check_psd_block(const Matrix& B, double tol, const char* who) {
  Spectrum S = hermitian_eig(B);
  const double lmax = S.eigenvalues.size() ? S.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  if (S.eigenvalues.size() && S.eigenvalues.minCoeff() < -tol * std::max(1.0, lmax)) {
    std::ostringstream msg;
    msg << who << ": element has eigenvalue " << S.eigenvalues.minCoeff()
        << ", not PSD at tolerance " << tol;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

void validate_strategy(const Strategy& strat, double tol) {
  const Eigen::Index dim = Eigen::Index{1} << strat.n;
  if (strat.alice.empty()) {
    throw std::invalid_argument("strategy: Alice's POVM is empty");
  }
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& el : strat.alice) {
    if (el.op.rows() != dim || el.op.cols() != dim) {
      throw std::invalid_argument("strategy: Alice element has wrong dimension");
    }
    check_psd_block(el.op, tol, "strategy (Alice)");
    sum += el.op;
    if (strat.bob.find(el.message) == strat.bob.end()) {
      throw std::invalid_argument("strategy: Bob has no POVM for message '" + el.message + "'");
    }
  }
  if ((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("strategy: Alice's POVM does not sum to the identity");
  }

  for (const auto& [msg, elements] : strat.bob) {
    if (elements.empty()) {
      throw std::invalid_argument("strategy: Bob's POVM for message '" + msg + "' is empty");
    }
    for (std::uint32_t s = 0; s < (1u << strat.n); ++s) {
      const Eigen::Index bd = Eigen::Index{1} << (strat.n - std::popcount(s));
      Matrix bsum = Matrix::Zero(bd, bd);
      for (const auto& el : elements) {
        if (el.family.n != strat.n) {
          throw std::invalid_argument("strategy: Bob family has wrong qubit count");
        }
        const Matrix& B = el.family.block(s);
        if (B.rows() != bd || B.cols() != bd) {
          throw std::invalid_argument("strategy: Bob family block has wrong dimension");
        }
        check_psd_block(B, tol, "strategy (Bob)");
        bsum += B;
      }
      if ((bsum - Matrix::Identity(bd, bd)).cwiseAbs().maxCoeff() > tol) {
        throw std::invalid_argument(
            "strategy: Bob's POVM blocks do not sum to the identity family");
      }
    }
  }
}

double success_probability(const Strategy& strat, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("success_probability: eps must be in [0, 1]");
  }
  validate_strategy(strat);
  const int n = strat.n;
  double acc = 0.0;
  for (const auto& alice : strat.alice) {
    const ErasedFamily ax = expand(QubitOperator::make(n, alice.op));
    const auto& povm = strat.bob.at(alice.message);
    for (const auto& bob : povm) {
      if (bob.outcome != alice.outcome) continue;
      for (std::uint32_t s = 0; s < (1u << n); ++s) {
        const int k = std::popcount(s);
        const double w = std::pow(1.0 - eps, n - k) * std::pow(2.0 * eps, k);
        if (w == 0.0) continue;
        // Tr[A · B^T] for Hermitian A, B is sum_ij A_ij B_ij, a real number.
        const double overlap =
            ax.blocks[s].cwiseProduct(bob.family.blocks[s]).sum().real();
        acc += w * overlap;
      }
    }
  }
  return acc / static_cast<double>(Eigen::Index{1} << n);
}

namespace {

std::uint64_t pow3u(int n) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}

// Kraus operators of the single-qubit erasure channel, 3x2 each.
std::vector<Matrix> qec_kraus(double eps) {
  Matrix k0 = Matrix::Zero(3, 2);
  k0(0, 0) = std::sqrt(1.0 - eps);
  k0(1, 1) = std::sqrt(1.0 - eps);
  Matrix k1 = Matrix::Zero(3, 2);
  k1(2, 0) = std::sqrt(eps);
  Matrix k2 = Matrix::Zero(3, 2);
  k2(2, 1) = std::sqrt(eps);
  return {k0, k1, k2};
}

}  // namespace

double success_probability_dense(const Strategy& strat, double eps) {
  if (strat.n > 2) {
    throw std::invalid_argument("success_probability_dense: oracle supports n <= 2 only");
  }
  validate_strategy(strat);
  const int n = strat.n;
  const Eigen::Index da = Eigen::Index{1} << n;
  const Eigen::Index db = static_cast<Eigen::Index>(pow3u(n));

  // |Phi_n> = 2^{-n/2} sum_x |x>_A |x>_B, Alice block major.
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(da * da);
  for (Eigen::Index x = 0; x < da; ++x) {
    phi(x * da + x) = 1.0 / std::sqrt(static_cast<double>(da));
  }
  const Matrix state0 = phi * phi.adjoint();

  // rho = (id ⊗ QEC^{⊗n})(Phi^{⊗n}) via all Kraus products.
  const std::vector<Matrix> kraus1 = qec_kraus(eps);
  Matrix rho = Matrix::Zero(da * db, da * db);
  std::vector<int> choice(n, 0);
  const std::uint64_t total = pow3u(n);
  for (std::uint64_t c = 0; c < total; ++c) {
    std::uint64_t rest = c;
    Matrix K = Matrix::Identity(1, 1);
    for (int j = 0; j < n; ++j) {
      K = kron(K, kraus1[rest % 3]);
      rest /= 3;
    }
    const Matrix lifted = kron(Matrix::Identity(da, da), K);
    rho += lifted * state0 * lifted.adjoint();
  }

  double acc = 0.0;
  for (const auto& alice : strat.alice) {
    for (const auto& bob : strat.bob.at(alice.message)) {
      if (bob.outcome != alice.outcome) continue;
      const Matrix yd = family_to_dense(bob.family);
      acc += (kron(alice.op, yd) * rho).trace().real();
    }
  }
  return acc;
}

double holder_chain_bound(const Strategy& strat, double eps, double q) {
  validate_strategy(strat);
  std::map<std::string, double> per_message;
  for (const auto& alice : strat.alice) {
    per_message[alice.message] +=
        std::pow(eps_q_norm(QubitOperator::make(strat.n, alice.op), eps, q), q);
  }
  double acc = 0.0;
  for (const auto& [msg, sum] : per_message) acc += std::pow(sum, 1.0 / q);
  return acc;
}

Strategy guess_zero_strategy(int n) {
  if (n < 1 || n > kDefaultQubitCap) {
    throw std::invalid_argument("guess_zero_strategy: n out of range");
  }
  Strategy strat;
  strat.n = n;
  const std::uint32_t dim = 1u << n;
  std::vector<BobElement> bob;
  for (std::uint32_t a = 0; a < dim; ++a) {
    std::ostringstream label;
    label << a;
    Matrix proj = Matrix::Zero(dim, dim);
    proj(a, a) = 1.0;
    strat.alice.push_back({label.str(), "", proj});

    // Bob reports `a` iff his surviving bits match and the erased bits of a
    // are all zero.
    ErasedFamily fam{n, {}};
    fam.blocks.reserve(std::size_t{1} << n);
    for (std::uint32_t s = 0; s < dim; ++s) {
      const int keep = n - std::popcount(s);
      const std::uint32_t bd = 1u << keep;
      Matrix block = Matrix::Zero(bd, bd);
      bool erased_bits_zero = true;
      std::uint32_t surv = 0;
      int si = 0;
      for (int k = 1; k <= n; ++k) {
        const std::uint32_t bit = (a >> (n - k)) & 1u;
        if ((s >> (k - 1)) & 1u) {
          if (bit) erased_bits_zero = false;
        } else {
          surv |= bit << (keep - 1 - si);
          ++si;
        }
      }
      if (erased_bits_zero) block(surv, surv) = 1.0;
      fam.blocks.push_back(std::move(block));
    }
    bob.push_back({label.str(), std::move(fam)});
  }
  strat.bob[""] = std::move(bob);
  return strat;
}

double min_entropy(const std::vector<double>& probs) {
  if (probs.empty()) {
    throw std::invalid_argument("min_entropy: empty distribution");
  }
  double sum = 0.0;
  double maxp = 0.0;
  for (double p : probs) {
    if (p < -1e-12) {
      throw std::invalid_argument("min_entropy: negative probability");
    }
    sum += p;
    if (p > maxp) maxp = p;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw std::invalid_argument("min_entropy: probabilities must sum to 1");
  }
  return -std::log2(maxp);
}

}  // namespace qehc
