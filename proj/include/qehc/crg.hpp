#pragma once

#include <map>
#include <string>
#include <vector>

#include "qehc/erasure.hpp"

namespace qehc {

/// Parameters of the common-randomness tradeoff. eps is the channel's erasure
/// probability, gamma the allowed failure exponent (success >= 2^{-gamma k}),
/// k the min-entropy target in bits and c the hypercontractivity constant.
/// gamma in {0, 1} is accepted with closed-interval limit semantics.
struct CrgParams {
  double eps = 0.5;
  double gamma = 0.1;
  double k = 1000.0;
  double c = 2.0;

  double eps_prime() const { return eps / c; }
};

struct CrgBound {
  double bits = 0.0;      // max(0, raw)
  double raw = 0.0;       // closed-form value before clamping
  bool clamped = false;
};

/// Closed form (eps'(1-gamma) - 2 sqrt(eps'(1-eps') gamma)) · k.
CrgBound lower_bound(const CrgParams& params);

/// One point of the delta family: (eps'/(1+(1-eps')delta) - gamma/delta - gamma)·k.
double bound_via_delta(const CrgParams& params, double delta);

struct DeltaOpt {
  double delta_star = 0.0;
  double bits = 0.0;  // max(0, raw)
  double raw = 0.0;
};

/// Golden-section maximization of the delta family over delta in (1e-6, 1e6);
/// matches the closed form to 1e-6·k whenever the closed form is positive.
DeltaOpt optimize_delta(const CrgParams& params);

/// Achievable classical cost (eps(1-gamma) - 2 sqrt(eps(1-eps) gamma)) · k,
/// clamped at zero. Never below lower_bound at c = 2.
CrgBound classical_upper_bound(double eps, double gamma, double k);

struct AliceElement {
  std::string outcome;
  std::string message;
  Matrix op;  // PSD, on n qubits
};

struct BobElement {
  std::string outcome;
  ErasedFamily family;  // good-form POVM element
};

/// One-way strategy: Alice's POVM {X_{a,pi}} summing to the identity, and for
/// each message pi Bob's good-form POVM {Y^pi_a} summing to the identity
/// family. All elements PSD (blockwise for families).
struct Strategy {
  int n = 1;
  std::vector<AliceElement> alice;
  std::map<std::string, std::vector<BobElement>> bob;
};

/// Completeness and PSD checks at the given tolerance; throws on violation.
void validate_strategy(const Strategy& strat, double tol = 1e-10);

/// Success probability against n erased EPR pairs, evaluated in the subset
/// family form: 2^{-n} sum_{a,pi} sum_S (1-eps)^{n-|S|} (2 eps)^{|S|}
/// Tr[tau_S X_{a,pi} · (Y^pi_{a,S})^T].
double success_probability(const Strategy& strat, double eps);

/// Literal dense-tensor evaluation (Kraus form of the channel on Bob's
/// halves); n <= 2. This is the oracle the family form must match.
double success_probability_dense(const Strategy& strat, double eps);

/// The Hoelder-step ceiling sum_pi (sum_a ‖X_{a,pi}‖_{eps,q}^q)^{1/q};
/// the reported success probability never exceeds it.
double holder_chain_bound(const Strategy& strat, double eps, double q);

/// Computational-basis protocol: Alice measures, sends nothing; Bob measures
/// the surviving qubits and fills erased positions with 0. Succeeds with
/// probability (1 - eps/2)^n.
Strategy guess_zero_strategy(int n);

/// Min-entropy in bits: -log2 of the largest outcome probability. The
/// distribution must be nonnegative and sum to 1 within 1e-10.
double min_entropy(const std::vector<double>& probs);

}  // namespace qehc
