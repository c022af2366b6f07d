#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qehc/entropy.hpp"

namespace qehc {

struct SearchBudget {
  int restarts = 20;
  int iterations = 500;
  double step_init = 0.3;
  double step_decay = 0.995;
  std::uint64_t seed = 0;
};

/// Best-found PSD operator with its parameters and objective value.
/// `certified` is set only by certify() after a high-precision replay agrees
/// with the stored objective to 1e-10.
struct Candidate {
  std::string kind;  // "ratio" or "monotonicity"
  QubitOperator X;
  double p = 0.0;
  double q = 0.0;
  double c = 0.0;
  double eps = 0.0;
  double t = 0.0;
  double objective = 0.0;
  double derivative_fd = 0.0;  // monotonicity candidates carry both routes
  bool certified = false;
  std::map<std::string, double> diagnostics;
};

/// Derivative-free ascent on ln(‖X‖_{eps,q} / ‖X‖_p) over PSD X = A†A with
/// coordinate-wise probes, Gaussian restarts and geometric step decay. The
/// spiky rank-one matrix is always evaluated as a lower-bound candidate, so
/// at eps = 0, q > p the report is at least the rank-one ratio.
Candidate maximize_ratio(int n, double p, double q, double eps, const SearchBudget& budget);

/// Hunt for g'(t) > 0 on the coupled path. When q_override > 1 the scan
/// targets the single t with q(t) = q_override; otherwise it walks t_grid.
/// A candidate is listed only when the closed form and the finite-difference
/// oracle both exceed 1e-7 and agree in sign and magnitude to 10%.
std::vector<Candidate> scan_monotonicity(int n, double p, double c, double q_override,
                                         const std::vector<double>& t_grid,
                                         const SearchBudget& budget);

/// Replay the candidate's objective with a tightened eigendecomposition
/// residual (1e-12) and, for monotonicity candidates, finite-difference steps
/// h in {1e-4, 1e-5, 1e-6} with Richardson-consistency checks. Sets
/// `certified` only on agreement; diagnostics record the deltas either way.
Candidate certify(const Candidate& cand);

}  // namespace qehc
