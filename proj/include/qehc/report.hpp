#pragma once

#include <map>
#include <string>

namespace qehc {

/// Outcome of one inequality check. Sign convention: gap = rhs - lhs and the
/// check passes iff gap >= -tol. `witness` is a JSON document sufficient to
/// replay the check; `aux` records secondary values (second-sided gaps,
/// bridge residuals, per-summand minima).
struct CheckReport {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string witness;
  std::map<std::string, double> aux;
};

inline CheckReport make_report(std::string id, double lhs, double rhs, double tol,
                               std::string witness) {
  CheckReport r;
  r.id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = rhs - lhs;
  r.tol = tol;
  r.pass = r.gap >= -tol;
  r.witness = std::move(witness);
  return r;
}

}  // namespace qehc
