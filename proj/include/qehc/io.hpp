#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qehc/crg.hpp"
#include "qehc/search.hpp"

namespace qehc {

/// Matrix exchange format: fields n (qubit count, optional), rows, cols and
/// two rows×cols grids "re" and "im". Values round-trip exactly (shortest
/// double representation), well inside the 1e-15 relative requirement.
nlohmann::json matrix_to_json(const Matrix& M);
nlohmann::json qubit_operator_to_json(const QubitOperator& X);
Matrix matrix_from_json(const nlohmann::json& j);
QubitOperator qubit_operator_from_json(const nlohmann::json& j);

/// Families serialize as a list of (sorted subset, matrix) records.
nlohmann::json family_to_json(const ErasedFamily& F);
ErasedFamily family_from_json(const nlohmann::json& j);

nlohmann::json strategy_to_json(const Strategy& S);
Strategy strategy_from_json(const nlohmann::json& j);

/// Candidates carry their full witness: matrix, parameters and both
/// derivative routes, enough for external replay.
nlohmann::json candidate_to_json(const Candidate& c);
Candidate candidate_from_json(const nlohmann::json& j);

/// 17 significant digits, '.' decimal; round-trips doubles exactly.
std::string fmt_double(double v);

std::string read_text_file(const std::string& path);

/// Write-then-rename so partially written reports are never observed.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace qehc
