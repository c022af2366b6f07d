#include "qehc/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qehc {

using nlohmann::json;

json matrix_to_json(const Matrix& M) {
  json j;
  j["rows"] = M.rows();
  j["cols"] = M.cols();
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    json row_re = json::array();
    json row_im = json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
      row_re.push_back(M(r, c).real());
      row_im.push_back(M(r, c).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

json qubit_operator_to_json(const QubitOperator& X) {
  json j = matrix_to_json(X.mat);
  j["n"] = X.n;
  return j;
}

Matrix matrix_from_json(const json& j) {
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("matrix document: rows and cols must be >= 1");
  }
  const json& re = j.at("re");
  const json& im = j.at("im");
  if (re.size() != static_cast<std::size_t>(rows) ||
      im.size() != static_cast<std::size_t>(rows)) {
    throw std::invalid_argument("matrix document: grid row count mismatch");
  }
  Matrix M(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row_re = re.at(r);
    const json& row_im = im.at(r);
    if (row_re.size() != static_cast<std::size_t>(cols) ||
        row_im.size() != static_cast<std::size_t>(cols)) {
      throw std::invalid_argument("matrix document: grid column count mismatch");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      M(r, c) = Complex(row_re.at(c).get<double>(), row_im.at(c).get<double>());
    }
  }
  return M;
}

QubitOperator qubit_operator_from_json(const json& j) {
  Matrix M = matrix_from_json(j);
  int n;
  if (j.contains("n")) {
    n = j.at("n").get<int>();
  } else {
    n = 0;
    while ((Eigen::Index{1} << n) < M.rows()) ++n;
  }
  return QubitOperator::make(n, std::move(M));
}

json family_to_json(const ErasedFamily& F) {
  json j;
  j["n"] = F.n;
  json blocks = json::array();
  for (std::uint32_t s = 0; s < F.pattern_count(); ++s) {
    json rec;
    rec["subset"] = SubsetMask{F.n, s}.members();
    rec["matrix"] = matrix_to_json(F.blocks[s]);
    blocks.push_back(std::move(rec));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

ErasedFamily family_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  if (n < 0 || n > 16) {
    throw std::invalid_argument("family document: n out of range");
  }
  ErasedFamily F{n, std::vector<Matrix>(std::size_t{1} << n)};
  std::vector<bool> seen(std::size_t{1} << n, false);
  for (const json& rec : j.at("blocks")) {
    const SubsetMask S =
        SubsetMask::from_members(n, rec.at("subset").get<std::vector<int>>());
    Matrix M = matrix_from_json(rec.at("matrix"));
    const Eigen::Index want = Eigen::Index{1} << (n - S.count());
    if (M.rows() != want || M.cols() != want) {
      throw std::invalid_argument("family document: block dimension mismatch");
    }
    F.blocks[S.bits] = std::move(M);
    seen[S.bits] = true;
  }
  for (bool s : seen) {
    if (!s) throw std::invalid_argument("family document: missing subset block");
  }
  return F;
}

json strategy_to_json(const Strategy& S) {
  json j;
  j["n"] = S.n;
  json alice = json::array();
  for (const auto& el : S.alice) {
    json rec;
    rec["outcome"] = el.outcome;
    rec["message"] = el.message;
    rec["matrix"] = matrix_to_json(el.op);
    alice.push_back(std::move(rec));
  }
  j["alice"] = std::move(alice);
  json bob = json::array();
  for (const auto& [msg, elements] : S.bob) {
    json rec;
    rec["message"] = msg;
    json elems = json::array();
    for (const auto& el : elements) {
      json e;
      e["outcome"] = el.outcome;
      e["family"] = family_to_json(el.family);
      elems.push_back(std::move(e));
    }
    rec["elements"] = std::move(elems);
    bob.push_back(std::move(rec));
  }
  j["bob"] = std::move(bob);
  return j;
}

Strategy strategy_from_json(const json& j) {
  Strategy S;
  S.n = j.at("n").get<int>();
  for (const json& rec : j.at("alice")) {
    S.alice.push_back({rec.at("outcome").get<std::string>(),
                       rec.at("message").get<std::string>(),
                       matrix_from_json(rec.at("matrix"))});
  }
  for (const json& rec : j.at("bob")) {
    std::vector<BobElement> elements;
    for (const json& e : rec.at("elements")) {
      elements.push_back({e.at("outcome").get<std::string>(),
                          family_from_json(e.at("family"))});
    }
    S.bob[rec.at("message").get<std::string>()] = std::move(elements);
  }
  return S;
}

json candidate_to_json(const Candidate& c) {
  json j;
  j["kind"] = c.kind;
  j["matrix"] = qubit_operator_to_json(c.X);
  j["p"] = c.p;
  j["q"] = c.q;
  j["c"] = c.c;
  j["eps"] = c.eps;
  j["t"] = c.t;
  j["objective"] = c.objective;
  j["derivative_fd"] = c.derivative_fd;
  j["certified"] = c.certified;
  j["diagnostics"] = c.diagnostics;
  return j;
}

namespace {

// nlohmann serializes NaN as null; map it back.
double double_or_nan(const json& j, const char* key) {
  const json& v = j.at(key);
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

}  // namespace

Candidate candidate_from_json(const json& j) {
  Candidate c;
  c.kind = j.at("kind").get<std::string>();
  c.X = qubit_operator_from_json(j.at("matrix"));
  c.p = double_or_nan(j, "p");
  c.q = double_or_nan(j, "q");
  c.c = double_or_nan(j, "c");
  c.eps = double_or_nan(j, "eps");
  c.t = double_or_nan(j, "t");
  c.objective = j.at("objective").get<double>();
  c.derivative_fd = j.value("derivative_fd", 0.0);
  c.certified = j.value("certified", false);
  if (j.contains("diagnostics")) {
    c.diagnostics = j.at("diagnostics").get<std::map<std::string, double>>();
  }
  return c;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open file for writing: " + tmp.string());
    }
    out << content;
    out.flush();
    if (!out) {
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

}  // namespace qehc
