#include <doctest.h>

#include "qehc/search.hpp"
#include "test_support.hpp"

using namespace qehc;

namespace {

SearchBudget small_budget(std::uint64_t seed) {
  SearchBudget b;
  b.restarts = 4;
  b.iterations = 120;
  b.seed = seed;
  return b;
}

}  // namespace

TEST_SUITE_BEGIN("search");

TEST_CASE("admissible parameters never beat 1") {
  // case 1 boundary
  Candidate c1 = maximize_ratio(2, 1.5, 2.5, 1.0 - 0.5 / 1.5, small_budget(1));
  CHECK(c1.objective <= 1.0 + 1e-7);
  // case 2 boundary
  Candidate c2 = maximize_ratio(2, 1.3, 1.8, 1.0 - std::pow(0.3 / 0.8, 2.0),
                                small_budget(2));
  CHECK(c2.objective <= 1.0 + 1e-7);
}

TEST_CASE("eps = 0, q = p sits at 1") {
  const Candidate c = maximize_ratio(2, 1.5, 1.5, 0.0, small_budget(3));
  CHECK(c.objective == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("eps = 0, q > p reaches the rank-one ratio") {
  const int n = 2;
  const double p = 1.5, q = 2.5;
  const Candidate c = maximize_ratio(n, p, q, 0.0, small_budget(4));
  const double rank_one = std::pow(2.0, n * (1.0 / p - 1.0 / q));
  CHECK(c.objective >= rank_one - 1e-9);
}

TEST_CASE("search is deterministic per seed") {
  const Candidate a = maximize_ratio(2, 1.4, 2.0, 0.2, small_budget(11));
  const Candidate b = maximize_ratio(2, 1.4, 2.0, 0.2, small_budget(11));
  CHECK(a.objective == b.objective);
  CHECK((a.X.mat - b.X.mat).norm() == 0.0);
}

TEST_CASE("certify replays ratio candidates") {
  Candidate c = maximize_ratio(2, 1.5, 2.0, 1.0 - std::pow(0.5, 2.0), small_budget(5));
  c = certify(c);
  CHECK(c.certified);
  CHECK(c.objective <= 1.0 + 1e-6);

  // identity-based candidate certifies at value 1
  Candidate id;
  id.kind = "ratio";
  id.X = QubitOperator{2, Matrix::Identity(4, 4)};
  id.p = 1.5;
  id.q = 2.0;
  id.eps = 0.4;
  id.objective = 1.0;
  const Candidate idc = certify(id);
  CHECK(idc.certified);

  // tampered witness: perturbing X shifts the replayed value
  Candidate bad = idc;
  bad.X.mat(0, 0) += 0.05;
  const Candidate badc = certify(bad);
  CHECK_FALSE(badc.certified);
  CHECK(badc.diagnostics.at("replay_delta") > 1e-6);
}

TEST_CASE("monotonicity scan is quiet inside the proven region") {
  // p <= 2 and small t keep q(t) in (1, 2]: nothing should be reported
  const std::vector<double> ts = {0.1, 0.3, 0.6};
  const auto found = scan_monotonicity(2, 1.3, 2.0, 0.0, ts, small_budget(6));
  CHECK(found.empty());
}

TEST_CASE("reported monotonicity candidates certify") {
  // beyond q = 2 the derivative may turn positive; anything reported must
  // survive the double-route replay
  SearchBudget b = small_budget(7);
  b.restarts = 6;
  b.iterations = 200;
  const std::vector<double> ts = {0.4, 0.8};
  auto found = scan_monotonicity(2, 2.5, 2.0, 0.0, ts, b);
  for (auto& cand : found) {
    CHECK(cand.objective > 1e-7);
    CHECK(cand.derivative_fd > 1e-7);
    const Candidate cert = certify(cand);
    CHECK(cert.certified);
  }

  auto again = scan_monotonicity(2, 2.5, 2.0, 0.0, ts, b);
  REQUIRE(found.size() == again.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    CHECK(found[i].objective == again[i].objective);
  }
}

TEST_CASE("q_override targets one path point") {
  SearchBudget b = small_budget(8);
  b.restarts = 2;
  b.iterations = 60;
  const auto found = scan_monotonicity(1, 1.5, 2.0, 3.0, {}, b);
  // q(t) = 3 forces t = 2 ln 4; any candidate must sit there
  for (const auto& cand : found) {
    CHECK(cand.q == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(cand.t == doctest::Approx(2.0 * std::log(4.0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(scan_monotonicity(1, 1.5, 2.0, 1.2, {}, b), std::invalid_argument);
}

TEST_CASE("identity never lists as a violation") {
  // g' = 0 at the identity: below the reporting threshold by construction
  const PathPoint pt{0.8, 2.5, 2.0};
  CHECK(std::abs(g_prime_closed(QubitOperator{2, Matrix::Identity(4, 4)}, pt)) <= 1e-12);
}

TEST_SUITE_END();
