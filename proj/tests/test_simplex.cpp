#include <catch2/catch_amalgamated.hpp>

#include "nne/milp.hpp"
#include "nne/rng.hpp"
#include "nne/simplex.hpp"
#include "nne/verify.hpp"
#include "support/dense_lp.hpp"

#include <sstream>

using namespace nne;
using nne::testsupport::DenseLpResult;
using nne::testsupport::dense_lp_solve;

TEST_CASE("bounded single variable") {
  MilpModel m;
  m.add_var("x", 0.0, 5.0, false, -1.0);
  auto sol = solve_lp(m);
  REQUIRE(sol.status == LpSolution::Status::kOptimal);
  CHECK(sol.values[0] == Catch::Approx(5.0).margin(1e-9));
  CHECK(sol.objective == Catch::Approx(-5.0).margin(1e-9));
}

TEST_CASE("two-constraint system solves to the tight vertex") {
  MilpModel m;
  int x = m.add_var("x", 0.0, kInf, false, 1.0);
  int y = m.add_var("y", 0.0, kInf, false, 1.0);
  m.add_row("c1", {{x, 1.0}, {y, 2.0}}, Sense::GE, 4.0);
  m.add_row("c2", {{x, 3.0}, {y, 1.0}}, Sense::GE, 6.0);
  auto sol = solve_lp(m);
  REQUIRE(sol.status == LpSolution::Status::kOptimal);
  CHECK(sol.values[x] == Catch::Approx(1.6).margin(1e-9));
  CHECK(sol.values[y] == Catch::Approx(1.2).margin(1e-9));
  CHECK(sol.objective == Catch::Approx(2.8).margin(1e-9));
}

TEST_CASE("unbounded ray is reported") {
  MilpModel m;
  m.add_var("x", 0.0, kInf, false, -1.0);
  auto sol = solve_lp(m);
  CHECK(sol.status == LpSolution::Status::kUnbounded);

  MilpModel m2;
  int x = m2.add_var("x", 0.0, kInf, false, -1.0);
  int y = m2.add_var("y", 0.0, kInf, false, 0.0);
  m2.add_row("r", {{x, 1.0}, {y, -1.0}}, Sense::LE, 3.0);
  CHECK(solve_lp(m2).status == LpSolution::Status::kUnbounded);
}

TEST_CASE("infeasible box is reported") {
  MilpModel m;
  int x = m.add_var("x", 0.0, kInf, false, 1.0);
  m.add_row("lo", {{x, 1.0}}, Sense::GE, 3.0);
  m.add_row("hi", {{x, 1.0}}, Sense::LE, 1.0);
  CHECK(solve_lp(m).status == LpSolution::Status::kInfeasible);
}

TEST_CASE("equalities and negative bounds") {
  MilpModel m;
  int x = m.add_var("x", -10.0, 10.0, false, 2.0);
  int y = m.add_var("y", -10.0, 10.0, false, -3.0);
  m.add_row("sum", {{x, 1.0}, {y, 1.0}}, Sense::EQ, 1.0);
  auto sol = solve_lp(m);
  REQUIRE(sol.status == LpSolution::Status::kOptimal);
  // Push y up to its bound, x = 1 - y.
  CHECK(sol.values[y] == Catch::Approx(10.0).margin(1e-9));
  CHECK(sol.values[x] == Catch::Approx(-9.0).margin(1e-9));
  CHECK(sol.objective == Catch::Approx(-48.0).margin(1e-9));
}

static MilpModel random_lp(std::uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, 31));
  MilpModel m;
  int n = 2 + static_cast<int>(rng.next_below(8));
  for (int j = 0; j < n; ++j) {
    double lb = rng.next_below(4) == 0 ? -1.0 - 4.0 * rng.next_double() : 0.0;
    double ub = lb + 0.5 + 9.0 * rng.next_double();
    if (rng.next_below(9) == 0) ub = kInf;  // some rays escape to infinity
    double obj = (static_cast<double>(rng.next_below(21)) - 10.0) / 2.0;
    m.add_var("x" + std::to_string(j), lb, ub, false, obj);
  }
  int rows = 1 + static_cast<int>(rng.next_below(7));
  for (int i = 0; i < rows; ++i) {
    std::vector<std::pair<int, double>> coeffs;
    int terms = 1 + static_cast<int>(rng.next_below(4));
    for (int t = 0; t < terms; ++t) {
      int j = static_cast<int>(rng.next_below(n));
      bool dup = false;
      for (auto& [jj, _] : coeffs) dup |= jj == j;
      if (!dup)
        coeffs.push_back({j, (static_cast<double>(rng.next_below(9)) - 4.0) / 1.0});
    }
    Sense s = rng.next_below(3) == 0   ? Sense::EQ
              : rng.next_below(2) == 0 ? Sense::LE
                                       : Sense::GE;
    double rhs = (static_cast<double>(rng.next_below(25)) - 12.0) / 2.0;
    m.add_row("r" + std::to_string(i), coeffs, s, rhs);
  }
  return m;
}

TEST_CASE("random LPs agree with the dense-tableau oracle") {
  int optimal = 0, infeasible = 0, unbounded = 0;
  for (std::uint64_t seed = 1; seed <= 220; ++seed) {
    MilpModel m = random_lp(seed);
    auto fast = [&] {
      try {
        return solve_lp(m);
      } catch (const std::exception& e) {
        FAIL("seed " << seed << ": " << e.what());
        return LpSolution{};
      }
    }();
    auto slow = dense_lp_solve(m);
    INFO("seed " << seed);
    if (slow.status == DenseLpResult::Status::kOptimal) {
      REQUIRE(fast.status == LpSolution::Status::kOptimal);
      CHECK(fast.objective ==
            Catch::Approx(slow.objective).margin(1e-6).epsilon(1e-7));
      CHECK(verify(m, fast.values, 1e-7).ok());
      ++optimal;
    } else if (slow.status == DenseLpResult::Status::kInfeasible) {
      REQUIRE(fast.status == LpSolution::Status::kInfeasible);
      ++infeasible;
    } else {
      REQUIRE(fast.status == LpSolution::Status::kUnbounded);
      ++unbounded;
    }
  }
  // The family must exercise all three outcomes.
  CHECK(optimal > 50);
  CHECK(infeasible > 10);
  CHECK(unbounded > 5);
}

TEST_CASE("solve is deterministic") {
  MilpModel m = random_lp(17);
  auto a = solve_lp(m);
  auto b = solve_lp(m);
  REQUIRE(a.status == b.status);
  CHECK(a.iterations == b.iterations);
  if (a.status == LpSolution::Status::kOptimal) {
    for (size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
  }
}

TEST_CASE("degenerate LP with many ties still terminates") {
  MilpModel m;
  std::vector<int> xs;
  for (int j = 0; j < 12; ++j)
    xs.push_back(m.add_var("x" + std::to_string(j), 0.0, 1.0, false, -1.0));
  for (int i = 0; i < 12; ++i) {
    std::vector<std::pair<int, double>> c;
    for (int j = 0; j <= i; ++j) c.push_back({xs[j], 1.0});
    m.add_row("r" + std::to_string(i), c, Sense::LE, 0.0);
  }
  auto sol = solve_lp(m);
  REQUIRE(sol.status == LpSolution::Status::kOptimal);
  CHECK(sol.objective == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("LP format export contains objective, rows, bounds, binaries") {
  MilpModel m;
  int a = m.add_var("alpha", 0.0, 1.0, true, 2.5);
  int b = m.add_var("beta", -1.0, kInf, false, -1.0);
  m.add_row("cap", {{a, 6.0}, {b, 4.0}}, Sense::LE, 9.0);
  std::ostringstream os;
  m.write_lp(os);
  std::string text = os.str();
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("cap:") != std::string::npos);
  CHECK(text.find("Binaries") != std::string::npos);
  CHECK(text.find("alpha") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}
