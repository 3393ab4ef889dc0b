#pragma once

// Seeded random mixed-integer model family used by the oracle-agreement
// tests: at most 25 binaries and 40 constraints, always bounded.

#include <string>

#include "nne/milp.hpp"
#include "nne/rng.hpp"

namespace nne::testsupport {

inline MilpModel make_random_model(std::uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, 7701));
  MilpModel m;
  int nb = 4 + static_cast<int>(rng.next_below(13));    // 4..16 binaries
  int nc = static_cast<int>(rng.next_below(5));         // 0..4 continuous
  for (int j = 0; j < nb; ++j) {
    double obj = (static_cast<double>(rng.next_below(41)) - 20.0) / 2.0;
    m.add_var("b" + std::to_string(j), 0.0, 1.0, true, obj);
  }
  for (int j = 0; j < nc; ++j) {
    double ub = 1.0 + 9.0 * rng.next_double();
    double obj = (static_cast<double>(rng.next_below(21)) - 10.0) / 2.0;
    m.add_var("c" + std::to_string(j), 0.0, ub, false, obj);
  }
  int n = m.num_vars();

  // Reference point used to aim most rows at feasibility.
  std::vector<double> ref(n, 0.0);
  for (int j = 0; j < nb; ++j) ref[j] = static_cast<double>(rng.next_below(2));
  for (int j = nb; j < n; ++j) ref[j] = m.vars()[j].ub * rng.next_double();

  int rows = 4 + static_cast<int>(rng.next_below(25));  // 4..28 rows
  for (int i = 0; i < rows; ++i) {
    int terms = 2 + static_cast<int>(rng.next_below(4));
    std::vector<std::pair<int, double>> coeffs;
    double act = 0.0;
    for (int t = 0; t < terms; ++t) {
      int j = static_cast<int>(rng.next_below(n));
      bool seen = false;
      for (auto& [jj, _] : coeffs) seen |= jj == j;
      if (seen) continue;
      double a = static_cast<double>(rng.next_below(9)) - 4.0;
      if (a == 0.0) a = 1.0;
      coeffs.push_back({j, a});
      act += a * ref[j];
    }
    int kind = static_cast<int>(rng.next_below(24));
    if (kind < 12) {
      m.add_row("r" + std::to_string(i), coeffs, Sense::LE,
                act + 6.0 * rng.next_double());
    } else if (kind < 23) {
      m.add_row("r" + std::to_string(i), coeffs, Sense::GE,
                act - 6.0 * rng.next_double());
    } else {
      // Occasionally aim past the reference point; some models end up
      // infeasible, which both solvers must agree on.
      m.add_row("r" + std::to_string(i), coeffs, Sense::LE,
                act - 2.0 - 4.0 * rng.next_double());
    }
  }
  return m;
}

}  // namespace nne::testsupport
