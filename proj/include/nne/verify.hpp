#pragma once

// Independent feasibility checker. Walks the raw model row by row and shares
// no state or code with the simplex engine.

#include <cmath>
#include <string>
#include <vector>

#include "nne/milp.hpp"

namespace nne {

struct VerifyReport {
  std::vector<std::string> violations;
  double objective = 0.0;
  bool ok() const { return violations.empty(); }
};

inline VerifyReport verify(const MilpModel& model, const std::vector<double>& x,
                           double tol = 1e-9, double int_tol = 1e-6) {
  VerifyReport rep;
  if (static_cast<int>(x.size()) != model.num_vars()) {
    rep.violations.push_back("value vector has wrong length");
    return rep;
  }
  for (int j = 0; j < model.num_vars(); ++j) {
    const auto& v = model.vars()[j];
    if (!std::isfinite(x[j])) {
      rep.violations.push_back("non-finite value for " + v.name);
      continue;
    }
    double t = tol * (1.0 + std::abs(x[j]));
    if (x[j] < v.lb - t)
      rep.violations.push_back(v.name + " below lower bound: " +
                               std::to_string(x[j]) + " < " + std::to_string(v.lb));
    if (x[j] > v.ub + t)
      rep.violations.push_back(v.name + " above upper bound: " +
                               std::to_string(x[j]) + " > " + std::to_string(v.ub));
    if (v.integral && std::abs(x[j] - std::round(x[j])) > int_tol)
      rep.violations.push_back(v.name + " not integral: " + std::to_string(x[j]));
    rep.objective += v.obj * x[j];
  }
  for (int i = 0; i < model.num_rows(); ++i) {
    const auto& r = model.rows()[i];
    double act = 0.0, scale = 1.0;
    for (const auto& [j, a] : r.coeffs) {
      act += a * x[j];
      scale = std::max(scale, std::abs(a * x[j]));
    }
    double t = tol * scale;
    bool bad = false;
    switch (r.sense) {
      case Sense::LE: bad = act > r.rhs + t; break;
      case Sense::GE: bad = act < r.rhs - t; break;
      case Sense::EQ: bad = std::abs(act - r.rhs) > t; break;
    }
    if (bad)
      rep.violations.push_back("row " + r.name + " violated: activity " +
                               std::to_string(act) + " vs rhs " +
                               std::to_string(r.rhs));
  }
  return rep;
}

}  // namespace nne
