#pragma once

// Implicit-enumeration oracle: depth-first enumeration of binary assignments
// in fixed variable order, solving the continuous remainder LP at each step.
// A subtree is closed only when its relaxation is infeasible, integral, or
// provably no better than the best assignment already enumerated, so the
// returned optimum is exact. Search policy shares nothing with solve_mip;
// only the LP core is common.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nne/branch_bound.hpp"
#include "nne/milp.hpp"
#include "nne/simplex.hpp"

namespace nne {

/// Exhaustive oracle for small models. `cap` limits the number of integral
/// variables that are still free once fixed bounds are accounted for;
/// larger models are refused.
inline MipResult enumerate_exact(const MilpModel& model, int cap = 25,
                                 SolverConfig cfg = {}) {
  std::vector<int> free_bins = model.free_integrals();
  for (int j : free_bins) {
    const auto& v = model.vars()[j];
    if (v.lb < -1e-9 || v.ub > 1.0 + 1e-9)
      throw std::invalid_argument("enumerate_exact: non-binary integral " + v.name);
  }
  if (static_cast<int>(free_bins.size()) > cap)
    throw std::invalid_argument(
        "enumerate_exact: " + std::to_string(free_bins.size()) +
        " free integral variables exceed cap " + std::to_string(cap));

  LpEngine engine(model, cfg);
  const int n = model.num_vars();
  std::vector<double> lb(n), ub(n);
  for (int j = 0; j < n; ++j) {
    lb[j] = model.vars()[j].lb;
    ub[j] = model.vars()[j].ub;
  }

  MipResult res;
  double best = kInf;
  std::vector<double> best_vals;
  long nodes = 0;

  // Seed the search with a rounded-and-polished point so dominance pruning
  // works from the first descent. The seed is only an upper bound; it never
  // affects which assignments count as optimal.
  {
    LpSolution root = engine.solve(lb, ub);
    if (root.status == LpSolution::Status::kUnbounded)
      throw std::runtime_error("enumerate_exact: unbounded relaxation");
    if (root.status == LpSolution::Status::kOptimal) {
      std::vector<double> flb = lb, fub = ub;
      for (int j : free_bins)
        flb[j] = fub[j] = std::round(root.values[j]);
      LpSolution fixed = engine.solve(flb, fub);
      if (fixed.status == LpSolution::Status::kOptimal) {
        std::vector<double> cand = fixed.values;
        for (int j : free_bins) cand[j] = std::round(cand[j]);
        mipdetail::polish_binaries(model, lb, cand);
        if (verify(model, cand, 1e-7).ok()) {
          best = model.objective_value(cand);
          best_vals = cand;
        }
      }
    }
  }

  // Recursive lambda via explicit Y-combinator style.
  struct Dfs {
    const MilpModel& model;
    LpEngine& engine;
    const std::vector<int>& free_bins;
    std::vector<double>&lb, &ub;
    double& best;
    std::vector<double>& best_vals;
    long& nodes;

    void run() {
      ++nodes;
      LpSolution rel = engine.solve(lb, ub);
      if (rel.status == LpSolution::Status::kInfeasible) return;
      if (rel.status == LpSolution::Status::kUnbounded)
        throw std::runtime_error("enumerate_exact: unbounded relaxation");
      if (best < kInf && rel.objective >= best - 1e-9) return;

      int next = -1;
      for (int j : free_bins)
        if (ub[j] - lb[j] > 0.5) { next = j; break; }
      bool integral = true;
      for (int j : free_bins)
        if (std::abs(rel.values[j] - std::round(rel.values[j])) > 1e-6) {
          integral = false;
          break;
        }
      if (next < 0 || integral) {
        // Relaxation optimum is attained integrally: subtree is decided.
        best = rel.objective;
        best_vals = rel.values;
        for (int j : free_bins) best_vals[j] = std::round(best_vals[j]);
        return;
      }
      double first = std::round(rel.values[next]);
      for (double val : {first, 1.0 - first}) {
        double slb = lb[next], sub = ub[next];
        lb[next] = ub[next] = val;
        run();
        lb[next] = slb;
        ub[next] = sub;
      }
    }
  };

  Dfs dfs{model, engine, free_bins, lb, ub, best, best_vals, nodes};
  dfs.run();

  res.nodes = nodes;
  if (best == kInf) {
    res.status = MipResult::Status::kInfeasible;
    return res;
  }
  res.status = MipResult::Status::kOptimal;
  res.values = best_vals;
  res.objective = best;
  res.bound = best;
  res.gap = 0.0;
  return res;
}

}  // namespace nne
