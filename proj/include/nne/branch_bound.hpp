#pragma once

// Branch and bound over LP relaxations. Branching is most-fractional with
// lowest-variable-index tie-break; node selection is best-bound with
// depth-first dives. Bound-tightening propagation runs at every node. A solve
// is deterministic (node count included) unless a wall-time limit is set.

#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "nne/milp.hpp"
#include "nne/simplex.hpp"
#include "nne/verify.hpp"

namespace nne {

struct MipResult {
  enum class Status { kOptimal, kFeasibleGap, kInfeasible, kLimitReached };
  Status status = Status::kInfeasible;
  std::vector<double> values;
  double objective = kInf;  // incumbent objective
  double bound = -kInf;     // best proven lower bound
  double gap = kInf;        // (objective - bound) / max(|objective|, 1)
  long nodes = 0;
  double wall_s = 0.0;
};

inline const char* to_string(MipResult::Status s) {
  switch (s) {
    case MipResult::Status::kOptimal: return "optimal";
    case MipResult::Status::kFeasibleGap: return "feasible-with-gap";
    case MipResult::Status::kInfeasible: return "infeasible";
    case MipResult::Status::kLimitReached: return "limit-reached";
  }
  return "?";
}

/// Activity-based bound tightening on `lb`/`ub`. Returns false when the
/// bounds prove the model infeasible. Only sound tightenings are applied, so
/// no integer-feasible point of the current box is ever cut off.
inline bool propagate_bounds(const MilpModel& model, std::vector<double>& lb,
                             std::vector<double>& ub, int max_rounds = 8) {
  const double tol = 1e-9;
  for (int round = 0; round < max_rounds; ++round) {
    bool changed = false;
    for (const auto& row : model.rows()) {
      for (int side = 0; side < 2; ++side) {
        if (side == 0 && row.sense == Sense::GE) continue;
        if (side == 1 && row.sense == Sense::LE) continue;
        // side 0: sum <= rhs; side 1: -sum <= -rhs.
        double flip = side == 0 ? 1.0 : -1.0;
        double rhs = flip * row.rhs;
        double min_act = 0.0;
        int inf_terms = 0;
        for (const auto& [j, a0] : row.coeffs) {
          double a = flip * a0;
          double b = a > 0 ? lb[j] : ub[j];
          if (!std::isfinite(b)) { ++inf_terms; continue; }
          min_act += a * b;
        }
        if (inf_terms == 0 && min_act > rhs + tol * (1.0 + std::abs(rhs)))
          return false;
        if (inf_terms > 1) continue;
        for (const auto& [j, a0] : row.coeffs) {
          double a = flip * a0;
          if (a == 0.0) continue;
          double own = a > 0 ? lb[j] : ub[j];
          bool own_inf = !std::isfinite(own);
          if (inf_terms == 1 && !own_inf) continue;
          double rest = min_act - (own_inf ? 0.0 : a * own);
          double cand = (rhs - rest) / a;
          if (a > 0) {
            if (model.vars()[j].integral) cand = std::floor(cand + 1e-6);
            if (cand < ub[j] - 1e-7) {
              ub[j] = cand;
              changed = true;
              if (lb[j] > ub[j] + tol) return false;
            }
          } else {
            if (model.vars()[j].integral) cand = std::ceil(cand - 1e-6);
            if (cand > lb[j] + 1e-7) {
              lb[j] = cand;
              changed = true;
              if (lb[j] > ub[j] + tol) return false;
            }
          }
        }
      }
    }
    if (!changed) break;
  }
  return true;
}

namespace mipdetail {

/// Greedy incumbent polish: drops cost-positive binaries to zero whenever all
/// touched rows stay feasible. Keeps activation variables tight, so the power
/// recomputed from loads matches the solver objective.
inline void polish_binaries(const MilpModel& model,
                            const std::vector<double>& lb,
                            std::vector<double>& x) {
  const int n = model.num_vars();
  std::vector<std::vector<std::pair<int, double>>> cols(n);
  for (int i = 0; i < model.num_rows(); ++i)
    for (const auto& [j, a] : model.rows()[i].coeffs)
      if (a != 0.0) cols[j].push_back({i, a});
  std::vector<double> act(model.num_rows(), 0.0);
  for (int i = 0; i < model.num_rows(); ++i) act[i] = model.row_activity(i, x);

  for (int pass = 0; pass < 3; ++pass) {
    bool changed = false;
    for (int j = 0; j < n; ++j) {
      const auto& v = model.vars()[j];
      if (!v.integral || v.obj <= 0.0) continue;
      if (x[j] < 0.5 || lb[j] > 0.5) continue;
      bool ok = true;
      for (const auto& [i, a] : cols[j]) {
        const auto& row = model.rows()[i];
        double na = act[i] - a * x[j];
        double t = 1e-7 * (1.0 + std::abs(row.rhs));
        if (row.sense == Sense::LE && na > row.rhs + t) ok = false;
        if (row.sense == Sense::GE && na < row.rhs - t) ok = false;
        if (row.sense == Sense::EQ && std::abs(na - row.rhs) > t) ok = false;
        if (!ok) break;
      }
      if (!ok) continue;
      for (const auto& [i, a] : cols[j]) act[i] -= a * x[j];
      x[j] = 0.0;
      changed = true;
    }
    if (!changed) break;
  }
}

struct Node {
  int parent = -1;
  int branch_var = -1;
  double blo = 0.0, bhi = 0.0;
};

}  // namespace mipdetail

/// Exact branch-and-bound solve. All integral variables must be binary.
inline MipResult solve_mip(const MilpModel& model, SolverConfig cfg = {}) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const double int_tol = 1e-6;
  for (const auto& v : model.vars())
    if (v.integral && (v.lb < -int_tol || v.ub > 1.0 + int_tol))
      throw std::invalid_argument("solve_mip: integral variable " + v.name +
                                  " is not binary");

  MipResult res;
  LpEngine engine(model, cfg);

  std::vector<mipdetail::Node> pool;
  pool.push_back(mipdetail::Node{});
  using Key = std::pair<double, long>;  // (parent bound, insertion sequence)
  std::priority_queue<std::pair<Key, int>, std::vector<std::pair<Key, int>>,
                      std::greater<>> open;
  long seq = 0;
  open.push({{-kInf, seq++}, 0});

  std::vector<double> root_lb(model.num_vars()), root_ub(model.num_vars());
  for (int j = 0; j < model.num_vars(); ++j) {
    root_lb[j] = model.vars()[j].lb;
    root_ub[j] = model.vars()[j].ub;
  }

  std::vector<double> incumbent;
  double inc_obj = kInf;
  // Minimum bound over closed subtrees that were pruned at the gap margin;
  // together with the open-node floor this is the proven global bound.
  double closed_floor = kInf;

  auto slack = [&] {
    return inc_obj == kInf ? 0.0
                           : cfg.rel_gap * std::max(std::abs(inc_obj), 1.0) * 0.999;
  };
  auto prune_cut = [&] { return inc_obj == kInf ? kInf : inc_obj - slack(); };
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  };
  auto try_incumbent = [&](const std::vector<double>& relaxed,
                           const std::vector<double>& lb,
                           const std::vector<double>& ub) {
    std::vector<double> cand = relaxed;
    double shift = 0.0;
    for (int j = 0; j < model.num_vars(); ++j)
      if (model.vars()[j].integral) {
        double r = std::round(cand[j]);
        shift = std::max(shift, std::abs(cand[j] - r));
        cand[j] = r;
      }
    if (shift > 1e-9) {
      // Re-solve continuous part with integers pinned so flows stay exact.
      std::vector<double> flb = lb, fub = ub;
      for (int j = 0; j < model.num_vars(); ++j)
        if (model.vars()[j].integral) { flb[j] = cand[j]; fub[j] = cand[j]; }
      LpSolution fixed = engine.solve(flb, fub);
      if (fixed.status != LpSolution::Status::kOptimal) return;
      cand = fixed.values;
      for (int j = 0; j < model.num_vars(); ++j)
        if (model.vars()[j].integral) cand[j] = std::round(cand[j]);
    }
    std::vector<double> polished = cand;
    mipdetail::polish_binaries(model, lb, polished);
    for (auto* p : {&polished, &cand}) {
      double obj = model.objective_value(*p);
      if (obj < inc_obj - 1e-12 && verify(model, *p, 1e-7).ok()) {
        incumbent = *p;
        inc_obj = obj;
        return;
      }
    }
  };

  std::vector<double> lb, ub;
  bool limit_hit = false;

  auto open_floor = [&] {
    return open.empty() ? kInf : open.top().first.first;
  };
  auto global_bound = [&] {
    return std::min({closed_floor, open_floor(), inc_obj});
  };

  while (!open.empty()) {
    if (cfg.node_limit >= 0 && res.nodes >= cfg.node_limit) { limit_hit = true; break; }
    if (cfg.time_limit_s > 0 && elapsed() > cfg.time_limit_s) { limit_hit = true; break; }
    if (inc_obj < kInf &&
        (inc_obj - global_bound()) <= cfg.rel_gap * std::max(std::abs(inc_obj), 1.0))
      break;

    auto [key, idx] = open.top();
    open.pop();

    // Depth-first dive from the popped best-bound node.
    int cur = idx;
    double cur_bound = key.first;
    while (cur >= 0) {
      if (cfg.node_limit >= 0 && res.nodes >= cfg.node_limit) { limit_hit = true; break; }
      if (cfg.time_limit_s > 0 && elapsed() > cfg.time_limit_s) { limit_hit = true; break; }
      if (cur_bound >= prune_cut()) {
        closed_floor = std::min(closed_floor, cur_bound);
        break;
      }

      lb = root_lb;
      ub = root_ub;
      for (int a = cur; a > 0; a = pool[a].parent) {
        int v = pool[a].branch_var;
        lb[v] = std::max(lb[v], pool[a].blo);
        ub[v] = std::min(ub[v], pool[a].bhi);
      }

      ++res.nodes;
      if (!propagate_bounds(model, lb, ub)) break;
      LpSolution rel = engine.solve(lb, ub);
      if (rel.status == LpSolution::Status::kInfeasible) break;
      if (rel.status == LpSolution::Status::kUnbounded)
        throw std::runtime_error("solve_mip: relaxation unbounded");

      cur_bound = std::max(cur_bound, rel.objective);
      if (cur_bound >= prune_cut()) {
        closed_floor = std::min(closed_floor, cur_bound);
        break;
      }

      int bvar = -1;
      double bscore = int_tol;
      for (int j = 0; j < model.num_vars(); ++j) {
        if (!model.vars()[j].integral) continue;
        double f = std::abs(rel.values[j] - std::round(rel.values[j]));
        if (f > bscore + 1e-12) { bscore = f; bvar = j; }
      }

      if (bvar < 0) {
        try_incumbent(rel.values, lb, ub);
        closed_floor = std::min(closed_floor, cur_bound);
        break;
      }

      double frac = rel.values[bvar];
      double down_hi = std::floor(frac);
      double up_lo = std::ceil(frac);
      bool up_first = (frac - down_hi) >= 0.5;
      mipdetail::Node down{cur, bvar, -kInf, down_hi};
      mipdetail::Node up{cur, bvar, up_lo, kInf};
      pool.push_back(up_first ? down : up);
      open.push({{cur_bound, seq++}, static_cast<int>(pool.size()) - 1});
      pool.push_back(up_first ? up : down);
      cur = static_cast<int>(pool.size()) - 1;
    }
    if (limit_hit) {
      // The abandoned dive node still bounds its subtree.
      if (cur >= 0) closed_floor = std::min(closed_floor, cur_bound);
      break;
    }
  }

  res.wall_s = elapsed();
  double bound = global_bound();
  if (incumbent.empty()) {
    if (limit_hit) {
      res.status = MipResult::Status::kLimitReached;
      res.bound = bound == kInf ? -kInf : bound;
    } else {
      res.status = MipResult::Status::kInfeasible;
    }
    return res;
  }
  res.values = incumbent;
  res.objective = inc_obj;
  res.bound = std::min(bound, inc_obj);
  res.gap = (res.objective - res.bound) / std::max(std::abs(res.objective), 1.0);
  if (res.gap < 0) res.gap = 0.0;
  res.status = res.gap <= cfg.rel_gap ? MipResult::Status::kOptimal
                                      : MipResult::Status::kFeasibleGap;
  return res;
}

}  // namespace nne
