#pragma once

// Test-only oracle: a classic two-phase dense-tableau simplex over the
// standard form min c'x, Ax = b, x >= 0. General models are converted by
// shifting/splitting variables and adding slack rows. Deliberately naive and
// completely independent of the production solver.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nne/milp.hpp"

namespace nne::testsupport {

struct DenseLpResult {
  enum class Status { kOptimal, kInfeasible, kUnbounded };
  Status status = Status::kOptimal;
  double objective = 0.0;
  std::vector<double> values;  // in the original model's variable space
};

namespace denselp {

struct Std {
  // min c'x, A x = b, x >= 0
  std::vector<std::vector<double>> a;
  std::vector<double> b, c;
  double obj_shift = 0.0;
  // original var j maps to columns pos[j] (and neg[j] if split)
  std::vector<int> pos, neg;
  std::vector<double> shift;
};

inline Std to_standard(const MilpModel& m) {
  Std s;
  int n = m.num_vars();
  s.pos.assign(n, -1);
  s.neg.assign(n, -1);
  s.shift.assign(n, 0.0);
  int cols = 0;
  std::vector<std::pair<int, double>> ub_rows;  // (var, upper) for x' <= u-l
  for (int j = 0; j < n; ++j) {
    const auto& v = m.vars()[j];
    if (std::isfinite(v.lb)) {
      s.pos[j] = cols++;
      s.shift[j] = v.lb;
      if (std::isfinite(v.ub)) ub_rows.push_back({j, v.ub - v.lb});
    } else if (std::isfinite(v.ub)) {
      // x = u - x', x' >= 0
      s.pos[j] = cols++;
      s.neg[j] = -2;  // marker: mirrored
      s.shift[j] = v.ub;
    } else {
      s.pos[j] = cols++;
      s.neg[j] = cols++;
    }
  }
  auto col_of = [&](int j, double& sign, double& off) {
    sign = 1.0;
    off = s.shift[j];
    if (s.neg[j] == -2) sign = -1.0;
    return s.pos[j];
  };

  int rows = m.num_rows() + static_cast<int>(ub_rows.size());
  int total_cols = cols + rows;  // slack/surplus space, one per row max
  s.a.assign(rows, std::vector<double>(total_cols, 0.0));
  s.b.assign(rows, 0.0);
  s.c.assign(total_cols, 0.0);

  for (int j = 0; j < n; ++j) {
    double sign, off;
    int cjl = col_of(j, sign, off);
    s.c[cjl] += m.vars()[j].obj * sign;
    if (s.neg[j] >= 0) s.c[s.neg[j]] -= m.vars()[j].obj;
    s.obj_shift += m.vars()[j].obj * off;
  }

  int slack = cols;
  for (int i = 0; i < m.num_rows(); ++i) {
    const auto& r = m.rows()[i];
    double rhs = r.rhs;
    for (const auto& [j, av] : r.coeffs) {
      double sign, off;
      int cjl = col_of(j, sign, off);
      s.a[i][cjl] += av * sign;
      if (s.neg[j] >= 0) s.a[i][s.neg[j]] -= av;
      rhs -= av * off;
    }
    if (r.sense == Sense::LE) s.a[i][slack++] = 1.0;
    if (r.sense == Sense::GE) s.a[i][slack++] = -1.0;
    s.b[i] = rhs;
  }
  for (size_t k = 0; k < ub_rows.size(); ++k) {
    int i = m.num_rows() + static_cast<int>(k);
    s.a[i][s.pos[ub_rows[k].first]] = 1.0;
    s.a[i][slack++] = 1.0;
    s.b[i] = ub_rows[k].second;
  }
  for (auto& row : s.a) row.resize(slack);
  s.c.resize(slack);
  return s;
}

// Standard two-phase tableau simplex with Bland's rule throughout.
inline DenseLpResult::Status solve_standard(Std& s, std::vector<double>& x) {
  int m = static_cast<int>(s.a.size());
  int n = static_cast<int>(s.c.size());
  for (int i = 0; i < m; ++i)
    if (s.b[i] < 0) {
      for (auto& v : s.a[i]) v = -v;
      s.b[i] = -s.b[i];
    }
  // tableau with artificials
  int total = n + m;
  std::vector<std::vector<double>> t(m, std::vector<double>(total + 1, 0.0));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = s.a[i][j];
    t[i][n + i] = 1.0;
    t[i][total] = s.b[i];
    basis[i] = n + i;
  }
  auto pivot = [&](int pr, int pc) {
    double pv = t[pr][pc];
    for (double& v : t[pr]) v /= pv;
    for (int i = 0; i < m; ++i) {
      if (i == pr || t[i][pc] == 0.0) continue;
      double f = t[i][pc];
      for (int j = 0; j <= total; ++j) t[i][j] -= f * t[pr][j];
    }
    basis[pr] = pc;
  };
  auto run = [&](const std::vector<double>& cost, int ncols) {
    while (true) {
      std::vector<double> y(m);
      for (int i = 0; i < m; ++i) y[i] = cost[basis[i]];
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        bool basic = false;
        for (int i = 0; i < m; ++i) basic |= basis[i] == j;
        if (basic) continue;
        double red = cost[j];
        for (int i = 0; i < m; ++i) red -= y[i] * t[i][j];
        if (red < -1e-9) { enter = j; break; }  // Bland
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (t[i][enter] > 1e-11) {
          double r = t[i][total] / t[i][enter];
          if (r < best - 1e-12 || (r < best + 1e-12 && (leave < 0 || basis[i] < basis[leave]))) {
            best = r;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
    }
  };

  std::vector<double> c1(total, 0.0);
  for (int i = 0; i < m; ++i) c1[n + i] = 1.0;
  run(c1, total);
  double inf1 = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis[i] >= n) inf1 += t[i][total];
  if (inf1 > 1e-7) return DenseLpResult::Status::kInfeasible;
  // Drive leftover artificials out when possible.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (int j = 0; j < n; ++j)
      if (std::abs(t[i][j]) > 1e-9) { pivot(i, j); break; }
  }
  // Any artificial still basic now sits at zero in an all-zero row, so it can
  // keep cost 0; pricing below never lets artificials re-enter.
  std::vector<double> c2(total, 0.0);
  for (int j = 0; j < n; ++j) c2[j] = s.c[j];
  if (!run(c2, n)) return DenseLpResult::Status::kUnbounded;
  x.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t[i][total];
  return DenseLpResult::Status::kOptimal;
}

}  // namespace denselp

inline DenseLpResult dense_lp_solve(const MilpModel& m) {
  DenseLpResult res;
  auto s = denselp::to_standard(m);
  std::vector<double> xs;
  res.status = denselp::solve_standard(s, xs);
  if (res.status != DenseLpResult::Status::kOptimal) return res;
  res.values.assign(m.num_vars(), 0.0);
  for (int j = 0; j < m.num_vars(); ++j) {
    double v = s.shift[j];
    if (s.neg[j] == -2)
      v -= xs[s.pos[j]];
    else if (s.neg[j] >= 0)
      v = xs[s.pos[j]] - xs[s.neg[j]];
    else
      v += xs[s.pos[j]];
    res.values[j] = v;
  }
  res.objective = m.objective_value(res.values);
  return res;
}

}  // namespace nne::testsupport
