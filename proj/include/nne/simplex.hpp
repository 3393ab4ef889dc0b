#pragma once

// Bounded-variable revised simplex over a sparse LU factorization of the
// basis with product-form eta updates. Phase 1 minimizes the sum of bound
// infeasibilities of the basic variables; phase 2 the model objective.
// Pricing is Dantzig with a Bland fallback after a degeneracy stall, as the
// anti-cycling rule. All tie-breaks are by lowest index, so a solve is
// deterministic for a fixed model.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "nne/milp.hpp"

namespace nne {

struct LpSolution {
  enum class Status { kOptimal, kInfeasible, kUnbounded };
  Status status = Status::kOptimal;
  std::vector<double> values;
  double objective = 0.0;
  long iterations = 0;
};

struct SolverConfig {
  double rel_gap = 1e-6;
  double feas_tol = 1e-9;
  long node_limit = -1;      // < 0: unlimited
  double time_limit_s = -1;  // < 0: unlimited
  long lp_iteration_limit = -1;
};

namespace lpdetail {

struct Csc {
  int m = 0, n = 0;
  std::vector<int> ptr, idx;
  std::vector<double> val;
};

// Sparse LU of the basis via right-looking elimination. Pivot choice:
// minimum active column count, largest magnitude within the column.
class SparseLu {
 public:
  // fetch(slot) appends (row, value) pairs of basis column `slot`.
  // Returns false when the matrix is numerically singular; `bad_rows` then
  // holds the rows left without a pivot.
  template <typename Fetch>
  bool factor(int m, Fetch&& fetch, std::vector<int>* bad_rows) {
    m_ = m;
    prow_.assign(m, -1);
    pcol_.assign(m, -1);
    pval_.assign(m, 0.0);
    urow_.assign(m, {});
    lmul_.assign(m, {});
    if (bad_rows) bad_rows->clear();
    if (m == 0) return true;

    std::vector<std::vector<std::pair<int, double>>> rows(m);
    std::vector<std::vector<int>> colrows(m);
    std::vector<int> ccount(m, 0);
    std::vector<char> row_done(m, 0), col_done(m, 0);
    double amax = 0.0;
    {
      std::vector<std::pair<int, double>> col;
      for (int p = 0; p < m; ++p) {
        col.clear();
        fetch(p, col);
        for (auto& [r, v] : col) {
          if (v == 0.0) continue;
          rows[r].push_back({p, v});
          colrows[p].push_back(r);
          ++ccount[p];
          amax = std::max(amax, std::abs(v));
        }
      }
    }
    if (amax == 0.0) amax = 1.0;
    const double tiny = 1e-12 * amax;

    std::vector<std::pair<int, double>> combined;
    for (int k = 0; k < m_; ++k) {
      // Pivot slot: min active column count; skip numerically empty columns.
      int best_slot = -1, best_count = m_ + 1;
      for (int p = 0; p < m_; ++p) {
        if (col_done[p] || ccount[p] >= best_count) continue;
        best_slot = p;
        best_count = ccount[p];
        if (best_count <= 1) break;
      }
      int prow = -1;
      double pv = 0.0;
      if (best_slot >= 0) {
        for (int r : colrows[best_slot]) {
          if (row_done[r]) continue;
          for (auto& [s, v] : rows[r])
            if (s == best_slot && std::abs(v) > std::abs(pv)) {
              pv = v;
              prow = r;
            }
        }
      }
      if (best_slot < 0 || prow < 0 || std::abs(pv) <= tiny) {
        if (bad_rows)
          for (int r = 0; r < m_; ++r)
            if (!row_done[r]) bad_rows->push_back(r);
        return false;
      }

      prow_[k] = prow;
      pcol_[k] = best_slot;
      pval_[k] = pv;
      row_done[prow] = 1;
      col_done[best_slot] = 1;
      auto& prow_entries = rows[prow];
      for (auto& [s, v] : prow_entries) {
        --ccount[s];
        if (s != best_slot) urow_[k].push_back({s, v});
      }

      for (int r : colrows[best_slot]) {
        if (row_done[r]) continue;
        double arc = 0.0;
        for (auto& [s, v] : rows[r])
          if (s == best_slot) {
            arc = v;
            break;
          }
        if (arc == 0.0) continue;
        double mult = arc / pv;
        lmul_[k].push_back({r, mult});
        // rows[r] -= mult * pivot row (sorted merge on slot ids).
        combined.clear();
        auto& rr = rows[r];
        std::sort(rr.begin(), rr.end());
        size_t a = 0, b = 0;
        while (a < rr.size() || b < prow_entries.size()) {
          int sa = a < rr.size() ? rr[a].first : m_;
          int sb = b < prow_entries.size() ? prow_entries[b].first : m_;
          if (sa < sb) {
            combined.push_back(rr[a++]);
          } else if (sb < sa) {
            int s = prow_entries[b].first;
            double nv = -mult * prow_entries[b].second;
            ++b;
            if (s == best_slot) continue;
            if (std::abs(nv) > tiny * 1e-3) {
              combined.push_back({s, nv});
              ++ccount[s];
              colrows[s].push_back(r);
            }
          } else {
            double nv = rr[a].second - mult * prow_entries[b].second;
            int s = sa;
            ++a;
            ++b;
            if (s == best_slot) {
              --ccount[s];
              continue;
            }
            if (std::abs(nv) >
                1e-14 * (std::abs(rr[a - 1].second) +
                         std::abs(mult * prow_entries[b - 1].second))) {
              combined.push_back({s, nv});
            } else {
              --ccount[s];
            }
          }
        }
        rr.swap(combined);
      }
      prow_entries.clear();
    }
    // Keep pivot rows sorted for deterministic solves.
    for (int k = 0; k < m_; ++k) std::sort(urow_[k].begin(), urow_[k].end());
    return true;
  }

  // Solves B x = b. Input indexed by row, output indexed by basis slot.
  void ftran_lu(std::vector<double>& work_row, std::vector<double>& out_slot) const {
    for (int k = 0; k < m_; ++k) {
      double piv = work_row[prow_[k]];
      if (piv != 0.0)
        for (auto& [r, mult] : lmul_[k]) work_row[r] -= mult * piv;
    }
    for (int k = m_ - 1; k >= 0; --k) {
      double s = work_row[prow_[k]];
      for (auto& [slot, u] : urow_[k]) s -= u * out_slot[slot];
      out_slot[pcol_[k]] = s / pval_[k];
    }
  }

  // Solves y B = c. Input indexed by slot, output indexed by row.
  void btran_lu(std::vector<double>& work_slot, std::vector<double>& out_row) const {
    for (int k = 0; k < m_; ++k) {
      double z = work_slot[pcol_[k]] / pval_[k];
      out_row[prow_[k]] = z;
      if (z != 0.0)
        for (auto& [slot, u] : urow_[k]) work_slot[slot] -= u * z;
    }
    for (int k = m_ - 1; k >= 0; --k) {
      double acc = out_row[prow_[k]];
      double upd = 0.0;
      for (auto& [r, mult] : lmul_[k]) upd += mult * out_row[r];
      out_row[prow_[k]] = acc - upd;
    }
  }

 private:
  int m_ = 0;
  std::vector<int> prow_, pcol_;
  std::vector<double> pval_;
  std::vector<std::vector<std::pair<int, double>>> urow_;  // (slot, value)
  std::vector<std::vector<std::pair<int, double>>> lmul_;  // (row, multiplier)
};

struct Eta {
  int slot = -1;
  double pivot = 0.0;
  std::vector<std::pair<int, double>> entries;  // (slot, value), excl. pivot
};

}  // namespace lpdetail

/// Revised simplex engine bound to one model. The constraint matrix and its
/// scaling are prepared once; `solve` may then be called repeatedly with
/// different variable bounds (as branch and bound does). Instances are not
/// thread-safe; use one engine per thread.
class LpEngine {
 public:
  explicit LpEngine(const MilpModel& model, SolverConfig cfg = {})
      : model_(model), cfg_(cfg) {
    n_ = model.num_vars();
    m_ = model.num_rows();
    ncol_ = n_ + m_;
    build_matrix();
    compute_scaling();
  }

  /// Solves the LP relaxation with the given structural variable bounds.
  LpSolution solve(const std::vector<double>& lb_in,
                   const std::vector<double>& ub_in) {
    init_bounds(lb_in, ub_in);
    init_basis();

    LpSolution sol;
    const long iter_limit = cfg_.lp_iteration_limit > 0
                                ? cfg_.lp_iteration_limit
                                : 20000 + 40L * (m_ + 1);
    long iter = 0;
    bool phase1 = true;
    int stall = 0;
    long bland_until = -1;
    double last_obj = std::numeric_limits<double>::infinity();

    while (true) {
      if (iter >= iter_limit)
        throw std::runtime_error(
            "simplex: iteration limit hit (" + std::to_string(iter) +
            "), model " + std::to_string(m_) + "x" + std::to_string(n_));
      if (phase1 && total_infeasibility() <= 10 * tol_) {
        if (!clean_phase1_exit()) {
          sol.status = LpSolution::Status::kInfeasible;
          sol.iterations = iter;
          return sol;
        }
        phase1 = false;
        stall = 0;
        last_obj = std::numeric_limits<double>::infinity();
      }

      compute_duals(phase1);
      bool bland = iter <= bland_until;
      int q = price(phase1, bland);
      if (q < 0) {
        if (phase1) {
          sol.status = LpSolution::Status::kInfeasible;
          sol.iterations = iter;
          return sol;
        }
        finish(sol);
        sol.iterations = iter;
        return sol;
      }

      // Direction: +1 entering rises from lower bound, -1 falls from upper.
      int sigma = dir_of(q);
      ftran_col(q, w_);

      int leave_slot = -1;
      double step = 0.0;
      bool bound_flip = false;
      if (!ratio_test(q, sigma, phase1, leave_slot, step, bound_flip)) {
        if (phase1)
          throw std::runtime_error("simplex: unbounded phase-1 direction");
        sol.status = LpSolution::Status::kUnbounded;
        sol.iterations = iter;
        return sol;
      }

      apply_step(q, sigma, step, leave_slot, bound_flip);
      ++iter;

      double obj = phase1 ? total_infeasibility() : current_objective();
      if (obj < last_obj - 1e-12 * (1.0 + std::abs(last_obj))) {
        stall = 0;
        last_obj = obj;
      } else if (++stall > 60 && bland_until < iter) {
        bland_until = iter + 200;  // anti-cycling: Bland until progress
        stall = 0;
      }

      if (static_cast<long>(etas_.size()) >= refactor_every_ ||
          (leave_slot >= 0 && std::abs(etas_.empty() ? 1.0 : etas_.back().pivot) < 1e-7)) {
        refactorize();
        recompute_basics();
      }
    }
  }

  /// Convenience: solve with the model's own bounds.
  LpSolution solve() {
    std::vector<double> lb(n_), ub(n_);
    for (int j = 0; j < n_; ++j) {
      lb[j] = model_.vars()[j].lb;
      ub[j] = model_.vars()[j].ub;
    }
    return solve(lb, ub);
  }

 private:
  enum class VState : std::uint8_t { kLower, kUpper, kBasic };

  const MilpModel& model_;
  SolverConfig cfg_;
  int n_ = 0, m_ = 0, ncol_ = 0;
  lpdetail::Csc a_;                   // structural columns, scaled
  std::vector<double> row_scale_, col_scale_;
  std::vector<double> obj_;           // scaled objective, structural columns
  std::vector<double> rhs_;           // scaled rhs
  std::vector<double> lb_, ub_;       // scaled bounds, all columns
  std::vector<VState> state_;
  std::vector<int> basic_;            // slot -> column
  std::vector<int> slot_of_;          // column -> slot or -1
  std::vector<double> xb_;            // basic values by slot
  std::vector<double> y_, d_;         // duals by row, reduced costs by column
  std::vector<double> w_;             // ftran result by slot
  std::vector<double> work_row_, work_slot_;
  lpdetail::SparseLu lu_;
  std::vector<lpdetail::Eta> etas_;
  double tol_ = 1e-9;
  long refactor_every_ = 100;

  void build_matrix() {
    a_.m = m_;
    a_.n = n_;
    a_.ptr.assign(n_ + 1, 0);
    std::vector<int> count(n_, 0);
    for (const auto& r : model_.rows())
      for (const auto& [j, v] : r.coeffs)
        if (v != 0.0) ++count[j];
    for (int j = 0; j < n_; ++j) a_.ptr[j + 1] = a_.ptr[j] + count[j];
    a_.idx.assign(a_.ptr[n_], 0);
    a_.val.assign(a_.ptr[n_], 0.0);
    std::vector<int> fill = a_.ptr;
    for (int i = 0; i < m_; ++i)
      for (const auto& [j, v] : model_.rows()[i].coeffs)
        if (v != 0.0) {
          a_.idx[fill[j]] = i;
          a_.val[fill[j]] = v;
          ++fill[j];
        }
  }

  static double pow2_round(double v) {
    if (v <= 0.0 || !std::isfinite(v)) return 1.0;
    int e = 0;
    std::frexp(v, &e);
    return std::ldexp(1.0, 1 - e);  // 1/2^(e-1), a power of two near 1/v
  }

  void compute_scaling() {
    row_scale_.assign(m_, 1.0);
    col_scale_.assign(n_, 1.0);
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<double> rmax(m_, 0.0), rmin(m_, kInf);
      for (int j = 0; j < n_; ++j)
        for (int t = a_.ptr[j]; t < a_.ptr[j + 1]; ++t) {
          double v = std::abs(a_.val[t] * row_scale_[a_.idx[t]] * col_scale_[j]);
          rmax[a_.idx[t]] = std::max(rmax[a_.idx[t]], v);
          rmin[a_.idx[t]] = std::min(rmin[a_.idx[t]], v);
        }
      for (int i = 0; i < m_; ++i)
        if (rmax[i] > 0.0) row_scale_[i] *= pow2_round(std::sqrt(rmax[i] * rmin[i]));
      std::vector<double> cmax(n_, 0.0), cmin(n_, kInf);
      for (int j = 0; j < n_; ++j)
        for (int t = a_.ptr[j]; t < a_.ptr[j + 1]; ++t) {
          double v = std::abs(a_.val[t] * row_scale_[a_.idx[t]] * col_scale_[j]);
          cmax[j] = std::max(cmax[j], v);
          cmin[j] = std::min(cmin[j], v);
        }
      for (int j = 0; j < n_; ++j)
        if (cmax[j] > 0.0) col_scale_[j] *= pow2_round(std::sqrt(cmax[j] * cmin[j]));
    }
    for (int j = 0; j < n_; ++j)
      for (int t = a_.ptr[j]; t < a_.ptr[j + 1]; ++t)
        a_.val[t] *= row_scale_[a_.idx[t]] * col_scale_[j];
    obj_.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) obj_[j] = model_.vars()[j].obj * col_scale_[j];
    rhs_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) rhs_[i] = model_.rows()[i].rhs * row_scale_[i];
  }

  void init_bounds(const std::vector<double>& lb_in,
                   const std::vector<double>& ub_in) {
    tol_ = cfg_.feas_tol > 0 ? cfg_.feas_tol : 1e-9;
    lb_.assign(ncol_, 0.0);
    ub_.assign(ncol_, 0.0);
    for (int j = 0; j < n_; ++j) {
      lb_[j] = lb_in[j] / col_scale_[j];
      ub_[j] = ub_in[j] / col_scale_[j];
      if (lb_[j] > ub_[j])
        throw std::invalid_argument("simplex: inverted bounds on column " +
                                    std::to_string(j));
    }
    for (int i = 0; i < m_; ++i) {
      int c = n_ + i;
      switch (model_.rows()[i].sense) {
        case Sense::LE: lb_[c] = 0.0; ub_[c] = kInf; break;
        case Sense::GE: lb_[c] = -kInf; ub_[c] = 0.0; break;
        case Sense::EQ: lb_[c] = 0.0; ub_[c] = 0.0; break;
      }
    }
  }

  double nb_value(int c) const {
    if (state_[c] == VState::kUpper) return ub_[c];
    if (std::isfinite(lb_[c])) return lb_[c];
    if (std::isfinite(ub_[c])) return ub_[c];
    return 0.0;
  }

  void init_basis() {
    state_.assign(ncol_, VState::kLower);
    slot_of_.assign(ncol_, -1);
    basic_.assign(m_, 0);
    for (int j = 0; j < n_; ++j) {
      // Start at the bound of smaller magnitude (or 0 for free columns).
      if (!std::isfinite(lb_[j]) && std::isfinite(ub_[j]))
        state_[j] = VState::kUpper;
      else if (std::isfinite(lb_[j]) && std::isfinite(ub_[j]) &&
               std::abs(ub_[j]) < std::abs(lb_[j]))
        state_[j] = VState::kUpper;
      else
        state_[j] = VState::kLower;
    }
    for (int i = 0; i < m_; ++i) {
      basic_[i] = n_ + i;
      state_[n_ + i] = VState::kBasic;
      slot_of_[n_ + i] = i;
    }
    etas_.clear();
    refactorize();
    recompute_basics();
    y_.assign(m_, 0.0);
    d_.assign(ncol_, 0.0);
    w_.assign(m_, 0.0);
  }

  // --- basis linear algebra ------------------------------------------------

  void fetch_basis_col(int slot, std::vector<std::pair<int, double>>& out) const {
    int c = basic_[slot];
    if (c >= n_) {
      out.push_back({c - n_, 1.0});
      return;
    }
    for (int t = a_.ptr[c]; t < a_.ptr[c + 1]; ++t)
      out.push_back({a_.idx[t], a_.val[t]});
  }

  void refactorize() {
    std::vector<int> bad;
    bool ok = lu_.factor(
        m_, [&](int p, std::vector<std::pair<int, double>>& col) { fetch_basis_col(p, col); },
        &bad);
    if (!ok) {
      // Basis repair: evict the variables occupying the slots that could not
      // be pivoted and reinstate the logicals of the uncovered rows.
      std::vector<char> covered(m_, 0);
      for (int slot = 0; slot < m_; ++slot) {
        int c = basic_[slot];
        if (c >= n_) covered[c - n_] = 1;
      }
      size_t bi = 0;
      for (int slot = 0; slot < m_ && bi < bad.size(); ++slot) {
        int c = basic_[slot];
        if (c >= n_) continue;
        int row = bad[bi];
        if (covered[row]) { ++bi; --slot; continue; }
        state_[c] = std::isfinite(lb_[c]) ? VState::kLower : VState::kUpper;
        slot_of_[c] = -1;
        basic_[slot] = n_ + row;
        state_[n_ + row] = VState::kBasic;
        slot_of_[n_ + row] = slot;
        covered[row] = 1;
        ++bi;
      }
      bool ok2 = lu_.factor(
          m_, [&](int p, std::vector<std::pair<int, double>>& col) { fetch_basis_col(p, col); },
          nullptr);
      if (!ok2)
        throw std::runtime_error("simplex: basis repair failed (singular)");
    }
    etas_.clear();
  }

  void ftran(std::vector<double>& work_row, std::vector<double>& out_slot) const {
    const_cast<LpEngine*>(this)->work_slot_.assign(m_, 0.0);
    lu_.ftran_lu(work_row, const_cast<LpEngine*>(this)->work_slot_);
    auto& v = const_cast<LpEngine*>(this)->work_slot_;
    for (const auto& e : etas_) {
      double t = v[e.slot] / e.pivot;
      if (t != 0.0) {
        for (const auto& [s, val] : e.entries) v[s] -= t * val;
        v[e.slot] = t;
      } else {
        v[e.slot] = 0.0;
      }
    }
    out_slot = v;
  }

  void ftran_col(int c, std::vector<double>& out_slot) {
    work_row_.assign(m_, 0.0);
    if (c >= n_) {
      work_row_[c - n_] = 1.0;
    } else {
      for (int t = a_.ptr[c]; t < a_.ptr[c + 1]; ++t)
        work_row_[a_.idx[t]] = a_.val[t];
    }
    ftran(work_row_, out_slot);
  }

  void btran(std::vector<double>& work_slot, std::vector<double>& out_row) {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double dot = 0.0;
      for (const auto& [s, val] : it->entries) dot += val * work_slot[s];
      work_slot[it->slot] = (work_slot[it->slot] - dot) / it->pivot;
    }
    out_row.assign(m_, 0.0);
    lu_.btran_lu(work_slot, out_row);
  }

  void recompute_basics() {
    work_row_ = rhs_;
    for (int c = 0; c < ncol_; ++c) {
      if (state_[c] == VState::kBasic) continue;
      double v = nb_value(c);
      if (v == 0.0) continue;
      if (c >= n_) {
        work_row_[c - n_] -= v;
      } else {
        for (int t = a_.ptr[c]; t < a_.ptr[c + 1]; ++t)
          work_row_[a_.idx[t]] -= a_.val[t] * v;
      }
    }
    ftran(work_row_, xb_);
  }

  // --- pricing -------------------------------------------------------------

  double phase1_cost(int slot) const {
    int c = basic_[slot];
    if (xb_[slot] < lb_[c] - tol_) return -1.0;
    if (xb_[slot] > ub_[c] + tol_) return 1.0;
    return 0.0;
  }

  double total_infeasibility() const {
    double s = 0.0;
    for (int slot = 0; slot < m_; ++slot) {
      int c = basic_[slot];
      if (xb_[slot] < lb_[c]) s += lb_[c] - xb_[slot];
      if (xb_[slot] > ub_[c]) s += xb_[slot] - ub_[c];
    }
    return s;
  }

  // On phase-1 exit, clamp residual micro-infeasibilities into the bounds.
  bool clean_phase1_exit() {
    for (int slot = 0; slot < m_; ++slot) {
      int c = basic_[slot];
      if (xb_[slot] < lb_[c] - 1e3 * tol_ || xb_[slot] > ub_[c] + 1e3 * tol_)
        return false;
      xb_[slot] = std::min(std::max(xb_[slot], lb_[c] - 10 * tol_), ub_[c] + 10 * tol_);
    }
    return true;
  }

  void compute_duals(bool phase1) {
    work_slot_.assign(m_, 0.0);
    bool any = false;
    for (int slot = 0; slot < m_; ++slot) {
      double cb = phase1 ? phase1_cost(slot)
                         : (basic_[slot] < n_ ? obj_[basic_[slot]] : 0.0);
      work_slot_[slot] = cb;
      any |= cb != 0.0;
    }
    if (!any) {
      y_.assign(m_, 0.0);
    } else {
      btran(work_slot_, y_);
    }
    for (int c = 0; c < ncol_; ++c) {
      if (state_[c] == VState::kBasic) { d_[c] = 0.0; continue; }
      double cj = phase1 ? 0.0 : (c < n_ ? obj_[c] : 0.0);
      double dot = 0.0;
      if (c >= n_) {
        dot = y_[c - n_];
      } else {
        for (int t = a_.ptr[c]; t < a_.ptr[c + 1]; ++t)
          dot += y_[a_.idx[t]] * a_.val[t];
      }
      d_[c] = cj - dot;
    }
  }

  int dir_of(int c) const {
    if (state_[c] == VState::kUpper) return -1;
    if (!std::isfinite(lb_[c]) && !std::isfinite(ub_[c]))
      return d_[c] < 0 ? 1 : -1;  // free column
    return 1;
  }

  int price(bool /*phase1*/, bool bland) const {
    const double dtol = 1e-9;
    int best = -1;
    double best_score = dtol;
    for (int c = 0; c < ncol_; ++c) {
      if (state_[c] == VState::kBasic) continue;
      if (lb_[c] == ub_[c]) continue;  // fixed
      double score = 0.0;
      bool free_col = !std::isfinite(lb_[c]) && !std::isfinite(ub_[c]);
      if (free_col)
        score = std::abs(d_[c]);
      else if (state_[c] == VState::kLower)
        score = -d_[c];
      else
        score = d_[c];
      if (score > best_score) {
        best = c;
        best_score = score;
        if (bland) break;
      }
    }
    return best;
  }

  // --- ratio test and pivot ------------------------------------------------

  bool ratio_test(int q, int sigma, bool phase1, int& leave_slot, double& step,
                  bool& bound_flip) const {
    const double ptol = 1e-9;
    double limit = kInf;
    // Entering variable's own range.
    if (std::isfinite(lb_[q]) && std::isfinite(ub_[q])) limit = ub_[q] - lb_[q];
    int block = -1;
    double block_pref = -1.0;
    for (int slot = 0; slot < m_; ++slot) {
      double wi = w_[slot];
      if (std::abs(wi) <= ptol) continue;
      int c = basic_[slot];
      double rate = -sigma * wi;  // d x_B[slot] / d step
      double room;
      if (phase1 && xb_[slot] < lb_[c] - tol_) {
        if (rate <= 0) continue;                 // moves further down: no block
        room = lb_[c] - xb_[slot];               // blocks on reaching lower bound
      } else if (phase1 && xb_[slot] > ub_[c] + tol_) {
        if (rate >= 0) continue;
        room = ub_[c] - xb_[slot];
      } else if (rate > 0) {
        if (!std::isfinite(ub_[c])) continue;
        room = std::max(ub_[c] - xb_[slot], 0.0);
      } else {
        if (!std::isfinite(lb_[c])) continue;
        room = std::min(lb_[c] - xb_[slot], 0.0);
      }
      double t = room / rate;
      if (t < -1e-12) t = 0.0;
      if (t < limit - 1e-10 ||
          (t < limit + 1e-10 && std::abs(wi) > block_pref)) {
        limit = std::max(t, 0.0);
        block = slot;
        block_pref = std::abs(wi);
      }
    }
    if (!std::isfinite(limit)) return false;
    if (block < 0) {
      bound_flip = true;
      leave_slot = -1;
    } else {
      bound_flip = false;
      leave_slot = block;
    }
    step = limit;
    return true;
  }

  void apply_step(int q, int sigma, double step, int leave_slot, bool bound_flip) {
    double xq = nb_value(q);
    if (step != 0.0)
      for (int slot = 0; slot < m_; ++slot)
        if (w_[slot] != 0.0) xb_[slot] -= sigma * step * w_[slot];

    if (bound_flip) {
      state_[q] = (state_[q] == VState::kLower) ? VState::kUpper : VState::kLower;
      return;
    }

    int leave_c = basic_[leave_slot];
    // Leaving variable settles on the bound it hit.
    double lv = xb_[leave_slot];
    if (std::isfinite(lb_[leave_c]) && std::abs(lv - lb_[leave_c]) <= std::abs(lv - ub_[leave_c]))
      state_[leave_c] = VState::kLower;
    else
      state_[leave_c] = VState::kUpper;
    slot_of_[leave_c] = -1;

    basic_[leave_slot] = q;
    state_[q] = VState::kBasic;
    slot_of_[q] = leave_slot;
    xb_[leave_slot] = xq + sigma * step;

    lpdetail::Eta e;
    e.slot = leave_slot;
    e.pivot = w_[leave_slot];
    for (int slot = 0; slot < m_; ++slot)
      if (slot != leave_slot && w_[slot] != 0.0) e.entries.push_back({slot, w_[slot]});
    etas_.push_back(std::move(e));
  }

  double current_objective() const {
    double v = 0.0;
    for (int c = 0; c < n_; ++c) {
      double x = state_[c] == VState::kBasic ? xb_[slot_of_[c]] : nb_value(c);
      v += obj_[c] * x;
    }
    return v;
  }

  void finish(LpSolution& sol) {
    refactorize();
    recompute_basics();
    sol.values.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      double x = state_[j] == VState::kBasic ? xb_[slot_of_[j]] : nb_value(j);
      x *= col_scale_[j];
      // Snap to the original bounds to shed scaling noise.
      const auto& v = model_.vars()[j];
      double lo = std::isfinite(v.lb) ? v.lb : -kInf;
      double hi = std::isfinite(v.ub) ? v.ub : kInf;
      if (x < lo) x = lo;
      if (x > hi) x = hi;
      if (std::isfinite(lo) && std::abs(x - lo) < 1e-11 * (1 + std::abs(lo))) x = lo;
      if (std::isfinite(hi) && std::abs(x - hi) < 1e-11 * (1 + std::abs(hi))) x = hi;
      sol.values[j] = x;
    }
    sol.objective = model_.objective_value(sol.values);
    sol.status = LpSolution::Status::kOptimal;
  }
};

/// Solves the LP relaxation of `model` (integrality ignored).
inline LpSolution solve_lp(const MilpModel& model, SolverConfig cfg = {}) {
  LpEngine engine(model, cfg);
  return engine.solve();
}

}  // namespace nne
