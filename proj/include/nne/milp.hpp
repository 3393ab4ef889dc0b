#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace nne {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense : char { LE = '<', EQ = '=', GE = '>' };

/// One decision variable of a model in standard form.
struct ModelVar {
  std::string name;
  double lb = 0.0;
  double ub = kInf;
  bool integral = false;  // all integral variables in this artifact are binary
  double obj = 0.0;
};

/// One linear constraint: sparse row, sense, right-hand side.
struct ModelRow {
  std::string name;
  std::vector<std::pair<int, double>> coeffs;  // (variable index, coefficient)
  Sense sense = Sense::LE;
  double rhs = 0.0;
};

/// A solver-agnostic mixed-integer linear program (minimization).
class MilpModel {
 public:
  int add_var(std::string name, double lb, double ub, bool integral,
              double obj) {
    if (!(lb <= ub))
      throw std::invalid_argument("model: inverted bounds on " + name);
    if (!std::isfinite(obj))
      throw std::invalid_argument("model: non-finite objective on " + name);
    vars_.push_back(ModelVar{std::move(name), lb, ub, integral, obj});
    return static_cast<int>(vars_.size()) - 1;
  }

  int add_row(std::string name, std::vector<std::pair<int, double>> coeffs,
              Sense sense, double rhs) {
    for (const auto& [j, a] : coeffs) {
      if (j < 0 || j >= static_cast<int>(vars_.size()))
        throw std::out_of_range("model: bad column in row " + name);
      if (!std::isfinite(a))
        throw std::invalid_argument("model: non-finite coefficient in " + name);
    }
    if (!std::isfinite(rhs))
      throw std::invalid_argument("model: non-finite rhs in " + name);
    rows_.push_back(ModelRow{std::move(name), std::move(coeffs), sense, rhs});
    return static_cast<int>(rows_.size()) - 1;
  }

  void add_obj(int var, double coeff) { vars_.at(var).obj += coeff; }
  void set_bounds(int var, double lb, double ub) {
    vars_.at(var).lb = lb;
    vars_.at(var).ub = ub;
  }

  const std::vector<ModelVar>& vars() const { return vars_; }
  const std::vector<ModelRow>& rows() const { return rows_; }
  std::vector<ModelVar>& mutable_vars() { return vars_; }

  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  int num_integral() const {
    int n = 0;
    for (const auto& v : vars_) n += v.integral ? 1 : 0;
    return n;
  }

  /// Integral variables whose bounds still admit more than one value.
  std::vector<int> free_integrals() const {
    std::vector<int> out;
    for (int j = 0; j < num_vars(); ++j)
      if (vars_[j].integral && vars_[j].ub - vars_[j].lb > 0.5) out.push_back(j);
    return out;
  }

  double objective_value(const std::vector<double>& x) const {
    double v = 0.0;
    for (int j = 0; j < num_vars(); ++j) v += vars_[j].obj * x[j];
    return v;
  }

  double row_activity(int i, const std::vector<double>& x) const {
    double a = 0.0;
    for (const auto& [j, c] : rows_[i].coeffs) a += c * x[j];
    return a;
  }

  /// Writes the model in the CPLEX LP text format, for cross-checking against
  /// external solvers.
  void write_lp(std::ostream& os) const {
    auto num = [](double v) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      return std::string(buf);
    };
    os << "Minimize\n obj:";
    bool any = false;
    for (int j = 0; j < num_vars(); ++j) {
      if (vars_[j].obj == 0.0) continue;
      os << (vars_[j].obj >= 0 ? " + " : " - ") << num(std::abs(vars_[j].obj))
         << " " << vars_[j].name;
      any = true;
    }
    if (!any) os << " 0 " << (num_vars() ? vars_[0].name : "x0");
    os << "\nSubject To\n";
    for (const auto& r : rows_) {
      os << " " << r.name << ":";
      if (r.coeffs.empty()) os << " 0 " << vars_[0].name;
      for (const auto& [j, a] : r.coeffs)
        os << (a >= 0 ? " + " : " - ") << num(std::abs(a)) << " "
           << vars_[j].name;
      os << (r.sense == Sense::LE ? " <= " : r.sense == Sense::GE ? " >= " : " = ")
         << num(r.rhs) << "\n";
    }
    os << "Bounds\n";
    for (const auto& v : vars_) {
      if (v.lb == v.ub) {
        os << " " << v.name << " = " << num(v.lb) << "\n";
      } else {
        os << " ";
        if (std::isinf(v.lb))
          os << "-inf";
        else
          os << num(v.lb);
        os << " <= " << v.name << " <= ";
        if (std::isinf(v.ub))
          os << "+inf";
        else
          os << num(v.ub);
        os << "\n";
      }
    }
    bool have_int = false;
    for (const auto& v : vars_) have_int |= v.integral;
    if (have_int) {
      os << "Binaries\n";
      for (const auto& v : vars_)
        if (v.integral) os << " " << v.name << "\n";
    }
    os << "End\n";
  }

 private:
  std::vector<ModelVar> vars_;
  std::vector<ModelRow> rows_;
};

}  // namespace nne
