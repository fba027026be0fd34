#ifndef BDS_SIMPLEX_HPP
#define BDS_SIMPLEX_HPP

// Bundled linear-optimization backend for the set-partitioning master:
// a revised primal simplex (dense basis inverse, two phases, partial pricing,
// Bland's rule fallback against cycling) over sparse 0/1 columns, plus a
// depth-first branch-and-bound for the integer problem. The scalar type is a
// template parameter; `double` is the working mode, boost's cpp_rational gives
// an exact mode for small instances.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bds/instance.hpp"

namespace bds {

using Rational = boost::multiprecision::cpp_rational;
using Clock = std::chrono::steady_clock;

template <class Num>
struct SimplexTraits;

template <>
struct SimplexTraits<double> {
  static constexpr double kZeroTol = 1e-9;
  static constexpr double kFeasTol = 1e-7;
  static bool is_zero(const double& v) { return std::abs(v) <= kZeroTol; }
  static bool is_negative(const double& v) { return v < -kZeroTol; }
  static bool is_positive(const double& v) { return v > kZeroTol; }
  static double from_cost(Cost c) { return static_cast<double>(c); }
  static double to_double(const double& v) { return v; }
  static Cost ceil_to_cost(const double& v) { return static_cast<Cost>(std::ceil(v - 1e-6)); }
  static bool is_integral(const double& v) { return std::abs(v - std::round(v)) <= 1e-6; }
};

template <>
struct SimplexTraits<Rational> {
  static bool is_zero(const Rational& v) { return v == 0; }
  static bool is_negative(const Rational& v) { return v < 0; }
  static bool is_positive(const Rational& v) { return v > 0; }
  static Rational from_cost(Cost c) { return Rational(c); }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static Cost ceil_to_cost(const Rational& v) {
    using boost::multiprecision::cpp_int;
    cpp_int num = numerator(v), den = denominator(v);
    cpp_int q = num / den;
    if (q * den < num) ++q; // ceil for positive remainders
    return q.convert_to<Cost>();
  }
  static bool is_integral(const Rational& v) { return denominator(v) == 1; }
};

enum class LpStatus { Optimal, Infeasible, TimeLimit };

template <class Num>
struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Num objective{};
  std::vector<Num> x;     // one per column
  std::vector<Num> duals; // one per row
};

// min c.x  s.t.  A x = 1, x >= 0, over sparse 0/1 columns. The x <= 1 bounds
// are implied because every column covers at least one equality row.
template <class Num>
class SetPartitionLp {
  using T = SimplexTraits<Num>;

 public:
  explicit SetPartitionLp(int rows) : m_(rows) {
    basic_.resize(m_);
    is_basic_.assign(m_, true); // artificials 0..m-1
    for (int r = 0; r < m_; ++r) basic_[r] = r;
    binv_.assign(static_cast<size_t>(m_) * m_, Num(0));
    for (int r = 0; r < m_; ++r) binv_[static_cast<size_t>(r) * m_ + r] = Num(1);
    xb_.assign(m_, Num(1));
    phase1_done_ = (m_ == 0);
  }

  int rows() const { return m_; }
  int column_count() const { return static_cast<int>(cols_.size()); }

  int add_column(Cost cost, std::span<const int> rows) {
    Col c;
    c.cost = cost;
    c.rows.assign(rows.begin(), rows.end());
    cols_.push_back(std::move(c));
    is_basic_.push_back(false);
    return static_cast<int>(cols_.size()) - 1;
  }

  // Solves with the current column set, reusing the basis from the previous
  // call. `deadline` bounds the run; on expiry the status is TimeLimit.
  LpOutcome<Num> solve(std::optional<Clock::time_point> deadline = std::nullopt) {
    if (!phase1_done_) {
      if (!run_simplex(/*phase1=*/true, deadline)) return timeout_outcome();
      Num infeas(0);
      for (int r = 0; r < m_; ++r)
        if (basic_[r] < m_) infeas += xb_[r];
      if (T::is_positive(infeas)) {
        LpOutcome<Num> out;
        out.status = LpStatus::Infeasible;
        return out;
      }
      phase1_done_ = true;
    }
    if (!run_simplex(/*phase1=*/false, deadline)) return timeout_outcome();

    LpOutcome<Num> out;
    out.status = LpStatus::Optimal;
    out.x.assign(cols_.size(), Num(0));
    for (int r = 0; r < m_; ++r)
      if (basic_[r] >= m_) out.x[basic_[r] - m_] = xb_[r];
    out.duals = dual_values(/*phase1=*/false);
    out.objective = Num(0);
    for (int r = 0; r < m_; ++r)
      if (basic_[r] >= m_) out.objective += T::from_cost(cols_[basic_[r] - m_].cost) * xb_[r];
    return out;
  }

 private:
  struct Col {
    Cost cost = 0;
    std::vector<int> rows;
  };

  LpOutcome<Num> timeout_outcome() const {
    LpOutcome<Num> out;
    out.status = LpStatus::TimeLimit;
    return out;
  }

  Num objective_cost(int internal_col, bool phase1) const {
    if (internal_col < m_) return phase1 ? Num(1) : Num(0);
    return phase1 ? Num(0) : T::from_cost(cols_[internal_col - m_].cost);
  }

  std::vector<Num> dual_values(bool phase1) const {
    std::vector<Num> y(m_, Num(0));
    for (int i = 0; i < m_; ++i) {
      Num cb = objective_cost(basic_[i], phase1);
      if (T::is_zero(cb)) continue;
      const Num* row = &binv_[static_cast<size_t>(i) * m_];
      for (int r = 0; r < m_; ++r) y[r] += cb * row[r];
    }
    return y;
  }

  Num reduced_cost(int col, const std::vector<Num>& y, bool phase1) const {
    Num d = objective_cost(col + m_, phase1);
    for (int r : cols_[col].rows) d -= y[r];
    return d;
  }

  // B^-1 * A_col for a real column.
  void ftran(int col, std::vector<Num>& w) const {
    w.assign(m_, Num(0));
    for (int r : cols_[col].rows)
      for (int i = 0; i < m_; ++i) w[i] += binv_[static_cast<size_t>(i) * m_ + r];
  }

  void pivot(int leave_row, int enter_col, const std::vector<Num>& w) {
    Num piv = w[leave_row];
    Num* lrow = &binv_[static_cast<size_t>(leave_row) * m_];
    for (int r = 0; r < m_; ++r) lrow[r] /= piv;
    xb_[leave_row] /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == leave_row || T::is_zero(w[i])) continue;
      Num f = w[i];
      Num* irow = &binv_[static_cast<size_t>(i) * m_];
      for (int r = 0; r < m_; ++r) irow[r] -= f * lrow[r];
      xb_[i] -= f * xb_[leave_row];
      if constexpr (std::is_same_v<Num, double>) {
        if (xb_[i] < 0 && xb_[i] > -SimplexTraits<double>::kFeasTol) xb_[i] = 0;
      }
    }
    is_basic_[basic_[leave_row]] = false;
    basic_[leave_row] = enter_col + m_;
    is_basic_[enter_col + m_] = true;
  }

  // Rebuilds binv from the recorded basis (numerical hygiene for doubles).
  void refactorize() {
    std::vector<Num> B(static_cast<size_t>(m_) * m_, Num(0));
    for (int i = 0; i < m_; ++i) {
      int c = basic_[i];
      if (c < m_) {
        B[static_cast<size_t>(c) * m_ + i] = Num(1);
      } else {
        for (int r : cols_[c - m_].rows) B[static_cast<size_t>(r) * m_ + i] = Num(1);
      }
    }
    std::vector<Num> inv(static_cast<size_t>(m_) * m_, Num(0));
    for (int i = 0; i < m_; ++i) inv[static_cast<size_t>(i) * m_ + i] = Num(1);
    for (int c = 0; c < m_; ++c) {
      int piv = -1;
      if constexpr (std::is_same_v<Num, double>) {
        double best = 0;
        for (int r = c; r < m_; ++r)
          if (std::abs(B[static_cast<size_t>(r) * m_ + c]) > best) {
            best = std::abs(B[static_cast<size_t>(r) * m_ + c]);
            piv = r;
          }
        if (best <= SimplexTraits<double>::kZeroTol) piv = -1;
      } else {
        for (int r = c; r < m_; ++r)
          if (B[static_cast<size_t>(r) * m_ + c] != 0) {
            piv = r;
            break;
          }
      }
      if (piv < 0) throw std::runtime_error("simplex: singular basis");
      if (piv != c)
        for (int k = 0; k < m_; ++k) {
          std::swap(B[static_cast<size_t>(piv) * m_ + k], B[static_cast<size_t>(c) * m_ + k]);
          std::swap(inv[static_cast<size_t>(piv) * m_ + k], inv[static_cast<size_t>(c) * m_ + k]);
        }
      Num p = B[static_cast<size_t>(c) * m_ + c];
      for (int k = 0; k < m_; ++k) {
        B[static_cast<size_t>(c) * m_ + k] /= p;
        inv[static_cast<size_t>(c) * m_ + k] /= p;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == c) continue;
        Num f = B[static_cast<size_t>(r) * m_ + c];
        if (T::is_zero(f)) continue;
        for (int k = 0; k < m_; ++k) {
          B[static_cast<size_t>(r) * m_ + k] -= f * B[static_cast<size_t>(c) * m_ + k];
          inv[static_cast<size_t>(r) * m_ + k] -= f * inv[static_cast<size_t>(c) * m_ + k];
        }
      }
    }
    binv_ = std::move(inv);
    // Recompute xb = binv * 1.
    for (int i = 0; i < m_; ++i) {
      Num v(0);
      const Num* row = &binv_[static_cast<size_t>(i) * m_];
      for (int r = 0; r < m_; ++r) v += row[r];
      xb_[i] = v;
    }
  }

  // Returns false on deadline expiry.
  bool run_simplex(bool phase1, std::optional<Clock::time_point> deadline) {
    const int n = static_cast<int>(cols_.size());
    if (m_ == 0 || n == 0) return true;
    std::vector<Num> w;
    int stall = 0;
    bool bland = false;
    Num last_obj = current_objective(phase1);
    int since_refactor = 0;

    for (long iter = 0;; ++iter) {
      if (deadline && (iter & 63) == 0 && Clock::now() > *deadline) return false;

      std::vector<Num> y = dual_values(phase1);
      int enter = -1;
      Num best_d(0);
      if (bland) {
        for (int j = 0; j < n; ++j) {
          if (is_basic_[j + m_]) continue;
          Num d = reduced_cost(j, y, phase1);
          if (T::is_negative(d)) {
            enter = j;
            break;
          }
        }
      } else {
        // Partial pricing: scan a window from a persistent cursor.
        int window = std::max(1024, n / 8);
        int scanned = 0;
        int j = cursor_ % n;
        int best_j = -1;
        while (scanned < n) {
          if (!is_basic_[j + m_]) {
            Num d = reduced_cost(j, y, phase1);
            if (T::is_negative(d) && (best_j < 0 || d < best_d)) {
              best_d = d;
              best_j = j;
            }
          }
          ++scanned;
          j = (j + 1 == n) ? 0 : j + 1;
          if (best_j >= 0 && scanned >= window) break;
        }
        cursor_ = j;
        enter = best_j;
      }
      if (enter < 0) return true; // optimal for this phase

      ftran(enter, w);
      int leave = -1;
      bool leave_artificial = false;
      Num theta(0);
      for (int i = 0; i < m_; ++i) {
        bool art = basic_[i] < m_;
        Num ratio;
        if (T::is_positive(w[i])) {
          ratio = xb_[i] / w[i];
        } else if (art && T::is_negative(w[i])) {
          ratio = Num(0); // push zero-level artificials out instead of up
        } else {
          continue;
        }
        bool better;
        if (leave < 0) {
          better = true;
        } else if (ratio < theta) {
          better = true;
        } else if (ratio == theta) {
          better = (art && !leave_artificial) ||
                   (art == leave_artificial && basic_[i] < basic_[leave]);
        } else {
          better = false;
        }
        if (better) {
          leave = i;
          theta = ratio;
          leave_artificial = art;
        }
      }
      if (leave < 0) throw std::runtime_error("simplex: unbounded direction in bounded problem");

      pivot(leave, enter, w);
      if (++since_refactor >= 128) {
        if constexpr (std::is_same_v<Num, double>) refactorize();
        since_refactor = 0;
      }

      Num obj = current_objective(phase1);
      if (obj < last_obj) {
        stall = 0;
        bland = false;
        last_obj = obj;
      } else if (++stall > 2 * m_ + 50) {
        bland = true; // anti-cycling
      }
    }
  }

  Num current_objective(bool phase1) const {
    Num obj(0);
    for (int r = 0; r < m_; ++r) {
      Num cb = objective_cost(basic_[r], phase1);
      if (!T::is_zero(cb)) obj += cb * xb_[r];
    }
    return obj;
  }

  int m_;
  std::vector<Col> cols_;
  std::vector<int> basic_;      // per row: internal column id (artificial r = r, real j = m + j)
  std::vector<char> is_basic_;  // indexed by internal column id
  std::vector<Num> binv_;       // row-major m x m
  std::vector<Num> xb_;
  bool phase1_done_ = false;
  int cursor_ = 0;
};

struct IpOutcome {
  bool found = false;
  bool proven_optimal = false;
  Cost objective = 0;
  std::vector<int> chosen; // column ids
  double bound = 0;        // root LP bound (rounded up to integer costs)
};

// Depth-first branch and bound on fractional variables over a fixed column
// set. Dives on x=1 first; bounds use that all costs are integral.
template <class Num>
class SetPartitionIp {
  using T = SimplexTraits<Num>;

 public:
  struct ColumnView {
    Cost cost = 0;
    std::vector<int> rows;
  };

  SetPartitionIp(int rows, std::vector<ColumnView> cols) : m_(rows), cols_(std::move(cols)) {}

  IpOutcome solve(Clock::time_point deadline, const std::vector<int>& warm_start) {
    incumbent_.clear();
    incumbent_obj_ = std::numeric_limits<Cost>::max();
    have_incumbent_ = false;
    aborted_ = false;
    deadline_ = deadline;

    if (!warm_start.empty()) {
      Cost obj = 0;
      std::vector<char> covered(m_, 0);
      bool ok = true;
      for (int c : warm_start) {
        obj += cols_[c].cost;
        for (int r : cols_[c].rows) {
          if (covered[r]) ok = false;
          covered[r] = 1;
        }
      }
      for (char c : covered) ok = ok && c;
      if (ok) {
        incumbent_ = warm_start;
        incumbent_obj_ = obj;
        have_incumbent_ = true;
      }
    }

    std::vector<char> row_active(m_, 1);
    std::vector<char> col_allowed(cols_.size(), 1);
    root_bound_ = 0;
    dive(row_active, col_allowed, {}, 0, /*root=*/true);

    IpOutcome out;
    out.found = have_incumbent_;
    out.proven_optimal = have_incumbent_ && !aborted_;
    out.objective = incumbent_obj_;
    out.chosen = incumbent_;
    out.bound = root_bound_;
    return out;
  }

 private:
  // Solves the LP over active rows/columns; returns nullopt on timeout.
  struct NodeLp {
    LpStatus status;
    Cost bound = 0; // ceil of LP objective
    std::vector<double> x;
    std::vector<int> local_to_global;
  };

  std::optional<NodeLp> solve_node_lp(const std::vector<char>& row_active,
                                      const std::vector<char>& col_allowed, bool use_deadline) {
    std::vector<int> row_map(m_, -1);
    int k = 0;
    for (int r = 0; r < m_; ++r)
      if (row_active[r]) row_map[r] = k++;
    SetPartitionLp<Num> lp(k);
    NodeLp node;
    std::vector<int> rows;
    for (size_t j = 0; j < cols_.size(); ++j) {
      if (!col_allowed[j]) continue;
      rows.clear();
      bool ok = true;
      for (int r : cols_[j].rows) {
        if (row_map[r] < 0) {
          ok = false;
          break;
        }
        rows.push_back(row_map[r]);
      }
      if (!ok) continue;
      lp.add_column(cols_[j].cost, rows);
      node.local_to_global.push_back(static_cast<int>(j));
    }
    LpOutcome<Num> res =
        use_deadline ? lp.solve(deadline_) : lp.solve(std::nullopt);
    if (res.status == LpStatus::TimeLimit) return std::nullopt;
    node.status = res.status;
    if (res.status == LpStatus::Optimal) {
      node.bound = T::ceil_to_cost(res.objective);
      node.x.resize(res.x.size());
      for (size_t i = 0; i < res.x.size(); ++i) node.x[i] = T::to_double(res.x[i]);
    }
    return node;
  }

  void dive(std::vector<char>& row_active, std::vector<char>& col_allowed,
            std::vector<int> fixed, Cost fixed_cost, bool root) {
    if (aborted_ || (!root && Clock::now() > deadline_)) {
      aborted_ = true;
      return;
    }
    // The root LP and rounding always run to completion, whatever the deadline.
    auto node = solve_node_lp(row_active, col_allowed, /*use_deadline=*/!root);
    if (!node) {
      aborted_ = true;
      return;
    }
    if (node->status == LpStatus::Infeasible) return;
    Cost bound = fixed_cost + node->bound;
    if (root) {
      root_bound_ = static_cast<double>(bound);
      round_lp(row_active, *node, fixed, fixed_cost);
      if (have_incumbent_ && bound >= incumbent_obj_) return; // proven by bound
    }
    if (have_incumbent_ && bound >= incumbent_obj_) return;

    // Most fractional variable.
    int frac = -1;
    double frac_dist = 1;
    for (size_t i = 0; i < node->x.size(); ++i) {
      double v = node->x[i];
      if (v < 1e-6 || v > 1 - 1e-6) continue;
      double dist = std::abs(v - 0.5);
      if (dist < frac_dist - 1e-12) {
        frac_dist = dist;
        frac = node->local_to_global[i];
      }
    }

    if (frac < 0) {
      // Integral: collect chosen columns.
      std::vector<int> chosen = fixed;
      Cost obj = fixed_cost;
      for (size_t i = 0; i < node->x.size(); ++i)
        if (node->x[i] > 0.5) {
          chosen.push_back(node->local_to_global[i]);
          obj += cols_[node->local_to_global[i]].cost;
        }
      if (!have_incumbent_ || obj < incumbent_obj_) {
        incumbent_ = std::move(chosen);
        incumbent_obj_ = obj;
        have_incumbent_ = true;
      }
      return;
    }

    // x=1 branch.
    {
      std::vector<char> ra = row_active;
      std::vector<char> ca = col_allowed;
      fix_one(frac, ra, ca);
      std::vector<int> f = fixed;
      f.push_back(frac);
      dive(ra, ca, std::move(f), fixed_cost + cols_[frac].cost, false);
    }
    // x=0 branch.
    {
      std::vector<char> ca = col_allowed;
      ca[frac] = 0;
      dive(row_active, ca, fixed, fixed_cost, false);
    }
  }

  void fix_one(int col, std::vector<char>& row_active, std::vector<char>& col_allowed) {
    std::vector<char> hit(m_, 0);
    for (int r : cols_[col].rows) {
      row_active[r] = 0;
      hit[r] = 1;
    }
    for (size_t j = 0; j < cols_.size(); ++j) {
      if (!col_allowed[j]) continue;
      for (int r : cols_[j].rows)
        if (hit[r]) {
          col_allowed[j] = 0;
          break;
        }
    }
    col_allowed[col] = 0;
  }

  // Greedy rounding of the root LP for an early incumbent.
  void round_lp(const std::vector<char>& row_active, const NodeLp& node,
                const std::vector<int>& fixed, Cost fixed_cost) {
    std::vector<std::pair<double, int>> order;
    for (size_t i = 0; i < node.x.size(); ++i)
      if (node.x[i] > 1e-6) order.push_back({-node.x[i], node.local_to_global[i]});
    std::stable_sort(order.begin(), order.end());
    std::vector<char> covered(m_, 0);
    for (int r = 0; r < m_; ++r) covered[r] = !row_active[r];
    std::vector<int> chosen = fixed;
    Cost obj = fixed_cost;
    for (auto& [negx, j] : order) {
      bool ok = true;
      for (int r : cols_[j].rows)
        if (covered[r]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      for (int r : cols_[j].rows) covered[r] = 1;
      chosen.push_back(j);
      obj += cols_[j].cost;
    }
    // Complete with the cheapest single-row column per uncovered row.
    for (int r = 0; r < m_; ++r) {
      if (covered[r]) continue;
      int best = -1;
      for (size_t j = 0; j < cols_.size(); ++j)
        if (cols_[j].rows.size() == 1 && cols_[j].rows[0] == r)
          if (best < 0 || cols_[j].cost < cols_[best].cost) best = static_cast<int>(j);
      if (best < 0) return; // cannot complete
      covered[r] = 1;
      chosen.push_back(best);
      obj += cols_[best].cost;
    }
    if (!have_incumbent_ || obj < incumbent_obj_) {
      incumbent_ = std::move(chosen);
      incumbent_obj_ = obj;
      have_incumbent_ = true;
    }
  }

  int m_;
  std::vector<ColumnView> cols_;
  std::vector<int> incumbent_;
  Cost incumbent_obj_ = 0;
  bool have_incumbent_ = false;
  bool aborted_ = false;
  double root_bound_ = 0;
  Clock::time_point deadline_;
};

} // namespace bds

#endif
