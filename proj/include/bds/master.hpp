#ifndef BDS_MASTER_HPP
#define BDS_MASTER_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bds/column.hpp"
#include "bds/evaluation.hpp"
#include "bds/instance.hpp"
#include "bds/simplex.hpp"

namespace bds {

struct RmpResult {
  double objective = 0;
  std::vector<double> x;     // per column, in backend column order
  std::vector<double> duals; // per leg
  bool integral = false;
};

struct IntegerResult {
  bool found = false;
  bool optimal = false;
  Cost objective = 0;
  std::vector<int> chosen; // backend column ids
  double bound = 0;
};

// Linear-optimization backend contract for the set-partitioning master:
// min c.x, sum_s cover_sl x_s = 1 per leg, 0 <= x <= 1 (LP) or x binary (IP).
// One backend instance is owned by one caller at a time. Columns can only be
// added; a fresh backend is created per column-generation run.
class MasterBackend {
 public:
  virtual ~MasterBackend() = default;
  virtual void reset(int leg_count) = 0;
  virtual int add_column(Cost cost, std::span<const int> legs) = 0;
  virtual int column_count() const = 0;
  // Optimal LP relaxation with duals. Throws on infeasibility (cannot happen
  // once singleton columns are present).
  virtual RmpResult solve_lp() = 0;
  // Best integer solution within the time limit, optionally warm-started from
  // a known feasible set of columns. The root LP and a rounding pass always
  // complete, so a warm start or rounding result is available even on tiny
  // budgets when one exists.
  virtual IntegerResult solve_ip(double time_limit_s, const std::vector<int>& warm_start) = 0;
};

// "bundled" (double precision) or "bundled-exact" (rational arithmetic).
std::unique_ptr<MasterBackend> make_backend(const std::string& name);

// Exact duals of the last LP solve, exposed by the bundled-exact backend for
// tolerance-zero verification; null for other backends.
const std::vector<Rational>* exact_duals_of(const MasterBackend& backend);

// Restricted master problem over a column pool.
class RestrictedMaster {
 public:
  RestrictedMaster(int leg_count, std::unique_ptr<MasterBackend> backend);

  // Appends the column to the backend; columns are deduplicated by the caller
  // (ColumnPool). Returns the backend id.
  int add(const Column& c);

  RmpResult solve_lp();
  IntegerResult solve_ip(double time_limit_s, const std::vector<int>& warm_start = {});

  int column_count() const { return backend_->column_count(); }
  const Column& column(int backend_id) const { return cols_[backend_id]; }
  const std::vector<Column>& columns() const { return cols_; }
  MasterBackend& backend() { return *backend_; }
  const MasterBackend& backend() const { return *backend_; }

  // Decodes chosen backend columns into a validated Solution.
  Solution to_solution(const std::vector<int>& chosen, const Instance& inst) const;

 private:
  int legs_;
  std::unique_ptr<MasterBackend> backend_;
  std::vector<Column> cols_; // backend id -> column
};

} // namespace bds

#endif
