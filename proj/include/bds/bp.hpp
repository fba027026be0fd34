#ifndef BDS_BP_HPP
#define BDS_BP_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "bds/background.hpp"
#include "bds/column.hpp"
#include "bds/master.hpp"
#include "bds/pricing.hpp"

namespace bds {

// Arc branching constraint: (i, j) consecutive forced or forbidden.
struct BranchDecision {
  int i = -1;
  int j = -1;
  bool forced = false;
};

// Column admissible under the decisions: forced pairs must appear consecutively
// whenever one endpoint is covered; forbidden pairs must not be consecutive.
bool column_respects(const Column& c, std::span<const BranchDecision> decisions);

// Arc admissible under the decisions; -1 endpoints are source/sink. Replica
// arcs are filtered by the same leg pair.
bool arc_respects(std::span<const BranchDecision> decisions, int tail_leg, int head_leg);

// Primal weight per consecutive leg pair, aggregated over fractional columns.
std::map<std::pair<int, int>, double> pair_weights(std::span<const double> x,
                                                   const std::vector<Column>& cols);

// The pair closest to 0.5; ties by the total order on (i, j). Empty when no
// pair is fractional.
std::optional<std::pair<int, int>> most_fractional_pair(
    const std::map<std::pair<int, int>, double>& weights);

// Lagrangean lower bound: rmp + floor(rmp / minCost) * min_reduced_cost with
// minCost = 2*W_min + shortest leg. Positive reduced costs clamp to zero.
double lagrangean_bound(double rmp_obj, double min_reduced_cost, const Instance& inst);

struct StagnationQuota {
  int fresh = 10;      // objective improved last iteration
  int stale = 100;     // unchanged once
  int repeated = 1000; // unchanged repeatedly
  int pick(int stale_iterations) const {
    return stale_iterations == 0 ? fresh : (stale_iterations == 1 ? stale : repeated);
  }
};

struct CgResult {
  RmpResult rmp;
  bool converged = false; // pricing found nothing at full throttle
  bool timed_out = false;
  bool lp_valid = false;
  double min_reduced_cost = 0; // from the last pricing call
  bool min_rc_exact = false;
  int columns_added = 0;
  int iterations = 0;
};

// Column generation to convergence: alternates LP solves and pricing, adding
// new columns to both the master and `pool` until pricing proves optimality
// at full throttle or the deadline passes. The store hook, when set, receives
// every batch of generated columns.
CgResult run_column_generation(RestrictedMaster& rm, ColumnPool& pool, PricingSolver& pricing,
                               Clock::time_point deadline, const StagnationQuota& quota = {},
                               const std::function<void(std::span<const Column>)>& on_columns = {});

struct BpConfig {
  double time_limit_s = 3600;
  double node_ip_time_s = 60;  // integer master after each node's CG
  double final_ip_time_s = 60; // best-effort solve when the root times out
  std::string backend = "bundled";
  PricingConfig pricing;
  bool use_background = false; // bp+b: integer solving moves to a worker thread
  double t_bg = 60;
  bool background_threaded = true;
  size_t store_ceiling = 0;
};

struct BpNodeLog {
  int node = 0;
  int depth = 0;
  double time_s = 0;
  double rmp_obj = 0;
  int columns_added = 0;
  bool integral = false;
};

struct BpReport {
  bool found = false;
  Solution best;
  Cost objective = 0;
  double lower_bound = 0;
  double gap = 0; // (best - lb) / lb
  bool optimal = false;
  std::string termination; // "optimal", "timeout", "degenerate-branching"
  int nodes_processed = 0;
  double root_lp = 0;
  double lagrangean_root = 0; // only meaningful when the root CG was cut off
  std::vector<BpNodeLog> node_log;
};

// Branch and Price. `on_incumbent(elapsed_s, objective)` fires on every
// incumbent improvement (convergence logging).
BpReport run_bp(const Instance& inst, const BpConfig& cfg,
                const std::function<void(double, Cost)>& on_incumbent = {});

} // namespace bds

#endif
