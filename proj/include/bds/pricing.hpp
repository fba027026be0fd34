#ifndef BDS_PRICING_HPP
#define BDS_PRICING_HPP

#include <array>
#include <functional>
#include <limits>
#include <span>

#include "bds/column.hpp"
#include "bds/labeling.hpp"
#include "bds/pricing_graph.hpp"

namespace bds {

// Exponential arc throttling: internal arcs above the cap are excluded until
// too few columns are found, then the cap doubles until every arc is in.
struct ThrottleState {
  Cost cap = 100;
  bool done = false;

  void sync(Cost max_internal_cost) { done = cap >= max_internal_cost; }
  void escalate(Cost max_internal_cost) {
    if (done) return;
    cap *= 2;
    sync(max_internal_cost);
  }
};

struct PricingConfig {
  int per_variant_cap = 1000; // columns returned per graph variant
  bool use_dominance = true;
  bool use_cost_bound = true;
  bool use_throttle = true;
  double accept_threshold = -1e-7; // reduced cost strictly below counts as negative
};

struct PricingOutcome {
  std::vector<Column> columns;   // decoded, deduplicated, true oracle costs
  double min_reduced_cost = std::numeric_limits<double>::infinity();
  bool exact_min = false;        // every variant ran to completion at full throttle
  bool at_full_throttle = false;
  long labels_expanded = 0;
};

// Backward reduced-cost bounds, resource-free relaxation: B[sink]=0 and
// B[u] = max over admitted arcs u->v of (B[v] - rc(u,v)); labels at u with
// reduced cost >= B[u] cannot complete a path of negative reduced cost.
// rc subtracts 2*min(rest, cap) as the largest possible unpaid-rest gain.
std::vector<double> compute_cost_bounds(const PricingGraph& g, std::span<const double> duals,
                                        Minutes unpaid_cap, const std::vector<char>& admitted);

// Walks one chain through the extended graph in the given variant; returns
// the finalized reduced cost at the sink, or nullopt if some extension is
// rejected. Exercises exactly the label machinery (used for verification).
std::optional<double> chain_reduced_cost(const PricingGraph& g, const GraphVariant& variant,
                                         std::span<const double> duals,
                                         std::span<const int> chain);

// One pricing driver per column-generation run; owns the throttle state and
// the per-variant complexity counters.
class PricingSolver {
 public:
  explicit PricingSolver(const PricingGraph& g, PricingConfig cfg = {});

  // Branch decisions as an arc filter over (tail leg, head leg); -1 stands
  // for source/sink endpoints. Applies to replica images automatically since
  // filtering works on leg ids.
  void set_branch_filter(std::function<bool(int, int)> f) { branch_ok_ = std::move(f); }

  // Returns negative-reduced-cost columns. Never returns an empty set while
  // arcs are still throttled: the cap escalates internally until either
  // columns appear or every arc is admitted, so an empty result means the
  // pricing problem is solved exactly. `quota` stops escalation to more
  // complex variants (10 / 100 / 1000 by master stagnation).
  PricingOutcome solve(std::span<const double> duals, int quota);

  const ThrottleState& throttle() const { return throttle_; }
  void force_escalate() { throttle_.escalate(g_.max_internal_arc_cost); }
  long expanded(VariantKind k) const { return expanded_[static_cast<int>(k)]; }

 private:
  struct SinkHit {
    double reduced = 0;
    int label = -1; // arena id
  };

  long run_variant(const GraphVariant& variant, std::span<const double> duals,
                   const std::vector<char>& admitted, std::vector<Label>& arena,
                   std::vector<SinkHit>& hits);

  const PricingGraph& g_;
  PricingConfig cfg_;
  ThrottleState throttle_;
  std::function<bool(int, int)> branch_ok_;
  std::array<long, 3> expanded_{};
};

} // namespace bds

#endif
