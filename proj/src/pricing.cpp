#include "bds/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bds/dominance.hpp"

namespace bds {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double arc_reduced_cost(const PricingGraph& g, const PricingArc& a,
                        std::span<const double> duals, Minutes unpaid_cap) {
  double rc = static_cast<double>(a.p.cost);
  if (a.to != g.sink) {
    rc += static_cast<double>(g.nodes[a.to].node_cost) - duals[g.nodes[a.to].leg];
  }
  Minutes potential = (a.p.rest >= 15) ? std::min(a.p.rest, unpaid_cap) : 0;
  return rc - 2.0 * potential;
}
} // namespace

std::vector<double> compute_cost_bounds(const PricingGraph& g, std::span<const double> duals,
                                        Minutes unpaid_cap, const std::vector<char>& admitted) {
  std::vector<double> bound(g.node_count(), kNegInf);
  bound[g.sink] = 0;
  for (int u = g.node_count() - 1; u >= 0; --u) {
    if (u == g.sink) continue;
    double best = kNegInf;
    for (int ai = g.out_begin[u]; ai < g.out_begin[u + 1]; ++ai) {
      if (!admitted[ai]) continue;
      const PricingArc& a = g.arcs[ai];
      if (bound[a.to] == kNegInf) continue;
      best = std::max(best, bound[a.to] - arc_reduced_cost(g, a, duals, unpaid_cap));
    }
    bound[u] = best;
  }
  return bound;
}

std::optional<double> chain_reduced_cost(const PricingGraph& g, const GraphVariant& variant,
                                         std::span<const double> duals,
                                         std::span<const int> chain) {
  std::vector<int> path = chain_to_path(g, chain);
  Label cur = initial_label(g.source);
  int at = g.source;
  auto step = [&](int to) -> bool {
    for (int ai = g.out_begin[at]; ai < g.out_begin[at + 1]; ++ai) {
      const PricingArc& a = g.arcs[ai];
      if (a.to != to) continue;
      if (!variant.arc_allowed(a.p)) return false;
      auto next = extend_label(cur, g, a, duals, variant, g.inst->rules);
      if (!next) return false;
      cur = *next;
      at = to;
      return true;
    }
    throw std::logic_error("chain_reduced_cost: missing arc along chain path");
  };
  for (int node : path)
    if (!step(node)) return std::nullopt;
  if (!step(g.sink)) return std::nullopt;
  return final_cost(cur, g.inst->rules);
}

PricingSolver::PricingSolver(const PricingGraph& g, PricingConfig cfg) : g_(g), cfg_(cfg) {
  throttle_.sync(g_.max_internal_arc_cost);
  if (!cfg_.use_throttle) throttle_.done = true;
}

long PricingSolver::run_variant(const GraphVariant& variant, std::span<const double> duals,
                                const std::vector<char>& admitted, std::vector<Label>& arena,
                                std::vector<SinkHit>& hits) {
  const int dims = dominance_dims(variant.dom);
  const int nodes = g_.node_count();

  std::vector<double> bounds;
  if (cfg_.use_cost_bound) {
    bounds = compute_cost_bounds(g_, duals, variant.unpaid_cap, admitted);
    if (bounds[g_.source] <= 0) return 0; // no negative path exists at all
  }

  struct NodeSet {
    std::vector<int> accepted;
    std::unique_ptr<KdParetoStore> store;
  };
  std::vector<NodeSet> sets(nodes);

  arena.clear();
  arena.push_back(initial_label(g_.source));

  std::vector<double> atk(dims), dfn(dims);
  auto try_place = [&](Label&& y) {
    int v = y.node;
    if (cfg_.use_dominance) {
      NodeSet& s = sets[v];
      if (!s.store) s.store = std::make_unique<KdParetoStore>(dims);
      attack_key(y, variant.dom, atk.data());
      defense_key(y, variant.dom, dfn.data());
      int id = static_cast<int>(arena.size());
      if (!s.store->add(atk, dfn, id)) return;
      arena.push_back(std::move(y));
      s.accepted.push_back(id);
    } else {
      int id = static_cast<int>(arena.size());
      arena.push_back(std::move(y));
      sets[v].accepted.push_back(id);
    }
  };

  long expanded = 0;
  std::vector<int> expand_ids;
  for (int u = 0; u < nodes; ++u) {
    if (u == g_.sink) continue;
    if (u == g_.source) {
      expand_ids = {0};
    } else if (sets[u].accepted.empty()) {
      continue;
    } else if (cfg_.use_dominance && sets[u].accepted.size() > 1) {
      // Second pass in reverse insertion order: only mutually non-dominated
      // labels are expanded.
      KdParetoStore filter(dims);
      expand_ids.clear();
      const std::vector<int>& acc = sets[u].accepted;
      for (auto it = acc.rbegin(); it != acc.rend(); ++it) {
        attack_key(arena[*it], variant.dom, atk.data());
        defense_key(arena[*it], variant.dom, dfn.data());
        if (filter.add(atk, dfn, *it)) expand_ids.push_back(*it);
      }
      std::reverse(expand_ids.begin(), expand_ids.end());
    } else {
      expand_ids = sets[u].accepted;
    }

    expanded += static_cast<long>(expand_ids.size());
    for (int ai = g_.out_begin[u]; ai < g_.out_begin[u + 1]; ++ai) {
      if (!admitted[ai]) continue;
      const PricingArc& a = g_.arcs[ai];
      if (!variant.arc_allowed(a.p)) continue;
      for (int xid : expand_ids) {
        auto y = extend_label(arena[xid], g_, a, duals, variant, g_.inst->rules);
        if (!y) continue;
        y->pred = xid;
        if (a.to == g_.sink) {
          double fc = final_cost(*y, g_.inst->rules);
          int id = static_cast<int>(arena.size());
          arena.push_back(std::move(*y));
          hits.push_back({fc, id});
        } else {
          if (cfg_.use_cost_bound && y->cost >= bounds[a.to]) continue;
          try_place(std::move(*y));
        }
      }
    }
  }
  return expanded;
}

PricingOutcome PricingSolver::solve(std::span<const double> duals, int quota) {
  PricingOutcome out;
  const RulesConfig& rules = g_.inst->rules;

  while (true) {
    std::vector<char> admitted(g_.arc_count(), 1);
    for (int ai = 0; ai < g_.arc_count(); ++ai) {
      const PricingArc& a = g_.arcs[ai];
      if (branch_ok_ && !branch_ok_(a.tail_leg, a.head_leg)) {
        admitted[ai] = 0;
        continue;
      }
      if (cfg_.use_throttle && !throttle_.done && a.tail_leg >= 0 && a.head_leg >= 0 &&
          a.p.cost > throttle_.cap)
        admitted[ai] = 0;
    }

    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (expanded_[a] != expanded_[b]) return expanded_[a] < expanded_[b];
      return a < b;
    });

    std::vector<Label> arena;
    std::unordered_map<LegSet, std::pair<double, std::vector<int>>, LegSetHash> dedup;
    double min_rc = std::numeric_limits<double>::infinity();
    bool all_ran = true;
    int negatives = 0;

    for (int vi : order) {
      if (negatives >= quota) {
        all_ran = false;
        break;
      }
      GraphVariant variant = GraphVariant::make(static_cast<VariantKind>(vi), rules);
      std::vector<SinkHit> hits;
      long expanded = run_variant(variant, duals, admitted, arena, hits);
      expanded_[vi] += expanded;
      out.labels_expanded += expanded;

      std::sort(hits.begin(), hits.end(), [](const SinkHit& a, const SinkHit& b) {
        return a.reduced < b.reduced;
      });
      int taken = 0;
      for (const SinkHit& h : hits) {
        min_rc = std::min(min_rc, h.reduced);
        if (h.reduced >= cfg_.accept_threshold) break; // sorted: the rest are worse
        if (taken >= cfg_.per_variant_cap) break;
        // Decode the path.
        std::vector<int> seq;
        for (int id = h.label; id >= 0; id = arena[id].pred) {
          int leg = g_.nodes[arena[id].node].leg;
          if (leg >= 0) seq.push_back(leg);
        }
        std::reverse(seq.begin(), seq.end());
        LegSet cover = legset_of(seq, g_.inst->leg_count());
        auto it = dedup.find(cover);
        if (it == dedup.end()) {
          dedup.emplace(cover, std::make_pair(h.reduced, seq));
          ++taken;
          ++negatives;
        } else if (h.reduced < it->second.first) {
          it->second = {h.reduced, seq};
        }
      }
    }

    if (!dedup.empty() || throttle_.done) {
      out.min_reduced_cost = min_rc;
      out.exact_min = all_ran && throttle_.done;
      out.at_full_throttle = throttle_.done;
      // True costs from the evaluation oracle; cross-check against the label.
      out.columns.reserve(dedup.size());
      for (auto& [cover, rc_seq] : dedup) {
        ShiftEvaluation ev = evaluate_shift(rc_seq.second, *g_.inst);
        if (!ev.feasible)
          throw std::logic_error("pricing produced a shift the oracle rejects: " +
                                 std::string(violation_name(ev.reason)));
        double dual_sum = 0;
        for (int l : rc_seq.second) dual_sum += duals[l];
        if (std::abs(rc_seq.first + dual_sum - static_cast<double>(ev.cost)) > 1e-3)
          throw std::logic_error("pricing label cost disagrees with the evaluation oracle");
        Column c;
        c.cover = cover;
        c.cost = ev.cost;
        c.seq = rc_seq.second;
        out.columns.push_back(std::move(c));
      }
      // Deterministic order.
      std::sort(out.columns.begin(), out.columns.end(), [&](const Column& a, const Column& b) {
        if (a.cost != b.cost) return a.cost < b.cost;
        return a.seq < b.seq;
      });
      if (static_cast<int>(out.columns.size()) < quota) throttle_.escalate(g_.max_internal_arc_cost);
      return out;
    }
    throttle_.escalate(g_.max_internal_arc_cost);
  }
}

} // namespace bds
