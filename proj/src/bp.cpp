#include "bds/bp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <queue>

namespace bds {

bool column_respects(const Column& c, std::span<const BranchDecision> decisions) {
  for (const BranchDecision& d : decisions) {
    bool adjacent = false;
    for (size_t k = 0; k + 1 < c.seq.size(); ++k)
      if (c.seq[k] == d.i && c.seq[k + 1] == d.j) {
        adjacent = true;
        break;
      }
    if (d.forced) {
      bool touches = c.cover.test(d.i) || c.cover.test(d.j);
      if (touches && !adjacent) return false;
    } else if (adjacent) {
      return false;
    }
  }
  return true;
}

bool arc_respects(std::span<const BranchDecision> decisions, int tail_leg, int head_leg) {
  for (const BranchDecision& d : decisions) {
    if (d.forced) {
      if (tail_leg == d.i && head_leg != d.j) return false;
      if (head_leg == d.j && tail_leg != d.i) return false;
    } else {
      if (tail_leg == d.i && head_leg == d.j) return false;
    }
  }
  return true;
}

std::map<std::pair<int, int>, double> pair_weights(std::span<const double> x,
                                                   const std::vector<Column>& cols) {
  std::map<std::pair<int, int>, double> w;
  for (size_t c = 0; c < cols.size(); ++c) {
    if (c >= x.size()) break;
    if (x[c] <= 1e-6 || x[c] >= 1 - 1e-6) continue;
    const std::vector<int>& seq = cols[c].seq;
    for (size_t k = 0; k + 1 < seq.size(); ++k) w[{seq[k], seq[k + 1]}] += x[c];
  }
  return w;
}

std::optional<std::pair<int, int>> most_fractional_pair(
    const std::map<std::pair<int, int>, double>& weights) {
  std::optional<std::pair<int, int>> best;
  double best_dist = 2;
  for (const auto& [pair, w] : weights) {
    if (w <= 1e-6 || w >= 1 - 1e-6) continue;
    double dist = std::abs(w - 0.5);
    if (dist < best_dist - 1e-12) {
      best_dist = dist;
      best = pair;
    }
  }
  return best;
}

double lagrangean_bound(double rmp_obj, double min_reduced_cost, const Instance& inst) {
  double min_rc = std::min(min_reduced_cost, 0.0);
  if (inst.leg_count() == 0) return rmp_obj;
  Minutes shortest = inst.legs[0].drive();
  for (const BusLeg& l : inst.legs) shortest = std::min(shortest, l.drive());
  double min_cost = 2.0 * inst.rules.min_working + shortest;
  double kappa = std::floor(rmp_obj / min_cost);
  return rmp_obj + kappa * min_rc;
}

CgResult run_column_generation(RestrictedMaster& rm, ColumnPool& pool, PricingSolver& pricing,
                               Clock::time_point deadline, const StagnationQuota& quota,
                               const std::function<void(std::span<const Column>)>& on_columns) {
  CgResult res;
  std::unordered_map<LegSet, char, LegSetHash> in_rm;
  for (const Column& c : rm.columns()) in_rm[c.cover] = 1;

  int stale = 0;
  double prev_obj = std::numeric_limits<double>::quiet_NaN();
  while (true) {
    if (Clock::now() > deadline) {
      res.timed_out = true;
      return res;
    }
    res.rmp = rm.solve_lp();
    res.lp_valid = true;
    ++res.iterations;
    if (!std::isnan(prev_obj)) stale = (prev_obj - res.rmp.objective < 0.5) ? stale + 1 : 0;
    prev_obj = res.rmp.objective;

    if (Clock::now() > deadline) {
      res.timed_out = true;
      return res;
    }
    PricingOutcome out = pricing.solve(res.rmp.duals, quota.pick(std::min(stale, 2)));
    res.min_reduced_cost = out.min_reduced_cost;
    res.min_rc_exact = out.exact_min;
    if (on_columns && !out.columns.empty()) on_columns(out.columns);

    int added = 0;
    for (const Column& c : out.columns) {
      if (in_rm.count(c.cover)) continue;
      in_rm[c.cover] = 1;
      pool.add(c);
      rm.add(c);
      ++added;
    }
    res.columns_added += added;

    if (added == 0) {
      if (out.columns.empty()) {
        res.converged = true; // pricing escalates internally; empty means exact
        return res;
      }
      // Everything returned was already known: numerically near-zero reduced
      // costs. Push the throttle onward or stop.
      if (pricing.throttle().done) {
        res.converged = true;
        return res;
      }
      pricing.force_escalate();
    }
  }
}

namespace {

struct BpNode {
  double lb = 0;
  int depth = 0;
  int id = 0;
  std::vector<BranchDecision> decisions;
};

struct NodeOrder {
  bool operator()(const BpNode& a, const BpNode& b) const {
    if (a.lb != b.lb) return a.lb > b.lb;      // min-heap on lb
    if (a.depth != b.depth) return a.depth < b.depth; // deeper first
    return a.id > b.id;
  }
};

std::optional<Solution> decode_integral(const RestrictedMaster& rm, const RmpResult& rmp,
                                        const Instance& inst) {
  std::vector<std::vector<int>> shifts;
  for (size_t i = 0; i < rmp.x.size(); ++i) {
    if (rmp.x[i] > 0.5) shifts.push_back(rm.column(static_cast<int>(i)).seq);
    else if (rmp.x[i] > 1e-6) return std::nullopt;
  }
  SolutionCheck chk = evaluate_solution(shifts, inst);
  if (!chk.ok) return std::nullopt;
  Solution sol;
  sol.shifts = std::move(shifts);
  sol.evals = std::move(chk.evals);
  sol.objective = chk.objective;
  return sol;
}

} // namespace

BpReport run_bp(const Instance& inst, const BpConfig& cfg,
                const std::function<void(double, Cost)>& on_incumbent) {
  const auto t0 = Clock::now();
  const auto deadline = t0 + std::chrono::microseconds(static_cast<int64_t>(cfg.time_limit_s * 1e6));
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

  BpReport rep;
  const int m = inst.leg_count();
  if (m == 0) {
    rep.found = true;
    rep.optimal = true;
    rep.termination = "optimal";
    return rep;
  }

  ColumnPool pool;
  for (int l = 0; l < m; ++l) pool.add(make_singleton(l, inst));
  PricingGraph ext = extend_graph(build_graph(inst));

  std::optional<ColumnStore> store;
  std::unique_ptr<BackgroundWorker> worker;
  if (cfg.use_background) {
    store.emplace(cfg.store_ceiling);
    store->add(pool.columns());
    worker = std::make_unique<BackgroundWorker>(inst, *store, cfg.t_bg, cfg.backend);
    if (cfg.background_threaded) worker->start_thread();
  }

  std::optional<Solution> best;
  auto try_incumbent = [&](Solution s) {
    if (!best || s.objective < best->objective) {
      best = std::move(s);
      if (on_incumbent) on_incumbent(elapsed(), best->objective);
    }
  };
  auto merge_background = [&] {
    if (!worker) return;
    if (!cfg.background_threaded) worker->run_cycle();
    if (auto s = worker->latest()) try_incumbent(std::move(*s));
  };

  std::priority_queue<BpNode, std::vector<BpNode>, NodeOrder> open;
  int next_id = 0;
  open.push({0.0, 0, next_id++, {}});
  std::vector<double> unresolved_lbs; // degenerate or interrupted nodes
  bool timed_out = false;

  while (!open.empty()) {
    if (Clock::now() > deadline) {
      timed_out = true;
      std::vector<double> rest;
      while (!open.empty()) {
        rest.push_back(open.top().lb);
        open.pop();
      }
      unresolved_lbs.insert(unresolved_lbs.end(), rest.begin(), rest.end());
      break;
    }
    BpNode node = open.top();
    open.pop();
    if (best && node.lb >= static_cast<double>(best->objective) - 1e-9) continue;

    // Column filter for this node's decisions; safety net re-adds singletons
    // for any leg losing coverage.
    RestrictedMaster rm(m, make_backend(cfg.backend));
    std::vector<char> covered(m, 0);
    for (const Column& c : pool.columns())
      if (column_respects(c, node.decisions)) {
        rm.add(c);
        for (int l : c.seq) covered[l] = 1;
      }
    for (int l = 0; l < m; ++l)
      if (!covered[l]) rm.add(make_singleton(l, inst));

    PricingSolver pricing(ext, cfg.pricing);
    if (!node.decisions.empty())
      pricing.set_branch_filter([ds = node.decisions](int tail, int head) {
        return arc_respects(ds, tail, head);
      });

    auto store_hook = [&](std::span<const Column> cols) {
      if (store) store->add(cols);
    };
    CgResult cg = run_column_generation(rm, pool, pricing, deadline, {},
                                        store ? std::function<void(std::span<const Column>)>(store_hook)
                                              : std::function<void(std::span<const Column>)>{});
    ++rep.nodes_processed;

    if (cg.timed_out) {
      timed_out = true;
      if (node.depth == 0 && cg.lp_valid) {
        // Relaxed pricing bound: resource-free shortest reduced-cost path on
        // the unthrottled graph with the most permissive unpaid cap.
        std::vector<char> all(ext.arc_count(), 1);
        auto B = compute_cost_bounds(ext, cg.rmp.duals, inst.rules.unpaid_cap_centered, all);
        double min_rc = B[ext.source] == -std::numeric_limits<double>::infinity()
                            ? 0.0
                            : -B[ext.source];
        rep.lagrangean_root = lagrangean_bound(cg.rmp.objective, min_rc, inst);
        unresolved_lbs.push_back(std::max(node.lb, rep.lagrangean_root));
      } else {
        unresolved_lbs.push_back(node.lb);
      }
      if (!best && !worker) {
        // Best-effort integer solve over the full pool (Alg. 1 timeout path).
        RestrictedMaster full(m, make_backend(cfg.backend));
        for (const Column& c : pool.columns()) full.add(c);
        IntegerResult ip = full.solve_ip(cfg.final_ip_time_s, {});
        if (ip.found) try_incumbent(full.to_solution(ip.chosen, inst));
      }
      break;
    }

    double node_lb = std::max(node.lb, std::ceil(cg.rmp.objective - 1e-6));
    if (node.depth == 0) {
      rep.root_lp = cg.rmp.objective;
      rep.lagrangean_root = lagrangean_bound(cg.rmp.objective, cg.min_reduced_cost, inst);
    }
    rep.node_log.push_back({node.id, node.depth, elapsed(), cg.rmp.objective, cg.columns_added,
                            cg.rmp.integral});

    if (best && node_lb >= static_cast<double>(best->objective) - 1e-9) continue;

    if (cg.rmp.integral) {
      if (auto sol = decode_integral(rm, cg.rmp, inst)) {
        try_incumbent(std::move(*sol));
        continue; // node solved exactly
      }
    }

    if (worker) {
      merge_background();
    } else {
      std::vector<int> warm;
      if (best) {
        std::unordered_map<LegSet, int, LegSetHash> rm_index;
        for (int i = 0; i < rm.column_count(); ++i) rm_index[rm.column(i).cover] = i;
        bool all = true;
        for (const auto& shift : best->shifts) {
          auto it = rm_index.find(legset_of(shift, m));
          if (it == rm_index.end()) {
            all = false;
            break;
          }
          warm.push_back(it->second);
        }
        if (!all) warm.clear();
      }
      IntegerResult ip = rm.solve_ip(cfg.node_ip_time_s, warm);
      if (ip.found) try_incumbent(rm.to_solution(ip.chosen, inst));
    }

    auto weights = pair_weights(cg.rmp.x, rm.columns());
    auto pair = most_fractional_pair(weights);
    if (!pair) {
      // Fractional solution without a fractional consecutive pair: close the
      // node without proof and account for it in the global bound.
      unresolved_lbs.push_back(node_lb);
      rep.termination = "degenerate-branching";
      continue;
    }
    auto [bi, bj] = *pair;
    BpNode left{node_lb, node.depth + 1, next_id++, node.decisions};
    left.decisions.push_back({bi, bj, true});
    BpNode right{node_lb, node.depth + 1, next_id++, node.decisions};
    right.decisions.push_back({bi, bj, false});
    open.push(std::move(left));
    open.push(std::move(right));
  }

  if (worker) {
    worker->stop();
    worker->run_cycle(true); // final synchronous cycle over all columns
    merge_background();
  }
  if (!best) try_incumbent(make_solution([&] {
    std::vector<std::vector<int>> shifts;
    for (int l = 0; l < m; ++l) shifts.push_back({l});
    return shifts;
  }(), inst));

  rep.found = best.has_value();
  rep.best = *best;
  rep.objective = best->objective;
  double lb = static_cast<double>(best->objective);
  for (double v : unresolved_lbs) lb = std::min(lb, v);
  rep.lower_bound = lb;
  rep.optimal = !timed_out && lb >= static_cast<double>(best->objective) - 1e-9 &&
                rep.termination != "degenerate-branching";
  if (rep.termination.empty()) rep.termination = timed_out ? "timeout" : "optimal";
  rep.gap = lb > 0 ? (static_cast<double>(best->objective) - lb) / lb : 0.0;
  return rep;
}

} // namespace bds
