#include "bds/pricing_graph.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace bds {

ArcProps arc_props_between(const Instance& inst, int leg_i, int leg_j) {
  GapProperties g = gap_between(inst, leg_i, leg_j);
  ArcProps p;
  p.length = g.length;
  p.ride = g.ride;
  p.remain = g.remain;
  p.rest = g.rest;
  p.change = g.change;
  p.split = g.split;
  const RulesConfig& r = inst.rules;
  p.cost = static_cast<Cost>(r.weight_working) * p.remain +
           static_cast<Cost>(r.weight_total) * p.length +
           static_cast<Cost>(r.weight_working + r.weight_ride) * p.ride +
           static_cast<Cost>(r.weight_change) * p.change +
           static_cast<Cost>(r.weight_split) * p.split;
  return p;
}

namespace {

ArcProps source_arc_props(const Instance& inst, int leg) {
  ArcProps p;
  p.length = inst.start_work[inst.legs[leg].start_pos];
  p.remain = p.length;
  p.cost = static_cast<Cost>(inst.rules.weight_working) * p.remain +
           static_cast<Cost>(inst.rules.weight_total) * p.length;
  return p;
}

ArcProps sink_arc_props(const Instance& inst, int leg) {
  ArcProps p;
  p.length = inst.end_work[inst.legs[leg].end_pos];
  p.remain = p.length;
  p.cost = static_cast<Cost>(inst.rules.weight_working) * p.remain +
           static_cast<Cost>(inst.rules.weight_total) * p.length;
  return p;
}

void finalize(PricingGraph& g) {
  std::stable_sort(g.arcs.begin(), g.arcs.end(),
                   [](const PricingArc& a, const PricingArc& b) { return a.from < b.from; });
  g.out_begin.assign(g.node_count() + 1, 0);
  for (const PricingArc& a : g.arcs) ++g.out_begin[a.from + 1];
  for (int i = 0; i < g.node_count(); ++i) g.out_begin[i + 1] += g.out_begin[i];
  g.max_internal_arc_cost = 0;
  for (const PricingArc& a : g.arcs)
    if (a.tail_leg >= 0 && a.head_leg >= 0)
      g.max_internal_arc_cost = std::max(g.max_internal_arc_cost, a.p.cost);
}

} // namespace

PricingGraph build_graph(const Instance& inst) {
  PricingGraph g;
  g.inst = &inst;
  int n = inst.leg_count();
  g.source = 0;
  g.nodes.push_back({});
  g.leg_node.resize(n);
  g.replicas.assign(n, {});
  for (int i = 0; i < n; ++i) {
    PricingNode node;
    node.leg = i;
    node.node_cost = 3LL * inst.legs[i].drive();
    g.leg_node[i] = static_cast<int>(g.nodes.size());
    g.nodes.push_back(node);
  }
  g.sink = static_cast<int>(g.nodes.size());
  g.nodes.push_back({});

  for (int i = 0; i < n; ++i) {
    g.arcs.push_back({g.source, g.leg_node[i], -1, i, source_arc_props(inst, i)});
    g.arcs.push_back({g.leg_node[i], g.sink, i, -1, sink_arc_props(inst, i)});
    for (int j = i + 1; j < n; ++j)
      if (inst.can_chain(i, j))
        g.arcs.push_back({g.leg_node[i], g.leg_node[j], i, j, arc_props_between(inst, i, j)});
  }
  finalize(g);
  return g;
}

PricingGraph extend_graph(const PricingGraph& base) {
  const Instance& inst = *base.inst;
  int n = inst.leg_count();
  const Minutes window =
      std::max(inst.rules.unpaid_edge_window, inst.rules.centered_edge_window);

  // Base adjacency between legs.
  std::vector<std::vector<int>> succ(n), pred(n);
  for (const PricingArc& a : base.arcs)
    if (a.tail_leg >= 0 && a.head_leg >= 0) {
      succ[a.tail_leg].push_back(a.head_leg);
      pred[a.head_leg].push_back(a.tail_leg);
    }

  // N_j: backward-reachable from j with end time inside the window of end_j.
  // End times strictly decrease along reverse arcs, so pruning is exact.
  std::vector<std::vector<int>> members(n);
  for (int j = 0; j < n; ++j) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack = {j};
    seen[j] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      members[j].push_back(v);
      for (int p : pred[v])
        if (!seen[p] && inst.legs[p].end > inst.legs[j].end - window) {
          seen[p] = 1;
          stack.push_back(p);
        }
    }
    std::sort(members[j].begin(), members[j].end());
  }

  PricingGraph g;
  g.inst = &inst;
  g.extended = true;
  g.source = 0;
  g.nodes.push_back({});
  g.leg_node.resize(n);
  g.replicas.assign(n, {});

  // Replica memberships grouped by replicated leg.
  std::vector<std::vector<int>> finals_of(n);
  for (int j = 0; j < n; ++j)
    for (int i : members[j]) finals_of[i].push_back(j);

  for (int i = 0; i < n; ++i) {
    PricingNode node;
    node.leg = i;
    node.node_cost = 3LL * inst.legs[i].drive();
    g.leg_node[i] = static_cast<int>(g.nodes.size());
    g.nodes.push_back(node);
    for (int j : finals_of[i]) {
      PricingNode rep = node;
      rep.final_leg = j;
      rep.end_time = inst.legs[j].end;
      g.replicas[i].push_back({j, static_cast<int>(g.nodes.size())});
      g.nodes.push_back(rep);
    }
  }
  g.sink = static_cast<int>(g.nodes.size());
  g.nodes.push_back({});

  auto in_members = [&](int j, int leg) {
    return std::binary_search(members[j].begin(), members[j].end(), leg);
  };

  // Source arcs to originals and to every replica.
  for (int i = 0; i < n; ++i) {
    g.arcs.push_back({g.source, g.leg_node[i], -1, i, source_arc_props(inst, i)});
    for (const auto& [j, id] : g.replicas[i])
      g.arcs.push_back({g.source, id, -1, i, source_arc_props(inst, i)});
  }

  // Leg-to-leg arcs: original->original, original->replica (entry arcs from
  // outside N_j) and replica->replica inside each subnetwork.
  for (int i = 0; i < n; ++i)
    for (int k : succ[i]) {
      ArcProps p = arc_props_between(inst, i, k);
      g.arcs.push_back({g.leg_node[i], g.leg_node[k], i, k, p});
      for (const auto& [j, kid] : g.replicas[k]) {
        if (in_members(j, i)) {
          int iid = g.replica_node(i, j);
          assert(iid >= 0);
          g.arcs.push_back({iid, kid, i, k, p});
        } else {
          g.arcs.push_back({g.leg_node[i], kid, i, k, p});
        }
      }
    }

  // Sink arcs only from the subnetworks' own final replicas.
  for (int j = 0; j < n; ++j) {
    int id = g.replica_node(j, j);
    assert(id >= 0);
    g.arcs.push_back({id, g.sink, j, -1, sink_arc_props(inst, j)});
  }

  finalize(g);
  return g;
}

std::vector<int> chain_to_path(const PricingGraph& g, std::span<const int> chain) {
  if (!g.extended) throw std::logic_error("chain_to_path expects the extended graph");
  std::vector<int> path;
  int final_leg = chain.back();
  for (int leg : chain) {
    int rep = g.replica_node(leg, final_leg);
    path.push_back(rep >= 0 ? rep : g.leg_node[leg]);
  }
  return path;
}

} // namespace bds
