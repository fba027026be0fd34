#ifndef BDS_PRICING_GRAPH_HPP
#define BDS_PRICING_GRAPH_HPP

#include <vector>

#include "bds/evaluation.hpp"
#include "bds/instance.hpp"

namespace bds {

constexpr Minutes kInfTime = std::numeric_limits<Minutes>::max() / 4;

// Precomputed arc properties (the gap decomposition plus the arc cost).
struct ArcProps {
  Minutes length = 0;
  Minutes ride = 0;
  Minutes remain = 0;
  Minutes rest = 0;
  int change = 0;
  int split = 0;
  Cost cost = 0;
};

struct PricingNode {
  int leg = -1;        // -1 for source/sink
  int final_leg = -1;  // replicas: the subnetwork's final leg; -1 otherwise
  Minutes end_time = kInfTime; // shift-end anchor; finite on replicas only
  Cost node_cost = 0;  // 3 * leg drive
};

struct PricingArc {
  int from = 0;
  int to = 0;
  int tail_leg = -1; // -1 when from == source
  int head_leg = -1; // -1 when to == sink
  ArcProps p;
};

// Acyclic pricing graph. Nodes are stored in topological order: source, then
// legs ascending (each original immediately followed by its replicas), sink
// last. Arcs are grouped by tail node (CSR).
struct PricingGraph {
  const Instance* inst = nullptr;
  int source = 0;
  int sink = 0;
  bool extended = false;
  std::vector<PricingNode> nodes;
  std::vector<PricingArc> arcs;
  std::vector<int> out_begin;  // size nodes+1
  std::vector<int> leg_node;   // leg -> original node id
  // Replicas of leg i, as (final_leg, node id) pairs sorted by final_leg.
  std::vector<std::vector<std::pair<int, int>>> replicas;
  Cost max_internal_arc_cost = 0;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int arc_count() const { return static_cast<int>(arcs.size()); }

  // Node id of replica i_j, or -1 if i is not in N_j.
  int replica_node(int leg, int final_leg) const {
    for (const auto& [f, id] : replicas[leg])
      if (f == final_leg) return id;
    return -1;
  }

  bool has_arc(int from, int to) const {
    for (int a = out_begin[from]; a < out_begin[from + 1]; ++a)
      if (arcs[a].to == to) return true;
    return false;
  }
};

ArcProps arc_props_between(const Instance& inst, int leg_i, int leg_j);

// Base graph: source/sink plus one node per leg; arcs where chaining is
// feasible; every leg has a source and a sink arc. O(n^2).
PricingGraph build_graph(const Instance& inst);

// End-time extension: for each leg j a replica subnetwork over the nodes
// backward-reachable within the edge window of end_j. The sink is reachable
// only through replicas (arc j_j -> t replaces j -> t).
PricingGraph extend_graph(const PricingGraph& base);

// Maps an ordered leg chain onto its unique path through the extended graph
// (nodes excluding source/sink). The suffix inside the final leg's window runs
// through replicas, the prefix through originals.
std::vector<int> chain_to_path(const PricingGraph& g, std::span<const int> chain);

} // namespace bds

#endif
