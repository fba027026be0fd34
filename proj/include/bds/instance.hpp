#ifndef BDS_INSTANCE_HPP
#define BDS_INSTANCE_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace bds {

using Minutes = int;
using Cost = long long;

// Sentinel distance meaning "no transfer possible between these positions".
constexpr Minutes kNoTransfer = std::numeric_limits<Minutes>::max() / 4;

// Work and break regulation constants, in integer minutes. Defaults are the
// Austrian collective-agreement values for regional lines.
struct RulesConfig {
  Minutes max_driving = 540;          // driving time per shift
  Minutes max_span = 840;             // start of work to end of work
  Minutes max_working = 600;          // paid working time upper bound
  Minutes min_working = 390;          // soft minimum, shorter shifts are paid up to this
  Minutes drive_block_max = 240;      // driving between completed drive breaks
  Minutes split_threshold = 180;      // gap (net of passive ride) at least this long is a shift split
  Minutes unpaid_edge_window = 120;   // unpaid rest may not touch the first/last part of the shift
  Minutes centered_edge_window = 180; // window for the "centered" 30-minute rest break
  Minutes unpaid_cap_centered = 90;
  Minutes unpaid_cap_uncentered = 60;

  // Objective weights.
  int weight_working = 2;
  int weight_total = 1;
  int weight_ride = 1; // extra penalty on top of ride counting as working time
  int weight_change = 30;
  int weight_split = 180;

  bool valid() const {
    return max_driving > 0 && max_span > 0 && max_working > 0 && min_working > 0 &&
           drive_block_max > 0 && split_threshold > 0 && unpaid_edge_window > 0 &&
           centered_edge_window > 0 && unpaid_cap_centered > 0 && unpaid_cap_uncentered > 0 &&
           min_working <= max_working && unpaid_cap_uncentered <= unpaid_cap_centered;
  }
};

// One vehicle trip. `id` is the external identifier from the instance file;
// all in-memory references use the index of the leg within Instance::legs.
struct BusLeg {
  int id = 0;
  int tour = 0;
  int start_pos = 0;
  int end_pos = 0;
  Minutes start = 0;
  Minutes end = 0;

  Minutes drive() const { return end - start; }
};

// Total order on legs: by start time, tour as tie-breaker.
inline bool leg_before(const BusLeg& a, const BusLeg& b) {
  if (a.start != b.start) return a.start < b.start;
  return a.tour < b.tour;
}

struct Instance {
  int position_count = 0;
  std::vector<Minutes> dist;       // row-major position_count x position_count
  std::vector<Minutes> start_work; // per position
  std::vector<Minutes> end_work;   // per position
  std::vector<BusLeg> legs;        // sorted by leg_before
  RulesConfig rules;

  Minutes distance(int p, int q) const { return dist[static_cast<size_t>(p) * position_count + q]; }

  int leg_count() const { return static_cast<int>(legs.size()); }

  // Minimum setup time between leg i and leg j when scheduled consecutively in
  // one shift. Zero when the driver stays on the same tour at the same place.
  Minutes transfer_time(int i, int j) const {
    const BusLeg& a = legs[i];
    const BusLeg& b = legs[j];
    if (a.end_pos == b.start_pos && a.tour == b.tour) return 0;
    return distance(a.end_pos, b.start_pos);
  }

  // True when leg j can directly follow leg i in a shift.
  bool can_chain(int i, int j) const {
    if (!leg_before(legs[i], legs[j])) return false;
    Minutes t = transfer_time(i, j);
    if (t >= kNoTransfer) return false;
    return legs[j].start >= legs[i].end + t;
  }

  // Checks structural invariants; returns an empty string when valid.
  std::string validate() const;
};

// Sub-instance over a subset of legs (given as sorted indices into
// `parent.legs`). Positions, distances and rules are shared; legs keep their
// external ids so solutions map back to the parent.
Instance restrict_to_legs(const Instance& parent, const std::vector<int>& leg_indices);

} // namespace bds

#endif
