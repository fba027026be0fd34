#include "bds/instance.hpp"

#include <set>
#include <sstream>

namespace bds {

std::string Instance::validate() const {
  std::ostringstream err;
  if (position_count <= 0) return "position count must be positive";
  if (dist.size() != static_cast<size_t>(position_count) * position_count)
    return "distance matrix size mismatch";
  if (start_work.size() != static_cast<size_t>(position_count) ||
      end_work.size() != static_cast<size_t>(position_count))
    return "start/end work vectors must have one entry per position";
  if (!rules.valid()) return "invalid rule constants";
  for (int p = 0; p < position_count; ++p) {
    if (start_work[p] < 0 || end_work[p] < 0) return "negative start/end work time";
    for (int q = 0; q < position_count; ++q)
      if (distance(p, q) < 0) return "negative distance entry";
  }

  std::set<std::pair<Minutes, int>> keys;
  for (size_t i = 0; i < legs.size(); ++i) {
    const BusLeg& l = legs[i];
    if (l.start_pos < 0 || l.start_pos >= position_count || l.end_pos < 0 ||
        l.end_pos >= position_count) {
      err << "leg " << l.id << ": position out of range";
      return err.str();
    }
    if (l.end <= l.start) {
      err << "leg " << l.id << ": end must be after start";
      return err.str();
    }
    if (!keys.insert({l.start, l.tour}).second) {
      err << "leg " << l.id << ": duplicate (start, tour) key";
      return err.str();
    }
    if (i > 0 && !leg_before(legs[i - 1], legs[i])) {
      err << "legs not sorted by (start, tour) at index " << i;
      return err.str();
    }
  }

  // Legs of one tour must not overlap.
  for (size_t i = 0; i < legs.size(); ++i)
    for (size_t j = i + 1; j < legs.size(); ++j) {
      if (legs[i].tour != legs[j].tour) continue;
      if (legs[j].start < legs[i].end && legs[i].start < legs[j].end) {
        err << "legs " << legs[i].id << " and " << legs[j].id << " of tour " << legs[i].tour
            << " overlap";
        return err.str();
      }
    }
  return "";
}

Instance restrict_to_legs(const Instance& parent, const std::vector<int>& leg_indices) {
  Instance sub;
  sub.position_count = parent.position_count;
  sub.dist = parent.dist;
  sub.start_work = parent.start_work;
  sub.end_work = parent.end_work;
  sub.rules = parent.rules;
  sub.legs.reserve(leg_indices.size());
  for (int idx : leg_indices) sub.legs.push_back(parent.legs[idx]);
  return sub;
}

} // namespace bds
