#include "bds/column.hpp"

#include <stdexcept>

namespace bds {

LegSet legset_of(std::span<const int> legs, int leg_count) {
  LegSet s(static_cast<size_t>(leg_count));
  for (int l : legs) s.set(static_cast<size_t>(l));
  return s;
}

Column make_singleton(int leg, const Instance& inst) {
  return make_column({leg}, inst);
}

Column make_column(std::vector<int> seq, const Instance& inst) {
  ShiftEvaluation ev = evaluate_shift(seq, inst);
  if (!ev.feasible)
    throw std::invalid_argument(std::string("infeasible column: ") + violation_name(ev.reason));
  Column c;
  c.cover = legset_of(seq, inst.leg_count());
  c.cost = ev.cost;
  c.seq = std::move(seq);
  return c;
}

int ColumnPool::add(Column c) {
  auto it = index_.find(c.cover);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(cols_.size());
  index_.emplace(c.cover, id);
  cols_.push_back(std::move(c));
  return id;
}

int ColumnPool::find(const LegSet& cover) const {
  auto it = index_.find(cover);
  return it == index_.end() ? -1 : it->second;
}

} // namespace bds
