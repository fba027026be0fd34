#include "bds/greedy.hpp"

#include <stdexcept>

namespace bds {

namespace {
constexpr Cost kNewShiftBonus = 500;
}

Solution greedy_construct(const Instance& inst) {
  std::vector<std::vector<int>> shifts;
  std::vector<Cost> shift_cost;

  for (int leg = 0; leg < inst.leg_count(); ++leg) {
    int single[] = {leg};
    ShiftEvaluation single_ev = evaluate_shift(single, inst);
    if (!single_ev.feasible)
      throw std::invalid_argument("instance error: leg " + std::to_string(inst.legs[leg].id) +
                                  " infeasible as a singleton shift (" +
                                  violation_name(single_ev.reason) + ")");

    int best = -1;
    Cost best_increase = 0;
    for (size_t s = 0; s < shifts.size(); ++s) {
      shifts[s].push_back(leg);
      ShiftEvaluation ev = evaluate_shift(shifts[s], inst);
      shifts[s].pop_back();
      if (!ev.feasible) continue;
      Cost inc = ev.cost - shift_cost[s];
      if (best < 0 || inc < best_increase) {
        best = static_cast<int>(s);
        best_increase = inc;
      }
    }

    if (best < 0 || best_increase > single_ev.cost + kNewShiftBonus) {
      shifts.push_back({leg});
      shift_cost.push_back(single_ev.cost);
    } else {
      shifts[best].push_back(leg);
      shift_cost[best] += best_increase;
    }
  }

  return make_solution(std::move(shifts), inst);
}

} // namespace bds
