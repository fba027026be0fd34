#ifndef BDS_EVALUATION_HPP
#define BDS_EVALUATION_HPP

#include <span>
#include <string>
#include <vector>

#include "bds/instance.hpp"

namespace bds {

enum class Violation {
  None,
  EmptyShift,
  NotSorted,
  Chaining,       // start_j < end_i + transfer time, or transfer forbidden
  DriveBlock,     // more than drive_block_max driving without a full break
  MaxDriving,
  MaxSpan,
  MaxWorking,
  RestFirstPart,  // no rest part of >=15 within the first 6h of working time
  RestTotal,      // working time > 9h without 45 minutes of rest
  RestMissing30,  // working time >= 6h without a 30-minute rest part
};

const char* violation_name(Violation v);

// Decomposition of the time between two consecutive legs of a shift.
struct GapProperties {
  Minutes length = 0; // start_j - end_i
  Minutes ride = 0;   // passive ride time (position change only)
  int change = 0;     // 1 if the tour changes
  int split = 0;      // 1 if length - ride >= split_threshold
  Minutes remain = 0; // waiting time: length - ride, 0 on a split
  Minutes rest = 0;   // remain if remain >= 15 and not a split, else 0
};

GapProperties gap_between(const Instance& inst, int leg_i, int leg_j);

struct ShiftEvaluation {
  bool feasible = false;
  Violation reason = Violation::None;

  Minutes driving = 0;     // D
  Minutes span = 0;        // T
  Minutes working = 0;     // W = T - unpaid - split time
  Minutes paid_working = 0;// W' = max(W, min_working)
  Minutes ride = 0;
  int changes = 0;
  int splits = 0;
  Minutes split_time = 0;
  Minutes unpaid = 0;
  bool b30 = false;        // some gap holds >= 30 minutes of rest
  bool bc30 = false;       // some gap holds a centered >= 30-minute rest part
  Cost cost = 0;
};

// Simulates one shift over the ordered leg indices and applies all work and
// break regulations. Infeasible shifts report the first violated rule; this
// never throws. Pure integer arithmetic, deterministic.
ShiftEvaluation evaluate_shift(std::span<const int> legs, const Instance& inst);

// A solution is a partition of the instance's legs into shifts. Each shift
// keeps its legs ordered by the total leg order.
struct Solution {
  std::vector<std::vector<int>> shifts;
  std::vector<ShiftEvaluation> evals; // parallel to shifts
  Cost objective = 0;

  int shift_count() const { return static_cast<int>(shifts.size()); }
};

struct SolutionCheck {
  bool ok = false;
  Cost objective = 0;
  std::vector<ShiftEvaluation> evals;
  std::string error; // first problem found, empty when ok
};

// True iff every leg of the instance appears in exactly one shift.
// On failure `error` lists the first offending legs.
bool validate_partition(const std::vector<std::vector<int>>& shifts, int leg_count,
                        std::string* error);

// Re-evaluates every shift, checks the partition and sums the objective.
SolutionCheck evaluate_solution(const std::vector<std::vector<int>>& shifts,
                                const Instance& inst);

// Builds a Solution (with evaluations and objective) from shift leg lists.
// Throws std::invalid_argument if a shift is infeasible or legs are not a
// partition.
Solution make_solution(std::vector<std::vector<int>> shifts, const Instance& inst);

// Relative gap in percent against a best-known objective. z_bks must be > 0.
double gap_percent(double z, double z_bks);

} // namespace bds

#endif
