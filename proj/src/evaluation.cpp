#include "bds/evaluation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bds {

const char* violation_name(Violation v) {
  switch (v) {
    case Violation::None: return "none";
    case Violation::EmptyShift: return "empty shift";
    case Violation::NotSorted: return "legs not in order";
    case Violation::Chaining: return "chaining";
    case Violation::DriveBlock: return "drive block exceeded";
    case Violation::MaxDriving: return "max driving time";
    case Violation::MaxSpan: return "max span";
    case Violation::MaxWorking: return "max working time";
    case Violation::RestFirstPart: return "rest break too late";
    case Violation::RestTotal: return "rest break total";
    case Violation::RestMissing30: return "missing 30-minute rest";
  }
  return "?";
}

GapProperties gap_between(const Instance& inst, int leg_i, int leg_j) {
  const BusLeg& a = inst.legs[leg_i];
  const BusLeg& b = inst.legs[leg_j];
  GapProperties g;
  g.length = b.start - a.end;
  g.ride = (a.end_pos != b.start_pos) ? inst.distance(a.end_pos, b.start_pos) : 0;
  g.change = (a.tour != b.tour) ? 1 : 0;
  g.split = (g.length - g.ride >= inst.rules.split_threshold) ? 1 : 0;
  g.remain = g.split ? 0 : g.length - g.ride;
  g.rest = (g.split == 0 && g.remain >= 15) ? g.remain : 0;
  return g;
}

namespace {

// Drive-break bookkeeping for one gap of the given total length (passive ride
// included). A gap closes the running drive block when it completes one of the
// break options: one 30, two 20s, or three 15s.
struct DriveBreakState {
  Minutes block = 0; // driving in the current block
  int b15 = 0;
  int b20 = 0;

  bool apply_gap(Minutes gap_len) {
    bool reset = gap_len >= 30 || (gap_len >= 20 && b20 >= 1) || (gap_len >= 15 && b15 >= 2);
    if (reset) {
      block = 0;
      b15 = 0;
      b20 = 0;
    } else {
      if (gap_len >= 15) ++b15;
      if (gap_len >= 20) ++b20;
    }
    return reset;
  }
};

// Part of the gap's rest that may be unpaid: clip the rest interval
// [end_i, end_i + rest] against the first `window` minutes of the shift and
// the `window` minutes before the end anchor.
Minutes clipped_rest(Minutes rest, Minutes span_before, Minutes gap_start, Minutes end_anchor,
                     Minutes window) {
  if (rest <= 0) return 0;
  Minutes v = rest;
  v -= std::max(window - span_before, 0);
  v -= std::max(gap_start + rest - (end_anchor - window), 0);
  return v;
}

} // namespace

ShiftEvaluation evaluate_shift(std::span<const int> legs, const Instance& inst) {
  const RulesConfig& rules = inst.rules;
  ShiftEvaluation ev;
  auto fail = [&](Violation v) {
    ev.feasible = false;
    ev.reason = v;
    return ev;
  };

  if (legs.empty()) return fail(Violation::EmptyShift);
  for (size_t k = 1; k < legs.size(); ++k)
    if (!leg_before(inst.legs[legs[k - 1]], inst.legs[legs[k]])) return fail(Violation::NotSorted);
  for (size_t k = 1; k < legs.size(); ++k) {
    Minutes t = inst.transfer_time(legs[k - 1], legs[k]);
    if (t >= kNoTransfer || inst.legs[legs[k]].start < inst.legs[legs[k - 1]].end + t)
      return fail(Violation::Chaining);
  }

  const BusLeg& first = inst.legs[legs.front()];
  const BusLeg& last = inst.legs[legs.back()];
  const Minutes start_work = inst.start_work[first.start_pos];
  const Minutes end_work = inst.end_work[last.end_pos];
  const Minutes end_anchor = last.end;

  std::vector<GapProperties> gaps(legs.size() > 1 ? legs.size() - 1 : 0);
  for (size_t k = 0; k + 1 < legs.size(); ++k) gaps[k] = gap_between(inst, legs[k], legs[k + 1]);

  // The unpaid cap depends on whether the shift holds a 30-minute rest part
  // and whether one of them avoids the edge windows of the shift.
  {
    Minutes span = start_work + (first.end - first.start);
    for (size_t k = 0; k < gaps.size(); ++k) {
      const GapProperties& g = gaps[k];
      if (g.rest >= 30) ev.b30 = true;
      if (clipped_rest(g.rest, span, inst.legs[legs[k]].end, end_anchor,
                       rules.centered_edge_window) >= 30)
        ev.bc30 = true;
      span += g.length + inst.legs[legs[k + 1]].drive();
    }
  }
  const Minutes cap = ev.bc30 ? rules.unpaid_cap_centered : (ev.b30 ? rules.unpaid_cap_uncentered : 0);

  DriveBreakState db;
  Minutes driving = 0, span = 0, working = 0, rest_credit = 0, unpaid = 0;

  auto check_label = [&](bool at_end) -> Violation {
    if (db.block > rules.drive_block_max) return Violation::DriveBlock;
    if (driving > rules.max_driving) return Violation::MaxDriving;
    if (span > rules.max_span) return Violation::MaxSpan;
    if (working > rules.max_working) return Violation::MaxWorking;
    if (working >= 360 && rest_credit < 15) return Violation::RestFirstPart;
    if (at_end) {
      if (working > 540 && rest_credit < 45) return Violation::RestTotal;
      if (working >= 360 && !ev.b30) return Violation::RestMissing30;
    }
    return Violation::None;
  };

  for (size_t k = 0; k < legs.size(); ++k) {
    Minutes gap_len, remain, ride, rest, gap_start, span_before = span;
    if (k == 0) {
      gap_len = start_work;
      remain = start_work;
      ride = 0;
      rest = 0;
      gap_start = 0; // no end-window interaction: rest is 0 anyway
    } else {
      const GapProperties& g = gaps[k - 1];
      gap_len = g.length;
      remain = g.remain;
      ride = g.ride;
      rest = g.rest;
      gap_start = inst.legs[legs[k - 1]].end;
      ev.ride += g.ride;
      ev.changes += g.change;
      ev.splits += g.split;
      ev.split_time += g.split ? g.length - g.ride : 0;
    }

    db.apply_gap(gap_len);
    rest_credit = std::min(rest_credit + rest, 45);
    Minutes rp = clipped_rest(rest, span_before, gap_start, end_anchor, rules.unpaid_edge_window);
    Minutes unpaid_next = (rp >= 15) ? std::min(unpaid + rp, cap) : unpaid;

    Minutes drive = inst.legs[legs[k]].drive();
    db.block += drive;
    driving += drive;
    span += gap_len + drive;
    working += (unpaid - unpaid_next) + remain + ride + drive;
    unpaid = unpaid_next;

    if (Violation v = check_label(false); v != Violation::None) return fail(v);
  }

  // End-of-work period.
  db.apply_gap(end_work);
  span += end_work;
  working += end_work;
  if (Violation v = check_label(true); v != Violation::None) return fail(v);

  ev.feasible = true;
  ev.reason = Violation::None;
  ev.driving = driving;
  ev.span = span;
  ev.working = working;
  ev.unpaid = unpaid;
  ev.paid_working = std::max(working, rules.min_working);
  ev.cost = static_cast<Cost>(rules.weight_working) * ev.paid_working +
            static_cast<Cost>(rules.weight_total) * ev.span +
            static_cast<Cost>(rules.weight_ride) * ev.ride +
            static_cast<Cost>(rules.weight_change) * ev.changes +
            static_cast<Cost>(rules.weight_split) * ev.splits;
  return ev;
}

bool validate_partition(const std::vector<std::vector<int>>& shifts, int leg_count,
                        std::string* error) {
  std::vector<int> seen(leg_count, 0);
  for (const auto& s : shifts)
    for (int l : s) {
      if (l < 0 || l >= leg_count) {
        if (error) *error = "leg index " + std::to_string(l) + " out of range";
        return false;
      }
      ++seen[l];
    }
  std::ostringstream missing, dup;
  for (int l = 0; l < leg_count; ++l) {
    if (seen[l] == 0) missing << (missing.tellp() > 0 ? " " : "") << l;
    if (seen[l] > 1) dup << (dup.tellp() > 0 ? " " : "") << l;
  }
  if (missing.tellp() > 0 || dup.tellp() > 0) {
    if (error) {
      std::ostringstream e;
      if (missing.tellp() > 0) e << "uncovered legs: " << missing.str();
      if (dup.tellp() > 0) e << (missing.tellp() > 0 ? "; " : "") << "legs covered twice: " << dup.str();
      *error = e.str();
    }
    return false;
  }
  return true;
}

SolutionCheck evaluate_solution(const std::vector<std::vector<int>>& shifts,
                                const Instance& inst) {
  SolutionCheck res;
  if (!validate_partition(shifts, inst.leg_count(), &res.error)) return res;
  res.evals.reserve(shifts.size());
  for (size_t i = 0; i < shifts.size(); ++i) {
    ShiftEvaluation ev = evaluate_shift(shifts[i], inst);
    if (!ev.feasible) {
      res.error = "shift " + std::to_string(i) + " infeasible: " + violation_name(ev.reason);
      return res;
    }
    res.objective += ev.cost;
    res.evals.push_back(ev);
  }
  res.ok = true;
  return res;
}

Solution make_solution(std::vector<std::vector<int>> shifts, const Instance& inst) {
  SolutionCheck chk = evaluate_solution(shifts, inst);
  if (!chk.ok) throw std::invalid_argument("invalid solution: " + chk.error);
  Solution sol;
  sol.shifts = std::move(shifts);
  sol.evals = std::move(chk.evals);
  sol.objective = chk.objective;
  return sol;
}

double gap_percent(double z, double z_bks) {
  if (z_bks <= 0) throw std::domain_error("gap: best-known objective must be positive");
  return 100.0 * (z - z_bks) / z_bks;
}

} // namespace bds
