#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "bds/evaluation.hpp"
#include "bds/generator.hpp"
#include "bds/greedy.hpp"
#include "bds/io.hpp"
#include "bds/rng.hpp"
#include "oracles.hpp"

using namespace bds;
using namespace bds::test;

TEST_CASE("single depot leg: span and working include start/end work") {
  Instance inst = make_instance({{0, 0, 0, 400, 495}}, 2);
  int legs[] = {0};
  ShiftEvaluation ev = evaluate_shift(legs, inst);
  REQUIRE(ev.feasible);
  CHECK(ev.span == 120);
  CHECK(ev.working == 120);
  CHECK(ev.paid_working == 390);
  CHECK(ev.driving == 95);
  CHECK(ev.unpaid == 0);
  CHECK(ev.cost == 2 * 390 + 120);
}

TEST_CASE("chaining violations") {
  // Gap 5 between positions 10 minutes apart.
  Instance inst = make_instance({{0, 0, 1, 400, 450}, {1, 2, 0, 455, 500}}, 3);
  int legs[] = {0, 1};
  ShiftEvaluation ev = evaluate_shift(legs, inst);
  CHECK_FALSE(ev.feasible);
  CHECK(ev.reason == Violation::Chaining);

  // Same pair with a forbidden transfer.
  Instance forb = inst;
  for (int q = 0; q < 3; ++q) forb.dist[static_cast<size_t>(1) * 3 + q] = kNoTransfer;
  forb.legs[1].start = 600; // time would be fine
  forb.legs[1].end = 645;
  CHECK(forb.validate().empty());
  ShiftEvaluation ev2 = evaluate_shift(legs, forb);
  CHECK_FALSE(ev2.feasible);
  CHECK(ev2.reason == Violation::Chaining);
}

TEST_CASE("drive block limit: 10-minute gap gives no break credit") {
  Instance inst = make_instance({{0, 0, 0, 100, 340}, {0, 0, 0, 350, 410}}, 2);
  // startWork at depot is 15 and counts as one 15-minute break part, but the
  // block 240 + 60 = 300 still exceeds 240 without a completed break.
  int legs[] = {0, 1};
  ShiftEvaluation ev = evaluate_shift(legs, inst);
  CHECK_FALSE(ev.feasible);
  CHECK(ev.reason == Violation::DriveBlock);

  // A 30-minute gap closes the block.
  Instance ok = make_instance({{0, 0, 0, 100, 340}, {0, 0, 0, 370, 430}}, 2);
  ShiftEvaluation ev2 = evaluate_shift(legs, ok);
  CHECK(ev2.feasible);
}

TEST_CASE("drive block split options") {
  // Shifts start away from the depot so the start-work period is 0 and gives
  // no break part. Three 15-minute gaps complete a break.
  Instance inst = make_instance(
      {{0, 1, 1, 100, 220}, {0, 1, 1, 235, 335}, {0, 1, 1, 350, 370}, {0, 1, 1, 385, 440}}, 2);
  // Blocks: 120, +100=220, +20=240; the third 15-gap resets, last leg block=55.
  int legs[] = {0, 1, 2, 3};
  ShiftEvaluation ev = evaluate_shift(legs, inst);
  REQUIRE(ev.feasible);
  CHECK(ev.driving == 295);

  // Two 20-minute parts.
  Instance two20 = make_instance({{0, 1, 1, 100, 300}, {0, 1, 1, 320, 360}, {0, 1, 1, 380, 440}}, 2);
  int legs3[] = {0, 1, 2};
  CHECK(evaluate_shift(legs3, two20).feasible);

  // 21 + 19 does not complete a break: 19 < 20 and only two parts >= 15.
  Instance bad = make_instance({{0, 1, 1, 100, 300}, {0, 1, 1, 321, 361}, {0, 1, 1, 380, 440}}, 2);
  ShiftEvaluation evb = evaluate_shift(legs3, bad);
  CHECK_FALSE(evb.feasible);
  CHECK(evb.reason == Violation::DriveBlock);

  // With the depot's 15-minute start-work period as first part, 21 + 19 works.
  Instance depot = make_instance({{0, 0, 1, 100, 300}, {0, 1, 1, 321, 361}, {0, 1, 1, 380, 440}}, 2);
  CHECK(evaluate_shift(legs3, depot).feasible);
}

TEST_CASE("paper tour example rows 1-2: gap 15, no ride, no change") {
  Instance inst = table1_instance();
  GapProperties g = gap_between(inst, 0, 1);
  CHECK(g.length == 15);
  CHECK(g.ride == 0);
  CHECK(g.change == 0);
  CHECK(g.split == 0);
  CHECK(g.remain == 15);
  CHECK(g.rest == 15);
  int legs[] = {0, 1};
  ShiftEvaluation ev = evaluate_shift(legs, inst);
  REQUIRE(ev.feasible);
  CHECK(ev.ride == 0);
  CHECK(ev.changes == 0);
}

TEST_CASE("shift split: long gap is unpaid, not working time, no rest") {
  // Gap of 200 at the same position/tour -> split.
  Instance inst = make_instance({{0, 0, 0, 300, 400}, {0, 0, 0, 600, 700}}, 2);
  int legs[] = {0, 1};
  ShiftEvaluation ev = evaluate_shift(legs, inst);
  REQUIRE(ev.feasible);
  CHECK(ev.splits == 1);
  CHECK(ev.split_time == 200);
  CHECK(ev.span == 15 + 400 + 10);
  CHECK(ev.working == ev.span - 200); // split excluded, no unpaid rest (no 30-min rest part)
  CHECK(ev.b30 == false);
  CHECK(ev.unpaid == 0);
  CHECK(ev.cost == 2 * std::max(ev.working, 390) + ev.span + 0 + 0 + 180);
}

TEST_CASE("unpaid rest: centered 30-minute part caps at 90") {
  // Rest parts 30 + 40 + 35 = 105 raw, all clear of the 2h edge windows; the
  // 40-minute part avoids the 3h windows as well, so the cap 90 binds.
  Instance inst = make_instance({{0, 0, 0, 300, 420},
                                 {0, 0, 0, 450, 560},
                                 {0, 0, 0, 600, 700},
                                 {0, 0, 0, 735, 800},
                                 {0, 0, 0, 830, 910}},
                                2);
  int legs[] = {0, 1, 2, 3, 4};
  ShiftEvaluation ev = evaluate_shift(legs, inst);
  REQUIRE(ev.feasible);
  CHECK(ev.b30);
  CHECK(ev.bc30);
  CHECK(ev.unpaid == 90);
  CHECK(ev.span == 635);
  CHECK(ev.working == 635 - 90);
}

TEST_CASE("unpaid rest: no 30-minute part means unpaid 0") {
  Instance inst = make_instance({{0, 0, 0, 300, 400}, {0, 0, 0, 425, 520}}, 2);
  int legs[] = {0, 1};
  ShiftEvaluation ev = evaluate_shift(legs, inst);
  REQUIRE(ev.feasible);
  CHECK_FALSE(ev.b30);
  CHECK(ev.unpaid == 0);
  CHECK(ev.working == ev.span);
}

TEST_CASE("unpaid rest: uncentered 30-minute part caps at 60") {
  // One 30-minute part sits between the 2h and 3h front windows (span 130 at
  // the gap), the other parts are 20 and 25 minutes: raw unpaid 70, cap 60.
  Instance inst = make_instance({{0, 0, 0, 300, 415},
                                 {0, 0, 0, 445, 560},
                                 {0, 0, 0, 580, 700},
                                 {0, 0, 0, 725, 840}},
                                2);
  int legs[] = {0, 1, 2, 3};
  ShiftEvaluation ev = evaluate_shift(legs, inst);
  REQUIRE(ev.feasible);
  CHECK(ev.b30);
  CHECK_FALSE(ev.bc30);
  CHECK(ev.unpaid == 60);
  CHECK(ev.working == ev.span - 60);
}

TEST_CASE("rest break requirements by working time") {
  // Working time >= 360 without any rest part fails at the point of crossing.
  Instance inst = make_instance({{0, 0, 0, 100, 220}, {0, 0, 0, 225, 340}, {0, 0, 0, 345, 470}}, 2);
  int legs[] = {0, 1, 2};
  ShiftEvaluation ev = evaluate_shift(legs, inst);
  CHECK_FALSE(ev.feasible);
  // The drive block (120+115+125=360) also exceeds 240; block check fires first.
  CHECK(ev.reason == Violation::DriveBlock);

  // With gaps of 14 minutes there is still no credit; make legs shorter so the
  // drive block stays legal but working time crosses 360.
  Instance inst2 = make_instance({{0, 0, 0, 100, 214},
                                  {0, 0, 0, 228, 342},
                                  {0, 0, 0, 356, 460},
                                  {0, 1, 1, 474, 500}},
                                 2);
  int legs4[] = {0, 1, 2, 3};
  ShiftEvaluation ev2 = evaluate_shift(legs4, inst2);
  CHECK_FALSE(ev2.feasible);
  CHECK((ev2.reason == Violation::RestFirstPart || ev2.reason == Violation::DriveBlock));
}

TEST_CASE("45 minutes of rest required above 9h working time") {
  // Drive blocks are closed by pure passive-ride gaps (30 minutes of ride give
  // break credit but no rest), so total rest stays at one 30-minute part while
  // working time exceeds 9h.
  Instance inst = make_instance({{0, 1, 2, 300, 420},
                                 {0, 1, 2, 450, 570},
                                 {0, 2, 1, 600, 720},
                                 {0, 2, 1, 750, 900}},
                                3, /*uniform_distance=*/30);
  int legs[] = {0, 1, 2, 3};
  ShiftEvaluation ev = evaluate_shift(legs, inst);
  CHECK_FALSE(ev.feasible);
  CHECK(ev.reason == Violation::RestTotal);
}

TEST_CASE("evaluate_solution: partition checks and additivity") {
  Instance inst = generate_instance({.tours = 1, .seed = 7});
  REQUIRE(inst.leg_count() >= 8);

  std::vector<std::vector<int>> singletons;
  Cost sum = 0;
  for (int l = 0; l < inst.leg_count(); ++l) {
    singletons.push_back({l});
    int one[] = {l};
    sum += evaluate_shift(one, inst).cost;
  }
  SolutionCheck chk = evaluate_solution(singletons, inst);
  REQUIRE(chk.ok);
  CHECK(chk.objective == sum);

  SUBCASE("duplicated leg") {
    singletons.push_back({0});
    SolutionCheck bad = evaluate_solution(singletons, inst);
    CHECK_FALSE(bad.ok);
    CHECK(bad.error.find("twice") != std::string::npos);
  }
  SUBCASE("missing leg") {
    singletons.pop_back();
    SolutionCheck bad = evaluate_solution(singletons, inst);
    CHECK_FALSE(bad.ok);
    CHECK(bad.error.find("uncovered") != std::string::npos);
  }
}

TEST_CASE("empty instance, empty solution") {
  Instance inst;
  inst.position_count = 1;
  inst.dist = {0};
  inst.start_work = {0};
  inst.end_work = {0};
  REQUIRE(inst.validate().empty());
  SolutionCheck chk = evaluate_solution({}, inst);
  CHECK(chk.ok);
  CHECK(chk.objective == 0);
}

TEST_CASE("gap percent") {
  CHECK(gap_percent(100, 100) == doctest::Approx(0.0));
  CHECK(gap_percent(110, 100) == doctest::Approx(10.0));
  CHECK(gap_percent(14709.2, 14709.2) == doctest::Approx(0.0));
  CHECK_THROWS_AS(gap_percent(1, 0), std::domain_error);
  CHECK_THROWS_AS(gap_percent(1, -5), std::domain_error);
}

TEST_CASE("greedy: single leg, chainable pair, overlapping pair") {
  Instance one = make_instance({{0, 0, 0, 300, 400}}, 2);
  CHECK(greedy_construct(one).shift_count() == 1);

  // Same tour, small gap: one shift is cheaper than two min-working penalties.
  Instance pair = make_instance({{0, 0, 0, 300, 400}, {0, 0, 0, 410, 500}}, 2);
  Solution g = greedy_construct(pair);
  CHECK(g.shift_count() == 1);
  int both[] = {0, 1};
  int first[] = {0};
  int second[] = {1};
  Cost joint = evaluate_shift(both, pair).cost;
  Cost split = evaluate_shift(first, pair).cost + evaluate_shift(second, pair).cost;
  CHECK(joint < split);
  CHECK(g.objective == joint);

  Instance overlap = make_instance({{0, 0, 0, 300, 400}, {1, 0, 0, 350, 450}}, 2);
  CHECK(greedy_construct(overlap).shift_count() == 2);
}

TEST_CASE("greedy yields valid partitions on generated instances") {
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    Instance inst = generate_instance({.tours = 4, .seed = seed});
    Solution sol = greedy_construct(inst);
    SolutionCheck chk = evaluate_solution(sol.shifts, inst);
    REQUIRE(chk.ok);
    CHECK(chk.objective == sol.objective);
  }
}

TEST_CASE("oracle determinism and properties on random instances") {
  Rng rng(99);
  for (int round = 0; round < 20; ++round) {
    Instance inst = generate_instance({.tours = 1, .seed = 1000 + static_cast<uint64_t>(round)});
    auto shifts = enumerate_feasible_shifts(inst);
    for (const auto& s : shifts) {
      ShiftEvaluation a = evaluate_shift(s, inst);
      ShiftEvaluation b = evaluate_shift(s, inst);
      REQUIRE(a.feasible);
      CHECK(a.cost == b.cost);
      CHECK(a.working == b.working);
      // W = T - unpaid - split time; W' floors at min working.
      CHECK(a.working == a.span - a.unpaid - a.split_time);
      CHECK(a.paid_working >= a.working);
      CHECK(a.paid_working >= inst.rules.min_working);
      // Unpaid tiers.
      CHECK(a.unpaid <= 90);
      if (!a.bc30) CHECK(a.unpaid <= 60);
      if (!a.b30) CHECK(a.unpaid == 0);
      CHECK(a.cost == 2LL * a.paid_working + a.span + a.ride + 30LL * a.changes + 180LL * a.splits);
    }
    (void)rng;
  }
}

TEST_CASE("instance file round trip is field-exact") {
  Instance inst = generate_instance({.tours = 3, .seed = 42, .forbid_permille = 100});
  inst.rules.split_threshold = 200; // exercise a rule override line
  std::ostringstream out;
  write_instance(inst, out);
  std::istringstream in(out.str());
  Instance back = parse_instance(in, "roundtrip");
  CHECK(back.position_count == inst.position_count);
  CHECK(back.dist == inst.dist);
  CHECK(back.start_work == inst.start_work);
  CHECK(back.end_work == inst.end_work);
  CHECK(back.rules.split_threshold == 200);
  REQUIRE(back.leg_count() == inst.leg_count());
  for (int i = 0; i < inst.leg_count(); ++i) {
    CHECK(back.legs[i].id == inst.legs[i].id);
    CHECK(back.legs[i].tour == inst.legs[i].tour);
    CHECK(back.legs[i].start == inst.legs[i].start);
    CHECK(back.legs[i].end == inst.legs[i].end);
    CHECK(back.legs[i].start_pos == inst.legs[i].start_pos);
    CHECK(back.legs[i].end_pos == inst.legs[i].end_pos);
  }
}

TEST_CASE("instance parser reports line-precise errors") {
  std::istringstream in("bdsp-instance 1\npositions 2\ndistances\n0 5\nbroken row\n");
  try {
    parse_instance(in, "bad.inst");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line_no == 5);
    CHECK(std::string(e.what()).find("bad.inst:5") != std::string::npos);
  }
}

TEST_CASE("generator: determinism, leg counts, validity") {
  Instance a = generate_instance({.tours = 10, .seed = 5});
  Instance b = generate_instance({.tours = 10, .seed = 5});
  std::ostringstream sa, sb;
  write_instance(a, sa);
  write_instance(b, sb);
  CHECK(sa.str() == sb.str());
  CHECK(a.leg_count() >= 80);
  CHECK(a.leg_count() <= 120);
  CHECK(a.validate().empty());

  Instance c = generate_instance({.tours = 10, .seed = 6});
  std::ostringstream sc;
  write_instance(c, sc);
  CHECK(sa.str() != sc.str());
}

TEST_CASE("solution file round trip and tamper detection") {
  Instance inst = generate_instance({.tours = 2, .seed = 11});
  Solution sol = greedy_construct(inst);
  std::ostringstream out;
  write_solution(sol, inst, out);
  std::istringstream in(out.str());
  ParsedSolution back = parse_solution(in, inst, "sol");
  CHECK(back.claimed_objective == sol.objective);
  REQUIRE(back.shifts.size() == sol.shifts.size());
  CHECK(back.shifts == sol.shifts);
}
