#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bds/generator.hpp"
#include "bds/master.hpp"
#include "oracles.hpp"

using namespace bds;
using namespace bds::test;

namespace {

RestrictedMaster master_over_singletons(const Instance& inst, const std::string& backend) {
  RestrictedMaster rm(inst.leg_count(), make_backend(backend));
  for (int l = 0; l < inst.leg_count(); ++l) rm.add(make_singleton(l, inst));
  return rm;
}

} // namespace

TEST_CASE("singleton pool: objective is the sum, duals are the singleton costs") {
  Instance inst = generate_instance({.tours = 1, .seed = 3});
  for (const char* backend : {"bundled", "bundled-exact"}) {
    CAPTURE(backend);
    RestrictedMaster rm = master_over_singletons(inst, backend);
    RmpResult res = rm.solve_lp();
    Cost sum = 0;
    for (int l = 0; l < inst.leg_count(); ++l) sum += rm.column(l).cost;
    CHECK(res.objective == doctest::Approx(static_cast<double>(sum)));
    CHECK(res.integral);
    for (int l = 0; l < inst.leg_count(); ++l)
      CHECK(res.duals[l] == doctest::Approx(static_cast<double>(rm.column(l).cost)));
  }
}

TEST_CASE("a cheap covering column takes over the LP") {
  Instance inst = make_instance({{0, 0, 0, 300, 400}, {0, 0, 0, 410, 500}}, 2);
  RestrictedMaster rm = master_over_singletons(inst, "bundled");
  Column both = make_column({0, 1}, inst);
  Cost singles = rm.column(0).cost + rm.column(1).cost;
  REQUIRE(both.cost < singles);
  int id = rm.add(both);
  RmpResult res = rm.solve_lp();
  CHECK(res.objective == doctest::Approx(static_cast<double>(both.cost)));
  CHECK(res.x[id] == doctest::Approx(1.0));
  CHECK(res.integral);
}

TEST_CASE("empty leg set solves to zero") {
  RestrictedMaster rm(0, make_backend("bundled"));
  RmpResult res = rm.solve_lp();
  CHECK(res.objective == doctest::Approx(0.0));
  CHECK(res.duals.empty());
}

TEST_CASE("integer solve over singletons returns the singleton partition") {
  Instance inst = generate_instance({.tours = 1, .seed = 9});
  RestrictedMaster rm = master_over_singletons(inst, "bundled");
  IntegerResult res = rm.solve_ip(10.0, {});
  REQUIRE(res.found);
  CHECK(res.optimal);
  CHECK(static_cast<int>(res.chosen.size()) == inst.leg_count());
  Solution sol = rm.to_solution(res.chosen, inst);
  CHECK(sol.shift_count() == inst.leg_count());
}

TEST_CASE("integer solve over all feasible columns matches the partition oracle") {
  for (uint64_t seed : {21ull, 22ull, 23ull}) {
    Instance inst = generate_instance(
        {.tours = 1, .seed = seed, .legs_per_tour_min = 6, .legs_per_tour_max = 8});
    auto shifts = enumerate_feasible_shifts(inst);
    for (const char* backend : {"bundled", "bundled-exact"}) {
      CAPTURE(backend);
      CAPTURE(seed);
      RestrictedMaster rm(inst.leg_count(), make_backend(backend));
      for (const auto& s : shifts) rm.add(make_column(s, inst));
      IntegerResult res = rm.solve_ip(60.0, {});
      REQUIRE(res.found);
      CHECK(res.optimal);
      auto oracle = best_partition_cost(inst);
      REQUIRE(oracle.has_value());
      CHECK(res.objective == *oracle);
      // LP <= IP always.
      RmpResult lp = rm.solve_lp();
      CHECK(lp.objective <= static_cast<double>(res.objective) + 1e-6);
      // Valid partition.
      Solution sol = rm.to_solution(res.chosen, inst);
      CHECK(sol.objective == res.objective);
    }
  }
}

TEST_CASE("warm start equal to the optimum is proven optimal via the LP bound") {
  // Two legs, integral LP: root bound equals the warm-start objective.
  Instance inst = make_instance({{0, 0, 0, 300, 400}, {0, 0, 0, 410, 500}}, 2);
  RestrictedMaster rm = master_over_singletons(inst, "bundled");
  int id = rm.add(make_column({0, 1}, inst));
  IntegerResult res = rm.solve_ip(10.0, {id});
  REQUIRE(res.found);
  CHECK(res.optimal);
  CHECK(res.objective == rm.column(id).cost);
  CHECK(res.chosen == std::vector<int>{id});
}

TEST_CASE("dual feasibility at RMP optimality") {
  Instance inst = generate_instance({.tours = 2, .seed = 31});
  auto shifts = enumerate_feasible_shifts(inst);
  RestrictedMaster rm = master_over_singletons(inst, "bundled");
  // A few non-trivial columns on top of the singletons.
  int added = 0;
  for (const auto& s : shifts)
    if (s.size() >= 2 && added++ < 200) rm.add(make_column(s, inst));
  RmpResult res = rm.solve_lp();
  for (int j = 0; j < rm.column_count(); ++j) {
    double slack = static_cast<double>(rm.column(j).cost);
    for (int l : rm.column(j).seq) slack -= res.duals[l];
    CHECK(slack >= -1e-6);
  }
}

TEST_CASE("exact backend: dual feasibility is exact and duals are rationals") {
  Instance inst = generate_instance(
      {.tours = 1, .seed = 41, .legs_per_tour_min = 5, .legs_per_tour_max = 6});
  auto shifts = enumerate_feasible_shifts(inst);
  RestrictedMaster rm(inst.leg_count(), make_backend("bundled-exact"));
  for (const auto& s : shifts) rm.add(make_column(s, inst));
  rm.solve_lp();
  const std::vector<Rational>* duals = exact_duals_of(rm.backend());
  REQUIRE(duals != nullptr);
  REQUIRE(static_cast<int>(duals->size()) == inst.leg_count());
  for (int j = 0; j < rm.column_count(); ++j) {
    Rational slack(rm.column(j).cost);
    for (int l : rm.column(j).seq) slack -= (*duals)[l];
    CHECK(slack >= 0);
  }
}

TEST_CASE("determinism: same pool twice gives identical primals and duals") {
  Instance inst = generate_instance({.tours = 2, .seed = 55});
  auto build = [&] {
    RestrictedMaster rm = master_over_singletons(inst, "bundled");
    auto shifts = enumerate_feasible_shifts(inst);
    int added = 0;
    for (const auto& s : shifts)
      if (s.size() >= 2 && added++ < 300) rm.add(make_column(s, inst));
    return rm.solve_lp();
  };
  RmpResult a = build();
  RmpResult b = build();
  CHECK(a.objective == b.objective);
  CHECK(a.x == b.x);
  CHECK(a.duals == b.duals);
}
