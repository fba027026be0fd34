#ifndef BDS_GENERATOR_HPP
#define BDS_GENERATOR_HPP

#include <cstdint>

#include "bds/instance.hpp"

namespace bds {

// Desk-scale instance generator. Tours start and end at the depot (position 0)
// and visit random positions; leg counts are drawn so that the total number of
// legs is roughly 10 per tour. Deterministic for a fixed parameter set.
struct GeneratorParams {
  int tours = 1;
  uint64_t seed = 1;
  int positions = 0;         // 0 = choose from the tour count
  int legs_per_tour_min = 8;
  int legs_per_tour_max = 12;
  int forbid_permille = 30;  // chance per off-diagonal pair of an 'M' entry
};

Instance generate_instance(const GeneratorParams& params);

} // namespace bds

#endif
