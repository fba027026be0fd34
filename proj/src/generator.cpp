#include "bds/generator.hpp"

#include <algorithm>
#include <stdexcept>

#include "bds/rng.hpp"

namespace bds {

Instance generate_instance(const GeneratorParams& params) {
  if (params.tours < 1) throw std::invalid_argument("generator: tours must be >= 1");
  if (params.legs_per_tour_min < 1 || params.legs_per_tour_max < params.legs_per_tour_min)
    throw std::invalid_argument("generator: bad legs-per-tour range");

  Rng rng(params.seed);
  Instance inst;
  int P = params.positions > 0 ? params.positions
                               : std::clamp(2 + params.tours / 2, 3, 12);
  inst.position_count = P;
  inst.dist.assign(static_cast<size_t>(P) * P, 0);
  for (int p = 0; p < P; ++p)
    for (int q = 0; q < P; ++q) {
      if (p == q) {
        inst.dist[static_cast<size_t>(p) * P + q] = rand_range(rng, 2, 7);
      } else {
        Minutes d = rand_range(rng, 5, 24);
        if (static_cast<int>(rand_below(rng, 1000)) < params.forbid_permille) d = kNoTransfer;
        inst.dist[static_cast<size_t>(p) * P + q] = d;
      }
    }

  inst.start_work.assign(P, 0);
  inst.end_work.assign(P, 0);
  inst.start_work[0] = 15; // depot
  inst.end_work[0] = 10;

  for (int tour = 0; tour < params.tours; ++tour) {
    int n = rand_range(rng, params.legs_per_tour_min, params.legs_per_tour_max);
    Minutes t = rand_range(rng, 270, 630);
    int pos = 0;
    for (int k = 0; k < n; ++k) {
      BusLeg leg;
      leg.tour = tour;
      leg.start_pos = pos;
      leg.end_pos = (k == n - 1) ? 0 : (P > 1 ? rand_range(rng, 1, P - 1) : 0);
      leg.start = t;
      leg.end = t + rand_range(rng, 15, 60);
      inst.legs.push_back(leg);
      pos = leg.end_pos;

      int r = rand_range(rng, 0, 99);
      Minutes gap;
      if (r < 55)
        gap = rand_range(rng, 0, 7);
      else if (r < 85)
        gap = rand_range(rng, 12, 45);
      else if (r < 96)
        gap = rand_range(rng, 46, 165);
      else
        gap = rand_range(rng, 185, 284);
      t = leg.end + gap;
    }
  }

  std::stable_sort(inst.legs.begin(), inst.legs.end(), leg_before);
  for (size_t i = 0; i < inst.legs.size(); ++i) inst.legs[i].id = static_cast<int>(i);

  if (std::string err = inst.validate(); !err.empty())
    throw std::logic_error("generator produced invalid instance: " + err);
  return inst;
}

} // namespace bds
