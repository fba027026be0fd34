#ifndef BDS_GREEDY_HPP
#define BDS_GREEDY_HPP

#include "bds/evaluation.hpp"
#include "bds/instance.hpp"

namespace bds {

// Greedy construction: legs are processed in the total order and appended to
// the feasible shift with the smallest cost increase. A new shift is opened
// when every existing assignment costs more than the singleton cost plus 500.
// Ties go to the lowest shift index. Throws std::invalid_argument when some
// leg is infeasible even as a singleton (corrupt instance).
Solution greedy_construct(const Instance& inst);

} // namespace bds

#endif
