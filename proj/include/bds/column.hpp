#ifndef BDS_COLUMN_HPP
#define BDS_COLUMN_HPP

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "bds/evaluation.hpp"
#include "bds/instance.hpp"

namespace bds {

using LegSet = boost::dynamic_bitset<uint64_t>;

struct LegSetHash {
  size_t operator()(const LegSet& s) const {
    std::vector<uint64_t> blocks(s.num_blocks());
    boost::to_block_range(s, blocks.begin());
    size_t h = 0x9e3779b97f4a7c15ULL ^ s.size();
    for (uint64_t b : blocks) h = h * 1099511628211ULL ^ b;
    return h;
  }
};

// One shift as a master-problem variable: leg coverage, true (dual-free) cost
// and the ordered leg sequence it decodes to.
struct Column {
  LegSet cover;
  Cost cost = 0;
  std::vector<int> seq;
};

LegSet legset_of(std::span<const int> legs, int leg_count);

// Singleton column for one leg; cost from the evaluation oracle.
Column make_singleton(int leg, const Instance& inst);

// Column over the given ordered legs; cost from the evaluation oracle.
// Throws std::invalid_argument if the shift is infeasible.
Column make_column(std::vector<int> seq, const Instance& inst);

// Deduplicated set of columns keyed by leg bitset, insertion order preserved.
class ColumnPool {
 public:
  // Returns the column's index; adds it only if its bitset is new.
  int add(Column c);
  bool contains(const LegSet& cover) const { return index_.count(cover) > 0; }
  int find(const LegSet& cover) const;

  const Column& operator[](int i) const { return cols_[i]; }
  int size() const { return static_cast<int>(cols_.size()); }
  const std::vector<Column>& columns() const { return cols_; }

 private:
  std::vector<Column> cols_;
  std::unordered_map<LegSet, int, LegSetHash> index_;
};

} // namespace bds

#endif
