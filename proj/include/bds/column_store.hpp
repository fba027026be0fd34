#ifndef BDS_COLUMN_STORE_HPP
#define BDS_COLUMN_STORE_HPP

#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "bds/column.hpp"

namespace bds {

enum class StorePolicy { Best, Full };

// Shared, append-only store of generated columns, keyed by leg bitset over
// the full instance. Columns are never removed. One appender and concurrent
// snapshot readers are supported; a configurable ceiling stops growth with a
// warning instead of evicting.
class ColumnStore {
 public:
  explicit ColumnStore(size_t max_columns = 0) : max_columns_(max_columns) {}

  // Returns the number of newly stored columns.
  size_t add(std::span<const Column> cols) {
    std::lock_guard lock(mu_);
    size_t added = 0;
    for (const Column& c : cols) {
      if (index_.count(c.cover)) continue;
      if (max_columns_ > 0 && cols_.size() >= max_columns_) {
        ceiling_hit_ = true;
        break;
      }
      index_.emplace(c.cover, cols_.size());
      cols_.push_back(c);
      ++added;
    }
    if (added > 0) ++generation_;
    return added;
  }

  std::vector<Column> snapshot() const {
    std::lock_guard lock(mu_);
    return cols_;
  }

  // Columns whose legs all lie inside the given leg set.
  std::vector<Column> columns_within(const LegSet& legs) const {
    std::lock_guard lock(mu_);
    std::vector<Column> out;
    for (const Column& c : cols_)
      if (c.cover.is_subset_of(legs)) out.push_back(c);
    return out;
  }

  size_t size() const {
    std::lock_guard lock(mu_);
    return cols_.size();
  }

  uint64_t generation() const {
    std::lock_guard lock(mu_);
    return generation_;
  }

  bool ceiling_hit() const {
    std::lock_guard lock(mu_);
    return ceiling_hit_;
  }

 private:
  mutable std::mutex mu_;
  std::vector<Column> cols_;
  std::unordered_map<LegSet, size_t, LegSetHash> index_;
  uint64_t generation_ = 0;
  size_t max_columns_;
  bool ceiling_hit_ = false;
};

// Storage update after a repair: policy Best keeps only the solution columns
// S_i*, policy Full keeps everything the subproblem generated.
inline size_t store_update(ColumnStore& store, std::span<const Column> generated,
                           std::span<const Column> solution, StorePolicy policy) {
  return policy == StorePolicy::Full ? store.add(generated) : store.add(solution);
}

// Columns reusable to seed a subproblem over the legs L_i.
inline std::vector<Column> init_subproblem_columns(const ColumnStore& store, const LegSet& legs) {
  return store.columns_within(legs);
}

} // namespace bds

#endif
