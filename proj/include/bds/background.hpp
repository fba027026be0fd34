#ifndef BDS_BACKGROUND_HPP
#define BDS_BACKGROUND_HPP

#include <atomic>
#include <condition_variable>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "bds/column_store.hpp"
#include "bds/evaluation.hpp"
#include "bds/instance.hpp"

namespace bds {

// Picks the best of the repaired solution, the best-so-far and the background
// solution; ties keep the incumbent.
inline const Solution& merge_best(const Solution& repaired, const Solution& best_so_far,
                                  const Solution* background) {
  const Solution* best = &best_so_far;
  if (repaired.objective < best->objective) best = &repaired;
  if (background && background->objective < best->objective) best = background;
  return *best;
}

// Repeatedly solves the integer master over snapshots of the column store,
// warm-started from its previous result. Runs either on its own thread or
// synchronously (deterministic testing). Published solutions are always valid
// partitions of the full instance and their objectives never increase.
class BackgroundWorker {
 public:
  // The store must be pre-seeded with all singleton columns so every cycle
  // has a feasible integer problem.
  BackgroundWorker(const Instance& inst, const ColumnStore& store, double cycle_time_s,
                   std::string backend_name);
  ~BackgroundWorker();

  BackgroundWorker(const BackgroundWorker&) = delete;
  BackgroundWorker& operator=(const BackgroundWorker&) = delete;

  void start_thread();
  void stop();

  // One synchronous cycle (skipped when the snapshot is unchanged unless
  // `force` is set). Returns true if a cycle ran.
  bool run_cycle(bool force = false);

  // Latest published solution (copy), if any cycle produced one.
  std::optional<Solution> latest() const;

 private:
  void thread_main();
  void cycle(std::vector<Column> snapshot);

  const Instance& inst_;
  const ColumnStore& store_;
  double cycle_time_s_;
  std::string backend_name_;

  mutable std::mutex mu_;
  std::shared_ptr<const Solution> published_;
  uint64_t last_generation_ = 0;
  std::vector<int> warm_seqs_; // column ids in store order, valid across snapshots

  std::thread thread_;
  std::atomic<bool> stop_{false};
};

} // namespace bds

#endif
