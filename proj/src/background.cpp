#include "bds/background.hpp"

#include <chrono>

#include "bds/master.hpp"

namespace bds {

BackgroundWorker::BackgroundWorker(const Instance& inst, const ColumnStore& store,
                                   double cycle_time_s, std::string backend_name)
    : inst_(inst), store_(store), cycle_time_s_(cycle_time_s),
      backend_name_(std::move(backend_name)) {}

BackgroundWorker::~BackgroundWorker() { stop(); }

void BackgroundWorker::start_thread() {
  if (thread_.joinable()) return;
  stop_ = false;
  thread_ = std::thread([this] { thread_main(); });
}

void BackgroundWorker::stop() {
  stop_ = true;
  if (thread_.joinable()) thread_.join();
}

void BackgroundWorker::thread_main() {
  while (!stop_) {
    if (!run_cycle(false)) std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
}

bool BackgroundWorker::run_cycle(bool force) {
  uint64_t gen;
  std::vector<Column> snapshot;
  {
    std::lock_guard lock(mu_);
    gen = store_.generation();
    if (!force && gen == last_generation_) return false; // nothing new arrived
  }
  snapshot = store_.snapshot();
  {
    std::lock_guard lock(mu_);
    last_generation_ = gen;
  }
  if (snapshot.empty()) return false;
  cycle(std::move(snapshot));
  return true;
}

void BackgroundWorker::cycle(std::vector<Column> snapshot) {
  RestrictedMaster rm(inst_.leg_count(), make_backend(backend_name_));
  for (const Column& c : snapshot) rm.add(c);

  std::vector<int> warm;
  {
    std::lock_guard lock(mu_);
    // The store is append-only, so ids from the previous snapshot stay valid.
    warm = warm_seqs_;
  }
  IntegerResult res = rm.solve_ip(cycle_time_s_, warm);
  if (!res.found) return;

  std::lock_guard lock(mu_);
  if (!published_ || res.objective < published_->objective) {
    published_ = std::make_shared<const Solution>(rm.to_solution(res.chosen, inst_));
    warm_seqs_ = res.chosen;
  }
}

std::optional<Solution> BackgroundWorker::latest() const {
  std::lock_guard lock(mu_);
  if (!published_) return std::nullopt;
  return *published_;
}

} // namespace bds
