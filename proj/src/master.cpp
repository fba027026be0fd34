#include "bds/master.hpp"

#include <stdexcept>

namespace bds {

namespace {

template <class Num>
class BundledBackend final : public MasterBackend {
  using T = SimplexTraits<Num>;

 public:
  void reset(int leg_count) override {
    lp_ = std::make_unique<SetPartitionLp<Num>>(leg_count);
    views_.clear();
    legs_ = leg_count;
  }

  int add_column(Cost cost, std::span<const int> legs) override {
    if (!lp_) throw std::logic_error("backend not reset");
    typename SetPartitionIp<Num>::ColumnView v;
    v.cost = cost;
    v.rows.assign(legs.begin(), legs.end());
    views_.push_back(v);
    return lp_->add_column(cost, legs);
  }

  int column_count() const override { return lp_ ? lp_->column_count() : 0; }

  RmpResult solve_lp() override {
    LpOutcome<Num> out = lp_->solve();
    if (out.status == LpStatus::Infeasible)
      throw std::runtime_error("master LP infeasible: column pool does not cover every leg");
    RmpResult res;
    res.objective = T::to_double(out.objective);
    res.x.resize(out.x.size());
    res.integral = true;
    for (size_t i = 0; i < out.x.size(); ++i) {
      res.x[i] = T::to_double(out.x[i]);
      if (res.x[i] > 1e-6 && res.x[i] < 1 - 1e-6) res.integral = false;
    }
    res.duals.resize(out.duals.size());
    for (size_t i = 0; i < out.duals.size(); ++i) res.duals[i] = T::to_double(out.duals[i]);
    if constexpr (std::is_same_v<Num, Rational>) exact_duals_ = out.duals;
    return res;
  }

  IntegerResult solve_ip(double time_limit_s, const std::vector<int>& warm_start) override {
    SetPartitionIp<Num> ip(legs_, views_);
    auto deadline =
        Clock::now() + std::chrono::microseconds(static_cast<int64_t>(time_limit_s * 1e6));
    IpOutcome out = ip.solve(deadline, warm_start);
    IntegerResult res;
    res.found = out.found;
    res.optimal = out.proven_optimal;
    res.objective = out.objective;
    res.chosen = out.chosen;
    res.bound = out.bound;
    return res;
  }

  const std::vector<Rational>* exact_duals() const {
    if constexpr (std::is_same_v<Num, Rational>)
      return &exact_duals_;
    else
      return nullptr;
  }

 private:
  std::unique_ptr<SetPartitionLp<Num>> lp_;
  std::vector<typename SetPartitionIp<Num>::ColumnView> views_;
  std::conditional_t<std::is_same_v<Num, Rational>, std::vector<Rational>, char> exact_duals_{};
  int legs_ = 0;
};

} // namespace

std::unique_ptr<MasterBackend> make_backend(const std::string& name) {
  if (name == "bundled") return std::make_unique<BundledBackend<double>>();
  if (name == "bundled-exact") return std::make_unique<BundledBackend<Rational>>();
  throw std::invalid_argument("unknown master backend: " + name);
}

const std::vector<Rational>* exact_duals_of(const MasterBackend& backend) {
  if (auto* b = dynamic_cast<const BundledBackend<Rational>*>(&backend)) return b->exact_duals();
  return nullptr;
}

RestrictedMaster::RestrictedMaster(int leg_count, std::unique_ptr<MasterBackend> backend)
    : legs_(leg_count), backend_(std::move(backend)) {
  backend_->reset(leg_count);
}

int RestrictedMaster::add(const Column& c) {
  std::vector<int> rows;
  rows.reserve(c.seq.size());
  for (int l : c.seq) rows.push_back(l);
  int id = backend_->add_column(c.cost, rows);
  cols_.push_back(c);
  return id;
}

RmpResult RestrictedMaster::solve_lp() { return backend_->solve_lp(); }

IntegerResult RestrictedMaster::solve_ip(double time_limit_s, const std::vector<int>& warm_start) {
  return backend_->solve_ip(time_limit_s, warm_start);
}

Solution RestrictedMaster::to_solution(const std::vector<int>& chosen, const Instance& inst) const {
  std::vector<std::vector<int>> shifts;
  shifts.reserve(chosen.size());
  for (int id : chosen) shifts.push_back(cols_[id].seq);
  return make_solution(std::move(shifts), inst);
}

} // namespace bds
