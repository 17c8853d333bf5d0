#include "bshm/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace bshm {

namespace {

class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const Instance& instance, const OracleBudget& budget)
      : jobs_(instance.jobs()),
        types_(instance.types()),
        budget_(budget),
        per_type_cap_(budget.max_machines_per_type ? budget.max_machines_per_type : instance.jobs().size()),
        used_(instance.types().size(), 0) {
    order_.resize(jobs_.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return jobs_[a].start < jobs_[b].start; });
    exact_.resize(jobs_.size());
    for (std::size_t j = 0; j < jobs_.size(); ++j) exact_[j] = instance.exact_type(j);
  }

  OracleResult run() {
    search(0, Rational(0));
    if (!best_) throw ContractViolation("exhaustive search found no schedule");
    return *best_;
  }

 private:
  struct Slot {
    TypeIndex type;
    std::size_t instance;  // 0-based within type
    std::vector<std::size_t> jobs;
  };

  bool fits(const Slot& slot, std::size_t j) const {
    const Job& job = jobs_[j];
    Rational cap = types_.capacity(slot.type);
    std::vector<const Rational*> probes{&job.start};
    for (std::size_t h : slot.jobs) {
      if (job.active_at(jobs_[h].start)) probes.push_back(&jobs_[h].start);
    }
    for (const Rational* t : probes) {
      Rational load = job.size;
      for (std::size_t h : slot.jobs) {
        if (jobs_[h].active_at(*t)) load += jobs_[h].size;
      }
      if (load > cap) return false;
    }
    return true;
  }

  Rational busy_length(const Slot& slot) const {
    std::vector<Interval> pieces;
    for (std::size_t h : slot.jobs) pieces.push_back({jobs_[h].start, jobs_[h].end});
    return IntervalSet(std::move(pieces)).length();
  }

  void tick() {
    if (++nodes_ > budget_.max_nodes) {
      throw OracleBudgetExceeded("oracle search exceeded " + std::to_string(budget_.max_nodes) + " nodes", best_);
    }
  }

  void record(const Rational& cost) {
    OracleResult result{cost, {}};
    result.witness.placements.resize(jobs_.size());
    std::vector<std::size_t> ids(slots_.size());
    // Number machines by type, then by instance within the type.
    std::vector<std::size_t> order(slots_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::pair(slots_[a].type, slots_[a].instance) < std::pair(slots_[b].type, slots_[b].instance);
    });
    for (std::size_t k = 0; k < order.size(); ++k) {
      ids[order[k]] = k;
      result.witness.machine_types.push_back(slots_[order[k]].type);
    }
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      for (std::size_t j : slots_[s].jobs) result.witness.placements[j] = {slots_[s].type, ids[s]};
    }
    best_ = std::move(result);
  }

  void search(std::size_t depth, const Rational& cost) {
    if (best_ && cost >= best_->cost) return;
    if (depth == order_.size()) {
      record(cost);
      return;
    }
    std::size_t j = order_[depth];
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      if (!fits(slots_[s], j)) continue;
      tick();
      Rational before = busy_length(slots_[s]);
      slots_[s].jobs.push_back(j);
      Rational delta = (busy_length(slots_[s]) - before) * types_.rate(slots_[s].type);
      search(depth + 1, cost + delta);
      slots_[s].jobs.pop_back();
    }
    for (TypeIndex z = exact_[j]; z <= types_.size(); ++z) {
      if (used_[z] >= per_type_cap_) continue;
      tick();
      slots_.push_back({z, used_[z], {j}});
      ++used_[z];
      search(depth + 1, cost + jobs_[j].length() * types_.rate(z));
      --used_[z];
      slots_.pop_back();
    }
  }

  const std::vector<Job>& jobs_;
  const MachineTypeTable& types_;
  OracleBudget budget_;
  std::size_t per_type_cap_;
  std::vector<std::size_t> order_;
  std::vector<TypeIndex> exact_;
  TypeVector<std::size_t> used_;
  std::vector<Slot> slots_;
  std::optional<OracleResult> best_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

OracleResult opt2(const Instance& instance, const OracleBudget& budget) {
  if (instance.jobs().empty()) return {Rational(0), {}};
  return ExhaustiveSearch(instance, budget).run();
}

Rational opt1_lower_bound(const Instance& instance, const SolverOptions& options) {
  Rational total = 0;
  for (const auto& seg : Timeline::of(instance.jobs()).segments()) {
    auto active = one_shot_jobs_at(instance, seg.lo);
    if (active.empty()) continue;
    total += seg.length() * optimal_oneshot(active, instance.types(), options).cost(instance.types());
  }
  return total;
}

}  // namespace bshm
