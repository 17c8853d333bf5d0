#include "bshm/oneshot.hpp"

#include <algorithm>
#include <numeric>

namespace bshm {

std::vector<OneShotJob> one_shot_jobs(const Instance& instance, std::span<const std::size_t> indices) {
  std::vector<OneShotJob> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back({instance.jobs()[i].size, instance.exact_type(i)});
  return out;
}

std::vector<OneShotJob> one_shot_jobs_at(const Instance& instance, const Rational& t) {
  auto active = active_set(instance.jobs(), t);
  return one_shot_jobs(instance, active);
}

std::optional<TypeIndex> highest_exact_type(std::span<const OneShotJob> jobs) {
  std::optional<TypeIndex> k0;
  for (const auto& j : jobs) {
    if (!k0 || j.exact_type > *k0) k0 = j.exact_type;
  }
  return k0;
}

Rational subtree_size(std::span<const OneShotJob> jobs, TypeIndex z, const CostCapacityForest& forest) {
  Rational total = 0;
  for (const auto& j : jobs) {
    if (forest.in_subtree(j.exact_type, z)) total += j.size;
  }
  return total;
}

Rational MachineConfiguration::cost(const MachineTypeTable& types) const {
  Rational total = 0;
  for (TypeIndex z = 1; z <= counts.size(); ++z) total += counts[z] * types.rate(z);
  return total;
}

bool MachineConfiguration::is_integral() const {
  return std::all_of(counts.begin(), counts.end(), [](const Rational& c) { return is_integer(c); });
}

std::optional<TypeIndex> MachineConfiguration::highest_used() const {
  for (TypeIndex z = counts.size(); z >= 1; --z) {
    if (counts[z] > 0) return z;
  }
  return std::nullopt;
}

namespace {

/// D_i = total size of jobs with exact type >= i, for i = 1..M (index 0 unused, D_{M+1} = 0).
std::vector<Rational> suffix_demand(std::span<const OneShotJob> jobs, std::size_t type_count) {
  std::vector<Rational> demand(type_count + 2, Rational(0));
  for (const auto& j : jobs) demand[j.exact_type] += j.size;
  for (std::size_t i = type_count; i >= 1; --i) demand[i] += demand[i + 1];
  return demand;
}

class BranchAndBound {
 public:
  BranchAndBound(std::span<const OneShotJob> jobs, const MachineTypeTable& types, std::uint64_t max_nodes)
      : types_(types),
        type_count_(types.size()),
        demand_(suffix_demand(jobs, types.size())),
        current_(types.size(), 0),
        max_nodes_(max_nodes) {}

  MachineConfiguration solve() {
    search(type_count_, Rational(0), Rational(0));
    MachineConfiguration out(type_count_);
    for (TypeIndex z = 1; z <= type_count_; ++z) out.counts[z] = best_[z - 1];
    return out;
  }

 private:
  // Cheapest possible completion using types 1..top: every shortfall
  // D_i - capacity must be bought at no better than the best ratio in i..top.
  Rational completion_bound(TypeIndex top, const Rational& capacity) const {
    Rational bound = 0;
    Rational best_ratio;
    for (TypeIndex i = top; i >= 1; --i) {
      Rational ratio = types_.ratio(i);
      if (i == top || ratio < best_ratio) best_ratio = ratio;
      Rational shortfall = demand_[i] - capacity;
      if (shortfall > 0) {
        Rational candidate = shortfall * best_ratio;
        if (candidate > bound) bound = candidate;
      }
    }
    return bound;
  }

  void search(TypeIndex z, const Rational& capacity_above, const Rational& cost) {
    const Rational& g = types_.capacity(z);
    const Rational& r = types_.rate(z);
    Rational need_here = demand_[z] - capacity_above;
    Rational need_all = demand_[1] - capacity_above;
    unsigned long lo = need_here > 0 ? ceil_integer(need_here / g).get_ui() : 0;
    unsigned long hi = need_all > 0 ? ceil_integer(need_all / g).get_ui() : 0;
    hi = std::max(hi, lo);

    for (unsigned long count = lo; count <= hi; ++count) {
      if (++nodes_ > max_nodes_) {
        throw SearchSpaceExceeded("one-shot search exceeded " + std::to_string(max_nodes_) + " nodes");
      }
      Rational capacity = capacity_above + count * g;
      Rational new_cost = cost + count * r;
      Rational bound = new_cost + (z > 1 ? completion_bound(z - 1, capacity) : Rational(0));
      // Equal cost found later would be lexicographically larger.
      if (have_best_ && bound >= best_cost_) continue;
      current_[z - 1] = count;
      if (z == 1) {
        best_cost_ = new_cost;
        best_ = current_;
        have_best_ = true;
      } else {
        search(z - 1, capacity, new_cost);
      }
    }
    current_[z - 1] = 0;
  }

  const MachineTypeTable& types_;
  std::size_t type_count_;
  std::vector<Rational> demand_;
  std::vector<unsigned long> current_;
  std::vector<unsigned long> best_;
  Rational best_cost_;
  bool have_best_ = false;
  std::uint64_t nodes_ = 0;
  std::uint64_t max_nodes_;
};

}  // namespace

bool is_feasible(const MachineConfiguration& w, std::span<const OneShotJob> jobs, const MachineTypeTable& types) {
  const std::size_t n = types.size();
  if (w.counts.size() != n) return false;
  auto demand = suffix_demand(jobs, n);
  Rational capacity = 0;
  for (TypeIndex i = n; i >= 1; --i) {
    if (w.counts[i] < 0) return false;
    capacity += w.counts[i] * types.capacity(i);
    if (demand[i] > capacity) return false;
  }
  return true;
}

MachineConfiguration optimal_oneshot(std::span<const OneShotJob> jobs, const MachineTypeTable& types,
                                     const SolverOptions& options) {
  for (const auto& j : jobs) {
    if (j.exact_type < 1 || j.exact_type > types.size() || j.size > types.capacity(j.exact_type)) {
      throw ValidationError("one-shot job with size " + to_string(j.size) + " has an invalid exact type");
    }
  }
  return BranchAndBound(jobs, types, options.max_nodes).solve();
}

namespace {

Rational integral_ratio(const Rational& num, const Rational& den) {
  Rational q = num / den;
  if (!is_integer(q)) {
    throw ContractViolation("rate ratio " + to_string(q) + " is not integral; rates must be powers of eight");
  }
  return q;
}

// Moves the cost of every type outside {1..k0-1} ∪ P(k0) onto P(k0): each
// elder sibling subtree of a chain member z is replaced by type-z machines of equal cost.
MachineConfiguration lift_to_chain(const MachineConfiguration& w, TypeIndex k0, const MachineTypeTable& types,
                                   const CostCapacityForest& forest) {
  const std::size_t n = types.size();
  MachineConfiguration out(n);
  for (TypeIndex z = 1; z < k0; ++z) out.counts[z] = w.counts[z];
  for (TypeIndex z : forest.ancestors(k0)) {
    Rational count = w.counts[z];
    for (TypeIndex e : forest.elder_siblings(z)) {
      for (TypeIndex i : forest.subtree(e)) {
        count += integral_ratio(types.rate(i), types.rate(z)) * w.counts[i];
      }
    }
    out.counts[z] = count;
  }
  return out;
}

// Bottom-up, replaces any subtree whose machines cost at least one root
// machine by whole root machines of exactly the same cost.
MachineConfiguration collapse_subtrees(MachineConfiguration w, const MachineTypeTable& types,
                                       const CostCapacityForest& forest) {
  const std::size_t n = types.size();
  for (TypeIndex root = 1; root <= n; ++root) {
    TypeIndex lo = forest.lowest(root);
    Rational below = 0;
    for (TypeIndex z = lo; z < root; ++z) below += w.counts[z] * types.rate(z);
    const Rational& r_root = types.rate(root);
    if (below < r_root) continue;

    Rational whole = floor(below / r_root);
    Rational target = whole * r_root;
    // Find pivot with sum(pivot+1..root-1) <= target <= sum(pivot..root-1).
    Rational upper = 0;
    TypeIndex pivot = root - 1;
    for (;; --pivot) {
      Rational with_pivot = upper + w.counts[pivot] * types.rate(pivot);
      if (with_pivot >= target) break;
      upper = with_pivot;
      if (pivot == lo) throw ContractViolation("subtree collapse found no pivot");
    }
    Rational taken = integral_ratio(target - upper, types.rate(pivot));
    w.counts[root] += whole;
    for (TypeIndex z = pivot + 1; z < root; ++z) w.counts[z] = 0;
    w.counts[pivot] -= taken;
  }
  return w;
}

// Caps the top type at ceil(S(H_top)/g_top), moving surplus cost to the
// type just below the top's subtree.
MachineConfiguration trim_top(MachineConfiguration w, std::span<const OneShotJob> jobs, const MachineTypeTable& types,
                              const CostCapacityForest& forest) {
  auto top = w.highest_used();
  if (!top) return w;
  TypeIndex lo = forest.lowest(*top);
  Rational cap = ceil(subtree_size(jobs, *top, forest) / types.capacity(*top));
  if (lo == 1 || w.counts[*top] <= cap) return w;
  TypeIndex below = lo - 1;
  w.counts[below] += integral_ratio(types.rate(*top), types.rate(below)) * (w.counts[*top] - cap);
  w.counts[*top] = cap;
  return w;
}

}  // namespace

std::vector<std::string> canonical_form_violations(const MachineConfiguration& w, std::span<const OneShotJob> jobs,
                                                   const MachineTypeTable& types,
                                                   const CostCapacityForest& forest) {
  std::vector<std::string> out;
  auto k0 = highest_exact_type(jobs);
  auto top = w.highest_used();
  if (!k0) {
    if (top) out.push_back("machines used for an empty job set");
    return out;
  }
  if (!top) {
    out.push_back("no machines used");
    return out;
  }
  const auto& chain = forest.ancestors(*k0);
  if (std::find(chain.begin(), chain.end(), *top) == chain.end()) {
    out.push_back("highest used type " + std::to_string(*top) + " is not k0=" + std::to_string(*k0) +
                  " or one of its ancestors");
  }
  for (TypeIndex z0 = 1; z0 <= types.size(); ++z0) {
    Rational below = 0;
    for (TypeIndex z : forest.subtree(z0)) {
      if (z != z0) below += w.counts[z] * types.rate(z);
    }
    if (below >= types.rate(z0)) {
      out.push_back("subtree below type " + std::to_string(z0) + " costs " + to_string(below) + " >= r=" +
                    to_string(types.rate(z0)));
    }
  }
  Rational load = subtree_size(jobs, *top, forest) / types.capacity(*top);
  if (w.counts[*top] < floor(load) || w.counts[*top] > ceil(load)) {
    out.push_back("top type " + std::to_string(*top) + " count " + to_string(w.counts[*top]) +
                  " outside [floor, ceil] of " + to_string(load));
  }
  return out;
}

MachineConfiguration canonicalize(const MachineConfiguration& w, std::span<const OneShotJob> jobs,
                                  const MachineTypeTable& types, const CostCapacityForest& forest,
                                  const SolverOptions& options) {
  if (!types.rates_are_powers_of_eight()) {
    throw ContractViolation("canonicalize requires power-of-eight rates");
  }
  if (w.counts.size() != types.size() || !w.is_integral()) {
    throw ContractViolation("canonicalize requires an integral configuration over every type");
  }
  if (!is_feasible(w, jobs, types)) throw ContractViolation("canonicalize requires a feasible configuration");
  Rational cost = w.cost(types);
  Rational optimum = optimal_oneshot(jobs, types, options).cost(types);
  if (cost != optimum) {
    throw ContractViolation("configuration cost " + to_string(cost) + " is not optimal (" + to_string(optimum) + ")");
  }
  auto k0 = highest_exact_type(jobs);
  if (!k0) return w;

  MachineConfiguration out = lift_to_chain(w, *k0, types, forest);
  out = collapse_subtrees(std::move(out), types, forest);
  out = trim_top(std::move(out), jobs, types, forest);

  if (out.cost(types) != cost || !is_feasible(out, jobs, types)) {
    throw ContractViolation("canonicalization changed cost or broke feasibility");
  }
  return out;
}

MachineConfiguration cn_config(std::span<const OneShotJob> jobs, TypeIndex top, const MachineTypeTable& types,
                               const CostCapacityForest& forest) {
  auto k0 = highest_exact_type(jobs);
  if (!k0) throw ValidationError("cn_config needs a nonempty job set");
  const auto& chain = forest.ancestors(*k0);
  if (std::find(chain.begin(), chain.end(), top) == chain.end()) {
    throw ValidationError("type " + std::to_string(top) + " is not k0=" + std::to_string(*k0) +
                          " or an ancestor of it");
  }
  MachineConfiguration cn(types.size());
  Rational top_count = ceil(subtree_size(jobs, top, forest) / types.capacity(top));
  cn.counts[top] = top_count;
  const Rational budget = top_count * types.capacity(top);

  auto t = forest.t_set(top);
  Rational filled = subtree_size(jobs, top, forest);
  bool past_boundary = false;
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    TypeIndex i = *it;
    if (i == top) continue;
    Rational h = subtree_size(jobs, i, forest);
    if (past_boundary) {
      cn.counts[i] = h / types.capacity(i);
      continue;
    }
    Rational with_i = filled + h;
    if (with_i > budget) {
      cn.counts[i] = (with_i - budget) / types.capacity(i);
      past_boundary = true;
    }
    filled = with_i;
  }
  return cn;
}

bool is_decent(const MachineConfiguration& cn, TypeIndex top, const MachineTypeTable& types,
               const CostCapacityForest& forest) {
  for (TypeIndex above : forest.ancestors(top)) {
    if (above == top) continue;
    Rational share = 0;
    for (TypeIndex z : forest.subtree(above)) share += cn.counts[z] * types.rate(z);
    if (share > types.rate(above)) return false;
  }
  return true;
}

TypeIndex z_diamond(std::span<const OneShotJob> jobs, const MachineTypeTable& types,
                    const CostCapacityForest& forest) {
  auto k0 = highest_exact_type(jobs);
  if (!k0) throw ValidationError("z_diamond needs a nonempty job set");
  for (TypeIndex top : forest.ancestors(*k0)) {
    if (is_decent(cn_config(jobs, top, types, forest), top, types, forest)) return top;
  }
  // The root of k0's tree has no strict ancestors and is always decent.
  throw ContractViolation("no decent top type found");
}

AlternativeConfiguration alternative_configuration(std::span<const OneShotJob> jobs, const MachineTypeTable& types,
                                                   const CostCapacityForest& forest) {
  if (jobs.empty()) return {0, MachineConfiguration(types.size()), Rational(0)};
  TypeIndex top = z_diamond(jobs, types, forest);
  auto config = cn_config(jobs, top, types, forest);
  Rational cost = config.cost(types);
  return {top, std::move(config), std::move(cost)};
}

const char* to_string(ChargeCase c) {
  switch (c) {
    case ChargeCase::empty: return "empty";
    case ChargeCase::proportional: return "proportional";
    case ChargeCase::interpolated: return "interpolated";
    case ChargeCase::inflated: return "inflated";
    case ChargeCase::uninflated: return "uninflated";
  }
  return "?";
}

Rational ChargeMap::total() const {
  Rational sum = 0;
  for (const auto& c : per_job) sum += c;
  return sum;
}

ChargeMap charge(std::span<const OneShotJob> jobs, const MachineTypeTable& types, const CostCapacityForest& forest) {
  ChargeMap out;
  out.per_job.assign(jobs.size(), Rational(0));
  if (jobs.empty()) return out;

  const TypeIndex top = z_diamond(jobs, types, forest);
  out.top = top;
  const Rational top_ratio = types.ratio(top);
  const auto t = forest.t_set(top);

  // Which member of T(top) owns each job's exact type.
  std::vector<TypeIndex> group(jobs.size(), 0);
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    for (TypeIndex z : t) {
      if (forest.in_subtree(jobs[j].exact_type, z)) {
        group[j] = z;
        break;
      }
    }
    if (group[j] == 0) throw ContractViolation("job exact type lies outside the subtrees of T(top)");
  }

  Rational top_size = 0;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (group[j] == top) top_size += jobs[j].size;
    else out.per_job[j] = jobs[j].size * types.ratio(group[j]);
  }

  if (top_size >= types.capacity(top)) {
    out.top_case = ChargeCase::proportional;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (group[j] == top) out.per_job[j] = jobs[j].size * top_ratio;
    }
  } else {
    // Ratio of the child subtree holding each non-exact job of H_top.
    std::vector<Rational> child_ratio(jobs.size());
    Rational exact_size = 0;
    Rational spread = 0;
    out.child_cost = 0;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (group[j] != top) continue;
      if (jobs[j].exact_type == top) {
        exact_size += jobs[j].size;
        continue;
      }
      TypeIndex child = jobs[j].exact_type;
      while (forest.parent(child) != top) child = *forest.parent(child);
      child_ratio[j] = types.ratio(child);
      out.child_cost += jobs[j].size * child_ratio[j];
      spread += jobs[j].size * (child_ratio[j] - top_ratio);
    }
    out.child_cost += exact_size * top_ratio;
    const Rational& r_top = types.rate(top);

    if (out.child_cost > r_top) {
      out.top_case = ChargeCase::interpolated;
      out.alpha = (out.child_cost - r_top) / spread;
      for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (group[j] != top) continue;
        if (jobs[j].exact_type == top) {
          out.per_job[j] = jobs[j].size * top_ratio;
        } else {
          out.per_job[j] = jobs[j].size * (child_ratio[j] - (child_ratio[j] - top_ratio) * out.alpha);
        }
      }
    } else {
      bool has_exact = exact_size > 0;
      out.top_case = (!has_exact && out.child_cost < r_top) ? ChargeCase::uninflated : ChargeCase::inflated;
      if (has_exact) out.beta = (r_top - out.child_cost) / (exact_size * top_ratio);
      for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (group[j] != top) continue;
        if (jobs[j].exact_type == top) {
          out.per_job[j] = jobs[j].size * top_ratio * (1 + out.beta);
        } else {
          out.per_job[j] = jobs[j].size * child_ratio[j];
        }
      }
    }
  }

  out.top_group_total = 0;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (group[j] == top) out.top_group_total += out.per_job[j];
  }
  return out;
}

std::vector<Rational> r_star(std::span<const OneShotJob> jobs, const MachineConfiguration& w,
                             const MachineTypeTable& types) {
  if (w.counts.size() != types.size() || !w.is_integral()) {
    throw ValidationError("r_star needs an integral configuration over every type");
  }
  if (!is_feasible(w, jobs, types)) throw ValidationError("r_star needs a feasible configuration");

  std::vector<TypeIndex> machines;
  for (TypeIndex z = types.size(); z >= 1; --z) {
    unsigned long count = w.counts[z].get_num().get_ui();
    machines.insert(machines.end(), count, z);
  }
  std::vector<std::size_t> order(jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return jobs[a].size > jobs[b].size; });

  std::vector<Rational> out(jobs.size(), Rational(0));
  std::size_t machine = 0;
  Rational room = machines.empty() ? Rational(0) : types.capacity(machines.front());
  for (std::size_t j : order) {
    Rational left = jobs[j].size;
    while (left > 0) {
      if (machine >= machines.size()) throw ContractViolation("r_star ran out of machines");
      TypeIndex z = machines[machine];
      if (types.capacity(z) < jobs[j].size) throw ContractViolation("r_star placed a piece on a too-small machine");
      Rational take = left < room ? left : room;
      out[j] += take * types.ratio(z);
      left -= take;
      room -= take;
      if (room == 0 && ++machine < machines.size()) room = types.capacity(machines[machine]);
    }
  }
  return out;
}

}  // namespace bshm
