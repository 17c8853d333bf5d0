#include "bshm/offline.hpp"

#include <algorithm>
#include <numeric>

namespace bshm {

namespace {

bool in_set(const std::vector<std::size_t>& sorted, std::size_t j) {
  return std::binary_search(sorted.begin(), sorted.end(), j);
}

Rational active_size(const std::vector<Job>& jobs, const std::vector<std::size_t>& set, const Rational& t) {
  Rational total = 0;
  for (std::size_t j : set) {
    if (jobs[j].active_at(t)) total += jobs[j].size;
  }
  return total;
}

}  // namespace

TypeAssignment assign_types(const Instance& instance, const CostCapacityForest& forest) {
  const auto& jobs = instance.jobs();
  const auto& types = instance.types();
  const std::size_t type_count = types.size();
  TypeAssignment out{TypeVector<std::vector<std::size_t>>(type_count), TypeVector<std::vector<std::size_t>>(type_count),
                     TypeVector<std::vector<std::size_t>>(type_count), TypeVector<IntervalSet>(type_count),
                     std::vector<TypeIndex>(jobs.size(), 0)};
  const auto segments = Timeline::of(jobs).segments();

  for (TypeIndex z = type_count; z >= 1; --z) {
    auto& pending = out.pending[z];
    auto& exact = out.exact[z];
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (out.type_of[j] != 0 || !forest.in_subtree(instance.exact_type(j), z)) continue;
      pending.push_back(j);
      if (instance.exact_type(j) == z) exact.push_back(j);
    }

    std::vector<Interval> effective;
    const Rational threshold = types.rate(z) / 3;
    for (const auto& seg : segments) {
      const Rational& t = seg.lo;
      bool hosts_exact = std::any_of(exact.begin(), exact.end(), [&](std::size_t j) { return jobs[j].active_at(t); });
      if (!hosts_exact) {
        Rational children_cost = 0;
        for (TypeIndex x : forest.children(z)) {
          Rational load = 0;
          for (std::size_t j : pending) {
            if (jobs[j].active_at(t) && forest.in_subtree(instance.exact_type(j), x)) load += jobs[j].size;
          }
          children_cost += ceil(load / types.capacity(x)) * types.rate(x);
        }
        if (children_cost < threshold) continue;
      }
      effective.push_back(seg);
    }
    out.cost_effective[z] = IntervalSet(std::move(effective));

    for (std::size_t j : pending) {
      bool take = instance.exact_type(j) == z;
      if (!take) {
        take = std::all_of(segments.begin(), segments.end(), [&](const Interval& seg) {
          return seg.hi <= jobs[j].start || seg.lo >= jobs[j].end || out.cost_effective[z].contains(seg.lo);
        });
      }
      if (take) {
        out.assigned[z].push_back(j);
        out.type_of[j] = z;
      }
    }
  }
  return out;
}

Packing pack_homogeneous(std::span<const Job> jobs, const Rational& capacity, PackPolicy policy) {
  for (const auto& j : jobs) {
    if (j.size > capacity) {
      throw ValidationError("job " + j.id + " of size " + to_string(j.size) + " exceeds capacity " +
                            to_string(capacity));
    }
  }
  std::vector<std::size_t> order(jobs.size());
  std::iota(order.begin(), order.end(), 0);
  if (policy == PackPolicy::longest_first) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (jobs[a].length() != jobs[b].length()) return jobs[a].length() > jobs[b].length();
      return jobs[a].start < jobs[b].start;
    });
  } else {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return jobs[a].start < jobs[b].start; });
  }

  Packing out;
  out.machine_of.assign(jobs.size(), 0);
  std::vector<std::vector<std::size_t>> hosted;
  // Load on a machine over [start, end) peaks at the job's own start or at
  // the start of some hosted job inside the interval.
  auto fits = [&](const std::vector<std::size_t>& machine, const Job& job) {
    std::vector<Rational> probes{job.start};
    for (std::size_t h : machine) {
      if (job.active_at(jobs[h].start)) probes.push_back(jobs[h].start);
    }
    for (const auto& t : probes) {
      Rational load = job.size;
      for (std::size_t h : machine) {
        if (jobs[h].active_at(t)) load += jobs[h].size;
      }
      if (load > capacity) return false;
    }
    return true;
  };
  for (std::size_t j : order) {
    std::size_t m = 0;
    while (m < hosted.size() && !fits(hosted[m], jobs[j])) ++m;
    if (m == hosted.size()) hosted.emplace_back();
    hosted[m].push_back(j);
    out.machine_of[j] = m;
  }
  out.machine_count = hosted.size();
  return out;
}

OfflineResult alg_offline(const Instance& instance, const CostCapacityForest& forest, const OfflineOptions& options) {
  const auto& jobs = instance.jobs();
  const auto& types = instance.types();
  OfflineResult out;
  out.assignment = assign_types(instance, forest);
  out.schedule.placements.resize(jobs.size());

  for (TypeIndex z = 1; z <= types.size(); ++z) {
    const auto& members = out.assignment.assigned[z];
    if (members.empty()) continue;
    std::vector<Job> subset;
    for (std::size_t j : members) subset.push_back(jobs[j]);
    Packing packing = pack_homogeneous(subset, types.capacity(z), options.policy);
    std::size_t base = out.schedule.machine_count();
    out.schedule.machine_types.insert(out.schedule.machine_types.end(), packing.machine_count, z);
    for (std::size_t i = 0; i < members.size(); ++i) {
      out.schedule.placements[members[i]] = {z, base + packing.machine_of[i]};
    }
  }
  out.cost = schedule_cost(out.schedule, instance);

  for (const auto& seg : Timeline::of(jobs).segments()) {
    const Rational& t = seg.lo;
    auto oneshot = one_shot_jobs_at(instance, t);
    if (oneshot.empty()) continue;
    OfflineAuditRow row;
    row.segment = seg;
    row.rounded_cost = 0;
    row.packer_budget_use = 0;
    auto busy = busy_machines_at(out.schedule, instance, t);
    for (TypeIndex z = 1; z <= types.size(); ++z) {
      Rational machines = ceil(active_size(jobs, out.assignment.assigned[z], t) / types.capacity(z));
      row.rounded_cost += machines * types.rate(z);
      if (machines > 0) {
        Rational use = Rational(busy[z]) / (4 * machines);
        if (use > row.packer_budget_use) row.packer_budget_use = use;
      }
    }
    row.cn_cost = alternative_configuration(oneshot, types, forest).cost;
    if (options.with_opt1) {
      try {
        row.opt1 = optimal_oneshot(oneshot, types, options.solver).cost(types);
      } catch (const SearchSpaceExceeded&) {
      }
    }
    row.realized_rate = cost_rate_at(out.schedule, instance, t);
    out.audit.push_back(std::move(row));
  }
  return out;
}

Violations check_offline(const Instance& instance, const CostCapacityForest& forest, const OfflineResult& result) {
  Violations out = check_schedule(result.schedule, instance);
  const auto& jobs = instance.jobs();
  const auto& types = instance.types();
  const auto& a = result.assignment;

  for (std::size_t j = 0; j < jobs.size(); ++j) {
    TypeIndex z = a.type_of[j];
    const auto& chain = forest.ancestors(instance.exact_type(j));
    if (z == 0 || std::find(chain.begin(), chain.end(), z) == chain.end()) {
      out.push_back({"offline.assigned_to_ancestor", "job " + jobs[j].id + " assigned to type " + std::to_string(z)});
    } else if (!in_set(a.assigned[z], j) || result.schedule.placements[j].type != z) {
      out.push_back({"offline.partition", "job " + jobs[j].id + " missing from K_" + std::to_string(z)});
    }
  }
  std::size_t assigned_total = 0;
  for (const auto& k : a.assigned) assigned_total += k.size();
  if (assigned_total != jobs.size()) {
    out.push_back({"offline.partition", std::to_string(assigned_total) + " assignments for " +
                                            std::to_string(jobs.size()) + " jobs"});
  }

  for (const auto& row : result.audit) {
    const Rational& t = row.segment.lo;
    const std::string at = " at t=" + to_string(t);
    TypeVector<Rational> assigned_load(types.size(), Rational(0));
    TypeVector<Rational> rounded(types.size(), Rational(0));
    for (TypeIndex z = 1; z <= types.size(); ++z) {
      assigned_load[z] = active_size(jobs, a.assigned[z], t);
      rounded[z] = ceil(assigned_load[z] / types.capacity(z)) * types.rate(z);
    }
    auto busy = busy_machines_at(result.schedule, instance, t);
    for (TypeIndex z = 1; z <= types.size(); ++z) {
      if (Rational(busy[z]) * types.capacity(z) < assigned_load[z]) {
        out.push_back({"offline.packing_volume", "type " + std::to_string(z) + " has too few machines" + at});
      }
    }

    TypeIndex k0 = 0;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (jobs[j].active_at(t)) k0 = std::max(k0, instance.exact_type(j));
    }
    TypeIndex top = 0;
    for (TypeIndex z = 1; z <= types.size(); ++z) {
      if (assigned_load[z] > 0) top = z;
    }
    const auto& chain = forest.ancestors(k0);
    if (std::find(chain.begin(), chain.end(), top) == chain.end()) {
      out.push_back({"offline.top_on_chain", "highest assigned type " + std::to_string(top) + " not in P(" +
                                                 std::to_string(k0) + ")" + at});
    }

    for (TypeIndex z = 1; z <= types.size(); ++z) {
      Rational below = 0;
      for (TypeIndex i : forest.subtree(z)) {
        if (i != z) below += rounded[i];
      }
      if (below > 2 * types.rate(z)) {
        out.push_back({"offline.subtree_cost", "subtree below " + std::to_string(z) + " costs " + to_string(below) +
                                                   " > 2*r" + at});
      }

      bool ancestors_empty = true;
      for (TypeIndex i : forest.ancestors(z)) {
        if (i != z && assigned_load[i] > 0) ancestors_empty = false;
      }
      bool exact_active = std::any_of(a.exact[z].begin(), a.exact[z].end(),
                                      [&](std::size_t j) { return jobs[j].active_at(t); });
      if (ancestors_empty && assigned_load[z] > 0 && !exact_active) {
        Rational child_cost = 0;
        for (TypeIndex x : forest.children(z)) {
          Rational load = 0;
          for (std::size_t j = 0; j < jobs.size(); ++j) {
            if (jobs[j].active_at(t) && forest.in_subtree(instance.exact_type(j), x)) load += jobs[j].size;
          }
          child_cost += load * types.ratio(x);
        }
        if (child_cost * 21 < 4 * types.rate(z)) {
          out.push_back({"offline.child_cost_floor", "type " + std::to_string(z) + " child cost " +
                                                         to_string(child_cost) + " < 4/21*r" + at});
        }
      }
    }

    if (row.rounded_cost > 21 * row.cn_cost) {
      out.push_back({"offline.cn_bound", to_string(row.rounded_cost) + " > 21*" + to_string(row.cn_cost) + at});
    }
    if (row.opt1 && row.rounded_cost > 45 * *row.opt1) {
      out.push_back({"offline.opt1_bound", to_string(row.rounded_cost) + " > 45*" + to_string(*row.opt1) + at});
    }
  }
  return out;
}

}  // namespace bshm
