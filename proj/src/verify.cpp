#include "bshm/verify.hpp"

#include <sstream>

namespace bshm {

namespace {

std::string label(TypeIndex z) { return std::to_string(z); }

}  // namespace

Violations check_cn_structure(std::span<const OneShotJob> jobs, const MachineTypeTable& types,
                              const CostCapacityForest& forest) {
  Violations out;
  auto k0 = highest_exact_type(jobs);
  if (!k0) return out;
  for (TypeIndex top : forest.ancestors(*k0)) {
    auto cn = cn_config(jobs, top, types, forest);
    auto t = forest.t_set(top);
    std::vector<Rational> gap;  // S(H_z)·r_z/g_z − CN(z)·r_z, ascending over T
    for (TypeIndex z : t) gap.push_back(subtree_size(jobs, z, forest) * types.ratio(z) - cn.counts[z] * types.rate(z));
    for (std::size_t a = 0; a < t.size(); ++a) {
      Rational sum = 0;
      for (std::size_t b = a; b < t.size(); ++b) {
        sum += gap[b];
        if (abs(sum) >= types.rate(top)) {
          out.push_back({"oneshot.cn_prefix_gap", "top " + label(top) + ", range [" + label(t[a]) + ", " +
                                                      label(t[b]) + "] gap " + to_string(sum)});
        }
      }
      Rational suffix = 0;
      for (std::size_t b = a; b < t.size(); ++b) suffix += gap[b];
      if (suffix > 0) {
        out.push_back({"oneshot.cn_suffix_cover", "top " + label(top) + ", suffix from " + label(t[a]) +
                                                      " falls short by " + to_string(suffix)});
      }
    }
  }
  TypeIndex diamond = z_diamond(jobs, types, forest);
  if (!is_decent(cn_config(jobs, diamond, types, forest), diamond, types, forest)) {
    out.push_back({"oneshot.decent", "z_diamond " + label(diamond) + " is not decent"});
  }
  return out;
}

Violations check_charges(std::span<const OneShotJob> jobs, const MachineTypeTable& types,
                         const CostCapacityForest& forest) {
  Violations out;
  if (jobs.empty()) return out;
  auto charged = charge(jobs, types, forest);
  auto alt = alternative_configuration(jobs, types, forest);
  Rational total = charged.total();
  if (2 * alt.cost < total || 7 * alt.cost > 15 * total) {
    out.push_back({"oneshot.charge_bracket", "CN cost " + to_string(alt.cost) + " vs charge total " +
                                                 to_string(total)});
  }

  const TypeIndex top = alt.top;
  for (TypeIndex z : forest.t_set(top)) {
    Rational group_total = 0;
    Rational group_size = 0;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      // T(top) subtrees are disjoint, so membership in A_z alone decides the group.
      if (!forest.in_subtree(jobs[j].exact_type, z)) continue;
      group_total += charged.per_job[j];
      group_size += jobs[j].size;
    }
    Rational expected;
    if (z != top) {
      expected = group_size * types.ratio(z);
    } else {
      switch (charged.top_case) {
        case ChargeCase::proportional: expected = group_size * types.ratio(z); break;
        case ChargeCase::interpolated:
        case ChargeCase::inflated: expected = types.rate(z); break;
        case ChargeCase::uninflated: expected = charged.child_cost; break;
        case ChargeCase::empty: expected = 0; break;
      }
    }
    if (group_total != expected) {
      out.push_back({"oneshot.charge_group_total", "group " + label(z) + " (" + to_string(charged.top_case) +
                                                       ") totals " + to_string(group_total) + ", expected " +
                                                       to_string(expected)});
    }
  }
  return out;
}

Violations check_charge_monotone(std::span<const OneShotJob> jobs, const std::vector<bool>& keep,
                                 const MachineTypeTable& types, const CostCapacityForest& forest) {
  Violations out;
  std::vector<OneShotJob> subset;
  std::vector<std::size_t> origin;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (keep[j]) {
      subset.push_back(jobs[j]);
      origin.push_back(j);
    }
  }
  if (subset.empty()) return out;
  auto small = charge(subset, types, forest);
  auto large = charge(jobs, types, forest);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (small.per_job[i] < large.per_job[origin[i]]) {
      out.push_back({"oneshot.charge_monotone", "job " + std::to_string(origin[i]) + " charged " +
                                                    to_string(small.per_job[i]) + " in the subset but " +
                                                    to_string(large.per_job[origin[i]]) + " in the superset"});
    }
  }
  return out;
}

Violations check_cn_bracket(std::span<const OneShotJob> jobs, const MachineTypeTable& types,
                            const CostCapacityForest& forest, const SolverOptions& solver) {
  Violations out;
  if (jobs.empty()) return out;
  Rational opt = optimal_oneshot(jobs, types, solver).cost(types);
  Rational cn = alternative_configuration(jobs, types, forest).cost;
  if (15 * opt < 7 * cn || 7 * opt > 8 * cn) {
    out.push_back({"oneshot.cn_bracket", "OPT1 " + to_string(opt) + " outside [7/15, 8/7] of CN " + to_string(cn)});
  }
  return out;
}

Violations check_canonical(std::span<const OneShotJob> jobs, const MachineTypeTable& types,
                           const CostCapacityForest& forest, const SolverOptions& solver) {
  Violations out;
  if (jobs.empty()) return out;
  auto w = optimal_oneshot(jobs, types, solver);
  if (!is_feasible(w, jobs, types)) out.push_back({"oneshot.solver_feasible", "solver optimum infeasible"});
  MachineConfiguration canon;
  try {
    canon = canonicalize(w, jobs, types, forest, solver);
  } catch (const ContractViolation& e) {
    out.push_back({"oneshot.canonical_cost", e.what()});
    return out;
  }
  if (canon.cost(types) != w.cost(types)) {
    out.push_back({"oneshot.canonical_cost", to_string(canon.cost(types)) + " != " + to_string(w.cost(types))});
  }
  if (!is_feasible(canon, jobs, types)) out.push_back({"oneshot.canonical_feasible", "canonical form infeasible"});
  for (auto& problem : canonical_form_violations(canon, jobs, types, forest)) {
    out.push_back({"oneshot.canonical_form", problem});
  }
  auto top = canon.highest_used();
  if (top) {
    auto fill = r_star(jobs, canon, types);
    for (TypeIndex z : forest.t_set(*top)) {
      for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (forest.in_subtree(jobs[j].exact_type, z) && fill[j] < jobs[j].size * types.ratio(z)) {
          out.push_back({"oneshot.greedy_fill_ratio", "job " + std::to_string(j) + " filled at " +
                                                          to_string(fill[j]) + " below its group ratio"});
        }
      }
    }
  }
  return out;
}

Violations check_charge_growth(const Instance& instance, const CostCapacityForest& forest) {
  Violations out;
  if (instance.jobs().empty()) return out;
  const Rational ratio = mu(instance.jobs());
  for (const Rational& d : {ratio, Rational(2 * ratio)}) {
    auto integrals = charge_integrals(instance, forest, d);
    if (integrals.with_extensions > (d + 1) * integrals.jobs_only) {
      out.push_back({"online.charge_growth", "d=" + to_string(d) + ": " + to_string(integrals.with_extensions) +
                                                 " > (d+1)*" + to_string(integrals.jobs_only)});
    }
  }
  return out;
}

Violations check_against_oracle(const Instance& instance, const OracleComparison& oracle, const Rational& offline_cost,
                                const Rational& online_cost) {
  Violations out;
  for (auto& v : check_schedule(oracle.opt.witness, instance)) {
    out.push_back({"oracle.witness_feasible", v.check + ": " + v.detail});
  }
  if (!instance.jobs().empty() && schedule_cost(oracle.opt.witness, instance) != oracle.opt.cost) {
    out.push_back({"oracle.witness_cost", "witness cost differs from the reported optimum"});
  }
  if (oracle.lower_bound > oracle.opt.cost) {
    out.push_back({"oracle.lower_bound", to_string(oracle.lower_bound) + " > opt2 " + to_string(oracle.opt.cost)});
  }
  if (offline_cost < oracle.opt.cost) out.push_back({"offline.not_below_optimum", to_string(offline_cost)});
  if (online_cost < oracle.opt.cost) out.push_back({"online.not_below_optimum", to_string(online_cost)});
  if (offline_cost > 180 * oracle.opt.cost) {
    out.push_back({"offline.optimum_ratio", to_string(offline_cost) + " > 180*" + to_string(oracle.opt.cost)});
  }
  return out;
}

void VerifyReport::absorb(std::initializer_list<const char*> names, const Violations& found,
                          const std::string& witness) {
  for (const char* name : names) ++checks[name].evaluated;
  for (const auto& v : found) {
    auto& tally = checks[v.check];
    if (tally.evaluated == 0) tally.evaluated = 1;
    if (tally.failed++ == 0) tally.first_failure = witness + ": " + v.detail;
  }
}

bool VerifyReport::ok() const {
  for (const auto& [name, tally] : checks) {
    if (tally.failed > 0) return false;
  }
  return true;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [name, tally] : checks) {
    nlohmann::json row{{"check", name}, {"evaluated", tally.evaluated}, {"failed", tally.failed}};
    if (tally.failed > 0) row["first_failure"] = tally.first_failure;
    list.push_back(std::move(row));
  }
  return {{"instances", instances}, {"ok", ok()}, {"checks", list}};
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  for (const auto& [name, tally] : checks) {
    os << (tally.failed ? "FAIL " : "ok   ") << name << "  " << tally.evaluated - std::min(tally.evaluated, tally.failed)
       << "/" << tally.evaluated;
    if (tally.failed) os << "  first: " << tally.first_failure;
    os << '\n';
  }
  os << instances << " instances, " << (ok() ? "all checks passed" : "FAILURES") << '\n';
  return os.str();
}

VerifyReport verify(const std::vector<NamedInstance>& instances, const VerifyOptions& options) {
  VerifyReport report;
  Rng rng(options.seed);
  const bool full = options.level == VerifyLevel::full;
  for (const auto& [name, instance] : instances) {
    ++report.instances;
    const auto& types = instance.types();
    auto forest = build_forest(types);
    report.absorb({"forest.size", "forest.parent_rule", "forest.acyclic", "forest.consecutive_subtree",
                   "forest.t_set_ratio_order", "forest.t_set_partition", "forest.t_set_adjacent",
                   "forest.t_set_split"},
                  check_forest(forest, types), name);
    if (instance.jobs().empty()) continue;
    if (!types.rates_are_powers_of_eight()) {
      report.absorb({"model.rates_rounded"},
                    {{"model.rates_rounded", "scheduling checks need power-of-eight rates"}}, name);
      continue;
    }

    for (const auto& seg : Timeline::of(instance.jobs()).segments()) {
      auto jobs = one_shot_jobs_at(instance, seg.lo);
      if (jobs.empty()) continue;
      const std::string where = name + " t=" + to_string(seg.lo);
      report.absorb({"oneshot.cn_prefix_gap", "oneshot.cn_suffix_cover", "oneshot.decent"},
                    check_cn_structure(jobs, types, forest), where);
      report.absorb({"oneshot.charge_bracket", "oneshot.charge_group_total"}, check_charges(jobs, types, forest),
                    where);
      std::vector<bool> keep(jobs.size());
      for (std::size_t j = 0; j < jobs.size(); ++j) keep[j] = uniform_int(rng, 0, 1) == 1;
      report.absorb({"oneshot.charge_monotone"}, check_charge_monotone(jobs, keep, types, forest), where);
      if (full) {
        try {
          report.absorb({"oneshot.cn_bracket"}, check_cn_bracket(jobs, types, forest, options.solver), where);
          report.absorb({"oneshot.canonical_cost", "oneshot.canonical_feasible", "oneshot.canonical_form",
                         "oneshot.greedy_fill_ratio"},
                        check_canonical(jobs, types, forest, options.solver), where);
        } catch (const SearchSpaceExceeded&) {
          ++report.checks["oneshot.solver_gave_up"].evaluated;
        }
      }
    }

    OfflineOptions offline_options;
    offline_options.with_opt1 = full;
    offline_options.solver = options.solver;
    auto offline = alg_offline(instance, forest, offline_options);
    report.absorb({"schedule.complete", "schedule.consistent", "schedule.fits", "schedule.capacity",
                   "offline.assigned_to_ancestor", "offline.partition", "offline.packing_volume",
                   "offline.top_on_chain", "offline.subtree_cost", "offline.child_cost_floor", "offline.cn_bound"},
                  check_offline(instance, forest, offline), name + " offline");
    if (full) report.absorb({"offline.opt1_bound"}, {}, name);

    auto online = simulate(instance, forest);
    OnlineCheckOptions online_options;
    online_options.with_opt1 = full;
    online_options.solver = options.solver;
    report.absorb({"online.open_budget", "online.cost_consistent", "online.fill_multi", "online.fill_children"},
                  check_online(instance, forest, online, online_options), name + " online");
    if (full) report.absorb({"online.opt1_bound"}, {}, name);
    report.absorb({"online.charge_growth"}, check_charge_growth(instance, forest), name);

    if (full && instance.jobs().size() <= options.oracle_max_jobs && types.size() <= options.oracle_max_types) {
      try {
        OracleComparison oracle{opt2(instance, options.oracle), opt1_lower_bound(instance, options.solver)};
        report.absorb({"oracle.witness_feasible", "oracle.witness_cost", "oracle.lower_bound",
                       "offline.not_below_optimum", "online.not_below_optimum", "offline.optimum_ratio"},
                      check_against_oracle(instance, oracle, offline.cost, online.cost), name);
      } catch (const SearchSpaceExceeded&) {
        ++report.checks["oracle.gave_up"].evaluated;
      }
    }
  }
  return report;
}

}  // namespace bshm
