#include "bshm/schedule.hpp"

#include "bshm/instance_io.hpp"

namespace bshm {

std::vector<std::vector<std::size_t>> Schedule::jobs_by_machine() const {
  std::vector<std::vector<std::size_t>> out(machine_types.size());
  for (std::size_t j = 0; j < placements.size(); ++j) out.at(placements[j].machine).push_back(j);
  return out;
}

Rational schedule_cost(const Schedule& schedule, const Instance& instance) {
  const auto& jobs = instance.jobs();
  Rational total = 0;
  auto by_machine = schedule.jobs_by_machine();
  for (std::size_t m = 0; m < by_machine.size(); ++m) {
    std::vector<Interval> pieces;
    for (std::size_t j : by_machine[m]) pieces.push_back({jobs[j].start, jobs[j].end});
    total += IntervalSet(std::move(pieces)).length() * instance.types().rate(schedule.machine_types[m]);
  }
  return total;
}

Rational cost_rate_at(const Schedule& schedule, const Instance& instance, const Rational& t) {
  auto busy = busy_machines_at(schedule, instance, t);
  Rational rate = 0;
  for (TypeIndex z = 1; z <= busy.size(); ++z) rate += busy[z] * instance.types().rate(z);
  return rate;
}

TypeVector<std::size_t> busy_machines_at(const Schedule& schedule, const Instance& instance, const Rational& t) {
  std::vector<char> busy(schedule.machine_count(), 0);
  const auto& jobs = instance.jobs();
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (jobs[j].active_at(t)) busy[schedule.placements[j].machine] = 1;
  }
  TypeVector<std::size_t> out(instance.types().size(), 0);
  for (std::size_t m = 0; m < busy.size(); ++m) {
    if (busy[m]) ++out[schedule.machine_types[m]];
  }
  return out;
}

Violations check_schedule(const Schedule& schedule, const Instance& instance) {
  Violations out;
  const auto& jobs = instance.jobs();
  const auto& types = instance.types();
  if (schedule.placements.size() != jobs.size()) {
    out.push_back({"schedule.complete", std::to_string(schedule.placements.size()) + " placements for " +
                                            std::to_string(jobs.size()) + " jobs"});
    return out;
  }
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const auto& p = schedule.placements[j];
    if (p.machine >= schedule.machine_count() || schedule.machine_types[p.machine] != p.type ||
        p.type < 1 || p.type > types.size()) {
      out.push_back({"schedule.consistent", "job " + jobs[j].id + " has an inconsistent placement"});
      return out;
    }
    if (jobs[j].size > types.capacity(p.type)) {
      out.push_back({"schedule.fits", "job " + jobs[j].id + " exceeds type " + std::to_string(p.type)});
    }
  }
  auto by_machine = schedule.jobs_by_machine();
  for (std::size_t m = 0; m < by_machine.size(); ++m) {
    const Rational& cap = types.capacity(schedule.machine_types[m]);
    for (std::size_t probe : by_machine[m]) {
      const Rational& t = jobs[probe].start;
      Rational load = 0;
      for (std::size_t j : by_machine[m]) {
        if (jobs[j].active_at(t)) load += jobs[j].size;
      }
      if (load > cap) {
        out.push_back({"schedule.capacity", "machine " + std::to_string(m) + " load " + to_string(load) +
                                                " > " + to_string(cap) + " at t=" + to_string(t)});
        break;
      }
    }
  }
  return out;
}

nlohmann::json schedule_to_json(const Schedule& schedule, const Instance& instance) {
  nlohmann::json placements = nlohmann::json::object();
  const auto& jobs = instance.jobs();
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    placements[jobs[j].id] = {{"type", schedule.placements[j].type}, {"machine", schedule.placements[j].machine}};
  }
  return {{"cost", rational_to_json(schedule_cost(schedule, instance))},
          {"machines", schedule.machine_count()},
          {"placements", placements}};
}

}  // namespace bshm
