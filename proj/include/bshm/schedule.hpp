#pragma once

#include "bshm/model.hpp"
#include "bshm/violation.hpp"

#include <json.hpp>

#include <vector>

namespace bshm {

/// Job -> (type, machine) placement. Machine ids are global and dense; each
/// machine has exactly one type.
struct Schedule {
  struct Placement {
    TypeIndex type = 0;
    std::size_t machine = 0;
  };

  std::vector<Placement> placements;     ///< parallel to the instance's jobs
  std::vector<TypeIndex> machine_types;  ///< indexed by machine id

  std::size_t machine_count() const { return machine_types.size(); }
  /// Job indices per machine id.
  std::vector<std::vector<std::size_t>> jobs_by_machine() const;
};

/// Σ over machines of rate × length of the union of its jobs' intervals.
Rational schedule_cost(const Schedule& schedule, const Instance& instance);

/// Σ rate of machines with at least one active job at t.
Rational cost_rate_at(const Schedule& schedule, const Instance& instance, const Rational& t);

/// Machines of each type hosting an active job at t.
TypeVector<std::size_t> busy_machines_at(const Schedule& schedule, const Instance& instance, const Rational& t);

/// Every job placed, types consistent, and at each breakpoint every
/// machine's active load within its capacity.
Violations check_schedule(const Schedule& schedule, const Instance& instance);

/// { "<job id>": {"type": z, "machine": m}, ... } plus "cost".
nlohmann::json schedule_to_json(const Schedule& schedule, const Instance& instance);

}  // namespace bshm
