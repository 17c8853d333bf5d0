#pragma once

#include "bshm/graph.hpp"
#include "bshm/oneshot.hpp"
#include "bshm/schedule.hpp"

#include <optional>
#include <vector>

namespace bshm {

/// Per-type job sets produced by the descending sweep over types, with the
/// intermediate sets kept for auditing. All sets hold job indices, ascending.
struct TypeAssignment {
  TypeVector<std::vector<std::size_t>> assigned;  ///< K_z
  TypeVector<std::vector<std::size_t>> pending;   ///< jobs of R_z still unassigned when z was processed
  TypeVector<std::vector<std::size_t>> exact;     ///< the pending jobs with m(J) = z
  TypeVector<IntervalSet> cost_effective;         ///< times where a type-z machine pays off
  std::vector<TypeIndex> type_of;                 ///< per job
};

/// Sweeps z = |M|..1. Pending jobs of exact type z always go to z; a pending
/// descendant-type job goes to z iff its whole interval is cost-effective,
/// meaning some exact-type-z job is active or the children would need
/// Σ_x ceil(S(F_x,t)/g_x)·r_x >= r_z/3.
TypeAssignment assign_types(const Instance& instance, const CostCapacityForest& forest);

enum class PackPolicy {
  longest_first,  ///< First Fit over jobs sorted by decreasing length
  by_arrival,     ///< First Fit over jobs in release order
};

struct Packing {
  std::vector<std::size_t> machine_of;  ///< parallel to the packed jobs
  std::size_t machine_count = 0;
};

/// Packs jobs onto identical machines of the given capacity. Machines are
/// tried in creation order; a job joins the first one whose load stays
/// within capacity over the job's whole interval. Throws ValidationError on
/// a job larger than the capacity.
Packing pack_homogeneous(std::span<const Job> jobs, const Rational& capacity, PackPolicy policy);

/// One row per breakpoint segment that has active jobs.
struct OfflineAuditRow {
  Interval segment;
  Rational rounded_cost;  ///< Σ_z ceil(S(K_z,t)/g_z)·r_z
  Rational cn_cost;       ///< cost of the alternative configuration for J(t)
  std::optional<Rational> opt1;
  Rational realized_rate;  ///< Σ rates of machines busy at t
  /// Largest busy-machine count over the 4·ceil(S(K_z,t)/g_z) packing budget, per type.
  Rational packer_budget_use;
};

struct OfflineOptions {
  PackPolicy policy = PackPolicy::longest_first;
  /// Compute OPT1 for each audit row; rows where the solver gives up keep nullopt.
  bool with_opt1 = false;
  SolverOptions solver;
};

struct OfflineResult {
  TypeAssignment assignment;
  Schedule schedule;
  Rational cost;
  std::vector<OfflineAuditRow> audit;
};

OfflineResult alg_offline(const Instance& instance, const CostCapacityForest& forest,
                          const OfflineOptions& options = {});

/// Partition and ancestry of the assignment, schedule feasibility, the volume
/// lower bound on packed machines, and at each segment: the highest assigned
/// type is k0 or its ancestor, each subtree's rounded cost stays within 2·r_z,
/// subtrees owning only descendant jobs carry >= 4/21·r_z of child cost, the
/// rounded cost is within 21× the CN cost, and within 45× OPT1 where known.
Violations check_offline(const Instance& instance, const CostCapacityForest& forest, const OfflineResult& result);

}  // namespace bshm
