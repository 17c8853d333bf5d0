#pragma once

#include "bshm/graph.hpp"
#include "bshm/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bshm {

/// A job reduced to what matters at a single instant: its size and exact type.
struct OneShotJob {
  Rational size;
  TypeIndex exact_type;
};

/// Jobs `indices` of `instance` as one-shot jobs.
std::vector<OneShotJob> one_shot_jobs(const Instance& instance, std::span<const std::size_t> indices);
/// Every job of `instance` active at t.
std::vector<OneShotJob> one_shot_jobs_at(const Instance& instance, const Rational& t);

/// max m(J), or nullopt for an empty set.
std::optional<TypeIndex> highest_exact_type(std::span<const OneShotJob> jobs);
/// S(H_z): total size of jobs whose exact type lies in the subtree of z.
Rational subtree_size(std::span<const OneShotJob> jobs, TypeIndex z, const CostCapacityForest& forest);

/// Machine counts per type. Counts are integral for real configurations and
/// may be fractional for the analytical alternative configuration.
struct MachineConfiguration {
  TypeVector<Rational> counts;

  MachineConfiguration() = default;
  explicit MachineConfiguration(std::size_t type_count) : counts(type_count, Rational(0)) {}

  Rational cost(const MachineTypeTable& types) const;
  bool is_integral() const;
  std::optional<TypeIndex> highest_used() const;

  friend bool operator==(const MachineConfiguration&, const MachineConfiguration&) = default;
};

/// Every covering constraint holds: for each i, the jobs with exact type >= i
/// fit into the capacity of types >= i.
bool is_feasible(const MachineConfiguration& w, std::span<const OneShotJob> jobs, const MachineTypeTable& types);

struct SolverOptions {
  std::uint64_t max_nodes = 10'000'000;
};

/// Minimum-cost integral configuration by depth-first branch and bound,
/// highest type first. Among equally cheap optima the count vector that is
/// lexicographically smallest (read from the highest type down) is returned.
/// Throws SearchSpaceExceeded past `max_nodes` search nodes.
MachineConfiguration optimal_oneshot(std::span<const OneShotJob> jobs, const MachineTypeTable& types,
                                     const SolverOptions& options = {});

/// Rewrites an optimal configuration into the canonical optimum: same cost,
/// still feasible, its highest used type is k0 or an ancestor of k0, each
/// subtree below a type costs less than one machine of that type, and the
/// top type's count is within one of the size it must host.
///
/// Requires power-of-eight rates. Throws ContractViolation if `w` is not
/// integral, feasible, and optimal (optimality is confirmed with the solver).
MachineConfiguration canonicalize(const MachineConfiguration& w, std::span<const OneShotJob> jobs,
                                  const MachineTypeTable& types, const CostCapacityForest& forest,
                                  const SolverOptions& options = {});

/// The three canonical-optimum properties listed above; empty when all hold.
std::vector<std::string> canonical_form_violations(const MachineConfiguration& w, std::span<const OneShotJob> jobs,
                                                   const MachineTypeTable& types,
                                                   const CostCapacityForest& forest);

/// Fractional configuration that uses `top` as its highest type: ceil(S(H_top)/g_top)
/// top machines, with their spare capacity filling the subtrees of T(top)
/// from the highest index down and the rest on fractional machines of each
/// subtree's own root. Requires top ∈ P(k0); throws ValidationError otherwise.
MachineConfiguration cn_config(std::span<const OneShotJob> jobs, TypeIndex top, const MachineTypeTable& types,
                               const CostCapacityForest& forest);

/// No strict ancestor a of `top` has its subtree's share of `cn` costing more than r_a.
bool is_decent(const MachineConfiguration& cn, TypeIndex top, const MachineTypeTable& types,
               const CostCapacityForest& forest);

/// Lowest type in P(k0) whose cn_config is decent.
TypeIndex z_diamond(std::span<const OneShotJob> jobs, const MachineTypeTable& types,
                    const CostCapacityForest& forest);

struct AlternativeConfiguration {
  TypeIndex top = 0;
  MachineConfiguration config;
  Rational cost;
};

/// cn_config at z_diamond. Empty job sets give top = 0 and cost 0.
AlternativeConfiguration alternative_configuration(std::span<const OneShotJob> jobs, const MachineTypeTable& types,
                                                   const CostCapacityForest& forest);

/// How the subtree of the top type was charged.
enum class ChargeCase {
  empty,         ///< no jobs
  proportional,  ///< S(H_top) >= g_top: every job pays size * r_top / g_top
  interpolated,  ///< c > r_top: child jobs pulled toward the top ratio by alpha
  inflated,      ///< c <= r_top: exact-top jobs inflated by (1 + beta)
  uninflated,    ///< c < r_top with no exact-top jobs: group total is c, not r_top
};

const char* to_string(ChargeCase c);

/// Per-job charges of the monotone cost decomposition, plus the quantities
/// that determined them.
struct ChargeMap {
  std::vector<Rational> per_job;  ///< parallel to the input jobs
  TypeIndex top = 0;
  ChargeCase top_case = ChargeCase::empty;
  /// Cost of hosting exact-top jobs on top machines and each child subtree on its own root.
  Rational child_cost;
  Rational alpha;
  Rational beta;
  /// Sum of the charges of jobs in H_top.
  Rational top_group_total;

  Rational total() const;
  /// True in the uninflated sub-case, which has no stated target total.
  bool flagged() const { return top_case == ChargeCase::uninflated; }
};

ChargeMap charge(std::span<const OneShotJob> jobs, const MachineTypeTable& types, const CostCapacityForest& forest);

/// Per-job cost of pouring the jobs (largest first) into the machines of a
/// feasible integral configuration (largest first), each job split over at
/// most two machines. Throws ValidationError if `w` is infeasible or fractional.
std::vector<Rational> r_star(std::span<const OneShotJob> jobs, const MachineConfiguration& w,
                             const MachineTypeTable& types);

}  // namespace bshm
