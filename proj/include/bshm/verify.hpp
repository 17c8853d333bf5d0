#pragma once

#include "bshm/generator.hpp"
#include "bshm/graph.hpp"
#include "bshm/offline.hpp"
#include "bshm/online.hpp"
#include "bshm/oneshot.hpp"
#include "bshm/oracle.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace bshm {

// One-shot checks on a single job set. Each returns an empty list when all hold.

/// For every top t in P(k0): CN's prefix gap against size-weighted cost stays
/// under r_t, every suffix of T(t) costs at least its size-weighted cost, and
/// z_diamond's configuration is decent.
Violations check_cn_structure(std::span<const OneShotJob> jobs, const MachineTypeTable& types,
                              const CostCapacityForest& forest);
/// 1/2·Σ charge <= CN cost <= 15/7·Σ charge, and each group's charge total
/// matches its case rule exactly.
Violations check_charges(std::span<const OneShotJob> jobs, const MachineTypeTable& types,
                         const CostCapacityForest& forest);
/// Every job of the subset `keep` is charged at least as much alone as in the full set.
Violations check_charge_monotone(std::span<const OneShotJob> jobs, const std::vector<bool>& keep,
                                 const MachineTypeTable& types, const CostCapacityForest& forest);
/// 7/15·CN <= OPT1 <= 8/7·CN.
Violations check_cn_bracket(std::span<const OneShotJob> jobs, const MachineTypeTable& types,
                            const CostCapacityForest& forest, const SolverOptions& solver = {});
/// canonicalize(solver optimum) keeps cost and feasibility, has the canonical
/// properties, and its greedy fill charges each job at least its group's ratio.
Violations check_canonical(std::span<const OneShotJob> jobs, const MachineTypeTable& types,
                           const CostCapacityForest& forest, const SolverOptions& solver = {});

/// ∫ charge with extend_d copies <= (d+1)·∫ charge without, for d = mu and 2·mu.
Violations check_charge_growth(const Instance& instance, const CostCapacityForest& forest);

struct OracleComparison {
  OracleResult opt;
  Rational lower_bound;
};

/// opt2 against its own witness, the OPT1 integral, and both algorithms
/// (offline within 180×, neither below the optimum).
Violations check_against_oracle(const Instance& instance, const OracleComparison& oracle, const Rational& offline_cost,
                                const Rational& online_cost);

enum class VerifyLevel { fast, full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::fast;
  /// Instances at most this size also run the exact schedule oracle at the full level.
  std::size_t oracle_max_jobs = 6;
  std::size_t oracle_max_types = 3;
  SolverOptions solver{200'000};
  OracleBudget oracle;
  std::uint64_t seed = 1;  ///< drives the random subsets of the monotonicity check
};

struct CheckTally {
  std::size_t evaluated = 0;
  std::size_t failed = 0;
  std::string first_failure;
};

struct VerifyReport {
  std::map<std::string, CheckTally> checks;
  std::size_t instances = 0;

  /// Counts one evaluation of each name and one failure per violation.
  void absorb(std::initializer_list<const char*> names, const Violations& found, const std::string& witness);
  bool ok() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct NamedInstance {
  std::string name;
  Instance instance;
};

VerifyReport verify(const std::vector<NamedInstance>& instances, const VerifyOptions& options = {});

}  // namespace bshm
