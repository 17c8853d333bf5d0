#pragma once

#include "bshm/oneshot.hpp"
#include "bshm/schedule.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace bshm {

struct OracleBudget {
  std::uint64_t max_nodes = 5'000'000;
  /// Cap on machine instances per type; 0 means one per job.
  std::size_t max_machines_per_type = 0;
};

struct OracleResult {
  Rational cost;
  Schedule witness;
};

/// Thrown when the budget runs out; carries the best schedule seen so far,
/// which is an upper bound and not a proven optimum.
class OracleBudgetExceeded : public SearchSpaceExceeded {
 public:
  OracleBudgetExceeded(const std::string& what, std::optional<OracleResult> best)
      : SearchSpaceExceeded(what), best_(std::move(best)) {}
  const std::optional<OracleResult>& best() const { return best_; }

 private:
  std::optional<OracleResult> best_;
};

/// Exact minimum-cost schedule by exhaustive search over (type, machine)
/// choices per job. Within a type a job may only open the next unused
/// machine, so machine permutations are enumerated once.
OracleResult opt2(const Instance& instance, const OracleBudget& budget = {});

/// Σ over breakpoint segments of length × OPT1(J(t)).
Rational opt1_lower_bound(const Instance& instance, const SolverOptions& options = {});

}  // namespace bshm
