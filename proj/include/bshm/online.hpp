#pragma once

#include "bshm/graph.hpp"
#include "bshm/oneshot.hpp"
#include "bshm/schedule.hpp"

#include <optional>
#include <vector>

namespace bshm {

/// Online placement state: open machines per type, in opening order.
class OnlineSimulator {
 public:
  OnlineSimulator(const MachineTypeTable& types, const CostCapacityForest& forest);

  /// Places job `index` (exact type `exact`) at its release and returns the
  /// machine id. First Fit over open machines of the current type, else open
  /// one if no ancestor's subtree would reach the ancestor's own rate, else
  /// move up to the parent type.
  std::size_t place(std::size_t index, const Rational& size, TypeIndex exact);
  /// Job `index` ends; its machine closes once empty.
  void finish(std::size_t index);

  /// N(z, now)
  const TypeVector<std::size_t>& open_counts() const { return open_; }
  /// Σ_{i∈A_z\{z}} N(i)·r_i < r_z for every z.
  Violations check_open_budget() const;

  const Schedule& schedule() const { return schedule_; }

 private:
  struct Machine {
    std::size_t id;
    TypeIndex type;
    Rational load;
    std::size_t active = 0;
  };

  bool may_open(TypeIndex z) const;

  const MachineTypeTable& types_;
  const CostCapacityForest& forest_;
  TypeVector<std::vector<std::size_t>> open_machines_;  // ids, opening order
  TypeVector<std::size_t> open_;
  std::vector<Machine> machines_;
  std::vector<Rational> job_sizes_;
  Schedule schedule_;
};

struct SeriesRow {
  Interval segment;
  TypeVector<std::size_t> open;
  Rational cost_rate;
};

struct OnlineResult {
  Schedule schedule;
  std::vector<SeriesRow> series;  ///< one row per breakpoint segment
  Rational cost;
  Violations budget_violations;  ///< open-budget invariant, checked after every event
};

/// Replays releases and completions in time order: completions before
/// releases at equal times, simultaneous releases in file order.
OnlineResult simulate(const Instance& instance, const CostCapacityForest& forest);

enum class ArtificialKind { same, extend_mu, extend_two_mu, extend_d };

/// A copy of a job with the same size, active on `active` (possibly empty).
struct ArtificialJob {
  std::size_t source;
  ArtificialKind kind;
  Rational size;
  TypeIndex exact_type;
  IntervalSet active;
};

/// Copies of every job: `same` keeps I(J); the others cover
/// [end, end + e·len_min) ∩ span(J) with e = μ, 2μ, or d. Throws
/// ValidationError for extend_d with d < μ.
std::vector<ArtificialJob> artificial_jobs(const Instance& instance, ArtificialKind kind, const Rational& d = 0);

struct OnlineCheckOptions {
  /// Also bound the open cost by 5·OPT1(J(t) ∪ R(t)) where the solver completes.
  bool with_opt1 = true;
  SolverOptions solver;
};

struct OnlineCheckStats {
  std::size_t points = 0;
  std::size_t opt1_checked = 0;
  std::size_t opt1_skipped = 0;
  /// max over checked points of open cost / OPT1(J(t) ∪ R(t))
  Rational max_opt1_ratio = 0;
};

/// Fill bounds from the artificial jobs R = F1 ∪ F2 ∪ F3 at every point of
/// the refined timeline, plus the open-budget violations from the run.
Violations check_online(const Instance& instance, const CostCapacityForest& forest, const OnlineResult& result,
                        const OnlineCheckOptions& options = {}, OnlineCheckStats* stats = nullptr);

struct ChargeIntegrals {
  Rational with_extensions;  ///< ∫ Σ r̃(J(t) ∪ H(t))
  Rational jobs_only;        ///< ∫ Σ r̃(J(t))
};

/// Exact integrals of the total charge with and without the extend_d copies H.
ChargeIntegrals charge_integrals(const Instance& instance, const CostCapacityForest& forest, const Rational& d);

}  // namespace bshm
