#pragma once

#include "bshm/errors.hpp"
#include "bshm/rational.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bshm {

/// Machine types are numbered 1..|M| in increasing capacity (and rate),
/// matching the usual mathematical presentation of the problem.
using TypeIndex = std::size_t;

/// Dense per-type storage addressed by a 1-based TypeIndex.
template <class T>
class TypeVector {
 public:
  TypeVector() = default;
  explicit TypeVector(std::size_t type_count, const T& init = T()) : values_(type_count, init) {}

  T& operator[](TypeIndex z) { return values_[z - 1]; }
  const T& operator[](TypeIndex z) const { return values_[z - 1]; }

  std::size_t size() const { return values_.size(); }
  auto begin() { return values_.begin(); }
  auto end() { return values_.end(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const TypeVector&, const TypeVector&) = default;

 private:
  std::vector<T> values_;
};

struct Job {
  std::string id;
  Rational size;
  Rational start;
  Rational end;

  Rational length() const { return end - start; }
  /// Half-open: active on [start, end).
  bool active_at(const Rational& t) const { return start <= t && t < end; }
};

struct MachineType {
  Rational capacity;
  Rational rate;
};

/// Pareto-pruned machine types: capacities and rates both strictly increasing.
class MachineTypeTable {
 public:
  MachineTypeTable() = default;
  /// Throws ValidationError unless capacities and rates are positive and
  /// strictly increasing.
  explicit MachineTypeTable(std::vector<MachineType> entries);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Rational& capacity(TypeIndex z) const { return entries_.at(z - 1).capacity; }
  const Rational& rate(TypeIndex z) const { return entries_.at(z - 1).rate; }
  /// Cost rate per unit of capacity, r_z / g_z.
  Rational ratio(TypeIndex z) const { return rate(z) / capacity(z); }
  const Rational& max_capacity() const { return entries_.back().capacity; }
  const std::vector<MachineType>& entries() const { return entries_; }

  bool rates_are_powers_of_eight() const;

 private:
  std::vector<MachineType> entries_;
};

/// Rounds each positive rate c up to the power of eight r with r/8 < c <= r.
std::vector<Rational> round_rates(std::span<const Rational> raw_rates);

/// Drops every type dominated by another (no smaller capacity and no larger
/// rate). Equal pairs keep a single copy.
MachineTypeTable prune_dominated(std::span<const MachineType> types);

/// Lowest-indexed type whose capacity holds `size`.
TypeIndex exact_machine_type(const Rational& size, const MachineTypeTable& types);

struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool empty() const { return hi <= lo; }
  bool contains(const Rational& t) const { return lo <= t && t < hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Union of disjoint half-open intervals, kept sorted and merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  /// Accepts overlapping / unsorted pieces and normalizes them; empty pieces are dropped.
  explicit IntervalSet(std::vector<Interval> pieces);

  const std::vector<Interval>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  bool contains(const Rational& t) const;
  Rational length() const;
  IntervalSet intersect(const Interval& window) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> pieces_;
};

/// Indices of jobs with start <= t < end.
std::vector<std::size_t> active_set(std::span<const Job> jobs, const Rational& t);
Rational total_size(std::span<const Job> jobs, const Rational& t);
IntervalSet span_of(std::span<const Job> jobs);
/// Max/min job length. Throws ValidationError on an empty job set.
Rational mu(std::span<const Job> jobs);

/// Sorted, deduplicated time points; the active set is constant on each
/// segment between consecutive breakpoints.
class Timeline {
 public:
  Timeline() = default;
  explicit Timeline(std::vector<Rational> points);
  static Timeline of(std::span<const Job> jobs);

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  /// [b_0,b_1), [b_1,b_2), ...
  std::vector<Interval> segments() const;

 private:
  std::vector<Rational> breakpoints_;
};

struct LoadOptions {
  bool round_rates = true;
  /// Reject instances where two jobs share a start time.
  bool strict_release = false;
};

/// A validated problem instance. Jobs keep their file order, which doubles
/// as the release order among equal start times.
class Instance {
 public:
  Instance() = default;
  /// Validates jobs against an already-pruned table.
  Instance(MachineTypeTable types, std::vector<Job> jobs, bool strict_release = false);

  /// Rounds (optionally) and prunes raw types, then validates.
  static Instance from_raw(std::span<const MachineType> raw_types, std::vector<Job> jobs,
                           const LoadOptions& options = {});

  const MachineTypeTable& types() const { return types_; }
  const std::vector<Job>& jobs() const { return jobs_; }
  /// m(J) for each job, parallel to jobs().
  const std::vector<TypeIndex>& exact_types() const { return exact_types_; }
  TypeIndex exact_type(std::size_t job) const { return exact_types_[job]; }

 private:
  MachineTypeTable types_;
  std::vector<Job> jobs_;
  std::vector<TypeIndex> exact_types_;
};

}  // namespace bshm
