#include "bshm/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace bshm {

MachineTypeTable::MachineTypeTable(std::vector<MachineType> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ValidationError("machine type table is empty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto& e = entries_[i];
    e.capacity.canonicalize();
    e.rate.canonicalize();
    if (e.capacity <= 0 || e.rate <= 0) {
      throw ValidationError("machine type " + std::to_string(i + 1) + " has non-positive capacity or rate");
    }
    if (i > 0 && (e.capacity <= entries_[i - 1].capacity || e.rate <= entries_[i - 1].rate)) {
      throw ValidationError("machine types must have strictly increasing capacities and rates (type " +
                            std::to_string(i + 1) + ")");
    }
  }
}

bool MachineTypeTable::rates_are_powers_of_eight() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const MachineType& e) { return is_power_of_eight(e.rate); });
}

std::vector<Rational> round_rates(std::span<const Rational> raw_rates) {
  std::vector<Rational> out;
  out.reserve(raw_rates.size());
  for (const auto& c : raw_rates) out.push_back(round_up_to_power_of_eight(c));
  return out;
}

MachineTypeTable prune_dominated(std::span<const MachineType> types) {
  if (types.empty()) throw ValidationError("no machine types given");
  for (const auto& t : types) {
    if (t.capacity <= 0 || t.rate <= 0) throw ValidationError("machine capacity and rate must be positive");
  }
  std::vector<MachineType> sorted(types.begin(), types.end());
  // Largest capacity first; within a capacity, cheapest first.
  std::stable_sort(sorted.begin(), sorted.end(), [](const MachineType& a, const MachineType& b) {
    if (a.capacity != b.capacity) return a.capacity > b.capacity;
    return a.rate < b.rate;
  });
  std::vector<MachineType> frontier;
  for (const auto& t : sorted) {
    if (frontier.empty() || t.rate < frontier.back().rate) frontier.push_back(t);
  }
  std::reverse(frontier.begin(), frontier.end());
  return MachineTypeTable(std::move(frontier));
}

TypeIndex exact_machine_type(const Rational& size, const MachineTypeTable& types) {
  const auto& entries = types.entries();
  auto it = std::lower_bound(entries.begin(), entries.end(), size,
                             [](const MachineType& e, const Rational& s) { return e.capacity < s; });
  if (it == entries.end()) {
    throw InfeasibleJobError("job size " + to_string(size) + " exceeds the largest capacity " +
                             to_string(types.max_capacity()));
  }
  return static_cast<TypeIndex>(it - entries.begin()) + 1;
}

IntervalSet::IntervalSet(std::vector<Interval> pieces) {
  std::erase_if(pieces, [](const Interval& i) { return i.empty(); });
  std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (auto& p : pieces) {
    if (!pieces_.empty() && p.lo <= pieces_.back().hi) {
      if (p.hi > pieces_.back().hi) pieces_.back().hi = p.hi;
    } else {
      pieces_.push_back(std::move(p));
    }
  }
}

bool IntervalSet::contains(const Rational& t) const {
  return std::any_of(pieces_.begin(), pieces_.end(), [&](const Interval& i) { return i.contains(t); });
}

Rational IntervalSet::length() const {
  Rational total = 0;
  for (const auto& p : pieces_) total += p.length();
  return total;
}

IntervalSet IntervalSet::intersect(const Interval& window) const {
  std::vector<Interval> out;
  for (const auto& p : pieces_) {
    Interval cut{std::max(p.lo, window.lo), std::min(p.hi, window.hi)};
    if (!cut.empty()) out.push_back(std::move(cut));
  }
  return IntervalSet(std::move(out));
}

std::vector<std::size_t> active_set(std::span<const Job> jobs, const Rational& t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (jobs[i].active_at(t)) out.push_back(i);
  }
  return out;
}

Rational total_size(std::span<const Job> jobs, const Rational& t) {
  Rational total = 0;
  for (const auto& j : jobs) {
    if (j.active_at(t)) total += j.size;
  }
  return total;
}

IntervalSet span_of(std::span<const Job> jobs) {
  std::vector<Interval> pieces;
  pieces.reserve(jobs.size());
  for (const auto& j : jobs) pieces.push_back({j.start, j.end});
  return IntervalSet(std::move(pieces));
}

Rational mu(std::span<const Job> jobs) {
  if (jobs.empty()) throw ValidationError("mu is undefined for an empty job set");
  Rational lo = jobs.front().length();
  Rational hi = lo;
  for (const auto& j : jobs) {
    Rational len = j.length();
    if (len < lo) lo = len;
    if (len > hi) hi = len;
  }
  return hi / lo;
}

Timeline::Timeline(std::vector<Rational> points) : breakpoints_(std::move(points)) {
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
}

Timeline Timeline::of(std::span<const Job> jobs) {
  std::vector<Rational> points;
  points.reserve(2 * jobs.size());
  for (const auto& j : jobs) {
    points.push_back(j.start);
    points.push_back(j.end);
  }
  return Timeline(std::move(points));
}

std::vector<Interval> Timeline::segments() const {
  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) out.push_back({breakpoints_[i], breakpoints_[i + 1]});
  return out;
}

Instance::Instance(MachineTypeTable types, std::vector<Job> jobs, bool strict_release)
    : types_(std::move(types)), jobs_(std::move(jobs)) {
  if (types_.empty()) throw ValidationError("instance has no machine types");
  std::set<std::string> ids;
  std::set<Rational> starts;
  exact_types_.reserve(jobs_.size());
  for (auto& j : jobs_) {
    j.size.canonicalize();
    j.start.canonicalize();
    j.end.canonicalize();
    if (!ids.insert(j.id).second) throw ValidationError("duplicate job id '" + j.id + "'");
    if (j.size <= 0) throw ValidationError("job '" + j.id + "' has non-positive size");
    if (j.start >= j.end) throw ValidationError("job '" + j.id + "' has an empty interval (start >= end)");
    if (strict_release && !starts.insert(j.start).second) {
      throw ValidationError("job '" + j.id + "' shares its start time " + to_string(j.start) +
                            " with an earlier job (strict release order)");
    }
    try {
      exact_types_.push_back(exact_machine_type(j.size, types_));
    } catch (const InfeasibleJobError& e) {
      throw InfeasibleJobError("job '" + j.id + "': " + e.what());
    }
  }
}

Instance Instance::from_raw(std::span<const MachineType> raw_types, std::vector<Job> jobs,
                            const LoadOptions& options) {
  std::vector<MachineType> types(raw_types.begin(), raw_types.end());
  if (options.round_rates) {
    for (auto& t : types) t.rate = round_up_to_power_of_eight(t.rate);
  }
  return Instance(prune_dominated(types), std::move(jobs), options.strict_release);
}

}  // namespace bshm
