#include "bshm/online.hpp"

#include <algorithm>
#include <map>

namespace bshm {

OnlineSimulator::OnlineSimulator(const MachineTypeTable& types, const CostCapacityForest& forest)
    : types_(types), forest_(forest), open_machines_(types.size()), open_(types.size(), 0) {}

bool OnlineSimulator::may_open(TypeIndex z) const {
  for (TypeIndex above : forest_.ancestors(z)) {
    if (above == z) continue;
    Rational below = 0;
    for (TypeIndex x : forest_.subtree(above)) {
      if (x != above) below += open_[x] * types_.rate(x);
    }
    if (!(below < types_.rate(above) - types_.rate(z))) return false;
  }
  return true;
}

std::size_t OnlineSimulator::place(std::size_t index, const Rational& size, TypeIndex exact) {
  if (schedule_.placements.size() <= index) {
    schedule_.placements.resize(index + 1);
    job_sizes_.resize(index + 1);
  }
  job_sizes_[index] = size;
  TypeIndex z = exact;
  for (;;) {
    for (std::size_t id : open_machines_[z]) {
      Machine& m = machines_[id];
      if (m.load + size <= types_.capacity(z)) {
        m.load += size;
        ++m.active;
        schedule_.placements[index] = {z, id};
        return id;
      }
    }
    if (forest_.is_root(z) || may_open(z)) {
      std::size_t id = machines_.size();
      machines_.push_back({id, z, size, 1});
      open_machines_[z].push_back(id);
      ++open_[z];
      schedule_.machine_types.push_back(z);
      schedule_.placements[index] = {z, id};
      return id;
    }
    z = *forest_.parent(z);
  }
}

void OnlineSimulator::finish(std::size_t index) {
  auto [z, id] = schedule_.placements.at(index);
  Machine& m = machines_[id];
  m.load -= job_sizes_[index];
  if (--m.active == 0) {
    auto& list = open_machines_[z];
    list.erase(std::find(list.begin(), list.end(), id));
    --open_[z];
  }
}

Violations OnlineSimulator::check_open_budget() const {
  Violations out;
  for (TypeIndex z = 1; z <= types_.size(); ++z) {
    Rational below = 0;
    for (TypeIndex x : forest_.subtree(z)) {
      if (x != z) below += open_[x] * types_.rate(x);
    }
    if (below >= types_.rate(z)) {
      out.push_back({"online.open_budget", "open machines below type " + std::to_string(z) + " cost " +
                                               to_string(below) + " >= r=" + to_string(types_.rate(z))});
    }
  }
  return out;
}

OnlineResult simulate(const Instance& instance, const CostCapacityForest& forest) {
  const auto& jobs = instance.jobs();
  const auto& types = instance.types();
  OnlineSimulator sim(types, forest);
  OnlineResult out;

  // time -> (ending jobs, starting jobs), both in file order
  std::map<Rational, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> events;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    events[jobs[j].start].second.push_back(j);
    events[jobs[j].end].first.push_back(j);
  }

  auto record = [&](const std::string& when) {
    for (auto& v : sim.check_open_budget()) {
      v.detail += " after " + when;
      out.budget_violations.push_back(std::move(v));
    }
  };
  std::vector<std::pair<Rational, TypeVector<std::size_t>>> snapshots;
  for (const auto& [t, batch] : events) {
    for (std::size_t j : batch.first) {
      sim.finish(j);
      record("end of " + jobs[j].id + " at t=" + to_string(t));
    }
    for (std::size_t j : batch.second) {
      sim.place(j, jobs[j].size, instance.exact_type(j));
      record("release of " + jobs[j].id + " at t=" + to_string(t));
    }
    snapshots.emplace_back(t, sim.open_counts());
  }

  out.schedule = sim.schedule();
  out.cost = 0;
  for (std::size_t i = 0; i + 1 < snapshots.size(); ++i) {
    SeriesRow row{{snapshots[i].first, snapshots[i + 1].first}, snapshots[i].second, Rational(0)};
    for (TypeIndex z = 1; z <= types.size(); ++z) row.cost_rate += row.open[z] * types.rate(z);
    out.cost += row.segment.length() * row.cost_rate;
    out.series.push_back(std::move(row));
  }
  return out;
}

std::vector<ArtificialJob> artificial_jobs(const Instance& instance, ArtificialKind kind, const Rational& d) {
  const auto& jobs = instance.jobs();
  std::vector<ArtificialJob> out;
  if (jobs.empty()) return out;
  const Rational ratio = mu(jobs);
  Rational extension;
  switch (kind) {
    case ArtificialKind::same: break;
    case ArtificialKind::extend_mu: extension = ratio; break;
    case ArtificialKind::extend_two_mu: extension = 2 * ratio; break;
    case ArtificialKind::extend_d:
      if (d < ratio) throw ValidationError("extension " + to_string(d) + " is below mu=" + to_string(ratio));
      extension = d;
      break;
  }
  Rational len_min = jobs.front().length();
  for (const auto& j : jobs) len_min = std::min(len_min, j.length());
  const IntervalSet span = span_of(jobs);

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& j = jobs[i];
    IntervalSet active = kind == ArtificialKind::same
                             ? IntervalSet({{j.start, j.end}})
                             : span.intersect({j.end, j.end + extension * len_min});
    out.push_back({i, kind, j.size, instance.exact_type(i), std::move(active)});
  }
  return out;
}

namespace {

std::vector<Interval> refined_segments(const Instance& instance, const std::vector<ArtificialJob>& extra) {
  std::vector<Rational> points = Timeline::of(instance.jobs()).breakpoints();
  for (const auto& a : extra) {
    for (const auto& piece : a.active.pieces()) {
      points.push_back(piece.lo);
      points.push_back(piece.hi);
    }
  }
  return Timeline(std::move(points)).segments();
}

}  // namespace

Violations check_online(const Instance& instance, const CostCapacityForest& forest, const OnlineResult& result,
                        const OnlineCheckOptions& options, OnlineCheckStats* stats) {
  Violations out = result.budget_violations;
  for (auto& v : check_schedule(result.schedule, instance)) out.push_back(std::move(v));
  const auto& jobs = instance.jobs();
  const auto& types = instance.types();
  if (jobs.empty()) return out;

  Rational recomputed = schedule_cost(result.schedule, instance);
  if (recomputed != result.cost) {
    out.push_back({"online.cost_consistent", "series cost " + to_string(result.cost) + " != machine cost " +
                                                 to_string(recomputed)});
  }

  std::vector<ArtificialJob> fill;
  for (auto kind : {ArtificialKind::same, ArtificialKind::extend_mu, ArtificialKind::extend_two_mu}) {
    auto part = artificial_jobs(instance, kind);
    fill.insert(fill.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }

  OnlineCheckStats local;
  for (const auto& seg : refined_segments(instance, fill)) {
    const Rational& t = seg.lo;
    auto active = active_set(jobs, t);
    if (active.empty()) continue;
    ++local.points;
    const std::string at = " at t=" + to_string(t);
    auto open = busy_machines_at(result.schedule, instance, t);

    TypeVector<Rational> hosted(types.size(), Rational(0));
    for (std::size_t j : active) hosted[result.schedule.placements[j].type] += jobs[j].size;
    std::vector<const ArtificialJob*> fill_now;
    for (const auto& a : fill) {
      if (a.active.contains(t)) fill_now.push_back(&a);
    }
    auto fill_in = [&](TypeIndex z) {
      Rational total = 0;
      for (const auto* a : fill_now) {
        if (forest.in_subtree(a->exact_type, z)) total += a->size;
      }
      return total;
    };

    TypeIndex top = 0;
    for (TypeIndex z = 1; z <= types.size(); ++z) {
      if (open[z] > 0) top = z;
    }

    for (TypeIndex z : forest.t_set(top)) {
      if (open[z] > 1 && hosted[z] + fill_in(z) <= (open[z] - 1) * types.capacity(z)) {
        out.push_back({"online.fill_multi", "type " + std::to_string(z) + " with " + std::to_string(open[z]) +
                                                " open machines is not filled" + at});
      }
    }

    bool single_top = open[top] == 1;
    for (std::size_t j : active) {
      if (result.schedule.placements[j].type == top && instance.exact_type(j) >= top) single_top = false;
    }
    if (single_top) {
      for (std::size_t hat : active) {
        if (result.schedule.placements[hat].type != top) continue;
        auto open_then = busy_machines_at(result.schedule, instance, jobs[hat].start);
        for (TypeIndex z : forest.children(top)) {
          if (open_then[z] > 1 && hosted[z] + fill_in(z) <= (open_then[z] - 1) * types.capacity(z)) {
            out.push_back({"online.fill_children", "child type " + std::to_string(z) + " of the single top machine "
                                                       "is not filled (job " + jobs[hat].id + ")" + at});
          }
        }
      }
    }

    if (options.with_opt1) {
      auto combined = one_shot_jobs(instance, active);
      for (const auto* a : fill_now) combined.push_back({a->size, a->exact_type});
      Rational rate = 0;
      for (TypeIndex z = 1; z <= types.size(); ++z) rate += open[z] * types.rate(z);
      try {
        Rational opt = optimal_oneshot(combined, types, options.solver).cost(types);
        ++local.opt1_checked;
        if (rate > 5 * opt) {
          out.push_back({"online.opt1_bound", "open cost " + to_string(rate) + " > 5*" + to_string(opt) + at});
        }
        if (opt > 0 && rate / opt > local.max_opt1_ratio) local.max_opt1_ratio = rate / opt;
      } catch (const SearchSpaceExceeded&) {
        ++local.opt1_skipped;
      }
    }
  }
  if (stats) *stats = local;
  return out;
}

ChargeIntegrals charge_integrals(const Instance& instance, const CostCapacityForest& forest, const Rational& d) {
  ChargeIntegrals out{Rational(0), Rational(0)};
  const auto& jobs = instance.jobs();
  if (jobs.empty()) return out;
  auto copies = artificial_jobs(instance, ArtificialKind::extend_d, d);
  for (const auto& seg : refined_segments(instance, copies)) {
    const Rational& t = seg.lo;
    auto base = one_shot_jobs_at(instance, t);
    auto grown = base;
    for (const auto& c : copies) {
      if (c.active.contains(t)) grown.push_back({c.size, c.exact_type});
    }
    if (!base.empty()) out.jobs_only += seg.length() * charge(base, instance.types(), forest).total();
    if (!grown.empty()) out.with_extensions += seg.length() * charge(grown, instance.types(), forest).total();
  }
  return out;
}

}  // namespace bshm
