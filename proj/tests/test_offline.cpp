#include "bshm/generator.hpp"
#include "bshm/offline.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace bshm;
using bshm::test::job;
using bshm::test::q;

namespace {

bool below(const CostCapacityForest& f, TypeIndex node, TypeIndex root) {
  const auto& up = f.ancestors(node);
  return std::find(up.begin(), up.end(), root) != up.end();
}

// The type sweep transcribed line by line, probing segment midpoints.
std::vector<TypeIndex> transcribed_assignment(const Instance& inst, const CostCapacityForest& f) {
  const auto& jobs = inst.jobs();
  const auto& t = inst.types();
  std::set<Rational> points;
  for (const auto& j : jobs) {
    points.insert(j.start);
    points.insert(j.end);
  }
  std::vector<Rational> mids;
  for (auto it = points.begin(); std::next(it) != points.end(); ++it) mids.push_back((*it + *std::next(it)) / 2);

  std::vector<TypeIndex> out(jobs.size(), 0);
  for (TypeIndex z = t.size(); z >= 1; --z) {
    std::vector<std::size_t> r;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (out[j] == 0 && below(f, inst.exact_type(j), z)) r.push_back(j);
    }
    auto effective = [&](const Rational& m) {
      for (std::size_t j : r) {
        if (inst.exact_type(j) == z && jobs[j].active_at(m)) return true;
      }
      Rational c = 0;
      for (TypeIndex x = 1; x <= t.size(); ++x) {
        if (f.parent(x) != std::optional<TypeIndex>(z)) continue;
        Rational s = 0;
        for (std::size_t j : r) {
          if (jobs[j].active_at(m) && below(f, inst.exact_type(j), x)) s += jobs[j].size;
        }
        c += ceil(s / t.capacity(x)) * t.rate(x);
      }
      return 3 * c >= t.rate(z);
    };
    std::vector<std::size_t> joined;
    for (std::size_t j : r) {
      bool ok = inst.exact_type(j) == z;
      if (!ok) {
        ok = true;
        for (const auto& m : mids) {
          if (jobs[j].active_at(m) && !effective(m)) ok = false;
        }
      }
      if (ok) joined.push_back(j);
    }
    for (std::size_t j : joined) out[j] = z;
  }
  return out;
}

const MachineTypeTable unit_and_big = test::table({{"1", "1"}, {"100", "8"}});

}  // namespace

TEST(AssignTypes, SingleJobGoesToExactType) {
  Instance inst(unit_and_big, {job("a", "1/2", "0", "1")});
  auto a = assign_types(inst, build_forest(unit_and_big));
  EXPECT_EQ(a.type_of, std::vector<TypeIndex>{1});
  EXPECT_EQ(a.assigned[1], std::vector<std::size_t>{0});
}

TEST(AssignTypes, HeavyChildLoadLiftsJobs) {
  // Three unit jobs need three type-1 machines: c = 3 >= 8/3 throughout.
  Instance inst(unit_and_big, {job("a", "1", "0", "2"), job("b", "1", "0", "2"), job("c", "1", "0", "2")});
  auto f = build_forest(unit_and_big);
  auto a = assign_types(inst, f);
  EXPECT_EQ(a.type_of, (std::vector<TypeIndex>{2, 2, 2}));
  EXPECT_EQ(a.type_of, transcribed_assignment(inst, f));
}

TEST(AssignTypes, LightChildLoadKeepsJobsLow) {
  // Every job sees a segment where only two machines (cost 2 < 8/3) are needed.
  Instance inst(unit_and_big, {job("a", "1", "0", "2"), job("b", "1", "0", "2"), job("c", "1", "1", "3")});
  auto f = build_forest(unit_and_big);
  auto a = assign_types(inst, f);
  EXPECT_EQ(a.type_of, (std::vector<TypeIndex>{1, 1, 1}));
  EXPECT_EQ(a.type_of, transcribed_assignment(inst, f));
}

TEST(AssignTypes, ExactJobSpanMakesTypeEffective) {
  Instance inst(unit_and_big, {job("big", "50", "0", "4"), job("small", "1/2", "1", "2")});
  auto a = assign_types(inst, build_forest(unit_and_big));
  EXPECT_EQ(a.type_of, (std::vector<TypeIndex>{2, 2}));
  EXPECT_EQ(a.cost_effective[2].length(), q("4"));
}

TEST(AssignTypes, MatchesTranscriptionOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    spec.jobs = 4 + seed % 14;
    spec.table.count = 2 + seed % 4;
    spec.sizes = seed % 3 == 0 ? SizeDistribution::uniform : SizeDistribution::clustered;
    spec.horizon = 2 + seed % 6;
    auto inst = generate(spec);
    auto f = build_forest(inst.types());
    auto a = assign_types(inst, f);
    ASSERT_EQ(a.type_of, transcribed_assignment(inst, f)) << "seed " << seed;
  }
}

TEST(AssignTypes, IndependentOfJobOrder) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    spec.jobs = 12;
    auto inst = generate(spec);
    auto f = build_forest(inst.types());
    auto forward = assign_types(inst, f).type_of;
    std::vector<Job> reversed(inst.jobs().rbegin(), inst.jobs().rend());
    auto backward = assign_types(Instance(inst.types(), reversed), f).type_of;
    std::reverse(backward.begin(), backward.end());
    EXPECT_EQ(forward, backward) << "seed " << seed;
  }
}

TEST(PackHomogeneous, Examples) {
  std::vector<Job> together{job("a", "1/4", "0", "3"), job("b", "1/2", "1", "2"), job("c", "1/4", "2", "5")};
  for (auto policy : {PackPolicy::longest_first, PackPolicy::by_arrival}) {
    EXPECT_EQ(pack_homogeneous(together, q("1"), policy).machine_count, 1u);
  }
  std::vector<Job> disjoint{job("a", "1", "0", "1"), job("b", "1", "1", "2"), job("c", "1", "2", "3")};
  for (auto policy : {PackPolicy::longest_first, PackPolicy::by_arrival}) {
    auto p = pack_homogeneous(disjoint, q("1"), policy);
    EXPECT_EQ(p.machine_count, 1u);
    EXPECT_EQ(p.machine_of, (std::vector<std::size_t>{0, 0, 0}));
  }
  std::vector<Job> oversize{job("a", "3/2", "0", "1")};
  EXPECT_THROW(pack_homogeneous(oversize, q("1"), PackPolicy::by_arrival), ValidationError);
}

TEST(PackHomogeneous, FeasibleAndAboveVolumeBound) {
  Rng rng(17);
  for (int round = 0; round < 300; ++round) {
    std::vector<Job> jobs;
    std::size_t n = 1 + uniform_int(rng, 0, 15);
    for (std::size_t i = 0; i < n; ++i) {
      Rational start(uniform_int(rng, 0, 20), 2);
      Rational end = start + Rational(1 + uniform_int(rng, 0, 9)) / 2;
      jobs.push_back({"j" + std::to_string(i), Rational(1 + uniform_int(rng, 0, 11)) / 12, start, end});
    }
    auto policy = round % 2 ? PackPolicy::by_arrival : PackPolicy::longest_first;
    auto p = pack_homogeneous(jobs, q("1"), policy);
    for (const auto& seg : Timeline::of(jobs).segments()) {
      std::vector<Rational> load(p.machine_count, 0);
      std::set<std::size_t> busy;
      Rational total = 0;
      for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (!jobs[j].active_at(seg.lo)) continue;
        load[p.machine_of[j]] += jobs[j].size;
        busy.insert(p.machine_of[j]);
        total += jobs[j].size;
      }
      for (const auto& l : load) ASSERT_LE(l, 1);
      ASSERT_GE(Rational(busy.size()), ceil(total));
    }
  }
}

TEST(AlgOffline, EmptyAndSingle) {
  auto f = build_forest(unit_and_big);
  EXPECT_EQ(alg_offline(Instance(unit_and_big, {}), f).cost, 0);
  auto single = alg_offline(Instance(unit_and_big, {job("a", "3", "1", "7/2")}), f);
  EXPECT_EQ(single.cost, q("20"));
  EXPECT_EQ(single.schedule.machine_count(), 1u);
}

TEST(AlgOffline, InvariantsOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    spec.jobs = 5 + seed % 16;
    spec.table.count = 2 + seed % 4;
    spec.sizes = seed % 2 ? SizeDistribution::clustered : SizeDistribution::bulky;
    auto inst = generate(spec);
    auto f = build_forest(inst.types());
    OfflineOptions options;
    options.with_opt1 = seed % 4 == 0;
    options.solver.max_nodes = 200'000;
    auto result = alg_offline(inst, f, options);
    auto found = check_offline(inst, f, result);
    ASSERT_TRUE(found.empty()) << "seed " << seed << ": " << found.front().check << " " << found.front().detail;
    EXPECT_EQ(result.cost, schedule_cost(result.schedule, inst));
  }
}

TEST(AlgOffline, CheckerCatchesBrokenSchedule) {
  Instance inst(unit_and_big, {job("a", "1", "0", "2"), job("b", "1", "0", "2")});
  auto f = build_forest(unit_and_big);
  auto result = alg_offline(inst, f);
  // Put both unit jobs on one type-1 machine.
  result.schedule.placements[1] = result.schedule.placements[0];
  auto found = check_offline(inst, f, result);
  ASSERT_FALSE(found.empty());
}
