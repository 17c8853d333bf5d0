#include "bshm/generator.hpp"
#include "bshm/oracle.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <map>
#include <optional>

using namespace bshm;
using bshm::test::job;
using bshm::test::q;

namespace {

// Every job picks any (type, slot) pair with no symmetry reduction.
Rational unreduced_optimum(const Instance& inst) {
  const auto& jobs = inst.jobs();
  const auto& t = inst.types();
  const std::size_t n = jobs.size();
  const std::size_t choices = t.size() * n;
  std::vector<std::size_t> pick(n, 0);
  std::optional<Rational> best;
  const auto breakpoints = Timeline::of(jobs).breakpoints();
  for (;;) {
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t j = 0; j < n; ++j) groups[pick[j]].push_back(j);
    bool ok = true;
    Rational cost = 0;
    for (const auto& [slot, members] : groups) {
      TypeIndex z = slot / n + 1;
      for (const auto& b : breakpoints) {
        Rational load = 0;
        for (std::size_t j : members) {
          if (jobs[j].active_at(b)) load += jobs[j].size;
        }
        if (load > t.capacity(z)) ok = false;
      }
      std::vector<Interval> pieces;
      for (std::size_t j : members) pieces.push_back({jobs[j].start, jobs[j].end});
      cost += IntervalSet(pieces).length() * t.rate(z);
    }
    if (ok && (!best || cost < *best)) best = cost;
    std::size_t k = 0;
    while (k < n && pick[k] == choices - 1) pick[k++] = 0;
    if (k == n) break;
    ++pick[k];
  }
  return best.value_or(Rational(0));
}

const MachineTypeTable unit_and_big = test::table({{"1", "1"}, {"100", "8"}});

}  // namespace

TEST(Opt2, Examples) {
  EXPECT_EQ(opt2(Instance(unit_and_big, {})).cost, 0);

  Instance disjoint(unit_and_big, {job("a", "1", "0", "1"), job("b", "1", "2", "3")});
  EXPECT_EQ(opt2(disjoint).cost, q("2"));

  auto pair = test::table({{"1", "1"}});
  Instance bulky(pair, {job("a", "3/4", "0", "2"), job("b", "2/3", "1", "3")});
  EXPECT_EQ(opt2(bulky).cost, q("4"));

  // Two half jobs share one machine; their union is [0, 3).
  Instance shared(pair, {job("a", "1/2", "0", "2"), job("b", "1/2", "1", "3")});
  EXPECT_EQ(opt2(shared).cost, q("3"));
}

TEST(Opt2, MatchesUnreducedEnumeration) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    spec.jobs = 2 + seed % 3;
    spec.table.count = 1 + seed % 3;
    spec.table.growth_max = 6;
    spec.horizon = 3;
    spec.sizes = seed % 2 ? SizeDistribution::uniform : SizeDistribution::bulky;
    auto inst = generate(spec);
    EXPECT_EQ(opt2(inst).cost, unreduced_optimum(inst)) << "seed " << seed;
  }
}

TEST(Opt2, WitnessAndLowerBound) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    spec.jobs = 2 + seed % 5;
    spec.table.count = 1 + seed % 3;
    auto inst = generate(spec);
    auto r = opt2(inst);
    EXPECT_TRUE(check_schedule(r.witness, inst).empty()) << "seed " << seed;
    EXPECT_EQ(schedule_cost(r.witness, inst), r.cost);
    EXPECT_LE(opt1_lower_bound(inst), r.cost) << "seed " << seed;
  }
}

TEST(Opt2, BudgetExhaustionCarriesBestFound) {
  auto inst = generate({.seed = 5, .jobs = 9});
  try {
    opt2(inst, {.max_nodes = 50});
    FAIL() << "expected the budget to run out";
  } catch (const OracleBudgetExceeded& e) {
    ASSERT_TRUE(e.best().has_value());
    EXPECT_TRUE(check_schedule(e.best()->witness, inst).empty());
    EXPECT_GE(e.best()->cost, opt2(inst).cost);
  }
}

TEST(Opt1LowerBound, SingleJob) {
  Instance inst(unit_and_big, {job("a", "3", "1", "7/2")});
  EXPECT_EQ(opt1_lower_bound(inst), q("20"));
}
