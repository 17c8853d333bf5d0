#include "bshm/generator.hpp"
#include "bshm/instance_io.hpp"
#include "bshm/report.hpp"
#include "bshm/verify.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

using namespace bshm;
using bshm::test::q;

TEST(Generator, SameSeedSameInstance) {
  GeneratorSpec spec{.seed = 9, .jobs = 14, .sizes = SizeDistribution::uniform};
  EXPECT_EQ(instance_to_json(generate(spec)), instance_to_json(generate(spec)));
  spec.seed = 10;
  auto other = generate(spec);
  spec.seed = 9;
  EXPECT_NE(instance_to_json(generate(spec)), instance_to_json(other));
}

TEST(Generator, LengthsAndStarts) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GeneratorSpec spec{.seed = seed, .jobs = 10, .mu = Rational(1 + seed % 4), .horizon = 6};
    auto inst = generate(spec);
    EXPECT_EQ(mu(inst.jobs()), spec.mu);
    for (const auto& j : inst.jobs()) {
      EXPECT_GE(j.length(), 1);
      EXPECT_LE(j.length(), spec.mu);
      EXPECT_TRUE(is_integer(4 * j.start));
      EXPECT_GE(j.start, 0);
      EXPECT_LE(j.start, spec.horizon);
    }
  }
  auto flat = generate({.seed = 2, .jobs = 12, .mu = 1});
  for (const auto& j : flat.jobs()) EXPECT_EQ(j.length(), 1);
}

TEST(Generator, TypeTableShape) {
  Rng rng(6);
  for (int round = 0; round < 200; ++round) {
    TypeTableSpec spec{.count = 1 + static_cast<std::size_t>(round % 8)};
    auto t = random_type_table(rng, spec);
    ASSERT_EQ(t.size(), spec.count);
    EXPECT_EQ(t.capacity(1), 1);
    EXPECT_TRUE(t.rates_are_powers_of_eight());
    for (TypeIndex z = 2; z <= t.size(); ++z) {
      Rational growth = t.capacity(z) / t.capacity(z - 1);
      EXPECT_TRUE(is_integer(growth));
      EXPECT_GE(growth, spec.growth_min);
      EXPECT_LE(growth, spec.growth_max);
      Rational step = t.rate(z) / t.rate(z - 1);
      EXPECT_TRUE(step == 8 || step == 64);
    }
  }
}

TEST(Generator, SizesLandOnTheirType) {
  Rng rng(12);
  auto t = random_type_table(rng, {.count = 6});
  for (TypeIndex z = 1; z <= t.size(); ++z) {
    for (int k = 0; k < 50; ++k) {
      auto s = random_size_for_type(rng, t, z);
      EXPECT_EQ(exact_machine_type(s, t), z);
      auto b = random_size_for_type(rng, t, z, true);
      EXPECT_EQ(exact_machine_type(b, t), z);
      EXPECT_GT(2 * b, t.capacity(z));
    }
  }
}

TEST(Generator, SkewCrowdsLowTypes) {
  auto count_low = [](unsigned skew) {
    std::size_t low = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      auto inst = generate({.seed = seed, .jobs = 20, .type_skew = skew});
      for (TypeIndex z : inst.exact_types()) low += z == 1;
    }
    return low;
  };
  EXPECT_GT(count_low(3), count_low(0));
}

TEST(Generator, RejectsBadSpecs) {
  EXPECT_THROW(generate({.mu = Rational(1, 2)}), ValidationError);
  EXPECT_THROW(generate({.horizon = -1}), ValidationError);
  EXPECT_THROW(generate({.table = {.count = 0}}), ValidationError);
  EXPECT_THROW(generate({.table = {.growth_min = 1}}), ValidationError);
  EXPECT_THROW(generate({.table = {.rate_step_min = 3, .rate_step_max = 2}}), ValidationError);
  Rng rng(1);
  EXPECT_THROW(uniform_int(rng, 5, 4), ValidationError);
}

TEST(UniformInt, CoversRangeEvenly) {
  Rng rng(3);
  std::vector<int> hits(6, 0);
  for (int i = 0; i < 60000; ++i) ++hits[uniform_int(rng, 0, 5)];
  for (int h : hits) {
    EXPECT_GT(h, 9500);
    EXPECT_LT(h, 10500);
  }
}

TEST(Verify, ThirteenTypesWithoutJobs) {
  std::vector<NamedInstance> set{{"empty", Instance(test::thirteen_types(), {})}};
  auto report = verify(set, {.level = VerifyLevel::full});
  EXPECT_TRUE(report.ok()) << report.to_text();
  EXPECT_EQ(report.instances, 1u);
}

TEST(Verify, RandomInstancesPass) {
  std::vector<NamedInstance> set;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    set.push_back({"seed" + std::to_string(seed), generate({.seed = seed, .jobs = 3 + seed % 4, .table = {.count = 3}})});
  }
  auto report = verify(set, {.level = VerifyLevel::full});
  EXPECT_TRUE(report.ok()) << report.to_text();
  EXPECT_GT(report.checks.at("oracle.witness_cost").evaluated, 0u);
  auto json = report.to_json();
  EXPECT_EQ(json, verify(set, {.level = VerifyLevel::full}).to_json());
}

TEST(VerifyReport, RecordsFirstFailure) {
  VerifyReport report;
  report.absorb({"a.check", "b.check"}, {}, "x");
  EXPECT_TRUE(report.ok());
  report.absorb({"a.check"}, {{"a.check", "broken"}, {"a.check", "again"}}, "y");
  EXPECT_FALSE(report.ok());
  EXPECT_EQ(report.checks["a.check"].evaluated, 2u);
  EXPECT_EQ(report.checks["a.check"].failed, 2u);
  EXPECT_NE(report.checks["a.check"].first_failure.find("y"), std::string::npos);
  EXPECT_EQ(report.checks["b.check"].failed, 0u);
}

TEST(Report, CsvAndSummary) {
  std::vector<RatioRow> rows;
  for (std::uint64_t seed : {3u, 1u, 2u}) {
    rows.push_back(ratio_row("i" + std::to_string(seed), generate({.seed = seed, .jobs = 4, .table = {.count = 3}})));
  }
  auto csv = ratio_csv(rows);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("instance,jobs,types,mu,offline,online,opt1_lb,opt2,", 0), 0u);
  std::vector<std::string> names;
  while (std::getline(in, line)) {
    names.push_back(line.substr(0, line.find(',')));
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 14);
  }
  EXPECT_EQ(names, (std::vector<std::string>{"i1", "i2", "i3"}));

  auto summary = ratio_summary(rows);
  EXPECT_EQ(summary["instances"], 3);
  EXPECT_FALSE(summary["max_offline_over_opt2"].is_null());
  EXPECT_TRUE(ratio_summary({})["max_offline_over_cn"].is_null());
  EXPECT_NE(plot_script("out.csv").find("out.csv"), std::string::npos);
}

TEST(Report, OracleFieldsEmptyBeyondLimits) {
  auto row = ratio_row("big", generate({.seed = 4, .jobs = 12}));
  EXPECT_FALSE(row.opt2.has_value());
  EXPECT_GE(row.online_cost, *row.opt1_lower_bound);
}
