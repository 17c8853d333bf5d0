#include "bshm/instance_io.hpp"
#include "bshm/model.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bshm;
using bshm::test::job;
using bshm::test::q;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(q("6/4"), Rational(3, 2));
  EXPECT_EQ(q("-7"), Rational(-7));
  EXPECT_EQ(q("12.5"), Rational(25, 2));
  EXPECT_EQ(q("-0.125"), Rational(-1, 8));
  EXPECT_THROW(q("1/0"), ValidationError);
  EXPECT_THROW(q("abc"), ValidationError);
  EXPECT_THROW(q(""), ValidationError);
  EXPECT_EQ(to_string(q("10/4")), "5/2");
  EXPECT_EQ(to_string(q("8")), "8");
}

TEST(Rational, FloorAndCeilOfNegatives) {
  EXPECT_EQ(floor(q("-3/2")), Rational(-2));
  EXPECT_EQ(ceil(q("-3/2")), Rational(-1));
  EXPECT_EQ(ceil(q("4")), Rational(4));
}

TEST(RoundRates, Examples) {
  EXPECT_EQ(round_up_to_power_of_eight(q("8")), q("8"));
  EXPECT_EQ(round_up_to_power_of_eight(q("3")), q("8"));
  EXPECT_EQ(round_up_to_power_of_eight(q("9")), q("64"));
  EXPECT_EQ(round_up_to_power_of_eight(q("1/10")), q("1/8"));
  EXPECT_EQ(round_up_to_power_of_eight(q("1")), q("1"));
  EXPECT_EQ(round_up_to_power_of_eight(q("1/8")), q("1/8"));
}

TEST(RoundRates, BracketAndIdempotenceOnRandomInputs) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    Rational c(static_cast<long>(rng() % 100000 + 1), static_cast<unsigned long>(rng() % 100000 + 1));
    Rational r = round_up_to_power_of_eight(c);
    EXPECT_TRUE(is_power_of_eight(r));
    EXPECT_LT(r / 8, c);
    EXPECT_LE(c, r);
    EXPECT_EQ(round_up_to_power_of_eight(r), r);
  }
}

TEST(RoundRates, RejectsNonPositive) {
  std::vector<Rational> bad{q("1"), q("0")};
  EXPECT_THROW(round_rates(bad), ValidationError);
}

TEST(PruneDominated, Examples) {
  std::vector<MachineType> same_capacity{{q("1"), q("8")}, {q("1"), q("4")}};
  auto a = prune_dominated(same_capacity);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a.rate(1), q("4"));

  std::vector<MachineType> bigger_cheaper{{q("1"), q("2")}, {q("5"), q("1")}};
  auto b = prune_dominated(bigger_cheaper);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b.capacity(1), q("5"));

  auto t1 = test::thirteen_types();
  EXPECT_EQ(prune_dominated(t1.entries()).entries().size(), 13u);
}

TEST(PruneDominated, OutputIsParetoFrontier) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    std::vector<MachineType> raw;
    std::size_t n = rng() % 8 + 1;
    for (std::size_t i = 0; i < n; ++i) raw.push_back({Rational(long(rng() % 20 + 1)), Rational(long(rng() % 20 + 1))});
    auto kept = prune_dominated(raw);
    ASSERT_FALSE(kept.empty());
    for (TypeIndex a = 1; a <= kept.size(); ++a) {
      for (TypeIndex b = 1; b <= kept.size(); ++b) {
        if (a != b) {
          EXPECT_FALSE(kept.capacity(a) <= kept.capacity(b) && kept.rate(a) >= kept.rate(b));
        }
      }
    }
    // Every raw type is dominated by (or equal to) some kept type.
    for (const auto& r : raw) {
      bool covered = false;
      for (const auto& k : kept.entries()) covered |= (r.capacity <= k.capacity && r.rate >= k.rate);
      EXPECT_TRUE(covered);
    }
  }
}

TEST(ExactMachineType, Examples) {
  auto t1 = test::thirteen_types();
  EXPECT_EQ(exact_machine_type(q("12"), t1), 9u);
  EXPECT_EQ(exact_machine_type(q("12.5"), t1), 10u);
  EXPECT_EQ(exact_machine_type(q("1/300000"), t1), 1u);
  EXPECT_THROW(exact_machine_type(q("100001"), t1), InfeasibleJobError);
}

TEST(ExactMachineType, Monotone) {
  auto t1 = test::thirteen_types();
  TypeIndex last = 1;
  for (long k = 1; k <= 4000; ++k) {
    Rational size = Rational(k * k) / 150;
    if (size > t1.max_capacity()) break;
    TypeIndex z = exact_machine_type(size, t1);
    EXPECT_GE(z, last);
    EXPECT_LE(size, t1.capacity(z));
    if (z > 1) {
      EXPECT_GT(size, t1.capacity(z - 1));
    }
    last = z;
  }
}

TEST(ActiveSet, HalfOpenAndSpanAndMu) {
  std::vector<Job> a{job("a", "1", "0", "2"), job("b", "1", "1", "3")};
  EXPECT_EQ(active_set(a, q("2")), std::vector<std::size_t>{1});
  EXPECT_EQ(total_size(a, q("1")), q("2"));
  EXPECT_EQ(span_of(a), IntervalSet({{q("0"), q("3")}}));
  EXPECT_EQ(mu(a), q("1"));

  std::vector<Job> b{job("a", "1", "0", "1"), job("b", "1", "5", "7")};
  EXPECT_EQ(span_of(b), IntervalSet({{q("0"), q("1")}, {q("5"), q("7")}}));
  EXPECT_EQ(mu(b), q("2"));

  EXPECT_THROW(mu(std::vector<Job>{}), ValidationError);
}

TEST(Timeline, ActiveSetConstantInsideSegments) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 200; ++round) {
    std::vector<Job> jobs;
    for (int i = 0; i < 6; ++i) {
      long s = long(rng() % 20);
      jobs.push_back({"j" + std::to_string(i), Rational(1), Rational(s) / 2, Rational(s + 1 + long(rng() % 6)) / 2});
    }
    for (const auto& seg : Timeline::of(jobs).segments()) {
      auto left = active_set(jobs, seg.lo);
      for (int k = 1; k < 4; ++k) {
        Rational t = seg.lo + (seg.hi - seg.lo) * Rational(k) / 4;
        EXPECT_EQ(active_set(jobs, t), left);
      }
    }
  }
}

TEST(IntervalSet, NormalizesAndIntersects) {
  IntervalSet s({{q("3"), q("4")}, {q("0"), q("1")}, {q("1/2"), q("2")}, {q("5"), q("5")}});
  ASSERT_EQ(s.pieces().size(), 2u);
  EXPECT_EQ(s.length(), q("3"));
  EXPECT_TRUE(s.contains(q("3")));
  EXPECT_FALSE(s.contains(q("2")));
  EXPECT_EQ(s.intersect({q("1"), q("7/2")}).length(), q("3/2"));
}

TEST(Instance, ValidatesJobs) {
  auto types = test::table({{"1", "1"}, {"4", "8"}});
  EXPECT_THROW(Instance(types, {job("a", "5", "0", "1")}), InfeasibleJobError);
  EXPECT_THROW(Instance(types, {job("a", "1", "1", "1")}), ValidationError);
  EXPECT_THROW(Instance(types, {job("a", "0", "0", "1")}), ValidationError);
  EXPECT_THROW(Instance(types, {job("a", "1", "0", "1"), job("a", "1", "2", "3")}), ValidationError);
  EXPECT_NO_THROW(Instance(types, {job("a", "1", "0", "1"), job("b", "1", "0", "3")}));
  EXPECT_THROW(Instance(types, {job("a", "1", "0", "1"), job("b", "1", "0", "3")}, true), ValidationError);
}

TEST(Instance, CanonicalizesInputs) {
  // The two-argument GMP constructor leaves 6/4 unreduced.
  MachineTypeTable t({{Rational(6, 4), Rational(16, 2)}});
  EXPECT_EQ(t.capacity(1).get_den(), 2);
  EXPECT_EQ(t.rate(1).get_den(), 1);
  Instance inst(t, {{"a", Rational(2, 4), Rational(0, 3), Rational(4, 2)}});
  EXPECT_EQ(inst.jobs()[0].size.get_den(), 2);
  EXPECT_EQ(inst.jobs()[0].end, 2);
}

TEST(InstanceIo, RoundTripAndRounding) {
  auto doc = nlohmann::json::parse(R"({
    "types": [{"capacity": 1, "rate": "3"}, {"capacity": "5/2", "rate": 5}, {"capacity": 10, "rate": 20}],
    "jobs": [{"id": "x", "size": "2", "start": 0, "end": "1.5"}]
  })");
  // Rates 3 and 5 both round to 8, so (1, 8) is dominated by (5/2, 8).
  Instance inst = parse_instance(doc);
  ASSERT_EQ(inst.types().size(), 2u);
  EXPECT_EQ(inst.types().rate(1), q("8"));
  EXPECT_EQ(inst.types().rate(2), q("64"));
  EXPECT_EQ(inst.exact_type(0), 1u);

  Instance raw = parse_instance(doc, {.round_rates = false});
  EXPECT_EQ(raw.types().size(), 3u);

  Instance again = parse_instance(instance_to_json(inst));
  EXPECT_EQ(instance_to_json(again), instance_to_json(inst));
}

TEST(InstanceIo, RejectsFloats) {
  auto doc = nlohmann::json::parse(R"({"types": [{"capacity": 1.5, "rate": 1}], "jobs": []})");
  EXPECT_THROW(parse_instance(doc), ValidationError);
}
