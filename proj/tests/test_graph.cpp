#include "bshm/generator.hpp"
#include "bshm/graph.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace bshm;
using V = std::vector<TypeIndex>;

namespace {

// Parent by direct scan of all higher types, taking the smallest qualifying index.
std::optional<TypeIndex> brute_parent(const MachineTypeTable& t, TypeIndex i) {
  std::set<TypeIndex> lower_ratio;
  for (TypeIndex j = 1; j <= t.size(); ++j) {
    if (j > i && t.rate(j) * t.capacity(i) < t.rate(i) * t.capacity(j)) lower_ratio.insert(j);
  }
  if (lower_ratio.empty()) return std::nullopt;
  return *lower_ratio.begin();
}

// Members of A_z found by walking parent pointers from every node.
std::set<TypeIndex> brute_subtree(const MachineTypeTable& t, TypeIndex z) {
  std::set<TypeIndex> out;
  for (TypeIndex i = 1; i <= t.size(); ++i) {
    for (std::optional<TypeIndex> cur = i; cur; cur = brute_parent(t, *cur)) {
      if (*cur == z) {
        out.insert(i);
        break;
      }
    }
  }
  return out;
}

}  // namespace

TEST(Forest, WorkedExampleFacts) {
  auto t = test::thirteen_types();
  auto f = build_forest(t);
  EXPECT_EQ(f.parent(10), std::optional<TypeIndex>(11));
  EXPECT_EQ(f.parent(11), std::optional<TypeIndex>(13));
  EXPECT_EQ(f.parent(7), std::optional<TypeIndex>(13));
  EXPECT_EQ(f.ancestors(10), (V{10, 11, 13}));
  EXPECT_EQ(f.children(11), (V{9, 10}));
  EXPECT_EQ(f.subtree(11), (V{8, 9, 10, 11}));
  EXPECT_EQ(f.younger_siblings(11), (V{7}));
  EXPECT_EQ(f.elder_siblings(11), (V{12}));
  EXPECT_EQ(f.t_set(10), (V{3, 5, 7, 9, 10}));
  EXPECT_EQ(f.roots(), (V{3, 5, 13}));
  EXPECT_EQ(f.lowest(11), 8u);
}

TEST(Forest, WorkedExampleMatchesBruteForceParents) {
  auto t = test::thirteen_types();
  auto f = build_forest(t);
  for (TypeIndex i = 1; i <= t.size(); ++i) EXPECT_EQ(f.parent(i), brute_parent(t, i)) << "type " << i;
  EXPECT_TRUE(check_forest(f, t).empty());
}

TEST(Forest, SingletonAndTwoRoots) {
  auto one = test::table({{"1", "1"}});
  auto f1 = build_forest(one);
  EXPECT_EQ(f1.ancestors(1), V{1});
  EXPECT_EQ(f1.t_set(1), V{1});
  EXPECT_EQ(f1.subtree(1), V{1});

  // Ratios 1 and 4: no higher type is cheaper per unit, so both are roots.
  auto two = test::table({{"1", "1"}, {"2", "8"}});
  auto f2 = build_forest(two);
  EXPECT_TRUE(f2.is_root(1));
  EXPECT_TRUE(f2.is_root(2));
  EXPECT_EQ(f2.t_set(2), (V{1, 2}));
  EXPECT_EQ(f2.younger_siblings(2), V{1});
  EXPECT_EQ(f2.elder_siblings(1), V{2});
}

TEST(Forest, OutOfRangeIndexThrows) {
  auto f = build_forest(test::thirteen_types());
  EXPECT_THROW(f.parent(0), ValidationError);
  EXPECT_THROW(f.t_set(14), ValidationError);
}

TEST(Forest, FromParentsRejectsCycles) {
  EXPECT_THROW(CostCapacityForest::from_parents({2, 1}), ValidationError);
  EXPECT_THROW(CostCapacityForest::from_parents({std::optional<TypeIndex>(5)}), ValidationError);
}

TEST(Forest, CorruptedParentLinkIsDetected) {
  auto t = test::thirteen_types();
  std::vector<std::optional<TypeIndex>> parents;
  auto f = build_forest(t);
  for (TypeIndex z = 1; z <= t.size(); ++z) parents.push_back(f.parent(z));
  parents[10 - 1] = 12;  // p(10) off by one
  auto bad = CostCapacityForest::from_parents(parents);
  auto found = check_forest(bad, t);
  std::set<std::string> names;
  for (const auto& v : found) names.insert(v.check);
  EXPECT_TRUE(names.count("forest.parent_rule"));
  EXPECT_TRUE(names.count("forest.consecutive_subtree") || names.count("forest.t_set_partition"));
}

TEST(Forest, RandomTablesSatisfyStructure) {
  Rng rng(2024);
  for (int round = 0; round < 300; ++round) {
    TypeTableSpec spec;
    spec.count = 3 + round % 13;
    auto t = random_type_table(rng, spec);
    auto f = build_forest(t);
    ASSERT_TRUE(check_forest(f, t).empty()) << check_forest(f, t).front().detail;
    for (TypeIndex z = 1; z <= t.size(); ++z) {
      EXPECT_EQ(f.parent(z), brute_parent(t, z));
      auto brute = brute_subtree(t, z);
      EXPECT_EQ(V(brute.begin(), brute.end()), f.subtree(z));
      // Consecutive range ending at z.
      EXPECT_EQ(*brute.rbegin(), z);
      EXPECT_EQ(brute.size(), z - *brute.begin() + 1);
      // T(z) subtrees tile 1..z.
      std::vector<int> hits(z + 1, 0);
      for (TypeIndex m : f.t_set(z)) {
        for (TypeIndex i : brute_subtree(t, m)) ++hits[i];
      }
      for (TypeIndex i = 1; i <= z; ++i) EXPECT_EQ(hits[i], 1);
    }
  }
}

TEST(Forest, DotOutputListsEdges) {
  auto t = test::thirteen_types();
  auto dot = build_forest(t).to_dot(t);
  EXPECT_NE(dot.find("t10 -> t11"), std::string::npos);
  EXPECT_NE(dot.find("digraph"), std::string::npos);
}
