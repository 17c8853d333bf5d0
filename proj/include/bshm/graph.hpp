#pragma once

#include "bshm/model.hpp"
#include "bshm/violation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bshm {

/// Cost-per-capacity forest over machine types: each type points to the
/// lowest-indexed higher type with a strictly smaller rate/capacity ratio.
///
/// Roots are treated as children of one virtual super-root when computing
/// siblings, so every root is a sibling of every other root. This is what
/// makes T(i) collect the younger roots of the forest.
///
/// All node sets are returned sorted ascending.
class CostCapacityForest {
 public:
  CostCapacityForest() = default;

  /// Parent links from the ratio rule.
  static CostCapacityForest build(const MachineTypeTable& types);
  /// Arbitrary parent links (index z-1 holds p(z)). Throws ValidationError on
  /// out-of-range links or cycles. Used to inspect hand-made or corrupted forests.
  static CostCapacityForest from_parents(std::vector<std::optional<TypeIndex>> parents);

  std::size_t size() const { return parent_.size(); }

  std::optional<TypeIndex> parent(TypeIndex z) const { return parent_.at(check(z) - 1); }
  bool is_root(TypeIndex z) const { return !parent(z).has_value(); }
  /// f(z)
  const std::vector<TypeIndex>& children(TypeIndex z) const { return children_.at(check(z) - 1); }
  const std::vector<TypeIndex>& roots() const { return roots_; }

  /// P(z): z and all its ancestors, ascending (z first, root last).
  const std::vector<TypeIndex>& ancestors(TypeIndex z) const { return ancestors_.at(check(z) - 1); }
  /// A_z: every node whose ancestor set contains z.
  std::vector<TypeIndex> subtree(TypeIndex z) const;
  /// node ∈ A_root
  bool in_subtree(TypeIndex node, TypeIndex root) const;
  /// v(z) = min A_z
  TypeIndex lowest(TypeIndex z) const { return lowest_.at(check(z) - 1); }

  /// Children of p(z), or all roots when z is a root.
  const std::vector<TypeIndex>& siblings_with_self(TypeIndex z) const;
  /// y(z)
  std::vector<TypeIndex> younger_siblings(TypeIndex z) const;
  /// e(z)
  std::vector<TypeIndex> elder_siblings(TypeIndex z) const;
  /// T(z) = {z} ∪ younger siblings of every member of P(z).
  std::vector<TypeIndex> t_set(TypeIndex z) const;

  /// Graphviz rendering; edges point child -> parent.
  std::string to_dot(const MachineTypeTable& types) const;

 private:
  explicit CostCapacityForest(std::vector<std::optional<TypeIndex>> parents);
  TypeIndex check(TypeIndex z) const;

  std::vector<std::optional<TypeIndex>> parent_;
  std::vector<std::vector<TypeIndex>> children_;
  std::vector<TypeIndex> roots_;
  std::vector<std::vector<TypeIndex>> ancestors_;
  std::vector<TypeIndex> lowest_;
};

inline CostCapacityForest build_forest(const MachineTypeTable& types) {
  return CostCapacityForest::build(types);
}

/// Checks the structural facts the algorithms rely on: parent links follow
/// the ratio rule, subtrees are consecutive index ranges, ratios are
/// non-decreasing along T(k), {A_z : z ∈ T(k)} partitions 1..k, and T(k)
/// splits cleanly at every ancestor's subtree. Empty result means all hold.
Violations check_forest(const CostCapacityForest& forest, const MachineTypeTable& types);

}  // namespace bshm
