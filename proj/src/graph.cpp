#include "bshm/graph.hpp"

#include <algorithm>
#include <sstream>

namespace bshm {

CostCapacityForest::CostCapacityForest(std::vector<std::optional<TypeIndex>> parents)
    : parent_(std::move(parents)) {
  const std::size_t n = parent_.size();
  children_.assign(n, {});
  ancestors_.assign(n, {});
  lowest_.assign(n, 0);
  for (TypeIndex z = 1; z <= n; ++z) {
    const auto& p = parent_[z - 1];
    if (p) {
      if (*p < 1 || *p > n || *p == z) {
        throw ValidationError("invalid parent link for type " + std::to_string(z));
      }
      children_[*p - 1].push_back(z);
    } else {
      roots_.push_back(z);
    }
  }
  for (TypeIndex z = 1; z <= n; ++z) {
    auto& chain = ancestors_[z - 1];
    for (std::optional<TypeIndex> cur = z; cur; cur = parent_[*cur - 1]) {
      if (chain.size() > n) throw ValidationError("parent links contain a cycle through type " + std::to_string(z));
      chain.push_back(*cur);
    }
  }
  for (TypeIndex z = 1; z <= n; ++z) lowest_[z - 1] = z;
  for (TypeIndex z = 1; z <= n; ++z) {
    for (TypeIndex a : ancestors_[z - 1]) lowest_[a - 1] = std::min(lowest_[a - 1], z);
  }
}

CostCapacityForest CostCapacityForest::build(const MachineTypeTable& types) {
  const std::size_t n = types.size();
  std::vector<std::optional<TypeIndex>> parents(n);
  for (TypeIndex i = 1; i <= n; ++i) {
    Rational ratio_i = types.ratio(i);
    for (TypeIndex j = i + 1; j <= n; ++j) {
      if (types.ratio(j) < ratio_i) {
        parents[i - 1] = j;
        break;
      }
    }
  }
  return CostCapacityForest(std::move(parents));
}

CostCapacityForest CostCapacityForest::from_parents(std::vector<std::optional<TypeIndex>> parents) {
  return CostCapacityForest(std::move(parents));
}

TypeIndex CostCapacityForest::check(TypeIndex z) const {
  if (z < 1 || z > parent_.size()) {
    throw ValidationError("type index " + std::to_string(z) + " out of range 1.." + std::to_string(parent_.size()));
  }
  return z;
}

bool CostCapacityForest::in_subtree(TypeIndex node, TypeIndex root) const {
  const auto& chain = ancestors(node);
  check(root);
  return std::find(chain.begin(), chain.end(), root) != chain.end();
}

std::vector<TypeIndex> CostCapacityForest::subtree(TypeIndex z) const {
  check(z);
  std::vector<TypeIndex> out;
  for (TypeIndex i = 1; i <= size(); ++i) {
    if (in_subtree(i, z)) out.push_back(i);
  }
  return out;
}

const std::vector<TypeIndex>& CostCapacityForest::siblings_with_self(TypeIndex z) const {
  auto p = parent(z);
  return p ? children_[*p - 1] : roots_;
}

std::vector<TypeIndex> CostCapacityForest::younger_siblings(TypeIndex z) const {
  std::vector<TypeIndex> out;
  for (TypeIndex s : siblings_with_self(z)) {
    if (s < z) out.push_back(s);
  }
  return out;
}

std::vector<TypeIndex> CostCapacityForest::elder_siblings(TypeIndex z) const {
  std::vector<TypeIndex> out;
  for (TypeIndex s : siblings_with_self(z)) {
    if (s > z) out.push_back(s);
  }
  return out;
}

std::vector<TypeIndex> CostCapacityForest::t_set(TypeIndex z) const {
  std::vector<TypeIndex> out{z};
  for (TypeIndex a : ancestors(z)) {
    for (TypeIndex y : younger_siblings(a)) out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string CostCapacityForest::to_dot(const MachineTypeTable& types) const {
  std::ostringstream out;
  out << "digraph cost_per_capacity {\n  rankdir=BT;\n";
  for (TypeIndex z = 1; z <= size(); ++z) {
    out << "  t" << z << " [label=\"" << z;
    if (z <= types.size()) {
      out << "\\nr=" << to_string(types.rate(z)) << "\\ng=" << to_string(types.capacity(z));
    }
    out << "\"];\n";
  }
  for (TypeIndex z = 1; z <= size(); ++z) {
    if (auto p = parent(z)) out << "  t" << z << " -> t" << *p << ";\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

std::string set_str(const std::vector<TypeIndex>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

std::vector<TypeIndex> range(TypeIndex lo, TypeIndex hi) {
  std::vector<TypeIndex> out;
  for (TypeIndex i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

}  // namespace

Violations check_forest(const CostCapacityForest& forest, const MachineTypeTable& types) {
  Violations out;
  const std::size_t n = forest.size();
  if (n != types.size()) {
    out.push_back({"forest.size", "forest has " + std::to_string(n) + " nodes, table has " +
                                      std::to_string(types.size())});
    return out;
  }

  // Parent rule and acyclicity (each walk must reach a root within n steps).
  for (TypeIndex i = 1; i <= n; ++i) {
    std::optional<TypeIndex> expected;
    for (TypeIndex j = i + 1; j <= n && !expected; ++j) {
      if (types.ratio(j) < types.ratio(i)) expected = j;
    }
    if (forest.parent(i) != expected) {
      out.push_back({"forest.parent_rule", "p(" + std::to_string(i) + ") = " +
                                               (forest.parent(i) ? std::to_string(*forest.parent(i)) : "none") +
                                               ", ratio rule gives " +
                                               (expected ? std::to_string(*expected) : "none")});
    }
    std::size_t steps = 0;
    for (auto cur = forest.parent(i); cur; cur = forest.parent(*cur)) {
      if (++steps > n) {
        out.push_back({"forest.acyclic", "cycle reachable from " + std::to_string(i)});
        break;
      }
    }
  }

  for (TypeIndex k = 1; k <= n; ++k) {
    auto subtree = forest.subtree(k);
    if (subtree != range(forest.lowest(k), k)) {
      out.push_back({"forest.consecutive_subtree", "A_" + std::to_string(k) + " = " + set_str(subtree)});
    }

    auto t = forest.t_set(k);
    for (std::size_t a = 0; a < t.size(); ++a) {
      for (std::size_t b = a + 1; b < t.size(); ++b) {
        if (types.ratio(t[a]) > types.ratio(t[b])) {
          out.push_back({"forest.t_set_ratio_order", "T(" + std::to_string(k) + "): ratio of " +
                                                         std::to_string(t[a]) + " exceeds ratio of " +
                                                         std::to_string(t[b])});
        }
      }
    }

    std::vector<int> cover(k + 1, 0);
    bool outside = false;
    for (TypeIndex z : t) {
      for (TypeIndex i : forest.subtree(z)) {
        if (i > k) outside = true;
        else ++cover[i];
      }
    }
    bool partition = !outside && std::all_of(cover.begin() + 1, cover.end(), [](int c) { return c == 1; });
    if (!partition) {
      out.push_back({"forest.t_set_partition", "subtrees of T(" + std::to_string(k) + ") = " + set_str(t) +
                                                   " do not partition 1.." + std::to_string(k)});
    }
    for (std::size_t q = 0; q + 1 < t.size(); ++q) {
      if (t[q] + 1 != forest.lowest(t[q + 1])) {
        out.push_back({"forest.t_set_adjacent", "T(" + std::to_string(k) + "): " + std::to_string(t[q]) +
                                                    " != v(" + std::to_string(t[q + 1]) + ") - 1"});
      }
    }

    // Split of T(k) at every ancestor's subtree.
    const auto& chain = forest.ancestors(k);
    for (TypeIndex k1 : chain) {
      std::vector<TypeIndex> inside, outside_set;
      for (TypeIndex z : t) (forest.in_subtree(z, k1) ? inside : outside_set).push_back(z);
      if (inside.empty()) {
        out.push_back({"forest.t_set_split", "T(" + std::to_string(k) + ") misses A_" + std::to_string(k1)});
        continue;
      }
      TypeIndex z0 = inside.front();
      std::vector<TypeIndex> upper, lower;
      for (TypeIndex z : t) (z >= z0 ? upper : lower).push_back(z);

      std::vector<TypeIndex> from_chain_inside{k}, from_chain_outside;
      const auto& chain1 = forest.ancestors(k1);
      for (TypeIndex z : chain) {
        bool above = std::find(chain1.begin(), chain1.end(), z) != chain1.end();
        for (TypeIndex y : forest.younger_siblings(z)) (above ? from_chain_outside : from_chain_inside).push_back(y);
      }
      std::sort(from_chain_inside.begin(), from_chain_inside.end());
      std::sort(from_chain_outside.begin(), from_chain_outside.end());
      if (inside != upper || outside_set != lower || inside != from_chain_inside ||
          outside_set != from_chain_outside) {
        out.push_back({"forest.t_set_split", "T(" + std::to_string(k) + ") at ancestor " + std::to_string(k1) +
                                                 ": inside " + set_str(inside) + ", outside " +
                                                 set_str(outside_set)});
      }
    }
  }
  return out;
}

}  // namespace bshm
