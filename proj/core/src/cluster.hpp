#pragma once

// Internal: a maximal nest of cuts viewed as a flat cluster. Associativity
// and commutativity of cut are exactly the freedom to regroup the leaves, so
// the engine matches redexes on clusters and rebuilds a tree afterwards.

#include <map>
#include <set>
#include <vector>

#include "sessc/process.hpp"

namespace sessc::detail {

struct Leaf {
  ProcPtr p;
  // For each cluster name free in p: true if p sees the stored type, false
  // if it sees the dual.
  std::map<Name, bool> pol;
};

struct Cluster {
  std::vector<Leaf> leaves;
  std::map<Name, PropPtr> type;  // cluster names; type may be null (unannotated)
};

// p must be a Cut.
Cluster flatten(const ProcPtr &p);
// Adds q (cut or not) as leaves, inheriting polarities from `pol`.
void add_leaves(Cluster &c, const ProcPtr &q, const std::map<Name, bool> &pol);
// Rebuilds a cut tree. Leaves are merged in the given order of preference
// (leaf_order, name_order); empty orders mean "as stored".
ProcPtr rebuild(const Cluster &c, const std::vector<int> &leaf_order = {},
                const std::vector<Name> &name_order = {});

// Type of cluster name n as seen by leaf l (null if unknown).
PropPtr seen(const Cluster &c, const Leaf &l, const Name &n);

}  // namespace sessc::detail
