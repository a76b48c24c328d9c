#include "cluster.hpp"

#include <algorithm>
#include <stdexcept>

namespace sessc::detail {

void add_leaves(Cluster &c, const ProcPtr &q, const std::map<Name, bool> &pol) {
  if (q->kind == ProcKind::Cut) {
    c.type[q->fresh] = q->prop;
    auto l = pol, r = pol;
    l[q->fresh] = true;
    r[q->fresh] = false;
    add_leaves(c, q->p, l);
    add_leaves(c, q->q, r);
    return;
  }
  Leaf leaf{q, {}};
  for (const auto &n : free_names(q)) {
    auto it = pol.find(n);
    if (it != pol.end()) leaf.pol[n] = it->second;
  }
  c.leaves.push_back(std::move(leaf));
}

Cluster flatten(const ProcPtr &p) {
  Cluster c;
  add_leaves(c, p, {});
  return c;
}

PropPtr seen(const Cluster &c, const Leaf &l, const Name &n) {
  auto t = c.type.find(n);
  if (t == c.type.end() || !t->second) return nullptr;
  auto it = l.pol.find(n);
  if (it == l.pol.end()) return nullptr;
  return it->second ? t->second : dual_prop(t->second);
}

namespace {

struct Block {
  ProcPtr p;
  std::set<Name> names;  // cluster names free in p
  std::vector<int> leaves;
};

}  // namespace

ProcPtr rebuild(const Cluster &c, const std::vector<int> &leaf_order, const std::vector<Name> &name_order) {
  std::vector<int> order = leaf_order;
  if (order.empty())
    for (int i = 0; i < static_cast<int>(c.leaves.size()); ++i) order.push_back(i);
  std::vector<Name> names = name_order;
  if (names.empty())
    for (const auto &[n, t] : c.type) names.push_back(n);

  std::vector<Block> blocks;
  for (int i : order) {
    Block b{c.leaves[i].p, {}, {i}};
    for (const auto &[n, pol] : c.leaves[i].pol) b.names.insert(n);
    blocks.push_back(std::move(b));
  }
  std::vector<Name> pending = names;

  auto annotation = [&](const Block &left, const Name &n) -> PropPtr {
    auto t = c.type.find(n);
    if (t == c.type.end() || !t->second) return nullptr;
    for (int i : left.leaves) {
      auto it = c.leaves[i].pol.find(n);
      if (it != c.leaves[i].pol.end()) return it->second ? t->second : dual_prop(t->second);
    }
    return nullptr;
  };
  auto merge = [&](std::size_t a, std::size_t b, const Name &n) {
    Block m;
    m.p = proc::cut(n, annotation(blocks[a], n), blocks[a].p, blocks[b].p);
    m.names = blocks[a].names;
    m.names.insert(blocks[b].names.begin(), blocks[b].names.end());
    m.names.erase(n);
    m.leaves = blocks[a].leaves;
    m.leaves.insert(m.leaves.end(), blocks[b].leaves.begin(), blocks[b].leaves.end());
    blocks[a] = std::move(m);
    blocks.erase(blocks.begin() + static_cast<long>(b));
  };

  while (!pending.empty()) {
    bool progress = false;
    for (std::size_t k = 0; k < pending.size() && !progress; ++k) {
      std::vector<std::size_t> hit;
      for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].names.count(pending[k])) hit.push_back(i);
      if (hit.size() == 2) {
        merge(hit[0], hit[1], pending[k]);
        pending.erase(pending.begin() + static_cast<long>(k));
        progress = true;
      } else if (hit.empty()) {
        pending.erase(pending.begin() + static_cast<long>(k));
        progress = true;
      }
    }
    if (progress) continue;
    // A name used on one side only (a server nobody calls): pair its block
    // with any other.
    for (std::size_t k = 0; k < pending.size() && !progress; ++k) {
      std::vector<std::size_t> hit;
      for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].names.count(pending[k])) hit.push_back(i);
      if (hit.size() == 1 && blocks.size() > 1) {
        std::size_t other = hit[0] == 0 ? 1 : 0;
        merge(hit[0], other, pending[k]);
        pending.erase(pending.begin() + static_cast<long>(k));
        progress = true;
      }
    }
    if (!progress) throw std::logic_error("cut cluster has no tree decomposition");
  }
  if (blocks.size() != 1) throw std::logic_error("cut cluster is disconnected");
  return blocks[0].p;
}

}  // namespace sessc::detail
