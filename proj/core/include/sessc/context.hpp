#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sessc/names.hpp"
#include "sessc/types.hpp"

namespace sessc {

// Ordered name -> type maps. Small, so lookups are linear.
template <class T>
struct Context {
  std::vector<std::pair<Name, T>> entries;

  const T *find(const Name &x) const {
    for (const auto &[n, t] : entries)
      if (n == x) return &t;
    return nullptr;
  }
  bool contains(const Name &x) const { return find(x) != nullptr; }
  void add(Name x, T t) { entries.emplace_back(std::move(x), std::move(t)); }
  void remove(const Name &x) {
    for (auto it = entries.begin(); it != entries.end(); ++it)
      if (it->first == x) {
        entries.erase(it);
        return;
      }
  }
  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

using HgvContext = Context<TypePtr>;
using CpContext = Context<PropPtr>;

}  // namespace sessc
