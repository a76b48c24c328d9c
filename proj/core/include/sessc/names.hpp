#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>

namespace sessc {

// A channel or term variable. Identity is the uid; base is only for printing.
struct Name {
  std::string base;
  std::uint64_t uid = 0;

  friend bool operator==(const Name &a, const Name &b) { return a.uid == b.uid; }
  friend auto operator<=>(const Name &a, const Name &b) { return a.uid <=> b.uid; }
};

// Hands out globally unique uids. One supply per pipeline run.
class NameSupply {
 public:
  explicit NameSupply(std::uint64_t start = 1) : next_(start) {}

  Name fresh(std::string base) { return Name{std::move(base), next_++}; }
  Name fresh_like(const Name &n) { return fresh(n.base); }
  std::uint64_t peek() const { return next_; }

 private:
  std::uint64_t next_;
};

// Type variable with a polarity: dual=true is X-bar (HGV) / X-perp (CP).
struct TypeVar {
  std::string ident;
  bool dual = false;

  TypeVar flipped() const { return TypeVar{ident, !dual}; }
  TypeVar positive() const { return TypeVar{ident, false}; }
  friend bool operator==(const TypeVar &, const TypeVar &) = default;
  friend auto operator<=>(const TypeVar &, const TypeVar &) = default;
};

struct Label {
  std::string text;
  friend bool operator==(const Label &, const Label &) = default;
  friend auto operator<=>(const Label &, const Label &) = default;
};

struct SourceLoc {
  int line = 0;
  int column = 0;
};

}  // namespace sessc
