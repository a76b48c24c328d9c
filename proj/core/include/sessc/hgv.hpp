#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sessc/context.hpp"
#include "sessc/errors.hpp"
#include "sessc/term.hpp"

namespace sessc {

enum class HgvRule {
  Id,
  Weaken,
  Contract,
  LinLamI,  // -o introduction
  LinLamE,  // -o elimination
  UnLamI,   // -> introduction (coercion)
  UnLamE,   // -> elimination (coercion)
  TensorI,
  TensorE,
  Send,
  Receive,
  Select,
  Case,
  Fork,
  Link,
  SendType,
  ReceiveType,
  Serve,
  Request,
};

const char *to_string(HgvRule r);

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  HgvRule rule;
  HgvContext ctx;  // conclusion context
  TermPtr term;    // conclusion subject
  TypePtr type;    // conclusion type
  std::vector<DerivPtr> children;
  Name name;  // Weaken/Contract: the structural name x
  Name copy;  // Contract: the second copy x' used in the premise
};

// Names to weaken exactly at a given node of the input term instead of as
// early as possible. Keys are nodes of the term handed to typecheck.
using WeakenHints = std::map<const Term *, std::vector<Name>>;

struct Typing {
  TypePtr type;
  DerivPtr deriv;
  TermPtr term;  // elaborated: every binder annotated
};

// Weakening happens as soon as a name is no longer free in the subject;
// contraction happens at the node that splits the uses.
Typing typecheck(const HgvContext &ctx, const TermPtr &m, NameSupply &names,
                 const WeakenHints *hints = nullptr);

// Recomputes every node of a derivation from its premises.
bool check_derivation(const DerivPtr &d, std::string *why = nullptr);

struct PiCheck {
  bool ok = true;
  std::string offender;
};
PiCheck check_pi(const TermPtr &m, const TypePtr &t);

enum class HgvMode { Full, Pi };

// let x = m in n. With xty set, the introduced binder is annotated (x : xty),
// so no inference is needed downstream.
TermPtr desugar_let(const Name &x, const TermPtr &m, const TermPtr &n, HgvMode mode,
                    NameSupply &names, const TypePtr &xty = nullptr);
// with x connect m to n; xm is the binder seen by m, xn the one seen by n.
TermPtr desugar_with(const Name &xm, const TermPtr &m, const Name &xn, const TermPtr &n,
                     HgvMode mode, NameSupply &names);

}  // namespace sessc
