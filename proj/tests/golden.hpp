#pragma once

// One single-step input/output pair per reduction rule. Outputs are compared
// modulo equiv, so cut orientation, nesting and bound names are free.

#include <string>
#include <vector>

#include "sessc/cp.hpp"
#include "sessc/engine.hpp"
#include "sessc/syntax.hpp"

namespace sessc::golden {

struct Case {
  RuleTag tag;
  const char *input;  // a .cp source: header, then process
  const char *output;
};

inline const std::vector<Case> &cases() {
  static const std::vector<Case> cs = {
      // principal
      {RuleTag::Link, "ctx x: 1. new z: 1 (z[] | z <-> x)", "x[]"},
      {RuleTag::OneBottom, "ctx y: 1. new x: 1 (x[] | x(). y[])", "y[]"},
      {RuleTag::TensorPar, "ctx w: 1. new x: 1 * 1 (x[y].(y[] | x[]) | x(y). y(). x(). w[])",
       "new y (y[] | new x (x[] | y(). x(). w[]))"},
      {RuleTag::PlusWith, "ctx w: 1. new x: +{l: 1, r: 1} (x[l]. x[] | case x { l. x(). w[]; r. x(). w[] })",
       "new x (x[] | x(). w[])"},
      {RuleTag::BangQuery, "ctx w: 1. new x: !1 (!x(y). y[] | ?x[u]. u(). w[])", "new u (u[] | u(). w[])"},
      {RuleTag::BangWeaken, "ctx w: 1. new x: !1 (!x(y). y[] | w[])", "w[]"},
      {RuleTag::BangContract, "ctx w: 1. new x: !1 (!x(y). y[] | ?x[u]. ?x[v]. u(). v(). w[])",
       "new x (!x(y). y[] | new x2 (!x2(y). y[] | ?x[u]. ?x2[v]. u(). v(). w[]))"},
      {RuleTag::ExistsForall,
       "ctx w: 1. new x: ex X. X * ~X (x[1]. x[y].(y[] | x(). w[]) | x(X). x(y). y <-> x)",
       "new x (x[y].(y[] | x(). w[]) | x(y). y <-> x)"},
      // commuting
      {RuleTag::CommTensorL, "ctx a: 1 * 1. new z: 1 (z[] | a[y].(z(). y[] | a[]))",
       "a[y].(new z (z[] | z(). y[]) | a[])"},
      {RuleTag::CommTensorR, "ctx a: 1 * 1. new z: 1 (z[] | a[y].(y[] | z(). a[]))",
       "a[y].(y[] | new z (z[] | z(). a[]))"},
      {RuleTag::CommPar, "ctx a: bot | 1. new z: 1 (z[] | a(y). z(). y(). a[])",
       "a(y). new z (z[] | z(). y(). a[])"},
      {RuleTag::CommPlus, "ctx a: +{l: 1, r: bot}. new z: 1 (z[] | a[l]. z(). a[])", "a[l]. new z (z[] | z(). a[])"},
      {RuleTag::CommWith, "ctx a: &{l: 1, r: 1}. new z: 1 (z[] | case a { l. z(). a[]; r. z(). a[] })",
       "case a { l. new z (z[] | z(). a[]); r. new z (z[] | z(). a[]) }"},
      {RuleTag::CommBang, "ctx a: !1. new z: !1 (!z(u). u[] | !a(y). ?z[v]. v(). y[])",
       "!a(y). new z (!z(u). u[] | ?z[v]. v(). y[])"},
      {RuleTag::CommQuery, "ctx a: ?bot, w: 1. new z: 1 (z[] | ?a[y]. z(). y(). w[])",
       "?a[y]. new z (z[] | z(). y(). w[])"},
      {RuleTag::CommExists, "ctx a: ex X. X. new z: 1 (z[] | a[1]. z(). a[])", "a[1]. new z (z[] | z(). a[])"},
      {RuleTag::CommForall, "ctx a: all X. X | ~X. new z: 1 (z[] | a(X). z(). a(y). y <-> a)",
       "a(X). new z (z[] | z(). a(y). y <-> a)"},
      {RuleTag::CommBottom, "ctx a: bot, w: 1. new z: 1 (z[] | a(). z(). w[])", "a(). new z (z[] | z(). w[])"},
  };
  return cs;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Fires the first redex with the case's tag and compares modulo equiv. Both
// sides must also type in the header context.
inline Outcome run(const Case &c) {
  NameSupply names;
  Parser parser(names);
  CpSource src = parser.cp(c.input);
  ProcPtr want = parser.process(c.output);
  for (const Redex &r : redexes(src.proc, names)) {
    if (r.tag != c.tag) continue;
    ProcPtr got = r.fire();
    if (!equiv(got, want)) return {false, "got " + print_process(got)};
    try {
      cp_typecheck(src.ctx, got, names);
      cp_typecheck(src.ctx, want, names);
    } catch (const std::exception &e) {
      return {false, std::string("retype: ") + e.what()};
    }
    return {true, print_process(got)};
  }
  return {false, "no redex with this tag"};
}

}  // namespace sessc::golden
