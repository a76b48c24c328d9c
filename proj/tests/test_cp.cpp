#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace sessc;
using sessc::test::Session;

namespace {

bool accepts(const CpContext &ctx, const ProcPtr &p, NameSupply &names) {
  try {
    cp_typecheck(ctx, p, names);
    return true;
  } catch (const TypeError &) {
    return false;
  }
}

bool accepts(Session &s, const std::string &src) {
  CpSource c = s.cp(src);
  return accepts(c.ctx, c.proc, s.names);
}

}  // namespace

TEST_CASE("cp_typecheck oracle") {
  Session s;
  CHECK(accepts(s, "ctx x: bot, z: 1. x <-> z"));
  CHECK(accepts(s, "ctx x: 1. x[]"));
  CHECK(accepts(s, "ctx y: 1, x: ?bot. y[]"));  // implicit weakening
  CHECK(accepts(s, "ctx x: ?bot, y: 1. ?x[u]. ?x[v]. u(). v(). y[]"));  // implicit contraction
  CHECK(accepts(s, "ctx x: 1 * 1. x[y].(y[] | x[])"));
  CHECK_FALSE(accepts(s, "ctx x: ex X. X * ~X. x[1]. x[y].(y[] | x <-> x)"));
  CHECK(accepts(s, "ctx w: 1. new x: 1 (x[] | x(). w[])"));
  CHECK(accepts(s, "ctx w: 1. new x (x[] | x(). w[])"));  // annotation inferred
}

TEST_CASE("cp_typecheck errors") {
  Session s;
  CpSource c = s.cp("ctx x: bot. x[]");
  try {
    cp_typecheck(c.ctx, c.proc, s.names);
    FAIL("accepted");
  } catch (const TypeError &e) {
    CHECK(e.kind() == ErrorKind::Mismatch);
  }
  CHECK_FALSE(accepts(s, "ctx x: 1, y: 1. x[]"));  // y is linear and unused
  CHECK_FALSE(accepts(s, "ctx x: 1. new y: 1 (y[] | y[])"));
  CHECK_FALSE(accepts(s, "ctx x: 1 * 1. x[y].(y[] | y[])"));
}

TEST_CASE("check_sequent_eq") {
  Session s;
  CpSource c = s.cp("ctx w: 1. new x: 1 (x[] | x(). w[])");
  CpTyping t = cp_typecheck(c.ctx, c.proc, s.names);
  std::string why;
  CHECK_MESSAGE(check_sequent_eq(t.deriv, &why), why);

  auto dropped = std::make_shared<CpDerivation>(*t.deriv);
  auto child = std::make_shared<CpDerivation>(*dropped->children.at(0));
  child->ctx.entries.clear();
  dropped->children[0] = child;
  CHECK_FALSE(check_sequent_eq(dropped));

  // both sides of the cut claim x : 1
  auto not_dual = std::make_shared<CpDerivation>(*t.deriv);
  auto right = std::make_shared<CpDerivation>(*not_dual->children.at(1));
  for (auto &[n, a] : right->ctx.entries)
    if (a->kind == PropKind::Bottom) a = pr::one();
  not_dual->children[1] = right;
  CHECK_FALSE(check_sequent_eq(not_dual));
}

TEST_CASE("property: axiom at every generated proposition") {
  Session s;
  Name x = s.free("x"), y = s.free("y");
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    PropPtr a = gen_prop(GenConfig{seed, 6, true});
    CpContext ctx;
    ctx.add(x, dual_prop(a));
    ctx.add(y, a);
    CHECK_MESSAGE(accepts(ctx, proc::link(x, y), s.names), to_string(a));
  }
}

TEST_CASE("property: exchange; generated processes check under any context order") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    NameSupply names;
    GeneratedProcess g = gen_typed_process(GenConfig{seed, 5, true}, names);
    CpContext rev = g.ctx;
    std::reverse(rev.entries.begin(), rev.entries.end());
    CHECK(accepts(g.ctx, g.proc, names));
    CHECK(accepts(rev, g.proc, names));
    CpTyping t = cp_typecheck(g.ctx, g.proc, names);
    CHECK(check_sequent_eq(t.deriv));
  }
}

TEST_CASE("property: subject congruence on generated processes") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    NameSupply names;
    GeneratedProcess g = gen_typed_process(GenConfig{seed, 5, true}, names);
    CanonicalProcess c = canonicalize(g.proc);
    CHECK(equiv(c.proc, g.proc));
    CHECK_MESSAGE(accepts(g.ctx, c.proc, names), print_process(c.proc));
  }
}

TEST_CASE("corpus: every CP file checks") {
  for (const auto &f : corpus_files(sessc::test::corpus(), "cp")) {
    NameSupply names;
    Parser p(names);
    CpSource c = p.cp(read_file(f));
    CHECK_MESSAGE(accepts(c.ctx, c.proc, names), f);
  }
}
