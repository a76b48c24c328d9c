#include <doctest.h>

#include "support.hpp"

using namespace sessc;
using sessc::test::Session;

namespace {

Typing check(Session &s, const HgvSource &h) { return typecheck(h.ctx, h.term, s.names); }

TermPtr to_pi(Session &s, const std::string &src) {
  HgvSource h = s.hgv(src);
  return tr_term_pi(check(s, h).deriv, s.names);
}

ProcPtr to_cp(Session &s, const std::string &src, const Name &z, bool direct = false) {
  HgvSource h = s.hgv(src);
  return tr_term_cp(check(s, h).deriv, z, s.names, direct);
}

bool same(const TypePtr &a, const TypePtr &b) { return type_identical(a, b); }
bool same(const PropPtr &a, const PropPtr &b) { return prop_identical(a, b); }

}  // namespace

TEST_CASE("tr_type_pi oracle") {
  Session s;
  CHECK(same(tr_type_pi(s.type("end? -o end?")), s.type("!end?.end?")));
  CHECK(same(tr_type_pi(s.type("end? -> end!")), s.type("@!end?.end!")));
  CHECK(same(tr_type_pi(s.type("end!")), s.type("end!")));
  CHECK(same(tr_type_pi(s.type("end! * end?")), s.type("?end!.end?")));
  CHECK(same(tr_type_pi(s.type("!(end! -o end!).end!")), s.type("!(!end!.end!).end!")));
}

TEST_CASE("tr_term_pi oracle") {
  Session s;
  CHECK(alpha_equal(to_pi(s, "ctx . fn x: end!. x"),
                    s.term("fork z: ?end!.end?. let (x, z2) = receive z in link x z2")));
  CHECK(alpha_equal(to_pi(s, "ctx f: end! -o end!, y: end!. f y"), s.term("send y f")));
  CHECK(alpha_equal(to_pi(s, "ctx x: ?end!.end?. receive x"), s.term("x")));
}

TEST_CASE("tr_type_cp oracle") {
  Session s;
  CHECK(same(tr_type_cp(s.type("end!")), s.prop("1")));
  CHECK(same(tr_type_cp(s.type("end?")), s.prop("bot")));
  CHECK(same(tr_type_cp(s.type("!end?.end!")), s.prop("1 * 1")));
  CHECK(same(tr_type_cp(s.type("#end!")), s.prop("!1")));
  CHECK(same(tr_type_cp(s.type("@end!")), s.prop("?1")));
  CHECK(same(tr_type_cp(s.type("(+){a: end!}")), s.prop("+{a: 1}")));
  CHECK(same(tr_type_cp(s.type("!!X.X")), s.prop("ex X. X")));
}

TEST_CASE("tr_term_cp oracle") {
  Session s;
  Name z = s.free("z");
  CHECK(equiv(to_cp(s, "ctx x: end!. x", z), s.proc("x <-> z")));
  CHECK(equiv(to_cp(s, "ctx a: end!, b: end?. link a b", z),
              s.proc("z(). new x (a <-> x | b <-> x)")));
  CHECK(equiv(to_cp(s, "ctx . fork x: end!. x", z), s.proc("new x (new y (x <-> y | y[]) | x <-> z)")));
}

TEST_CASE("tr_term_cp rejects non-session constructs unless direct") {
  Session s;
  Name z = s.free("z");
  CHECK_THROWS_AS(to_cp(s, "ctx . fn x: end!. x", z), TranslationError);
  CHECK(equiv(to_cp(s, "ctx . fn x: end!. x", z, true), s.proc("z(x). x <-> z")));
  CHECK(equiv(to_cp(s, "ctx a: end!, b: end!. (a, b)", z, true), s.proc("z[y].(a <-> y | b <-> z)")));
}

TEST_CASE("flip oracle") {
  Session s;
  // dual(flip T) par flip U, with flip S = dual [S] on session types
  CHECK(same(flip(s.type("end! -o end?")), s.prop("1 | 1")));
  CHECK(same(flip(s.type("end! * end!")), s.prop("bot * bot")));
  CHECK(same(flip(s.type("end! -> end!")), s.prop("!(1 | bot)")));
}

TEST_CASE("tr_cp_gv_type oracle") {
  Session s;
  CHECK(same(tr_cp_gv_type(s.prop("1")), s.type("end!")));
  CHECK(same(tr_cp_gv_type(s.prop("bot")), s.type("end?")));
  CHECK(same(tr_cp_gv_type(s.prop("1 * 1")), s.type("!end?.end!")));
  CHECK(same(tr_cp_gv_type(s.prop("?1")), s.type("@end!")));
}

TEST_CASE("tr_cp_gv oracle") {
  Session s;
  CpSource a = s.cp("ctx x: 1. x[]");
  CHECK(alpha_equal(tr_cp_gv(a.ctx, a.proc, s.names).term, s.term("x")));
  CpSource b = s.cp("ctx x: bot, y: 1. x <-> y");
  CHECK(alpha_equal(tr_cp_gv(b.ctx, b.proc, s.names).term, s.term("link x y")));
  // a cut becomes let x = fork x. P in Q, i.e. a send into a fork
  CpSource c = s.cp("ctx w: 1. new x: 1 (x[] | x(). w[])");
  CpTyping t = cp_typecheck(c.ctx, c.proc, s.names);
  TermPtr m = tr_cp_gv(c.ctx, t.proc, s.names).term;
  REQUIRE(m->kind == TermKind::Send);
  CHECK(m->a->kind == TermKind::Fork);
  CHECK(m->b->kind == TermKind::Fork);
}

TEST_CASE("context translations") {
  Session s;
  CHECK(tr_context_pi(HgvContext{}).empty());
  CHECK(tr_context_cp(HgvContext{}).empty());
  Name x = s.free("x");
  HgvContext h;
  h.add(x, s.type("end? -o end!"));
  CHECK(same(*tr_context_pi(h).find(x), s.type("!end?.end!")));
  HgvContext e;
  e.add(x, s.type("end!"));
  CHECK(same(*tr_context_cp(e).find(x), s.prop("1")));
  CpContext c;
  c.add(x, s.prop("?bot"));
  CHECK(same(*tr_context_gv(c).find(x), s.type("@end?")));
}

TEST_CASE("property: the direct type translation factors through HGVpi") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    TypePtr t = gen_session_type(GenConfig{seed, 5, true});
    CHECK_MESSAGE(same(tr_type_cp(tr_type_pi(t)), tr_type_cp(t)), to_string(t));
    CHECK(same(dual_prop(flip(t)), tr_type_cp(t)));
    TypePtr f = ty::lin_fun(t, gen_session_type(GenConfig{seed + 1000, 3, true}));
    CHECK(same(tr_type_cp(tr_type_pi(f)), dual_prop(flip(f))));
  }
}

TEST_CASE("translation theorems on the corpus") {
  for (const auto &f : corpus_files(sessc::test::corpus(), "hgv")) {
    NameSupply names;
    Parser p(names);
    HgvSource h = p.hgv(read_file(f));
    VerifyItem a = verify_t1(h, names);
    CHECK_MESSAGE(a.pass, f << ": " << a.detail);
    VerifyItem b = verify_t2(h, names);
    CHECK_MESSAGE(b.pass, f << ": " << b.detail);
  }
  for (const auto &f : corpus_files(sessc::test::corpus(), "cp")) {
    NameSupply names;
    Parser p(names);
    VerifyItem c = verify_t3(p.cp(read_file(f)), names);
    CHECK_MESSAGE(c.pass, f << ": " << c.detail);
  }
}

TEST_CASE("translation theorems on generated subjects") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    NameSupply names;
    GeneratedTerm g = gen_typed_term(GenConfig{seed, 5, true}, names);
    HgvSource h{g.ctx, g.term, g.type};
    VerifyItem a = verify_t1(h, names);
    CHECK_MESSAGE(a.pass, seed << ": " << a.detail);
    VerifyItem b = verify_t2(h, names);
    CHECK_MESSAGE(b.pass, seed << ": " << b.detail);
    GeneratedProcess q = gen_typed_process(GenConfig{seed, 5, true}, names);
    VerifyItem c = verify_t3(CpSource{q.ctx, q.proc, nullptr}, names);
    CHECK_MESSAGE(c.pass, seed << ": " << c.detail);
  }
}

TEST_CASE("verify oracle") {
  Session s;
  VerifyOptions opt;
  VerifyItem sound = verify_soundness(s.cp("ctx x: 1. x[]"), s.names, opt);
  CHECK(sound.pass);
  CHECK(sound.witness.size() == 1);

  Session s2;
  VerifyItem t2 = verify_t2(s2.hgv("ctx x: end!. x"), s2.names);
  CHECK(t2.pass);

  // no non-session constructs: both pipelines agree outright
  Session s3;
  VerifyItem fac = verify_factor(s3.hgv("ctx x: !end!.end!, y: end!. send y x"), s3.names, opt);
  CHECK(fac.pass);
  REQUIRE(fac.reach);
  CHECK(*fac.reach == ReachStatus::Found);
  CHECK(fac.witness.empty());
}
