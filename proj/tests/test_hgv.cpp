#include <doctest.h>

#include "support.hpp"

using namespace sessc;
using sessc::test::Session;

namespace {

TypePtr type_of(Session &s, const std::string &src) {
  HgvSource h = s.hgv(src);
  return typecheck(h.ctx, h.term, s.names).type;
}

ErrorKind error_of(Session &s, const std::string &src) {
  HgvSource h = s.hgv(src);
  try {
    typecheck(h.ctx, h.term, s.names);
  } catch (const TypeError &e) {
    return e.kind();
  }
  FAIL("typechecked: " << src);
  return ErrorKind::Mismatch;
}

}  // namespace

TEST_CASE("typecheck oracle") {
  Session s;
  CHECK(type_equal(type_of(s, "ctx x: !end!.end?. x"), s.type("!end!.end?")));
  CHECK(type_equal(type_of(s, "ctx . fn x: !end!.end!. x"), s.type("!end!.end! -o !end!.end!")));
  CHECK(type_equal(type_of(s, "ctx . fork x: end!. x"), s.type("end?")));
  CHECK(type_equal(type_of(s, "ctx x: ?end!.end?, y: !end!.end!. link x y"), s.type("end!")));
  CHECK(type_equal(type_of(s, "ctx x: !end!.end!, y: end!. send y x"), s.type("end!")));
  CHECK(type_equal(type_of(s, "ctx x: ?end!.end?. receive x"), s.type("end! * end?")));
  CHECK(type_equal(type_of(s, "ctx x: (+){a: end!, b: end?}. select b x"), s.type("end?")));
}

TEST_CASE("typecheck errors") {
  Session s;
  CHECK(error_of(s, "ctx . fn x: end!. (x, x)") == ErrorKind::LinearReused);
  CHECK(error_of(s, "ctx x: end!. fork y: end!. y") == ErrorKind::LinearUnused);
  CHECK(error_of(s, "ctx . x") == ErrorKind::Unbound);
  CHECK(error_of(s, "ctx x: end!, y: end!. link x y") == ErrorKind::NotDual);
  CHECK(error_of(s, "ctx x: end!. receive x") == ErrorKind::Mismatch);
}

TEST_CASE("unlimited names may be dropped or reused") {
  Session s;
  CHECK(type_equal(type_of(s, "ctx f: end! -> end!, y: end!. (f : end! -o end!) y"), s.type("end!")));
  CHECK(type_equal(type_of(s, "ctx s: @!end!.end!, y: end!. y"), s.type("end!")));
  CHECK(type_equal(type_of(s, "ctx s: @end!. (request s, request s)"), s.type("end! * end!")));
  CHECK(type_equal(type_of(s, "ctx e: end?, y: end!. y"), s.type("end!")));
}

TEST_CASE("check_pi oracle") {
  Session s;
  TermPtr ok = s.term("fork x: ?end!.end?. let (v, x) = receive x in link v x");
  CHECK(check_pi(ok, s.type("!end!.end!")).ok);
  CHECK_FALSE(check_pi(s.term("receive x"), s.type("end! * end?")).ok);
  CHECK_FALSE(check_pi(s.term("fn x: end!. x"), s.type("end! -o end!")).ok);
  CHECK_FALSE(check_pi(s.term("(x, y)"), s.type("end! * end!")).ok);
}

TEST_CASE("desugar: let in HGVpi mode sends into a fork") {
  Session s;
  TermPtr m = s.term("let x = y in x", HgvMode::Pi);
  REQUIRE(m->kind == TermKind::Send);
  REQUIRE(m->b->kind == TermKind::Fork);
  const TermPtr &body = m->b->a;
  REQUIRE(body->kind == TermKind::LetPair);
  CHECK(body->a->kind == TermKind::Receive);
  CHECK(body->b->kind == TermKind::Link);
}

TEST_CASE("property: typecheck is deterministic and its derivations check") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    NameSupply names;
    GeneratedTerm g = gen_typed_term(GenConfig{seed, 5, true}, names);
    NameSupply a(names.peek()), b(names.peek());
    Typing ta = typecheck(g.ctx, g.term, a);
    Typing tb = typecheck(g.ctx, g.term, b);
    CHECK(type_identical(ta.type, tb.type));
    CHECK(alpha_canonical(ta.term) == alpha_canonical(tb.term));
    std::string why;
    CHECK_MESSAGE(check_derivation(ta.deriv, &why), why);
    CHECK(type_equal(ta.type, g.type));
    // the elaborated term re-derives the same type
    CHECK(type_equal(typecheck(g.ctx, ta.term, a).type, ta.type));
  }
}

TEST_CASE("property: weakening by an unlimited name is admissible") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    NameSupply names;
    GeneratedTerm g = gen_typed_term(GenConfig{seed, 5, true}, names);
    HgvContext wider = g.ctx;
    wider.add(names.fresh("extra"), ty::service(ty::end_out()));
    wider.add(names.fresh("extra"), ty::end_in());
    CHECK(type_equal(typecheck(wider, g.term, names).type, g.type));
  }
}

TEST_CASE("property: every linear context entry is used exactly once") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    NameSupply names;
    GeneratedTerm g = gen_typed_term(GenConfig{seed, 5, true}, names);
    for (const auto &[x, t] : g.ctx.entries) {
      if (is_unlimited(*t)) continue;
      HgvContext smaller = g.ctx;
      smaller.remove(x);
      CHECK_THROWS_AS(typecheck(smaller, g.term, names), TypeError);
    }
  }
}

TEST_CASE("check_derivation rejects a tampered derivation") {
  Session s;
  HgvSource h = s.hgv("ctx x: !end!.end!, y: end!. send y x");
  Typing t = typecheck(h.ctx, h.term, s.names);
  REQUIRE(check_derivation(t.deriv));
  auto bad = std::make_shared<Derivation>(*t.deriv);
  bad->type = ty::end_in();
  CHECK_FALSE(check_derivation(bad));
  auto dropped = std::make_shared<Derivation>(*t.deriv);
  dropped->ctx.entries.pop_back();
  CHECK_FALSE(check_derivation(dropped));
}

TEST_CASE("corpus: every HGV file checks at its footer type") {
  for (const auto &f : corpus_files(sessc::test::corpus(), "hgv")) {
    NameSupply names;
    Parser p(names);
    HgvSource h = p.hgv(read_file(f));
    Typing t = typecheck(h.ctx, h.term, names);
    CHECK_MESSAGE(type_equal(t.type, h.expected), f);
  }
}
