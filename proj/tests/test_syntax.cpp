#include <doctest.h>

#include "support.hpp"

using namespace sessc;
using sessc::test::Session;

TEST_CASE("parser oracle") {
  Session s;
  TermPtr f = s.term("fork x: end!. x");
  REQUIRE(f->kind == TermKind::Fork);
  CHECK(f->a->kind == TermKind::Var);
  CHECK(f->a->x == f->x);

  ProcPtr p = s.proc("new x (x[] | x(). y[])");
  REQUIRE(p->kind == ProcKind::Cut);
  CHECK(p->prop == nullptr);
  CHECK(p->p->kind == ProcKind::EmptyOut);
  CHECK(p->q->kind == ProcKind::EmptyIn);
  CHECK(p->q->p->kind == ProcKind::EmptyOut);
  CHECK(p->q->p->chan == s.free("y"));

  TermPtr l = s.term("let (v, x) = receive x in link v x");
  REQUIRE(l->kind == TermKind::LetPair);
  CHECK(l->a->kind == TermKind::Receive);
  CHECK(l->b->kind == TermKind::Link);
  CHECK(l->b->a->x == l->x);
  CHECK(l->b->b->x == l->y);
  CHECK(l->a->a->x == s.free("x"));  // the scrutinee's x is the free one
}

TEST_CASE("parse errors") {
  Session s;
  CHECK_THROWS_AS(s.term("case x { }"), ParseError);
  CHECK_THROWS_AS(s.proc("case x { }"), ParseError);
  CHECK_THROWS_AS(s.proc("x[] |"), ParseError);
  CHECK_THROWS_AS(s.term("fn x: . x"), ParseError);
  CHECK_THROWS_AS(parse_type("!end!"), ParseError);
  CHECK_THROWS_AS(parse_prop("2"), ParseError);
  try {
    s.proc("x <->\n  ]");
    FAIL("no error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("let sugar depends on the mode") {
  Session s;
  // HGV: an application; HGVpi: send into a fork
  CHECK(s.term("let x = y in x")->kind == TermKind::App);
  CHECK(s.term("let x = y in x", HgvMode::Pi)->kind == TermKind::Send);
  // with x connect M to N is let x = fork x. M in N
  TermPtr w = s.term("with x connect link x y to x");
  REQUIRE(w->kind == TermKind::App);
  CHECK(w->b->kind == TermKind::Fork);
  CHECK(w->b->a->kind == TermKind::Link);
}

TEST_CASE("alpha_canonical oracle") {
  Session s;
  CHECK(alpha_canonical(s.term("fn x: end!. x")) == alpha_canonical(s.term("fn y: end!. y")));
  CHECK(alpha_equal(s.proc("new x (x <-> a | x[])"), s.proc("new y (y <-> a | y[])")));
  CHECK_FALSE(alpha_equal(s.proc("x <-> a"), s.proc("y <-> a")));
}

TEST_CASE("free names oracle") {
  Session s;
  Name x = s.free("x"), y = s.free("y");
  CHECK(free_names(s.proc("x <-> y")) == std::set<Name>{x, y});
  CHECK(free_names(s.proc("new x (x <-> y | x[])")) == std::set<Name>{y});
  CHECK(free_vars(s.term("fn x: end! -o end!. x y")) == std::set<Name>{y});
}

TEST_CASE("rename_process oracle") {
  Session s;
  Name w = s.free("w"), x = s.free("x");
  CHECK(alpha_equal(rename_process(s.proc("x <-> y"), w, x), s.proc("w <-> y")));
  ProcPtr bound = s.proc("new x (x[] | x(). y[])");
  CHECK(alpha_equal(rename_process(bound, w, x), bound));
  CHECK(alpha_equal(rename_process(s.proc("x[]"), w, x), s.proc("w[]")));
}

TEST_CASE("property: alpha_canonical is stable under bound renaming") {
  Session s;
  NameSupply names(1000);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GeneratedProcess g = gen_typed_process(GenConfig{seed, 4, true}, names);
    std::string k = alpha_canonical(g.proc);
    CHECK(alpha_canonical(freshen(g.proc, names)) == k);
    for (const Name &x : free_names(g.proc)) {
      CHECK(alpha_canonical(rename_process(g.proc, names.fresh("other"), x)) != k);
      break;
    }
  }
}

TEST_CASE("property: printer fixpoint on the corpus") {
  for (const auto &f : corpus_files(sessc::test::corpus(), "hgv")) {
    NameSupply n1, n2;
    Parser p1(n1), p2(n2);
    std::string once = print_source(p1.hgv(read_file(f)));
    std::string twice = print_source(p2.hgv(once));
    CHECK_MESSAGE(once == twice, f);
  }
  for (const auto &f : corpus_files(sessc::test::corpus(), "cp")) {
    NameSupply n1, n2;
    Parser p1(n1), p2(n2);
    std::string once = print_source(p1.cp(read_file(f)));
    std::string twice = print_source(p2.cp(once));
    CHECK_MESSAGE(once == twice, f);
  }
}

TEST_CASE("property: printer fixpoint on generated subjects") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    NameSupply names;
    GeneratedTerm t = gen_typed_term(GenConfig{seed, 5, true}, names);
    HgvSource hs{t.ctx, t.term, t.type};
    std::string once = print_source(hs);
    NameSupply n2, n3;
    Parser p2(n2), p3(n3);
    HgvSource back = p2.hgv(once);
    CHECK_MESSAGE(print_source(p3.hgv(print_source(back))) == print_source(back), once);
    CHECK(type_identical(back.expected, t.type));

    GeneratedProcess g = gen_typed_process(GenConfig{seed, 5, true}, names);
    CpSource cs{g.ctx, g.proc, nullptr};
    std::string conce = print_source(cs);
    NameSupply n4, n5;
    Parser p4(n4), p5(n5);
    CpSource cback = p4.cp(conce);
    CHECK_MESSAGE(print_source(p5.cp(print_source(cback))) == print_source(cback), conce);
  }
}

TEST_CASE("corpus has at least 30 files per calculus with footers") {
  auto h = corpus_files(sessc::test::corpus(), "hgv");
  auto c = corpus_files(sessc::test::corpus(), "cp");
  CHECK(h.size() >= 30);
  CHECK(c.size() >= 30);
  for (const auto &f : h) {
    NameSupply n;
    Parser p(n);
    CHECK_MESSAGE(p.hgv(read_file(f)).expected != nullptr, f);
  }
  for (const auto &f : c) {
    NameSupply n;
    Parser p(n);
    CHECK_MESSAGE(p.cp(read_file(f)).expected != nullptr, f);
  }
}
