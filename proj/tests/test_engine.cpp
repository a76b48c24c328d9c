#include <doctest.h>

#include "golden.hpp"
#include "support.hpp"

using namespace sessc;
using sessc::test::Session;

TEST_CASE("golden: one single step per reduction rule") {
  REQUIRE(golden::cases().size() == 18);
  int principal = 0;
  for (const auto &c : golden::cases()) {
    principal += is_principal(c.tag);
    golden::Outcome o = golden::run(c);
    CHECK_MESSAGE(o.pass, to_string(c.tag) << ": " << o.detail);
  }
  CHECK(principal == 8);
}

TEST_CASE("equiv oracle") {
  Session s;
  CHECK(equiv(s.proc("x <-> y"), s.proc("y <-> x")));
  CHECK(equiv(s.proc("new x (x[] | x(). w[])"), s.proc("new x (x(). w[] | x[])")));
  CHECK_FALSE(equiv(s.proc("x[]"), s.proc("x(). x2[]")));
  // associativity, with the scope side condition satisfied
  CHECK(equiv(s.proc("new y (new x (x[] | x(). y[]) | y(). w[])"),
              s.proc("new x (x[] | new y (x(). y[] | y(). w[]))")));
  // bound names are alpha-renamed, free names are rigid
  CHECK(equiv(s.proc("new x (x[] | x(). w[])"), s.proc("new q (q[] | q(). w[])")));
  CHECK_FALSE(equiv(s.proc("new x (x[] | x(). w[])"), s.proc("new x (x[] | x(). v[])")));
  // annotations are ignored
  CHECK(equiv(s.proc("new x: 1 (x[] | x(). w[])"), s.proc("new x: bot (x(). w[] | x[])")));
}

TEST_CASE("canonicalize oracle") {
  Session s;
  ProcPtr a = s.proc("new x (x[] | x(). w[])");
  CHECK(canonicalize(a) == canonicalize(s.proc("new x (x(). w[] | x[])")));
  CHECK(canonicalize(s.proc("new y (new x (x[] | x(). y[]) | y(). w[])")) ==
        canonicalize(s.proc("new x (x[] | new y (x(). y[] | y(). w[]))")));
  CHECK(canonicalize(canonicalize(a).proc) == canonicalize(a));
}

TEST_CASE("principal_step oracle") {
  Session s;
  auto fire = [&](const std::string &p) { return principal_step(s.proc(p), s.names); };
  auto r1 = fire("new x (w <-> x | x(). v[])");
  REQUIRE(r1);
  CHECK(r1->tag == RuleTag::Link);
  CHECK(equiv(r1->proc, s.proc("w(). v[]")));
  auto r2 = fire("new x (x[] | x(). v[])");
  REQUIRE(r2);
  CHECK(equiv(r2->proc, s.proc("v[]")));
  auto r3 = fire("new x (x[y].(y[] | x[]) | x(y). y(). x(). v[])");
  REQUIRE(r3);
  CHECK(r3->tag == RuleTag::TensorPar);
  CHECK(equiv(r3->proc, s.proc("new y (y[] | new x (x[] | y(). x(). v[]))")));
  auto r4 = fire("new x (!x(y). y[] | v[])");
  REQUIRE(r4);
  CHECK(r4->tag == RuleTag::BangWeaken);
  CHECK(equiv(r4->proc, s.proc("v[]")));
  CHECK_FALSE(fire("v[]"));
}

TEST_CASE("commuting_step oracle") {
  Session s;
  auto r1 = commuting_step(s.proc("new z (a(y). z(). y(). a[] | z[])"), s.names);
  REQUIRE(r1);
  CHECK(r1->tag == RuleTag::CommPar);
  CHECK(equiv(r1->proc, s.proc("a(y). new z (z(). y(). a[] | z[])")));
  auto r2 = commuting_step(s.proc("new z (a(). z(). w[] | z[])"), s.names);
  REQUIRE(r2);
  CHECK(r2->tag == RuleTag::CommBottom);
  // x[] has no continuation to move into
  CHECK_FALSE(commuting_step(s.proc("new z (z[] | z(). w[])"), s.names));
}

TEST_CASE("normalize oracle") {
  Session s;
  NormalizeResult a = normalize(s.proc("new x (x[] | x(). y[])"), s.names);
  CHECK(a.steps == 1);
  CHECK(equiv(a.proc, s.proc("y[]")));
  NormalizeResult b = normalize(s.proc("y[]"), s.names);
  CHECK(b.steps == 0);
  NormalizeResult c = normalize(s.proc("new z (z[] | x <-> z)"), s.names);
  CHECK(c.steps == 1);
  CHECK(equiv(c.proc, s.proc("x[]")));
}

TEST_CASE("normalize step limit and trace") {
  Session s;
  CpSource src = s.cp(read_file(sessc::test::corpus() + "/cp/red_bang_contract.cp"));
  NormalizeOptions o;
  o.max_steps = 2;
  o.keep_trace = true;
  NormalizeResult r = normalize(src.proc, s.names, o);
  CHECK(r.limit_hit);
  CHECK(r.trace.size() == 2);
  CHECK(trace_to_text(r.trace).find("bang-contract") != std::string::npos);
  CHECK(trace_to_json(r.trace).front() == '[');
}

TEST_CASE("reaches oracle") {
  Session s;
  ProcPtr p = s.proc("new z (z[] | x <-> z)");
  ReachResult refl = reaches(p, p, 0, s.names);
  CHECK(refl.status == ReachStatus::Found);
  CHECK(refl.witness.empty());
  ReachResult one = reaches(p, s.proc("x[]"), 10, s.names);
  CHECK(one.status == ReachStatus::Found);
  CHECK(one.witness == std::vector<RuleTag>{RuleTag::Link});
  ReachResult none = reaches(s.proc("x[]"), s.proc("y[]"), 10, s.names);
  CHECK(none.status == ReachStatus::Exhausted);
}

TEST_CASE("property: equiv is an equivalence and canonical keys decide it") {
  std::vector<ProcPtr> ps;
  NameSupply names;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GeneratedProcess g = gen_typed_process(GenConfig{seed, 4, true}, names);
    ps.push_back(g.proc);
    ps.push_back(canonicalize(g.proc).proc);
    ps.push_back(freshen(g.proc, names));
  }
  for (const auto &p : ps) CHECK(equiv(p, p));
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = 0; j < ps.size(); ++j) {
      bool e = equiv(ps[i], ps[j]);
      CHECK(e == equiv(ps[j], ps[i]));
      CHECK(e == (canonical_key(ps[i]) == canonical_key(ps[j])));
      if (!e) continue;
      for (std::size_t k = 0; k < ps.size(); k += 7)
        if (equiv(ps[j], ps[k])) CHECK(equiv(ps[i], ps[k]));
    }
}

TEST_CASE("property: equiv is a congruence") {
  NameSupply names;
  Session s;
  Name a = s.free("a");
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GeneratedProcess g = gen_typed_process(GenConfig{seed, 4, true}, names);
    ProcPtr q = canonicalize(g.proc).proc;
    Name y = names.fresh("y");
    CHECK(equiv(proc::in(a, y, g.proc), proc::in(a, y, q)));
    CHECK(equiv(proc::empty_in(a, g.proc), proc::empty_in(a, q)));
    Name x = names.fresh("x");
    ProcPtr other = proc::empty_out(x);
    CHECK(equiv(proc::out(a, x, other, g.proc), proc::out(a, x, other, q)));
  }
}

TEST_CASE("property: principal-only normalization terminates on the corpus") {
  for (const auto &f : corpus_files(sessc::test::corpus(), "cp")) {
    NameSupply names;
    Parser p(names);
    CpSource c = p.cp(read_file(f));
    NormalizeOptions o;
    o.principal_only = true;
    CHECK_MESSAGE(!normalize(c.proc, names, o).limit_hit, f);
  }
}

TEST_CASE("property: subject reduction along audited normalizations") {
  std::size_t steps = 0;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    NameSupply names;
    GeneratedProcess g = gen_typed_process(GenConfig{seed, 5, true}, names);
    NormalizeOptions o;
    o.audit = &g.ctx;
    NormalizeResult r = normalize(g.proc, names, o);
    CHECK(!r.limit_hit);
    steps += r.steps;
    for (const auto &f : r.audit_failures) FAIL_CHECK("seed " << seed << " step " << f.step << ": " << f.message);
  }
  CHECK(steps > 0);
}

TEST_CASE("property: every single step preserves typing on the corpus") {
  for (const auto &f : corpus_files(sessc::test::corpus(), "cp")) {
    NameSupply names;
    Parser p(names);
    CpSource c = p.cp(read_file(f));
    ProcPtr typed = cp_typecheck(c.ctx, c.proc, names).proc;
    for (const Redex &r : redexes(typed, names)) {
      ProcPtr q = r.fire();
      CHECK_NOTHROW_MESSAGE(cp_typecheck(c.ctx, q, names), f << " " << to_string(r.tag));
    }
  }
}

TEST_CASE("property: both strategies agree on the corpus") {
  for (const auto &f : corpus_files(sessc::test::corpus(), "cp")) {
    NameSupply names;
    Parser p(names);
    CpSource c = p.cp(read_file(f));
    NormalizeOptions lo, ri;
    ri.strategy = Strategy::RightmostInnermost;
    NormalizeResult a = normalize(c.proc, names, lo);
    NormalizeResult b = normalize(c.proc, names, ri);
    CHECK_MESSAGE(equiv(a.proc, b.proc), f << ": " << print_process(a.proc) << " vs " << print_process(b.proc));
  }
}
