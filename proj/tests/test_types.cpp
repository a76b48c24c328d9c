#include <doctest.h>

#include "support.hpp"

using namespace sessc;
using sessc::test::Session;

namespace {

bool same(const TypePtr &a, const TypePtr &b) { return type_identical(a, b); }
bool same(const PropPtr &a, const PropPtr &b) { return prop_identical(a, b); }

}  // namespace

TEST_CASE("dual_session oracle") {
  Session s;
  CHECK(same(dual_session(s.type("!end?.end!")), s.type("?end?.end?")));
  CHECK(same(dual_session(dual_session(s.type("(+){a: end!}"))), s.type("(+){a: end!}")));
  CHECK(same(dual_session(s.type("#end!")), s.type("@end?")));
  CHECK(same(dual_session(s.type("(&){l: end?, r: !end!.end?}")), s.type("(+){l: end!, r: ?end!.end!}")));
  CHECK(same(dual_session(s.type("!!X.?X.~X")), s.type("??X.!X.X")));
  CHECK(same(dual_session(s.type("X")), s.type("~X")));
}

TEST_CASE("dual_prop oracle") {
  Session s;
  CHECK(same(dual_prop(s.prop("1 * bot")), s.prop("bot | 1")));
  CHECK(same(dual_prop(dual_prop(s.prop("ex X. X"))), s.prop("ex X. X")));
  CHECK(same(dual_prop(s.prop("!1")), s.prop("?bot")));
  CHECK(same(dual_prop(s.prop("+{l: 1, r: bot}")), s.prop("&{l: bot, r: 1}")));
  CHECK(same(dual_prop(s.prop("all X. X | ~X")), s.prop("ex X. ~X * X")));
}

TEST_CASE("subst_type oracle") {
  Session s;
  CHECK(same(subst_type(s.type("!X.~X"), "X", s.type("end!")), s.type("!end!.end?")));
  TypePtr t = s.type("!end!.?end?.end!");
  CHECK(same(subst_type(t, "X", s.type("end?")), t));
  // ??Y.X with X := !Y.end! must rename the bound Y
  TypePtr r = subst_type(s.type("??Y.X"), "X", s.type("!Y.end!"));
  REQUIRE(r->kind == TypeKind::InputType);
  CHECK(r->var.ident != "Y");
  CHECK(type_equal(r, s.type("??Z.!Y.end!")));
  CHECK(free_tyvars(r) == std::set<std::string>{"Y"});
}

TEST_CASE("subst_prop oracle") {
  Session s;
  CHECK(same(subst_prop(s.prop("X | ~X"), "X", s.prop("1")), s.prop("1 | bot")));
  PropPtr b = s.prop("1 * bot");
  CHECK(same(subst_prop(b, "X", s.prop("1")), b));
  CHECK(same(subst_prop(s.prop("all X. X"), "X", s.prop("1")), s.prop("all X. X")));
}

TEST_CASE("is_unlimited") {
  Session s;
  CHECK(is_unlimited(*s.type("@end!")));
  CHECK(is_unlimited(*s.type("end?")));
  CHECK(is_unlimited(*s.type("end! -> end!")));
  CHECK_FALSE(is_unlimited(*s.type("!end!.end!")));
  CHECK_FALSE(is_unlimited(*s.type("end? -o end?")));
  CHECK_FALSE(is_unlimited(*s.type("#end!")));
  CHECK_FALSE(is_unlimited(*s.type("end!")));
}

TEST_CASE("type equality ignores branch order and binder names") {
  Session s;
  CHECK(type_equal(s.type("(+){a: end!, b: end?}"), s.type("(+){b: end?, a: end!}")));
  CHECK_FALSE(type_identical(s.type("(+){a: end!, b: end?}"), s.type("(+){b: end?, a: end!}")));
  CHECK(type_equal(s.type("!!X.!X.end!"), s.type("!!Y.!Y.end!")));
  CHECK_FALSE(type_equal(s.type("!!X.!Y.end!"), s.type("!!Y.!Y.end!")));
  CHECK(prop_equal(s.prop("ex X. X * 1"), s.prop("ex Y. Y * 1")));
  CHECK(prop_equal(s.prop("&{a: 1, b: bot}"), s.prop("&{b: bot, a: 1}")));
}

TEST_CASE("property: duality is an involution on generated types") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    GenConfig cfg{seed, 6, true};
    TypePtr t = gen_session_type(cfg);
    CHECK_MESSAGE(same(dual_session(dual_session(t)), t), to_string(t));
    PropPtr a = gen_prop(cfg);
    CHECK_MESSAGE(same(dual_prop(dual_prop(a)), a), to_string(a));
  }
}

TEST_CASE("property: duality leaves payloads untouched") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    TypePtr t = gen_session_type(GenConfig{seed, 6, true});
    TypePtr d = dual_session(t);
    // walk the spine of both together
    while (t && (t->kind == TypeKind::Output || t->kind == TypeKind::Input)) {
      REQUIRE(d->kind != t->kind);
      CHECK(same(t->left, d->left));
      t = t->right;
      d = d->right;
    }
  }
}

TEST_CASE("property: substitution commutes with duality") {
  Session s;
  TypePtr subject = s.type("!end!.?X.(+){a: ~X, b: !X.end?}");
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    TypePtr v = gen_session_type(GenConfig{seed, 4, true});
    CHECK(same(dual_session(subst_type(subject, "X", v)), subst_type(dual_session(subject), "X", v)));
  }
}

TEST_CASE("property: naturality and type round trips") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    GenConfig cfg{seed, 6, false};
    TypePtr t = gen_session_type(cfg);
    CHECK(same(tr_type_cp(dual_session(t)), dual_prop(tr_type_cp(t))));
    CHECK(same(tr_cp_gv_type(tr_type_cp(t)), t));
    PropPtr a = gen_prop(cfg);
    CHECK(same(tr_cp_gv_type(dual_prop(a)), dual_session(tr_cp_gv_type(a))));
    CHECK(same(tr_type_cp(tr_cp_gv_type(a)), a));
  }
}

TEST_CASE("property: print then parse is the identity on types") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    GenConfig cfg{seed, 6, true};
    TypePtr t = gen_session_type(cfg);
    CHECK_MESSAGE(same(parse_type(to_string(t)), t), to_string(t));
    PropPtr a = gen_prop(cfg);
    CHECK_MESSAGE(same(parse_prop(to_string(a)), a), to_string(a));
  }
}
