#include <doctest.h>

#include "support.hpp"

using namespace sessc;

TEST_CASE("depth 0 session types are end! or end?") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    TypePtr t = gen_session_type(GenConfig{seed, 0, true});
    CHECK((t->kind == TypeKind::EndOut || t->kind == TypeKind::EndIn));
  }
}

TEST_CASE("generators are deterministic") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenConfig cfg{seed, 5, true};
    CHECK(to_string(gen_session_type(cfg)) == to_string(gen_session_type(cfg)));
    CHECK(to_string(gen_prop(cfg)) == to_string(gen_prop(cfg)));
    NameSupply a, b;
    GeneratedTerm ta = gen_typed_term(cfg, a), tb = gen_typed_term(cfg, b);
    CHECK(print_source(HgvSource{ta.ctx, ta.term, ta.type}) == print_source(HgvSource{tb.ctx, tb.term, tb.type}));
    GeneratedProcess pa = gen_typed_process(cfg, a), pb = gen_typed_process(cfg, b);
    CHECK(print_source(CpSource{pa.ctx, pa.proc, nullptr}) == print_source(CpSource{pb.ctx, pb.proc, nullptr}));
  }
}

TEST_CASE("generated subjects typecheck and respect the depth bound") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    NameSupply names;
    GenConfig cfg{seed, 5, true};
    GeneratedTerm t = gen_typed_term(cfg, names);
    CHECK(type_equal(typecheck(t.ctx, t.term, names).type, t.type));
    GeneratedProcess p = gen_typed_process(cfg, names);
    CHECK_NOTHROW(cp_typecheck(p.ctx, p.proc, names));
  }
}

TEST_CASE("pure session mode avoids functional types") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    CHECK(is_pure_session(gen_session_type(GenConfig{seed, 6, false})));
  }
}

TEST_CASE("seeds vary the output") {
  std::set<std::string> seen;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) seen.insert(to_string(gen_session_type(GenConfig{seed, 4, true})));
  CHECK(seen.size() > 25);
}
