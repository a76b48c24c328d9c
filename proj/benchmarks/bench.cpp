#include <benchmark/benchmark.h>

#include "sessc/cp.hpp"
#include "sessc/engine.hpp"
#include "sessc/gen.hpp"
#include "sessc/hgv.hpp"
#include "sessc/syntax.hpp"
#include "sessc/translate.hpp"
#include "sessc/verify.hpp"

using namespace sessc;

namespace {

std::string corpus_file(const std::string &rel) { return read_file(std::string(SESSC_CORPUS_DIR) + "/" + rel); }

void BM_TypecheckGenerated(benchmark::State &st) {
  NameSupply names;
  GeneratedTerm g = gen_typed_term(GenConfig{std::uint64_t(st.range(0)), 5, true}, names);
  for (auto _ : st) {
    NameSupply n(names.peek());
    benchmark::DoNotOptimize(typecheck(g.ctx, g.term, n));
  }
  st.SetLabel(std::to_string(term_size(g.term)) + " nodes");
}
BENCHMARK(BM_TypecheckGenerated)->Arg(3)->Arg(17)->Arg(42);

void BM_CpTypecheckGenerated(benchmark::State &st) {
  NameSupply names;
  GeneratedProcess g = gen_typed_process(GenConfig{std::uint64_t(st.range(0)), 5, true}, names);
  for (auto _ : st) {
    NameSupply n(names.peek());
    benchmark::DoNotOptimize(cp_typecheck(g.ctx, g.proc, n));
  }
  st.SetLabel(std::to_string(process_size(g.proc)) + " nodes");
}
BENCHMARK(BM_CpTypecheckGenerated)->Arg(3)->Arg(17)->Arg(42);

// HGV -> HGVpi -> CP on one generated term
void BM_TranslateFactored(benchmark::State &st) {
  NameSupply names;
  GeneratedTerm g = gen_typed_term(GenConfig{std::uint64_t(st.range(0)), 5, true}, names);
  Typing t = typecheck(g.ctx, g.term, names);
  HgvContext pc = tr_context_pi(g.ctx);
  for (auto _ : st) {
    NameSupply n(names.peek());
    TermPtr m = tr_term_pi(t.deriv, n);
    Typing tp = typecheck(pc, m, n);
    benchmark::DoNotOptimize(tr_term_cp(tp.deriv, n.fresh("z"), n));
  }
}
BENCHMARK(BM_TranslateFactored)->Arg(3)->Arg(17)->Arg(42);

void BM_Lift(benchmark::State &st) {
  NameSupply names;
  GeneratedProcess g = gen_typed_process(GenConfig{std::uint64_t(st.range(0)), 5, true}, names);
  ProcPtr p = cp_typecheck(g.ctx, g.proc, names).proc;
  for (auto _ : st) {
    NameSupply n(names.peek());
    benchmark::DoNotOptimize(tr_cp_gv(g.ctx, p, n));
  }
}
BENCHMARK(BM_Lift)->Arg(3)->Arg(17)->Arg(42);

void BM_NormalizeGenerated(benchmark::State &st) {
  NameSupply names;
  GeneratedProcess g = gen_typed_process(GenConfig{std::uint64_t(st.range(0)), 5, true}, names);
  std::size_t steps = 0;
  for (auto _ : st) {
    NameSupply n(names.peek());
    NormalizeResult r = normalize(g.proc, n);
    steps = r.steps;
    benchmark::DoNotOptimize(r);
  }
  st.SetLabel(std::to_string(steps) + " steps");
}
BENCHMARK(BM_NormalizeGenerated)->Arg(3)->Arg(17)->Arg(42);

void BM_Canonicalize(benchmark::State &st) {
  NameSupply names;
  GeneratedProcess g = gen_typed_process(GenConfig{std::uint64_t(st.range(0)), 5, true}, names);
  for (auto _ : st) benchmark::DoNotOptimize(canonical_key(g.proc));
}
BENCHMARK(BM_Canonicalize)->Arg(3)->Arg(17)->Arg(42);

// The soundness search on one corpus file.
void BM_ReachesSoundness(benchmark::State &st) {
  std::string src = corpus_file("cp/pipeline.cp");
  VerifyOptions opt;
  for (auto _ : st) {
    NameSupply names;
    Parser p(names);
    benchmark::DoNotOptimize(verify_soundness(p.cp(src), names, opt));
  }
}
BENCHMARK(BM_ReachesSoundness)->Unit(benchmark::kMillisecond);

void BM_ReachesFactor(benchmark::State &st) {
  std::string src = corpus_file("hgv/swap.hgv");
  VerifyOptions opt;
  for (auto _ : st) {
    NameSupply names;
    Parser p(names);
    benchmark::DoNotOptimize(verify_factor(p.hgv(src), names, opt));
  }
}
BENCHMARK(BM_ReachesFactor)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
