// Acceptance run: one PASS/FAIL line per criterion. Exit status 0 iff every
// line is PASS.
//
//   sessc_acceptance [CORPUS_DIR]

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "golden.hpp"
#include "sessc/cp.hpp"
#include "sessc/engine.hpp"
#include "sessc/gen.hpp"
#include "sessc/translate.hpp"
#include "sessc/verify.hpp"

using namespace sessc;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void line(bool ok, const std::string &name, const std::string &detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

// First failing item of a report, for the FAIL detail.
std::string first_failure(const VerifyReport &r) {
  for (const auto &it : r.items)
    if (!it.pass) return "; first failure " + it.subject + ": " + it.detail;
  if (!r.audit_failures.empty()) return "; " + r.audit_failures.front();
  return "";
}

constexpr int kSamples = 1000;

void duality() {
  auto t0 = Clock::now();
  int bad = 0;
  for (int k = 1; k <= kSamples; ++k) {
    // pure and functional payloads both count as samples here
    for (bool functional : {false, true}) {
      TypePtr s = gen_session_type(GenConfig{std::uint64_t(k), 6, functional});
      bad += !type_identical(dual_session(dual_session(s)), s);
    }
    PropPtr a = gen_prop(GenConfig{std::uint64_t(k), 6, true});
    bad += !prop_identical(dual_prop(dual_prop(a)), a);
  }
  double t = since(t0);
  std::ostringstream d;
  d << 2 * kSamples << " session types, " << kSamples << " propositions, " << bad << " mismatches, " << secs(t);
  line(bad == 0 && t < 1.0, "duality involutions", d.str());
}

void naturality() {
  auto t0 = Clock::now();
  int bad = 0;
  for (int k = 1; k <= kSamples; ++k) {
    // round trips are between CP and HGVpi, so no functional payloads
    GenConfig cfg{std::uint64_t(k), 6, false};
    TypePtr s = gen_session_type(cfg);
    PropPtr a = gen_prop(cfg);
    bad += !prop_identical(tr_type_cp(dual_session(s)), dual_prop(tr_type_cp(s)));
    bad += !type_identical(tr_cp_gv_type(dual_prop(a)), dual_session(tr_cp_gv_type(a)));
    bad += !type_identical(tr_cp_gv_type(tr_type_cp(s)), s);
    bad += !prop_identical(tr_type_cp(tr_cp_gv_type(a)), a);
  }
  double t = since(t0);
  std::ostringstream d;
  d << kSamples << " types and " << kSamples << " propositions, 4 laws each, " << bad << " mismatches, " << secs(t);
  line(bad == 0 && t < 1.0, "duality naturality and type round trips", d.str());
}

std::size_t audited = 0;
std::size_t audit_bad = 0;
std::size_t untyped = 0;

void theorem(Theorem th, const std::string &corpus, std::size_t random, double limit, const std::string &name) {
  VerifyOptions opt;
  opt.corpus_dir = corpus;
  opt.random = random;
  opt.seed = 1;
  opt.max_depth = 5;
  auto t0 = Clock::now();
  VerifyReport r = verify(th, opt);
  double t = since(t0);
  audited += r.audited_states;
  audit_bad += r.audit_failures.size();
  untyped += r.untyped_starts.size();
  std::ostringstream d;
  d << r.passed() << "/" << r.items.size() << " (" << r.items.size() - random << " corpus + " << random
    << " generated), " << secs(t) << first_failure(r);
  line(r.passed() == r.items.size() && t < limit, name, d.str());
}

void factoring(const std::string &corpus) {
  VerifyOptions opt;
  opt.corpus_dir = corpus;
  opt.bound = 50000;
  auto t0 = Clock::now();
  VerifyReport r = verify(Theorem::Factor, opt);
  double t = since(t0);
  audited += r.audited_states;
  audit_bad += r.audit_failures.size();
  untyped += r.untyped_starts.size();
  std::size_t commuting = 0;
  for (const auto &it : r.items) commuting += it.commuting_steps > 0;
  std::ostringstream d;
  d << r.passed() << "/" << r.items.size() << " functional corpus files reach within 50000, " << commuting
    << " witnesses use commuting conversions, " << secs(t) << first_failure(r);
  line(r.items.size() >= 10 && r.passed() == r.items.size() && t < 300, "factoring", d.str());
}

void soundness(const std::string &corpus) {
  VerifyOptions opt;
  opt.corpus_dir = corpus;
  opt.bound = 50000;
  auto t0 = Clock::now();
  VerifyReport r = verify(Theorem::Soundness, opt);
  double t = since(t0);
  audited += r.audited_states;
  audit_bad += r.audit_failures.size();
  untyped += r.untyped_starts.size();
  std::ostringstream d;
  d << r.passed() << "/" << r.items.size() << " CP corpus files reach P within 50000, " << secs(t)
    << first_failure(r);
  line(r.items.size() >= 30 && r.passed() == r.items.size() && t < 300, "soundness", d.str());
}

void golden_suite() {
  auto t0 = Clock::now();
  int pass = 0;
  std::string first;
  for (const auto &c : golden::cases()) {
    golden::Outcome o = golden::run(c);
    pass += o.pass;
    if (!o.pass && first.empty()) first = std::string("; first failure ") + to_string(c.tag) + ": " + o.detail;
  }
  double t = since(t0);
  std::ostringstream d;
  d << pass << "/" << golden::cases().size() << " single steps match modulo equiv, " << secs(t) << first;
  line(pass == 18 && golden::cases().size() == 18 && t < 1.0, "reduction rule unit suite", d.str());
}

void confluence() {
  auto t0 = Clock::now();
  int agree = 0, total = 200;
  std::string first;
  for (int k = 1; k <= total; ++k) {
    NameSupply names;
    GeneratedProcess g = gen_typed_process(GenConfig{std::uint64_t(k), 5, true}, names);
    NormalizeOptions lo, ri;
    lo.audit = ri.audit = &g.ctx;
    ri.strategy = Strategy::RightmostInnermost;
    NormalizeResult a = normalize(g.proc, names, lo);
    NormalizeResult b = normalize(g.proc, names, ri);
    audited += a.steps + b.steps;
    audit_bad += a.audit_failures.size() + b.audit_failures.size();
    bool ok = !a.limit_hit && !b.limit_hit && equiv(a.proc, b.proc);
    agree += ok;
    if (!ok && first.empty())
      first = "; first disagreement seed " + std::to_string(k) + ": " + print_process(a.proc) + " vs " +
              print_process(b.proc);
  }
  double t = since(t0);
  std::ostringstream d;
  d << agree << "/" << total << " generated processes agree (leftmost-outermost vs rightmost-innermost), " << secs(t)
    << first;
  line(agree == total && t < 60, "confluence sample", d.str());
}

}  // namespace

int main(int argc, char **argv) {
  std::string corpus = argc > 1 ? argv[1] : SESSC_CORPUS_DIR;
  duality();
  naturality();
  theorem(Theorem::T1, corpus, 500, 10, "T1 (HGV to HGVpi)");
  theorem(Theorem::T2, corpus, 500, 10, "T2 (HGVpi to CP)");
  theorem(Theorem::T3, corpus, 500, 10, "T3 (CP to HGVpi)");
  factoring(corpus);
  soundness(corpus);
  golden_suite();
  confluence();
  // covers the factoring, soundness and confluence runs above
  std::ostringstream d;
  d << audited << " audited states, " << audit_bad << " violations, " << untyped
    << " round-trip starts outside CP typing (not audited)";
  line(audit_bad == 0 && audited > 0, "subject reduction", d.str());
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
