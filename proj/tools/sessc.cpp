// sessc: command-line driver.
//
// Exit codes: 0 ok, 1 a check or verification failed, 2 usage or parse error.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <string>

#include "sessc/cp.hpp"
#include "sessc/engine.hpp"
#include "sessc/hgv.hpp"
#include "sessc/syntax.hpp"
#include "sessc/translate.hpp"
#include "sessc/verify.hpp"

using namespace sessc;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2;

// Input problems (unreadable file, bad syntax) are usage errors.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string load(const std::string &path) {
  try {
    return read_file(path);
  } catch (const std::exception &e) {
    throw InputError(e.what());
  }
}

template <class F>
auto parsing(const std::string &path, F &&f) {
  try {
    return f(load(path));
  } catch (const ParseError &e) {
    throw InputError(path + ":" + e.what());
  }
}

struct Out {
  bool as_json = false;

  int ok(const json &j, const std::string &text) const {
    if (as_json) std::cout << j.dump(2) << "\n";
    else std::cout << text;
    return kOk;
  }
  int fail(const std::string &what, const std::string &msg, json extra = json::object()) const {
    if (as_json) {
      extra["ok"] = false;
      extra["error"] = what;
      extra["message"] = msg;
      std::cout << extra.dump(2) << "\n";
    } else {
      std::cerr << what << ": " << msg << "\n";
    }
    return kFail;
  }
};

int hgv_check(const Out &out, const std::string &file, bool pi) {
  NameSupply names;
  Parser parser(names);
  HgvSource src = parsing(file, [&](const std::string &t) { return parser.hgv(t, pi ? HgvMode::Pi : HgvMode::Full); });
  Typing t;
  try {
    t = typecheck(src.ctx, src.term, names);
  } catch (const TypeError &e) {
    return out.fail(std::string("type error (") + to_string(e.kind()) + ")", e.what());
  }
  if (pi) {
    PiCheck pc = check_pi(t.term, t.type);
    if (!pc.ok) return out.fail("not HGVpi", pc.offender);
  }
  if (src.expected && !type_equal(src.expected, t.type))
    return out.fail("type mismatch", "has type " + to_string(t.type) + ", footer says " + to_string(src.expected));
  return out.ok({{"ok", true}, {"type", to_string(t.type)}}, to_string(t.type) + "\n");
}

int hgv_lower(const Out &out, const std::string &target, bool direct, const std::string &file) {
  NameSupply names;
  Parser parser(names);
  HgvSource src = parsing(file, [&](const std::string &t) { return parser.hgv(t); });
  try {
    Typing t = typecheck(src.ctx, src.term, names);
    if (target == "pi") {
      HgvSource lowered{tr_context_pi(src.ctx), tr_term_pi(t.deriv, names), tr_type_pi(t.type)};
      std::string text = print_source(lowered);
      return out.ok({{"ok", true}, {"term", print_term(lowered.term)}, {"type", to_string(lowered.expected)}}, text);
    }
    // Without --direct, go through HGVpi first.
    HgvContext ctx = src.ctx;
    if (!direct) {
      ctx = tr_context_pi(src.ctx);
      t = typecheck(ctx, tr_term_pi(t.deriv, names), names);
    }
    Name z = parser.free_name("z");
    ProcPtr p = tr_term_cp(t.deriv, z, names, direct);
    CpSource cp{tr_context_cp(ctx), p, nullptr};
    cp.ctx.add(z, dual_prop(tr_type_cp(t.type)));
    return out.ok({{"ok", true}, {"process", print_process(p)}, {"context", print_context(cp.ctx)}},
                  print_source(cp));
  } catch (const TypeError &e) {
    return out.fail(std::string("type error (") + to_string(e.kind()) + ")", e.what());
  } catch (const TranslationError &e) {
    return out.fail("translation error", e.what());
  }
}

int cp_check(const Out &out, const std::string &file) {
  NameSupply names;
  Parser parser(names);
  CpSource src = parsing(file, [&](const std::string &t) { return parser.cp(t); });
  try {
    CpTyping t = cp_typecheck(src.ctx, src.proc, names);
    return out.ok({{"ok", true}, {"process", print_process(t.proc)}}, print_process(t.proc) + "\n");
  } catch (const TypeError &e) {
    return out.fail(std::string("type error (") + to_string(e.kind()) + ")", e.what());
  }
}

int cp_normalize(const Out &out, const std::string &file, std::size_t max_steps, bool trace, bool audit) {
  NameSupply names;
  Parser parser(names);
  CpSource src = parsing(file, [&](const std::string &t) { return parser.cp(t); });
  ProcPtr p = src.proc;
  if (audit) {
    try {
      p = cp_typecheck(src.ctx, p, names).proc;
    } catch (const TypeError &e) {
      return out.fail("type error", e.what());
    }
  }
  NormalizeOptions o;
  o.max_steps = max_steps;
  o.keep_trace = trace;
  o.audit = audit ? &src.ctx : nullptr;
  NormalizeResult r = normalize(p, names, o);
  json j{{"ok", !r.limit_hit && r.audit_failures.empty()},
         {"process", print_process(r.proc)},
         {"steps", r.steps},
         {"principal_steps", r.principal_steps},
         {"commuting_steps", r.commuting_steps},
         {"limit_hit", r.limit_hit}};
  std::string text;
  if (trace) {
    j["trace"] = json::parse(trace_to_json(r.trace));
    text += trace_to_text(r.trace);
  }
  if (audit) {
    json fails = json::array();
    for (const auto &f : r.audit_failures) {
      fails.push_back({{"step", f.step}, {"message", f.message}});
      text += "audit: step " + std::to_string(f.step) + ": " + f.message + "\n";
    }
    j["audit_failures"] = fails;
  }
  text += print_process(r.proc) + "\n";
  text += std::to_string(r.steps) + " steps (" + std::to_string(r.principal_steps) + " principal, " +
          std::to_string(r.commuting_steps) + " commuting)\n";
  if (r.limit_hit) text += "step limit reached; result is partial\n";
  out.ok(j, text);
  return r.limit_hit || !r.audit_failures.empty() ? kFail : kOk;
}

int cp_reaches(const Out &out, const std::string &from, const std::string &to, std::size_t bound) {
  NameSupply names;
  Parser parser(names);  // shared, so free names agree between the two files
  CpSource a = parsing(from, [&](const std::string &t) { return parser.cp(t); });
  CpSource b = parsing(to, [&](const std::string &t) { return parser.cp(t); });
  ReachResult r = reaches(a.proc, b.proc, bound, names);
  json w = json::array();
  std::string text = std::string(to_string(r.status)) + " after " + std::to_string(r.expanded) + " expansions\n";
  for (std::size_t k = 0; k < r.witness.size(); ++k) {
    w.push_back(to_string(r.witness[k]));
    text += "  " + std::string(to_string(r.witness[k])) + "  " + print_process(r.path[k + 1]) + "\n";
  }
  json j{{"ok", r.status == ReachStatus::Found},
         {"status", to_string(r.status)},
         {"expanded", r.expanded},
         {"witness", w}};
  out.ok(j, text);
  return r.status == ReachStatus::Found ? kOk : kFail;
}

int lift(const Out &out, const std::string &file) {
  NameSupply names;
  Parser parser(names);
  CpSource src = parsing(file, [&](const std::string &t) { return parser.cp(t); });
  try {
    CpTyping ty = cp_typecheck(src.ctx, src.proc, names);
    GvImage im = tr_cp_gv(src.ctx, ty.proc, names);
    HgvSource h{tr_context_gv(src.ctx), im.term, nullptr};
    Typing t = typecheck(h.ctx, im.term, names, &im.hints);
    h.expected = t.type;
    return out.ok({{"ok", true}, {"term", print_term(im.term)}, {"type", to_string(t.type)}}, print_source(h));
  } catch (const TypeError &e) {
    return out.fail(std::string("type error (") + to_string(e.kind()) + ")", e.what());
  }
}

int run_verify(const Out &out, const std::string &which, const VerifyOptions &opt) {
  std::vector<Theorem> ts;
  if (which == "all") ts = {Theorem::T1, Theorem::T2, Theorem::T3, Theorem::Factor, Theorem::Soundness};
  else ts = {*theorem_from_string(which)};
  std::vector<VerifyReport> reps;
  bool ok = true;
  for (Theorem t : ts) {
    reps.push_back(verify(t, opt));
    ok = ok && reps.back().ok();
    if (!out.as_json) std::cout << report_to_text(reps.back()) << std::flush;
  }
  if (out.as_json) std::cout << report_to_json(reps) << "\n";
  return ok ? kOk : kFail;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Session-typed functional and process calculi: checkers, translations, reduction"};
  app.require_subcommand(1);
  Out out;
  app.add_flag("--json", out.as_json, "Structured output");

  int code = kOk;
  std::string file, file2, target, theorem, corpus;
  bool pi = false, direct = false, trace = false, audit = false;
  std::size_t max_steps = 10000, bound = 50000, random = 0;
  std::uint64_t seed = 1;

  auto *hgv = app.add_subcommand("hgv", "Full HGV");
  hgv->require_subcommand(1);
  auto *hcheck = hgv->add_subcommand("check", "Typecheck a term");
  hcheck->add_flag("--pi", pi, "Parse and check as HGVpi");
  hcheck->add_option("FILE", file)->required();
  auto *lower = hgv->add_subcommand("lower", "Translate to HGVpi or CP");
  lower->add_option("TARGET", target)->required()->check(CLI::IsMember({"pi", "cp"}));
  lower->add_flag("--direct", direct, "CP: translate non-session constructs directly");
  lower->add_option("FILE", file)->required();

  auto *cp = app.add_subcommand("cp", "CP");
  cp->require_subcommand(1);
  auto *ccheck = cp->add_subcommand("check", "Typecheck a process");
  ccheck->add_option("FILE", file)->required();
  auto *norm = cp->add_subcommand("normalize", "Reduce to normal form");
  norm->add_option("--max-steps", max_steps, "Step limit")->capture_default_str();
  norm->add_flag("--trace", trace, "Print every step");
  norm->add_flag("--audit", audit, "Re-typecheck after every step");
  norm->add_option("FILE", file)->required();
  auto *reach = cp->add_subcommand("reaches", "Search for a reduction sequence");
  reach->add_option("FROM", file)->required();
  reach->add_option("TO", file2)->required();
  reach->add_option("--bound", bound, "Expansion limit")->capture_default_str();

  auto *lft = app.add_subcommand("lift", "Translate a CP process to HGVpi");
  lft->add_option("FILE", file)->required();

  auto *ver = app.add_subcommand("verify", "Check the translation theorems");
  ver->add_option("THEOREM", theorem)
      ->required()
      ->check(CLI::IsMember({"t1", "t2", "t3", "factor", "soundness", "all"}));
  ver->add_option("--corpus", corpus, "Corpus directory (holds hgv/ and cp/)");
  ver->add_option("--random", random, "Generated subjects on top of the corpus");
  ver->add_option("--seed", seed, "First generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*hcheck) code = hgv_check(out, file, pi);
    else if (*lower) code = hgv_lower(out, target, direct, file);
    else if (*ccheck) code = cp_check(out, file);
    else if (*norm) code = cp_normalize(out, file, max_steps, trace, audit);
    else if (*reach) code = cp_reaches(out, file, file2, bound);
    else if (*lft) code = lift(out, file);
    else if (*ver) {
      VerifyOptions opt;
      opt.corpus_dir = corpus;
      opt.random = random;
      opt.seed = seed;
      code = run_verify(out, theorem, opt);
    }
  } catch (const InputError &e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return code;
}
