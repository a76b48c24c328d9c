#include "sessc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sessc/cp.hpp"
#include "sessc/gen.hpp"
#include "sessc/hgv.hpp"
#include "sessc/translate.hpp"

namespace sessc {

namespace fs = std::filesystem;

const char *to_string(Theorem t) {
  switch (t) {
    case Theorem::T1: return "t1";
    case Theorem::T2: return "t2";
    case Theorem::T3: return "t3";
    case Theorem::Factor: return "factor";
    case Theorem::Soundness: return "soundness";
  }
  return "?";
}

std::optional<Theorem> theorem_from_string(const std::string &s) {
  for (Theorem t : {Theorem::T1, Theorem::T2, Theorem::T3, Theorem::Factor, Theorem::Soundness})
    if (s == to_string(t)) return t;
  return std::nullopt;
}

std::size_t VerifyReport::passed() const {
  return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [](const auto &i) { return i.pass; }));
}

std::vector<std::string> corpus_files(const std::string &dir, const std::string &calculus) {
  std::vector<std::string> out;
  fs::path sub = fs::path(dir) / calculus;
  if (!fs::is_directory(sub)) return out;
  for (const auto &e : fs::directory_iterator(sub))
    if (e.is_regular_file() && e.path().extension() == "." + calculus) out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

bool functional_type(const TypePtr &t) {
  if (!t) return false;
  if (t->kind == TypeKind::LinFun || t->kind == TypeKind::UnFun || t->kind == TypeKind::Tensor) return true;
  if (functional_type(t->left) || functional_type(t->right)) return true;
  for (const auto &[l, b] : t->branches)
    if (functional_type(b)) return true;
  return false;
}

bool functional_term(const TermPtr &m) {
  if (!m) return false;
  switch (m->kind) {
    case TermKind::Lam:
    case TermKind::App:
    case TermKind::Pair:
    case TermKind::LetPair:
    case TermKind::CoerceUn:
    case TermKind::CoerceLin: return true;
    default: break;
  }
  if (functional_type(m->annot) || functional_term(m->a) || functional_term(m->b)) return true;
  for (const auto &arm : m->arms)
    if (functional_term(arm.body)) return true;
  return false;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Lowered {
  Typing full;
  Typing pi;
  TypePtr pi_type;
  HgvContext pi_ctx;
};

Lowered lower(const HgvSource &src, NameSupply &names) {
  Lowered l;
  l.full = typecheck(src.ctx, src.term, names);
  if (src.expected && !type_equal(src.expected, l.full.type))
    throw std::runtime_error("has type " + to_string(l.full.type) + ", footer says " + to_string(src.expected));
  TermPtr pi = tr_term_pi(l.full.deriv, names);
  l.pi_ctx = tr_context_pi(src.ctx);
  l.pi_type = tr_type_pi(l.full.type);
  l.pi = typecheck(l.pi_ctx, pi, names);
  if (!type_equal(l.pi.type, l.pi_type))
    throw std::runtime_error("lowered term has type " + to_string(l.pi.type) + ", expected " + to_string(l.pi_type));
  PiCheck pc = check_pi(l.pi.term, l.pi.type);
  if (!pc.ok) throw std::runtime_error("lowered term is not HGVpi: " + pc.offender);
  return l;
}

void audit_states(const CpContext &ctx, const std::vector<ProcPtr> &states, const std::string &what,
                  VerifyReport *rep) {
  if (!rep) return;
  for (std::size_t k = 0; k < states.size(); ++k) {
    ++rep->audited_states;
    try {
      NameSupply scratch(1ull << 40);
      cp_typecheck(ctx, states[k], scratch);
    } catch (const std::exception &e) {
      rep->audit_failures.push_back(what + ", state " + std::to_string(k) + ": " + e.what());
    }
  }
}

bool typed_start(const CpContext &ctx, const ProcPtr &p, VerifyReport *rep) {
  try {
    NameSupply scratch(1ull << 40);
    cp_typecheck(ctx, p, scratch);
    return true;
  } catch (const std::exception &e) {
    if (rep) rep->untyped_starts.push_back(print_process(p) + ": " + e.what());
    return false;
  }
}

void audit_normalize(const CpContext &ctx, const ProcPtr &p, NameSupply &names, const std::string &what,
                     VerifyReport *rep) {
  if (!rep) return;
  NormalizeOptions o;
  o.audit = &ctx;
  NormalizeResult r = normalize(p, names, o);
  rep->audited_states += r.steps;
  for (const auto &f : r.audit_failures)
    rep->audit_failures.push_back(what + ", step " + std::to_string(f.step) + ": " + f.message);
}

void record_search(VerifyItem &it, const ReachResult &r) {
  it.reach = r.status;
  it.expanded = r.expanded;
  it.witness = r.witness;
  for (RuleTag t : r.witness) (is_principal(t) ? it.principal_steps : it.commuting_steps)++;
}

template <class F>
VerifyItem guarded(F &&f) {
  auto t0 = std::chrono::steady_clock::now();
  VerifyItem it;
  try {
    f(it);
  } catch (const std::exception &e) {
    it.pass = false;
    it.detail = e.what();
  }
  it.seconds = since(t0);
  return it;
}

}  // namespace

bool uses_functional(const HgvSource &src, const TypePtr &type) {
  if (functional_term(src.term) || functional_type(type)) return true;
  for (const auto &[n, t] : src.ctx.entries)
    if (functional_type(t)) return true;
  return false;
}

VerifyItem verify_t1(const HgvSource &src, NameSupply &names) {
  return guarded([&](VerifyItem &it) {
    lower(src, names);
    it.pass = true;
  });
}

VerifyItem verify_t2(const HgvSource &src, NameSupply &names) {
  return guarded([&](VerifyItem &it) {
    Lowered l = lower(src, names);
    Name z = names.fresh("z");
    ProcPtr p = tr_term_cp(l.pi.deriv, z, names);
    CpContext ctx = tr_context_cp(l.pi_ctx);
    ctx.add(z, dual_prop(tr_type_cp(l.pi_type)));
    cp_typecheck(ctx, p, names);
    it.pass = true;
  });
}

VerifyItem verify_t3(const CpSource &src, NameSupply &names) {
  return guarded([&](VerifyItem &it) {
    CpTyping ty = cp_typecheck(src.ctx, src.proc, names);
    GvImage im = tr_cp_gv(src.ctx, ty.proc, names);
    HgvContext ctx = tr_context_gv(src.ctx);
    Typing t = typecheck(ctx, im.term, names, &im.hints);
    if (t.type->kind != TypeKind::EndOut) throw std::runtime_error("lifted term has type " + to_string(t.type));
    it.pass = true;
  });
}

VerifyItem verify_factor(const HgvSource &src, NameSupply &names, const VerifyOptions &opt, VerifyReport *rep) {
  return guarded([&](VerifyItem &it) {
    Lowered l = lower(src, names);
    Name z = names.fresh("z");
    ProcPtr factored = tr_term_cp(l.pi.deriv, z, names);
    ProcPtr direct = tr_direct(l.full.deriv, z, names);
    CpContext ctx = tr_context_cp(src.ctx);
    ctx.add(z, dual_prop(tr_type_cp(l.full.type)));
    bool audit = opt.audit && typed_start(ctx, factored, rep) && typed_start(ctx, direct, rep);
    if (audit) audit_normalize(ctx, factored, names, "normalize factored", rep);
    ReachResult r = reaches(factored, direct, opt.bound, names);
    record_search(it, r);
    if (audit) audit_states(ctx, r.path, "factor witness", rep);
    it.pass = r.status == ReachStatus::Found;
    if (it.pass) return;
    NormalizeOptions o;
    NormalizeResult a = normalize(factored, names, o), b = normalize(direct, names, o);
    bool same = !a.limit_hit && !b.limit_hit && equiv(a.proc, b.proc);
    it.detail = std::string("search ") + to_string(r.status) + "; fallback: normal forms " +
                (same ? "are equivalent" : "differ") + "\n  factored: " + print_process(factored) +
                "\n  direct:   " + print_process(direct);
  });
}

VerifyItem verify_soundness(const CpSource &src, NameSupply &names, const VerifyOptions &opt, VerifyReport *rep) {
  return guarded([&](VerifyItem &it) {
    CpTyping ty = cp_typecheck(src.ctx, src.proc, names);
    GvImage im = tr_cp_gv(src.ctx, ty.proc, names);
    Typing t = typecheck(tr_context_gv(src.ctx), im.term, names, &im.hints);
    Name z = names.fresh("z");
    ProcPtr q = tr_term_cp(t.deriv, z, names);
    ProcPtr start = proc::cut(z, pr::one(), proc::empty_out(z), q);
    bool audit = opt.audit && typed_start(src.ctx, start, rep);
    if (audit) audit_normalize(src.ctx, start, names, "normalize round trip", rep);
    ReachResult r = reaches(start, ty.proc, opt.bound, names);
    record_search(it, r);
    if (audit) audit_states(src.ctx, r.path, "soundness witness", rep);
    it.pass = r.status == ReachStatus::Found;
    if (!it.pass)
      it.detail = std::string("search ") + to_string(r.status) + "\n  from: " + print_process(start) +
                  "\n  to:   " + print_process(ty.proc);
  });
}

VerifyReport verify(Theorem th, const VerifyOptions &opt) {
  auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep{th, {}, 0, {}, {}, 0};
  bool hgv = th != Theorem::T3 && th != Theorem::Soundness;

  if (!opt.corpus_dir.empty()) {
    for (const auto &path : corpus_files(opt.corpus_dir, hgv ? "hgv" : "cp")) {
      NameSupply names(1);
      Parser parser(names);
      VerifyItem it;
      try {
        std::string text = read_file(path);
        if (hgv) {
          HgvSource src = parser.hgv(text);
          if (th == Theorem::Factor) {
            Typing t = typecheck(src.ctx, src.term, names);
            if (!uses_functional(src, t.type)) continue;
            it = verify_factor(src, names, opt, &rep);
          } else {
            it = th == Theorem::T1 ? verify_t1(src, names) : verify_t2(src, names);
          }
        } else {
          CpSource src = parser.cp(text);
          it = th == Theorem::T3 ? verify_t3(src, names) : verify_soundness(src, names, opt, &rep);
        }
      } catch (const std::exception &e) {
        it.pass = false;
        it.detail = e.what();
      }
      it.subject = path;
      rep.items.push_back(std::move(it));
    }
  }

  for (std::size_t k = 0; k < opt.random; ++k) {
    std::uint64_t seed = opt.seed + k;
    NameSupply names(1);
    GenConfig cfg{seed, opt.max_depth, true};
    VerifyItem it;
    try {
      if (hgv) {
        GeneratedTerm g = gen_typed_term(cfg, names);
        HgvSource src{g.ctx, g.term, g.type};
        if (th == Theorem::Factor) {
          if (!uses_functional(src, g.type)) continue;
          it = verify_factor(src, names, opt, &rep);
        } else {
          it = th == Theorem::T1 ? verify_t1(src, names) : verify_t2(src, names);
        }
        if (!it.pass) it.detail += "\n  term: " + print_term(g.term) + "\n  ctx: " + print_context(g.ctx);
      } else {
        GeneratedProcess g = gen_typed_process(cfg, names);
        CpSource src{g.ctx, g.proc, nullptr};
        it = th == Theorem::T3 ? verify_t3(src, names) : verify_soundness(src, names, opt, &rep);
        if (!it.pass) it.detail += "\n  process: " + print_process(g.proc) + "\n  ctx: " + print_context(g.ctx);
      }
    } catch (const std::exception &e) {
      it.pass = false;
      it.detail = e.what();
    }
    it.subject = "random:" + std::to_string(seed);
    rep.items.push_back(std::move(it));
  }
  rep.seconds = since(t0);
  return rep;
}

std::string report_to_text(const VerifyReport &r) {
  std::ostringstream out;
  for (const auto &it : r.items) {
    out << (it.pass ? "PASS " : "FAIL ") << to_string(r.theorem) << " " << it.subject;
    if (it.reach) {
      out << "  [" << to_string(*it.reach) << ", " << it.expanded << " expanded, " << it.witness.size() << " steps: "
          << it.principal_steps << " principal / " << it.commuting_steps << " commuting]";
    }
    out << "\n";
    if (!it.pass && !it.detail.empty()) out << "  " << it.detail << "\n";
  }
  for (const auto &f : r.audit_failures) out << "AUDIT " << f << "\n";
  for (const auto &f : r.untyped_starts) out << "UNTYPED START " << f << "\n";
  out << to_string(r.theorem) << ": " << r.passed() << "/" << r.items.size() << " passed";
  if (r.audited_states) out << ", " << r.audited_states << " states audited, " << r.audit_failures.size() << " violations";
  if (!r.untyped_starts.empty()) out << ", " << r.untyped_starts.size() << " starts outside CP typing";
  out << " (" << r.seconds << " s)\n";
  return out.str();
}

std::string report_to_json(const std::vector<VerifyReport> &rs) {
  nlohmann::json all = nlohmann::json::array();
  for (const auto &r : rs) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto &it : r.items) {
      nlohmann::json j{{"subject", it.subject}, {"pass", it.pass}, {"seconds", it.seconds}};
      if (!it.detail.empty()) j["detail"] = it.detail;
      if (it.reach) {
        j["search"] = to_string(*it.reach);
        j["expanded"] = it.expanded;
        std::vector<std::string> w;
        for (RuleTag t : it.witness) w.emplace_back(to_string(t));
        j["witness"] = w;
        j["principal_steps"] = it.principal_steps;
        j["commuting_steps"] = it.commuting_steps;
      }
      items.push_back(std::move(j));
    }
    all.push_back({{"theorem", to_string(r.theorem)},
                   {"passed", r.passed()},
                   {"total", r.items.size()},
                   {"ok", r.ok()},
                   {"audited_states", r.audited_states},
                   {"audit_failures", r.audit_failures},
                   {"untyped_starts", r.untyped_starts},
                   {"seconds", r.seconds},
                   {"items", std::move(items)}});
  }
  return all.dump(2);
}

}  // namespace sessc
