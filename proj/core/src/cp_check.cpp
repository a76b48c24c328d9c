#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "sessc/cp.hpp"
#include "sessc/syntax.hpp"

namespace sessc {

const char *to_string(CpRule r) {
  switch (r) {
    case CpRule::Ax: return "Ax";
    case CpRule::Cut: return "Cut";
    case CpRule::Tensor: return "Tensor";
    case CpRule::Par: return "Par";
    case CpRule::Plus: return "Plus";
    case CpRule::With: return "With";
    case CpRule::OfCourse: return "OfCourse";
    case CpRule::WhyNot: return "WhyNot";
    case CpRule::Weaken: return "Weaken";
    case CpRule::Contract: return "Contract";
    case CpRule::Exists: return "Exists";
    case CpRule::Forall: return "Forall";
    case CpRule::One: return "One";
    case CpRule::Bottom: return "Bottom";
  }
  return "?";
}

namespace {

std::string labels_of(const PropBranches &bs) {
  std::vector<std::string> ls;
  for (const auto &[l, b] : bs) ls.push_back(l.text);
  std::sort(ls.begin(), ls.end());
  std::string out;
  for (const auto &l : ls) out += (out.empty() ? "" : ",") + l;
  return "{" + out + "}";
}

const PropPtr *find_branch(const PropBranches &bs, const Label &l) {
  for (const auto &[k, b] : bs)
    if (k == l) return &b;
  return nullptr;
}

[[noreturn]] void prop_mismatch(const std::string &what, const std::string &expected, const PropPtr &got) {
  throw TypeError(ErrorKind::Mismatch, what + ": expected " + expected + ", got " + to_string(got));
}

// ---------------------------------------------------------------------------
// Pass 1: recover missing cut annotations by unification.

class CpInference {
 public:
  std::map<const Process *, PropPtr> cuts;

  void run(const CpContext &ctx, const ProcPtr &p) {
    std::map<Name, PropPtr> env;
    for (const auto &[n, a] : ctx.entries) env[n] = a;
    infer(env, p);
    for (int round = 0; !deferred_.empty() && round < 64; ++round) {
      std::vector<Deferred> left;
      for (const auto &d : deferred_) {
        PropPtr t = head(d.subject);
        if (t->kind == PropKind::Meta) {
          left.push_back(d);
          continue;
        }
        if (t->kind != PropKind::Plus) prop_mismatch("selection", "a +{...} type", zonk(t));
        const PropPtr *b = find_branch(t->branches, d.label);
        if (!b)
          throw TypeError(ErrorKind::BranchMismatch, "label " + d.label.text + " not in " + labels_of(t->branches));
        unify(*b, d.branch);
      }
      if (left.size() == deferred_.size()) break;
      deferred_ = std::move(left);
    }
    if (!deferred_.empty())
      throw TypeError(ErrorKind::Ambiguous, "cannot infer the choice type for selection " + deferred_[0].label.text);
    for (auto &[node, a] : cuts) {
      a = zonk(a);
      if (has_meta(a))
        throw TypeError(ErrorKind::Ambiguous,
                        "cannot determine the type of cut name " + node->fresh.base + " (" + to_string(a) + ")");
    }
  }

 private:
  struct Deferred {
    PropPtr subject;
    Label label;
    PropPtr branch;
  };
  std::map<int, PropPtr> sol_;
  std::vector<Deferred> deferred_;
  int next_ = 0;

  PropPtr fresh() { return pr::meta(next_++); }

  static bool has_meta(const PropPtr &a) {
    if (a->kind == PropKind::Meta) return true;
    if (a->left && has_meta(a->left)) return true;
    if (a->right && has_meta(a->right)) return true;
    for (const auto &[l, b] : a->branches)
      if (has_meta(b)) return true;
    return false;
  }

  PropPtr head(PropPtr a) {
    while (a->kind == PropKind::Meta) {
      auto it = sol_.find(std::stoi(a->var.ident));
      if (it == sol_.end()) return a;
      a = a->var.dual ? dual_prop(it->second) : it->second;
    }
    return a;
  }

  PropPtr zonk(const PropPtr &a0) {
    PropPtr a = head(a0);
    if (a->kind == PropKind::Meta) return a;
    Prop c = *a;
    if (c.left) c.left = zonk(c.left);
    if (c.right) c.right = zonk(c.right);
    for (auto &[l, b] : c.branches) b = zonk(b);
    return std::make_shared<const Prop>(std::move(c));
  }

  bool occurs(int id, const PropPtr &a0) {
    PropPtr a = head(a0);
    if (a->kind == PropKind::Meta) return std::stoi(a->var.ident) == id;
    if (a->left && occurs(id, a->left)) return true;
    if (a->right && occurs(id, a->right)) return true;
    for (const auto &[l, b] : a->branches)
      if (occurs(id, b)) return true;
    return false;
  }

  void unify(const PropPtr &a0, const PropPtr &b0) {
    PropPtr a = head(a0), b = head(b0);
    if (a->kind == PropKind::Meta && b->kind == PropKind::Meta && a->var.ident == b->var.ident) {
      if (a->var.dual != b->var.dual) prop_mismatch("proposition equal to its dual", to_string(a), b);
      return;
    }
    if (a->kind != PropKind::Meta && b->kind == PropKind::Meta) std::swap(a, b);
    if (a->kind == PropKind::Meta) {
      int id = std::stoi(a->var.ident);
      if (occurs(id, b)) throw TypeError(ErrorKind::Mismatch, "infinite proposition " + to_string(zonk(b)));
      sol_[id] = a->var.dual ? dual_prop(b) : b;
      return;
    }
    if (a->kind != b->kind) prop_mismatch("type mismatch", to_string(zonk(a)), zonk(b));
    switch (a->kind) {
      case PropKind::Var:
        if (!(a->var == b->var)) prop_mismatch("type mismatch", to_string(a), b);
        return;
      case PropKind::Plus:
      case PropKind::With:
        if (labels_of(a->branches) != labels_of(b->branches))
          throw TypeError(ErrorKind::BranchMismatch,
                          "expected labels " + labels_of(a->branches) + ", got " + labels_of(b->branches));
        for (const auto &[l, x] : a->branches) unify(x, *find_branch(b->branches, l));
        return;
      case PropKind::Exists:
      case PropKind::Forall:
        unify(a->right, subst_prop(b->right, b->var.ident, pr::var(a->var.ident)));
        return;
      default:
        if (a->left) unify(a->left, b->left);
        if (a->right) unify(a->right, b->right);
    }
  }

  PropPtr lookup(std::map<Name, PropPtr> &env, const Name &x) {
    auto it = env.find(x);
    if (it == env.end()) throw TypeError(ErrorKind::Unbound, "unbound name " + x.base);
    return it->second;
  }

  void infer(std::map<Name, PropPtr> &env, const ProcPtr &p) {
    switch (p->kind) {
      case ProcKind::Link:
        unify(lookup(env, p->chan), dual_prop(lookup(env, p->fresh)));
        return;
      case ProcKind::Cut: {
        PropPtr a = p->prop;
        if (!a) {
          a = fresh();
          cuts[p.get()] = a;
        }
        env[p->fresh] = a;
        infer(env, p->p);
        env[p->fresh] = dual_prop(a);
        infer(env, p->q);
        return;
      }
      case ProcKind::Out: {
        PropPtr t = lookup(env, p->chan), a = fresh(), b = fresh();
        unify(t, pr::tensor(a, b));
        env[p->fresh] = a;
        infer(env, p->p);
        env[p->chan] = b;
        infer(env, p->q);
        return;
      }
      case ProcKind::In: {
        PropPtr t = lookup(env, p->chan), a = fresh(), b = fresh();
        unify(t, pr::par(a, b));
        env[p->fresh] = a;
        env[p->chan] = b;
        infer(env, p->p);
        return;
      }
      case ProcKind::Inject: {
        PropPtr t = head(lookup(env, p->chan));
        if (t->kind == PropKind::Meta) {
          PropPtr b = fresh();
          deferred_.push_back({t, p->label, b});
          env[p->chan] = b;
        } else {
          if (t->kind != PropKind::Plus) prop_mismatch("selection on " + p->chan.base, "a +{...} type", zonk(t));
          const PropPtr *b = find_branch(t->branches, p->label);
          if (!b)
            throw TypeError(ErrorKind::BranchMismatch, "label " + p->label.text + " not in " + labels_of(t->branches));
          env[p->chan] = *b;
        }
        infer(env, p->p);
        return;
      }
      case ProcKind::Case: {
        PropPtr t = lookup(env, p->chan);
        PropBranches bs;
        for (const auto &[l, q] : p->branches) bs.emplace_back(l, fresh());
        unify(t, pr::with(bs));
        for (std::size_t i = 0; i < bs.size(); ++i) {
          auto local = env;
          local[p->chan] = bs[i].second;
          infer(local, p->branches[i].second);
        }
        return;
      }
      case ProcKind::Bang:
      case ProcKind::Query: {
        PropPtr t = lookup(env, p->chan), a = fresh();
        unify(t, p->kind == ProcKind::Bang ? pr::of_course(a) : pr::why_not(a));
        env[p->fresh] = a;
        infer(env, p->p);
        return;
      }
      case ProcKind::OutType:
      case ProcKind::InType: {
        bool ex = p->kind == ProcKind::OutType;
        PropPtr t = head(lookup(env, p->chan));
        if (t->kind == PropKind::Meta)
          throw TypeError(ErrorKind::Ambiguous, "cannot infer the quantified type of " + p->chan.base);
        if (t->kind != (ex ? PropKind::Exists : PropKind::Forall))
          prop_mismatch(std::string(ex ? "type output" : "type input") + " on " + p->chan.base,
                   ex ? "an ex type" : "an all type", zonk(t));
        env[p->chan] = subst_prop(t->right, t->var.ident, ex ? p->prop : pr::var(p->tyvar.ident));
        infer(env, p->p);
        return;
      }
      case ProcKind::EmptyOut:
        unify(lookup(env, p->chan), pr::one());
        return;
      case ProcKind::EmptyIn:
        unify(lookup(env, p->chan), pr::bottom());
        infer(env, p->p);
        return;
    }
  }
};

// ---------------------------------------------------------------------------
// Pass 2: linear checking with explicit structural rules.

using Env = std::map<Name, Name>;

Name current(const Env &env, const Name &n) {
  auto it = env.find(n);
  return it == env.end() ? n : it->second;
}

CpDerivPtr mk(CpRule rule, CpContext ctx, ProcPtr p, std::vector<CpDerivPtr> kids = {}, Name name = {},
              Name copy = {}) {
  return std::make_shared<const CpDerivation>(
      CpDerivation{rule, std::move(ctx), std::move(p), std::move(kids), std::move(name), std::move(copy)});
}

CpContext without(CpContext ctx, const Name &x) {
  ctx.remove(x);
  return ctx;
}
CpContext with_entry(CpContext ctx, const Name &x, const PropPtr &a) {
  ctx.add(x, a);
  return ctx;
}

class CpChecker {
 public:
  CpChecker(NameSupply &names, const std::map<const Process *, PropPtr> &cuts) : names_(names), cuts_(cuts) {}

  CpDerivPtr derive(const CpContext &gamma, const ProcPtr &p, const Env &env) {
    std::set<Name> fv = current_fv(p, env);
    CpContext kept;
    std::vector<std::pair<Name, PropPtr>> dropped;
    for (const auto &[x, a] : gamma.entries) {
      if (fv.count(x)) {
        kept.add(x, a);
      } else {
        if (!is_why_not(a))
          throw TypeError(ErrorKind::LinearUnused, "name " + x.base + " : " + to_string(a) + " is unused");
        dropped.emplace_back(x, a);
      }
    }
    CpDerivPtr d = core(kept, p, env);
    std::set<Name> present;
    for (const auto &[x, a] : kept.entries) present.insert(x);
    for (auto it = dropped.rbegin(); it != dropped.rend(); ++it) {
      present.insert(it->first);
      CpContext ctx;
      for (const auto &[x, a] : gamma.entries)
        if (present.count(x)) ctx.add(x, a);
      d = mk(CpRule::Weaken, ctx, d->proc, {d}, it->first);
    }
    return d;
  }

 private:
  NameSupply &names_;
  const std::map<const Process *, PropPtr> &cuts_;

  std::set<Name> current_fv(const ProcPtr &p, const Env &env) const {
    std::set<Name> out;
    for (const auto &n : free_names(p)) out.insert(current(env, n));
    return out;
  }

  const PropPtr &subject(const CpContext &g, const Name &x) const {
    const PropPtr *a = g.find(x);
    if (!a) throw TypeError(ErrorKind::Unbound, "unbound name " + x.base);
    return *a;
  }

  struct Split {
    CpContext whole, first, second;
    Env env_first, env_second;
    std::vector<std::tuple<Name, Name, PropPtr>> contractions;
  };

  // f1/f2 are original free-name sets of the two sides, binders removed.
  Split split(const CpContext &gamma, const Env &env, const std::set<Name> &f1o, const std::set<Name> &f2o) {
    Split s;
    s.env_first = env;
    s.env_second = env;
    auto cur = [](const std::set<Name> &fo, const Env &e) {
      std::set<Name> out;
      for (const auto &n : fo) out.insert(current(e, n));
      return out;
    };
    std::set<Name> f1 = cur(f1o, env), f2 = cur(f2o, env);
    for (const auto &[x, a] : gamma.entries) {
      s.whole.add(x, a);
      if (!(f1.count(x) && f2.count(x))) continue;
      if (!is_why_not(a))
        throw TypeError(ErrorKind::LinearReused, "name " + x.base + " : " + to_string(a) + " used twice");
      Name copy = names_.fresh_like(x);
      s.contractions.emplace_back(x, copy, a);
      s.whole.add(copy, a);
      for (auto &[o, c] : s.env_second)
        if (c == x) c = copy;
      if (!env.count(x)) s.env_second[x] = copy;
    }
    f1 = cur(f1o, s.env_first);
    for (const auto &[x, a] : s.whole.entries) {
      if (f1.count(x)) s.first.add(x, a);
      else s.second.add(x, a);
    }
    return s;
  }

  CpDerivPtr close_split(const Split &s, CpDerivPtr d) {
    for (auto it = s.contractions.rbegin(); it != s.contractions.rend(); ++it) {
      const auto &[x, copy, a] = *it;
      d = mk(CpRule::Contract, without(d->ctx, copy), rename_process(d->proc, x, copy), {d}, x, copy);
    }
    return d;
  }

  CpDerivPtr core(const CpContext &gamma, const ProcPtr &p, const Env &env) {
    Name x = current(env, p->chan);
    switch (p->kind) {
      case ProcKind::Link: {
        Name y = current(env, p->fresh);
        if (x == y) throw TypeError(ErrorKind::LinearReused, "link of " + x.base + " to itself");
        const PropPtr &a = subject(gamma, x);
        const PropPtr &b = subject(gamma, y);
        if (gamma.size() != 2)
          throw TypeError(ErrorKind::LinearUnused, "axiom " + print_process(p) + " cannot weaken its context");
        if (!prop_equal(dual_prop(a), b))
          throw TypeError(ErrorKind::NotDual, "link " + x.base + " : " + to_string(a) + " with " + y.base + " : " +
                                                  to_string(b) + " needs dual types");
        return mk(CpRule::Ax, gamma, proc::link(x, y));
      }
      case ProcKind::Cut: {
        PropPtr a = p->prop;
        if (!a) {
          auto it = cuts_.find(p.get());
          if (it == cuts_.end()) throw TypeError(ErrorKind::Ambiguous, "unannotated cut " + p->fresh.base);
          a = it->second;
        }
        auto f1 = free_names(p->p), f2 = free_names(p->q);
        f1.erase(p->fresh);
        f2.erase(p->fresh);
        Split s = split(gamma, env, f1, f2);
        CpDerivPtr d1 = derive(with_entry(s.first, p->fresh, a), p->p, s.env_first);
        CpDerivPtr d2 = derive(with_entry(s.second, p->fresh, dual_prop(a)), p->q, s.env_second);
        return close_split(s, mk(CpRule::Cut, s.whole, proc::cut(p->fresh, a, d1->proc, d2->proc), {d1, d2}));
      }
      case ProcKind::Out: {
        const PropPtr &t = subject(gamma, x);
        if (t->kind != PropKind::Tensor) prop_mismatch("output on " + x.base, "a tensor", t);
        auto f1 = free_names(p->p), f2 = free_names(p->q);
        f1.erase(p->fresh);
        if (f1.count(p->chan) || (env.count(p->chan) == 0 && f1.count(x)))
          throw TypeError(ErrorKind::LinearReused, "name " + x.base + " used inside its own output");
        f2.erase(p->chan);
        Split s = split(without(gamma, x), env, f1, f2);
        CpDerivPtr d1 = derive(with_entry(s.first, p->fresh, t->left), p->p, s.env_first);
        Env e2 = s.env_second;
        CpDerivPtr d2 = derive(with_entry(s.second, x, t->right), p->q, e2);
        return close_split(s, mk(CpRule::Tensor, with_entry(s.whole, x, t), proc::out(x, p->fresh, d1->proc, d2->proc),
                                 {d1, d2}));
      }
      case ProcKind::In: {
        const PropPtr &t = subject(gamma, x);
        if (t->kind != PropKind::Par) prop_mismatch("input on " + x.base, "a par", t);
        CpContext g = with_entry(with_entry(without(gamma, x), p->fresh, t->left), x, t->right);
        CpDerivPtr d = derive(g, p->p, env);
        return mk(CpRule::Par, gamma, proc::in(x, p->fresh, d->proc), {d});
      }
      case ProcKind::Inject: {
        const PropPtr &t = subject(gamma, x);
        if (t->kind != PropKind::Plus) prop_mismatch("selection on " + x.base, "a +{...} type", t);
        const PropPtr *b = find_branch(t->branches, p->label);
        if (!b)
          throw TypeError(ErrorKind::BranchMismatch, "label " + p->label.text + " not in " + labels_of(t->branches));
        CpDerivPtr d = derive(with_entry(without(gamma, x), x, *b), p->p, env);
        return mk(CpRule::Plus, gamma, proc::inject(x, p->label, d->proc), {d});
      }
      case ProcKind::Case: {
        const PropPtr &t = subject(gamma, x);
        if (t->kind != PropKind::With) prop_mismatch("case on " + x.base, "a &{...} type", t);
        PropBranches mine;
        for (const auto &[l, q] : p->branches) mine.emplace_back(l, pr::one());
        if (labels_of(mine) != labels_of(t->branches))
          throw TypeError(ErrorKind::BranchMismatch,
                          "expected labels " + labels_of(t->branches) + ", got " + labels_of(mine));
        std::vector<CpDerivPtr> kids;
        ProcBranches out;
        for (const auto &[l, q] : p->branches) {
          CpDerivPtr d = derive(with_entry(without(gamma, x), x, *find_branch(t->branches, l)), q, env);
          kids.push_back(d);
          out.emplace_back(l, d->proc);
        }
        return mk(CpRule::With, gamma, proc::case_(x, std::move(out)), std::move(kids));
      }
      case ProcKind::Bang: {
        const PropPtr &t = subject(gamma, x);
        if (t->kind != PropKind::OfCourse) prop_mismatch("server " + x.base, "a ! type", t);
        CpContext rest = without(gamma, x);
        for (const auto &[n, a] : rest.entries)
          if (!is_why_not(a))
            throw TypeError(ErrorKind::UnlimitedViolation,
                            "server " + x.base + " uses " + n.base + " : " + to_string(a) + ", which is not a ? type");
        CpDerivPtr d = derive(with_entry(rest, p->fresh, t->left), p->p, env);
        return mk(CpRule::OfCourse, gamma, proc::bang(x, p->fresh, d->proc), {d});
      }
      case ProcKind::Query: {
        const PropPtr &t = subject(gamma, x);
        if (t->kind != PropKind::WhyNot) prop_mismatch("client " + x.base, "a ? type", t);
        std::set<Name> fv = current_fv(p->p, env);
        fv.erase(p->fresh);
        if (!fv.count(x)) {
          CpDerivPtr d = derive(with_entry(without(gamma, x), p->fresh, t->left), p->p, env);
          return mk(CpRule::WhyNot, gamma, proc::query(x, p->fresh, d->proc), {d});
        }
        // The continuation uses x again: contract first.
        Name copy = names_.fresh_like(x);
        Env e2 = env;
        for (auto &[o, c] : e2)
          if (c == x) c = copy;
        if (!env.count(x)) e2[x] = copy;
        CpContext premise = with_entry(with_entry(without(gamma, x), copy, t), p->fresh, t->left);
        CpDerivPtr d = derive(premise, p->p, e2);
        CpDerivPtr q =
            mk(CpRule::WhyNot, with_entry(gamma, copy, t), proc::query(x, p->fresh, d->proc), {d});
        return mk(CpRule::Contract, gamma, rename_process(q->proc, x, copy), {q}, x, copy);
      }
      case ProcKind::OutType: {
        const PropPtr &t = subject(gamma, x);
        if (t->kind != PropKind::Exists) prop_mismatch("type output on " + x.base, "an ex type", t);
        PropPtr b = subst_prop(t->right, t->var.ident, p->prop);
        CpDerivPtr d = derive(with_entry(without(gamma, x), x, b), p->p, env);
        return mk(CpRule::Exists, gamma, proc::out_type(x, p->prop, d->proc), {d});
      }
      case ProcKind::InType: {
        const PropPtr &t = subject(gamma, x);
        if (t->kind != PropKind::Forall) prop_mismatch("type input on " + x.base, "an all type", t);
        CpContext rest = without(gamma, x);
        for (const auto &[n, a] : rest.entries)
          if (free_tyvars(a).count(p->tyvar.ident))
            throw TypeError(ErrorKind::Mismatch,
                            "type variable " + p->tyvar.ident + " is free in the type of " + n.base);
        PropPtr b = subst_prop(t->right, t->var.ident, pr::var(p->tyvar.ident));
        CpDerivPtr d = derive(with_entry(rest, x, b), p->p, env);
        return mk(CpRule::Forall, gamma, proc::in_type(x, p->tyvar, d->proc), {d});
      }
      case ProcKind::EmptyOut: {
        const PropPtr &t = subject(gamma, x);
        if (t->kind != PropKind::One) prop_mismatch("close on " + x.base, "1", t);
        if (gamma.size() != 1)
          throw TypeError(ErrorKind::LinearUnused, x.base + "[] cannot use the rest of its context");
        return mk(CpRule::One, gamma, proc::empty_out(x));
      }
      case ProcKind::EmptyIn: {
        const PropPtr &t = subject(gamma, x);
        if (t->kind != PropKind::Bottom) prop_mismatch("wait on " + x.base, "bot", t);
        CpDerivPtr d = derive(without(gamma, x), p->p, env);
        return mk(CpRule::Bottom, gamma, proc::empty_in(x, d->proc), {d});
      }
    }
    throw TypeError(ErrorKind::Mismatch, "unknown process");
  }
};

// ---------------------------------------------------------------------------
// Sequent validation.

bool same_ctx(const CpContext &a, const CpContext &b) {
  if (a.size() != b.size()) return false;
  for (const auto &[n, t] : a.entries) {
    const PropPtr *u = b.find(n);
    if (!u || !prop_equal(t, *u)) return false;
  }
  return true;
}

// a = b + extra, returning b's complement check.
bool ctx_union(const CpContext &whole, const std::vector<CpContext> &parts) {
  CpContext merged;
  for (const auto &p : parts)
    for (const auto &[n, t] : p.entries) {
      if (merged.contains(n)) return false;
      merged.add(n, t);
    }
  return same_ctx(whole, merged);
}

}  // namespace

CpTyping cp_typecheck(const CpContext &ctx, const ProcPtr &p, NameSupply &names) {
  CpInference inf;
  inf.run(ctx, p);
  CpChecker ck(names, inf.cuts);
  CpDerivPtr d = ck.derive(ctx, p, {});
  return CpTyping{d, d->proc};
}

bool check_sequent_eq(const CpDerivPtr &root, std::string *why) {
  std::function<bool(const CpDerivPtr &)> go = [&](const CpDerivPtr &d) -> bool {
    auto fail = [&](const std::string &msg) {
      if (why) *why = std::string(to_string(d->rule)) + ": " + msg;
      return false;
    };
    const ProcPtr &p = d->proc;
    const auto &k = d->children;
    auto need = [&](std::size_t n) { return k.size() == n; };
    auto child_is = [&](std::size_t i, const ProcPtr &sub) { return alpha_equal(k[i]->proc, sub); };
    auto typ = [&](const Name &x) -> PropPtr {
      const PropPtr *a = d->ctx.find(x);
      return a ? *a : nullptr;
    };
    switch (d->rule) {
      case CpRule::Ax: {
        if (p->kind != ProcKind::Link || !need(0) || d->ctx.size() != 2) return fail("shape");
        PropPtr a = typ(p->chan), b = typ(p->fresh);
        if (!a || !b || !prop_equal(dual_prop(a), b)) return fail("link types not dual");
        break;
      }
      case CpRule::Cut: {
        if (p->kind != ProcKind::Cut || !need(2) || !p->prop) return fail("shape");
        if (!child_is(0, p->p) || !child_is(1, p->q)) return fail("premise subjects");
        const PropPtr *a = k[0]->ctx.find(p->fresh);
        const PropPtr *b = k[1]->ctx.find(p->fresh);
        if (!a || !b || !prop_equal(dual_prop(*a), *b)) return fail("cut types not dual");
        if (!ctx_union(d->ctx, {without(k[0]->ctx, p->fresh), without(k[1]->ctx, p->fresh)}))
          return fail("context is not the union of the premises");
        break;
      }
      case CpRule::Tensor: {
        if (p->kind != ProcKind::Out || !need(2)) return fail("shape");
        if (!child_is(0, p->p) || !child_is(1, p->q)) return fail("premise subjects");
        const PropPtr *a = k[0]->ctx.find(p->fresh);
        const PropPtr *b = k[1]->ctx.find(p->chan);
        PropPtr t = typ(p->chan);
        if (!a || !b || !t || !prop_equal(t, pr::tensor(*a, *b))) return fail("tensor type");
        if (!ctx_union(without(d->ctx, p->chan), {without(k[0]->ctx, p->fresh), without(k[1]->ctx, p->chan)}))
          return fail("context is not the union of the premises");
        break;
      }
      case CpRule::Par:
      case CpRule::WhyNot:
      case CpRule::OfCourse: {
        ProcKind want = d->rule == CpRule::Par ? ProcKind::In : d->rule == CpRule::WhyNot ? ProcKind::Query : ProcKind::Bang;
        if (p->kind != want || !need(1) || !child_is(0, p->p)) return fail("shape");
        const PropPtr *a = k[0]->ctx.find(p->fresh);
        PropPtr t = typ(p->chan);
        if (!a || !t) return fail("missing names");
        CpContext rest = without(k[0]->ctx, p->fresh);
        if (d->rule == CpRule::Par) {
          const PropPtr *b = k[0]->ctx.find(p->chan);
          if (!b || !prop_equal(t, pr::par(*a, *b))) return fail("par type");
          rest.remove(p->chan);
        } else if (d->rule == CpRule::WhyNot) {
          if (!prop_equal(t, pr::why_not(*a))) return fail("? type");
        } else {
          if (!prop_equal(t, pr::of_course(*a))) return fail("! type");
          for (const auto &[n, b] : rest.entries)
            if (!is_why_not(b)) return fail("server context not exponential");
        }
        if (!same_ctx(without(d->ctx, p->chan), rest)) return fail("context");
        break;
      }
      case CpRule::Plus:
      case CpRule::Exists:
      case CpRule::Forall:
      case CpRule::Bottom: {
        ProcKind want = d->rule == CpRule::Plus     ? ProcKind::Inject
                        : d->rule == CpRule::Exists ? ProcKind::OutType
                        : d->rule == CpRule::Forall ? ProcKind::InType
                                                    : ProcKind::EmptyIn;
        if (p->kind != want || !need(1) || !child_is(0, p->p)) return fail("shape");
        PropPtr t = typ(p->chan);
        if (!t) return fail("missing subject");
        CpContext rest = without(d->ctx, p->chan);
        if (d->rule == CpRule::Bottom) {
          if (t->kind != PropKind::Bottom) return fail("bot type");
          if (!same_ctx(rest, k[0]->ctx)) return fail("context");
          break;
        }
        const PropPtr *b = k[0]->ctx.find(p->chan);
        if (!b) return fail("missing continuation");
        PropPtr expect;
        if (d->rule == CpRule::Plus) {
          if (t->kind != PropKind::Plus) return fail("+ type");
          const PropPtr *br = find_branch(t->branches, p->label);
          if (!br) return fail("label");
          expect = *br;
        } else if (d->rule == CpRule::Exists) {
          if (t->kind != PropKind::Exists) return fail("ex type");
          expect = subst_prop(t->right, t->var.ident, p->prop);
        } else {
          if (t->kind != PropKind::Forall) return fail("all type");
          expect = subst_prop(t->right, t->var.ident, pr::var(p->tyvar.ident));
          for (const auto &[n, a] : rest.entries)
            if (free_tyvars(a).count(p->tyvar.ident)) return fail("type variable escapes");
        }
        if (!prop_equal(expect, *b)) return fail("continuation type");
        if (!same_ctx(rest, without(k[0]->ctx, p->chan))) return fail("context");
        break;
      }
      case CpRule::With: {
        if (p->kind != ProcKind::Case || k.size() != p->branches.size()) return fail("shape");
        PropPtr t = typ(p->chan);
        if (!t || t->kind != PropKind::With || t->branches.size() != p->branches.size()) return fail("& type");
        CpContext rest = without(d->ctx, p->chan);
        for (std::size_t i = 0; i < k.size(); ++i) {
          if (!child_is(i, p->branches[i].second)) return fail("premise subjects");
          const PropPtr *br = find_branch(t->branches, p->branches[i].first);
          const PropPtr *b = k[i]->ctx.find(p->chan);
          if (!br || !b || !prop_equal(*br, *b)) return fail("branch type");
          if (!same_ctx(rest, without(k[i]->ctx, p->chan))) return fail("context");
        }
        break;
      }
      case CpRule::One:
        if (p->kind != ProcKind::EmptyOut || !need(0) || d->ctx.size() != 1) return fail("shape");
        if (!typ(p->chan) || typ(p->chan)->kind != PropKind::One) return fail("1 type");
        break;
      case CpRule::Weaken: {
        if (!need(1) || !alpha_equal(p, k[0]->proc)) return fail("shape");
        PropPtr a = typ(d->name);
        if (!a || !is_why_not(a) || k[0]->ctx.contains(d->name)) return fail("weakened name");
        if (!same_ctx(without(d->ctx, d->name), k[0]->ctx)) return fail("context");
        break;
      }
      case CpRule::Contract: {
        if (!need(1)) return fail("shape");
        if (!alpha_equal(p, rename_process(k[0]->proc, d->name, d->copy))) return fail("subject");
        PropPtr a = typ(d->name);
        const PropPtr *b = k[0]->ctx.find(d->copy);
        if (!a || !is_why_not(a) || !b || !prop_equal(a, *b)) return fail("contracted names");
        if (!same_ctx(d->ctx, without(k[0]->ctx, d->copy))) return fail("context");
        break;
      }
    }
    for (const auto &c : k)
      if (!go(c)) return false;
    return true;
  };
  return go(root);
}

}  // namespace sessc
