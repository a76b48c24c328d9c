#include <algorithm>
#include <functional>
#include <set>

#include "sessc/hgv.hpp"
#include "sessc/syntax.hpp"

namespace sessc {

const char *to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Unbound: return "Unbound";
    case ErrorKind::LinearUnused: return "LinearUnused";
    case ErrorKind::LinearReused: return "LinearReused";
    case ErrorKind::Mismatch: return "Mismatch";
    case ErrorKind::NotSession: return "NotSession";
    case ErrorKind::BranchMismatch: return "BranchMismatch";
    case ErrorKind::UnlimitedViolation: return "UnlimitedViolation";
    case ErrorKind::NotDual: return "NotDual";
    case ErrorKind::Ambiguous: return "Ambiguous";
  }
  return "?";
}

const char *to_string(HgvRule r) {
  switch (r) {
    case HgvRule::Id: return "Id";
    case HgvRule::Weaken: return "Weaken";
    case HgvRule::Contract: return "Contract";
    case HgvRule::LinLamI: return "-o-I";
    case HgvRule::LinLamE: return "-o-E";
    case HgvRule::UnLamI: return "->-I";
    case HgvRule::UnLamE: return "->-E";
    case HgvRule::TensorI: return "*-I";
    case HgvRule::TensorE: return "*-E";
    case HgvRule::Send: return "Send";
    case HgvRule::Receive: return "Receive";
    case HgvRule::Select: return "Select";
    case HgvRule::Case: return "Case";
    case HgvRule::Fork: return "Fork";
    case HgvRule::Link: return "Link";
    case HgvRule::SendType: return "SendType";
    case HgvRule::ReceiveType: return "ReceiveType";
    case HgvRule::Serve: return "Serve";
    case HgvRule::Request: return "Request";
  }
  return "?";
}

namespace {

std::string labels_of(const TypeBranches &bs) {
  std::vector<std::string> ls;
  for (const auto &[l, b] : bs) ls.push_back(l.text);
  std::sort(ls.begin(), ls.end());
  std::string out;
  for (const auto &l : ls) out += (out.empty() ? "" : ",") + l;
  return "{" + out + "}";
}

const TypePtr *find_branch(const TypeBranches &bs, const Label &l) {
  for (const auto &[k, b] : bs)
    if (k == l) return &b;
  return nullptr;
}

[[noreturn]] void mismatch(const std::string &what, const TypePtr &expected, const TypePtr &got, SourceLoc loc) {
  throw TypeError(ErrorKind::Mismatch,
                  what + ": expected " + to_string(expected) + ", got " + to_string(got), loc);
}

// ---------------------------------------------------------------------------
// Pass 1: unification, only to recover missing binder annotations.

class Inference {
 public:
  std::map<const Term *, TypePtr> binders;  // nodes whose annotation was missing

  TypePtr run(const TermPtr &m, const HgvContext &ctx) {
    for (const auto &[n, t] : ctx.entries) env_[n] = t;
    TypePtr t = infer(m);
    for (auto &[node, ty] : binders) {
      ty = zonk(ty, node->loc);
      if (has_meta(ty))
        throw TypeError(ErrorKind::Ambiguous,
                        "cannot determine the type of binder " + node->x.base + " (" + to_string(ty) + ")",
                        node->loc);
    }
    return t;
  }

 private:
  std::map<Name, TypePtr> env_;
  std::map<int, TypePtr> sol_;
  int next_ = 0;

  TypePtr fresh() { return ty::meta(next_++); }

  static bool has_meta(const TypePtr &t) {
    if (t->kind == TypeKind::Meta) return true;
    if (t->left && has_meta(t->left)) return true;
    if (t->right && has_meta(t->right)) return true;
    for (const auto &[l, b] : t->branches)
      if (has_meta(b)) return true;
    return false;
  }

  TypePtr head(TypePtr t, SourceLoc loc) {
    while (t->kind == TypeKind::Meta) {
      auto it = sol_.find(std::stoi(t->var.ident));
      if (it == sol_.end()) return t;
      if (t->var.dual) {
        if (!is_session(*it->second))
          throw TypeError(ErrorKind::NotSession, "dual of non-session type " + to_string(it->second), loc);
        t = dual_session(it->second);
      } else {
        t = it->second;
      }
    }
    return t;
  }

  TypePtr zonk(const TypePtr &t0, SourceLoc loc) {
    TypePtr t = head(t0, loc);
    if (t->kind == TypeKind::Meta) return t;
    Type c = *t;
    if (c.left) c.left = zonk(c.left, loc);
    if (c.right) c.right = zonk(c.right, loc);
    for (auto &[l, b] : c.branches) b = zonk(b, loc);
    return std::make_shared<const Type>(std::move(c));
  }

  bool occurs(int id, const TypePtr &t0, SourceLoc loc) {
    TypePtr t = head(t0, loc);
    if (t->kind == TypeKind::Meta) return std::stoi(t->var.ident) == id;
    if (t->left && occurs(id, t->left, loc)) return true;
    if (t->right && occurs(id, t->right, loc)) return true;
    for (const auto &[l, b] : t->branches)
      if (occurs(id, b, loc)) return true;
    return false;
  }

  void bind(const TypePtr &m, const TypePtr &t, SourceLoc loc) {
    int id = std::stoi(m->var.ident);
    if (occurs(id, t, loc)) throw TypeError(ErrorKind::Mismatch, "infinite type " + to_string(zonk(t, loc)), loc);
    if (m->var.dual) {
      if (!is_session(*t)) throw TypeError(ErrorKind::NotSession, "not a session type: " + to_string(t), loc);
      sol_[id] = dual_session(t);
    } else {
      sol_[id] = t;
    }
  }

  void unify(const TypePtr &a0, const TypePtr &b0, SourceLoc loc) {
    TypePtr a = head(a0, loc), b = head(b0, loc);
    if (a->kind == TypeKind::Meta && b->kind == TypeKind::Meta && a->var.ident == b->var.ident) {
      if (a->var.dual != b->var.dual) mismatch("session type equal to its dual", a, b, loc);
      return;
    }
    if (a->kind == TypeKind::Meta) return bind(a, b, loc);
    if (b->kind == TypeKind::Meta) return bind(b, a, loc);
    if (a->kind != b->kind) mismatch("type mismatch", zonk(a, loc), zonk(b, loc), loc);
    switch (a->kind) {
      case TypeKind::Var:
        if (!(a->var == b->var)) mismatch("type mismatch", a, b, loc);
        return;
      case TypeKind::Select:
      case TypeKind::Choice: {
        if (labels_of(a->branches) != labels_of(b->branches))
          throw TypeError(ErrorKind::BranchMismatch,
                          "expected labels " + labels_of(a->branches) + ", got " + labels_of(b->branches), loc);
        for (const auto &[l, s] : a->branches) unify(s, *find_branch(b->branches, l), loc);
        return;
      }
      case TypeKind::OutputType:
      case TypeKind::InputType:
        unify(a->right, subst_type(b->right, b->var.ident, ty::var(a->var.ident)), loc);
        return;
      default:
        if (a->left) unify(a->left, b->left, loc);
        if (a->right) unify(a->right, b->right, loc);
    }
  }

  TypePtr binder_type(const TermPtr &m) {
    if (m->annot) return m->annot;
    TypePtr t = fresh();
    binders[m.get()] = t;
    return t;
  }

  TypePtr infer(const TermPtr &m) {
    SourceLoc loc = m->loc;
    switch (m->kind) {
      case TermKind::Var: {
        auto it = env_.find(m->x);
        if (it == env_.end()) throw TypeError(ErrorKind::Unbound, "unbound variable " + m->x.base, loc);
        return it->second;
      }
      case TermKind::Lam: {
        TypePtr t = binder_type(m);
        env_[m->x] = t;
        TypePtr u = infer(m->a);
        return ty::lin_fun(t, u);
      }
      case TermKind::App: {
        TypePtr f = head(infer(m->a), loc);
        if (f->kind == TypeKind::UnFun)
          throw TypeError(ErrorKind::Mismatch,
                          "application of unlimited function " + to_string(zonk(f, loc)) +
                              " needs a (M : T -o U) coercion",
                          loc);
        TypePtr arg = infer(m->b);
        TypePtr r = fresh();
        unify(ty::lin_fun(arg, r), f, loc);
        return r;
      }
      case TermKind::Pair: {
        TypePtr l = infer(m->a);
        return ty::tensor(l, infer(m->b));
      }
      case TermKind::LetPair: {
        TypePtr t = infer(m->a), x = fresh(), y = fresh();
        unify(ty::tensor(x, y), t, loc);
        env_[m->x] = x;
        env_[m->y] = y;
        return infer(m->b);
      }
      case TermKind::Send: {
        TypePtr t = infer(m->a);
        TypePtr c = infer(m->b), s = fresh();
        unify(ty::output(t, s), c, loc);
        return s;
      }
      case TermKind::Receive: {
        TypePtr c = infer(m->a), t = fresh(), s = fresh();
        unify(ty::input(t, s), c, loc);
        return ty::tensor(t, s);
      }
      case TermKind::Select: {
        TypePtr c = head(infer(m->a), loc);
        if (c->kind == TypeKind::Meta)
          throw TypeError(ErrorKind::Ambiguous, "cannot infer the choice type for select " + m->label.text, loc);
        if (c->kind != TypeKind::Select)
          throw TypeError(ErrorKind::Mismatch, "select on non-selection type " + to_string(zonk(c, loc)), loc);
        const TypePtr *b = find_branch(c->branches, m->label);
        if (!b)
          throw TypeError(ErrorKind::BranchMismatch,
                          "label " + m->label.text + " not in " + labels_of(c->branches), loc);
        return *b;
      }
      case TermKind::Case: {
        TypePtr c = infer(m->a);
        TypeBranches bs;
        for (const auto &arm : m->arms) bs.emplace_back(arm.label, fresh());
        unify(ty::choice(bs), c, loc);
        TypePtr result;
        for (std::size_t i = 0; i < m->arms.size(); ++i) {
          env_[m->arms[i].binder] = bs[i].second;
          TypePtr t = infer(m->arms[i].body);
          if (!result) result = t;
          else unify(result, t, m->arms[i].body->loc);
        }
        return result;
      }
      case TermKind::Fork:
      case TermKind::Serve: {
        TypePtr s = binder_type(m);
        env_[m->x] = s;
        unify(ty::end_out(), infer(m->a), loc);
        TypePtr h = head(s, loc);
        if (!is_session(*h)) throw TypeError(ErrorKind::NotSession, "not a session type: " + to_string(h), loc);
        return m->kind == TermKind::Fork ? dual_session(h) : ty::service(dual_session(h));
      }
      case TermKind::Link: {
        TypePtr a = head(infer(m->a), loc);
        TypePtr b = infer(m->b);
        if (!is_session(*a)) throw TypeError(ErrorKind::NotSession, "link on non-session type " + to_string(a), loc);
        try {
          unify(dual_session(a), b, loc);
        } catch (const TypeError &e) {
          throw TypeError(ErrorKind::NotDual, std::string("link endpoints not dual: ") + e.what(), loc);
        }
        return ty::end_out();
      }
      case TermKind::SendType: {
        TypePtr c = head(infer(m->a), loc);
        if (c->kind == TypeKind::Meta)
          throw TypeError(ErrorKind::Ambiguous, "cannot infer the polymorphic type for sendty", loc);
        if (c->kind != TypeKind::OutputType)
          throw TypeError(ErrorKind::Mismatch, "sendty on " + to_string(zonk(c, loc)), loc);
        return subst_type(c->right, c->var.ident, m->annot);
      }
      case TermKind::ReceiveType: {
        TypePtr c = head(infer(m->a), loc);
        if (c->kind == TypeKind::Meta)
          throw TypeError(ErrorKind::Ambiguous, "cannot infer the polymorphic type for recvty", loc);
        if (c->kind != TypeKind::InputType)
          throw TypeError(ErrorKind::Mismatch, "recvty on " + to_string(zonk(c, loc)), loc);
        return subst_type(c->right, c->var.ident, ty::var(m->tyvar.ident));
      }
      case TermKind::Request: {
        TypePtr c = infer(m->a), s = fresh();
        unify(ty::service(s), c, loc);
        return s;
      }
      case TermKind::CoerceUn:
      case TermKind::CoerceLin: {
        bool un = m->kind == TermKind::CoerceUn;
        const TypePtr &t = m->annot;
        TypePtr from = un ? ty::lin_fun(t->left, t->right) : ty::un_fun(t->left, t->right);
        unify(from, infer(m->a), loc);
        return t;
      }
    }
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Pass 2: linear elaboration into explicit derivations.

using Env = std::map<Name, Name>;  // original name -> name in the current premise

Name current(const Env &env, const Name &n) {
  auto it = env.find(n);
  return it == env.end() ? n : it->second;
}

DerivPtr node(HgvRule rule, HgvContext ctx, TermPtr term, TypePtr type, std::vector<DerivPtr> kids = {}) {
  auto d = std::make_shared<Derivation>();
  d->rule = rule;
  d->ctx = std::move(ctx);
  d->term = std::move(term);
  d->type = std::move(type);
  d->children = std::move(kids);
  return d;
}

HgvContext extend(HgvContext ctx, const Name &x, const TypePtr &t) {
  ctx.add(x, t);
  return ctx;
}

class Elaborator {
 public:
  Elaborator(NameSupply &names, const std::map<const Term *, TypePtr> &inferred, const WeakenHints *hints)
      : names_(names), inferred_(inferred), hints_(hints) {}

  void prepare(const TermPtr &m) {
    fv_[m.get()] = free_vars(m);
    std::set<Name> pend;
    if (hints_) {
      auto it = hints_->find(m.get());
      if (it != hints_->end()) pend.insert(it->second.begin(), it->second.end());
    }
    auto child = [&](const TermPtr &c) {
      prepare(c);
      const auto &p = pending_[c.get()];
      pend.insert(p.begin(), p.end());
    };
    if (m->a) child(m->a);
    if (m->b) child(m->b);
    for (const auto &arm : m->arms) child(arm.body);
    pending_[m.get()] = std::move(pend);
  }

  DerivPtr derive(const HgvContext &phi, const TermPtr &m, const Env &env) {
    std::set<Name> fv = current_fv(m, env);
    HgvContext kept;
    std::vector<std::pair<Name, TypePtr>> dropped;
    for (const auto &[x, t] : phi.entries) {
      if (fv.count(x) || routed_below(m.get(), x)) {
        kept.add(x, t);
      } else {
        if (!is_unlimited(*t))
          throw TypeError(ErrorKind::LinearUnused, "linear variable " + x.base + " : " + to_string(t) + " is unused",
                          m->loc);
        dropped.emplace_back(x, t);
      }
    }
    DerivPtr d = core(kept, m, env);
    std::set<Name> present;
    for (const auto &[x, t] : kept.entries) present.insert(x);
    for (auto it = dropped.rbegin(); it != dropped.rend(); ++it) {
      present.insert(it->first);
      HgvContext ctx;
      for (const auto &[x, t] : phi.entries)
        if (present.count(x)) ctx.add(x, t);
      auto w = std::make_shared<Derivation>(Derivation{HgvRule::Weaken, ctx, d->term, d->type, {d}, it->first, {}});
      d = w;
    }
    return d;
  }

 private:
  NameSupply &names_;
  const std::map<const Term *, TypePtr> &inferred_;
  const WeakenHints *hints_;
  std::map<const Term *, std::set<Name>> fv_;
  std::map<const Term *, std::set<Name>> pending_;

  std::set<Name> current_fv(const TermPtr &m, const Env &env) const {
    std::set<Name> out;
    for (const auto &n : fv_.at(m.get())) out.insert(current(env, n));
    return out;
  }

  bool hinted_at(const Term *m, const Name &x) const {
    if (!hints_) return false;
    auto it = hints_->find(m);
    return it != hints_->end() && std::find(it->second.begin(), it->second.end(), x) != it->second.end();
  }
  bool routed_below(const Term *m, const Name &x) const {
    return pending_.at(m).count(x) && !hinted_at(m, x);
  }
  bool pending_in(const Term *m, const Name &x) const { return pending_.at(m).count(x) > 0; }

  TypePtr binder_type(const TermPtr &m) const {
    if (m->annot) return m->annot;
    auto it = inferred_.find(m.get());
    if (it == inferred_.end())
      throw TypeError(ErrorKind::Ambiguous, "missing annotation on " + m->x.base, m->loc);
    return it->second;
  }

  // A binary split of phi between `first` and the rest. Names used on both
  // sides are contracted; the second side sees the fresh copy.
  struct Split {
    HgvContext whole;  // phi extended with contraction copies
    HgvContext first, second;
    Env env_first, env_second;
    std::vector<std::tuple<Name, Name, TypePtr>> contractions;
  };

  Split split(const HgvContext &phi, const Env &env, const std::vector<TermPtr> &first,
              const std::vector<TermPtr> &second, const std::set<Name> &second_bound, SourceLoc loc) {
    Split s;
    s.env_first = env;
    s.env_second = env;
    auto fv_of = [&](const std::vector<TermPtr> &ms, const Env &e, bool drop_bound) {
      std::set<Name> out;
      for (const auto &m : ms)
        for (const auto &n : fv_.at(m.get())) {
          if (drop_bound && second_bound.count(n)) continue;
          out.insert(current(e, n));
        }
      return out;
    };
    std::set<Name> f1 = fv_of(first, env, false);
    std::set<Name> f2 = fv_of(second, env, true);
    for (const auto &[x, t] : phi.entries) {
      s.whole.add(x, t);
      if (!(f1.count(x) && f2.count(x))) continue;
      if (!is_unlimited(*t))
        throw TypeError(ErrorKind::LinearReused, "linear variable " + x.base + " : " + to_string(t) + " used twice",
                        loc);
      Name copy = names_.fresh_like(x);
      s.contractions.emplace_back(x, copy, t);
      s.whole.add(copy, t);
      for (auto &[orig, cur] : s.env_second)
        if (cur == x) cur = copy;
      if (!env.count(x)) s.env_second[x] = copy;
    }
    f1 = fv_of(first, s.env_first, false);
    f2 = fv_of(second, s.env_second, true);
    auto pending_any = [&](const std::vector<TermPtr> &ms, const Name &x) {
      for (const auto &m : ms)
        if (pending_in(m.get(), x)) return true;
      return false;
    };
    for (const auto &[x, t] : s.whole.entries) {
      if (f1.count(x) || (!f2.count(x) && pending_any(first, x))) s.first.add(x, t);
      else s.second.add(x, t);
    }
    return s;
  }

  DerivPtr close_split(const Split &s, DerivPtr d) {
    for (auto it = s.contractions.rbegin(); it != s.contractions.rend(); ++it) {
      const auto &[x, copy, t] = *it;
      HgvContext ctx = d->ctx;
      ctx.remove(copy);
      auto c = std::make_shared<Derivation>(
          Derivation{HgvRule::Contract, ctx, rename_term(d->term, copy, x), d->type, {d}, x, copy});
      d = c;
    }
    return d;
  }

  void require_un(const HgvContext &phi, const char *rule, SourceLoc loc) {
    for (const auto &[x, t] : phi.entries)
      if (!is_unlimited(*t))
        throw TypeError(ErrorKind::UnlimitedViolation,
                        std::string(rule) + " captures linear variable " + x.base + " : " + to_string(t), loc);
  }

  void require_session(const TypePtr &t, const std::string &what, SourceLoc loc) {
    if (!is_session(*t)) throw TypeError(ErrorKind::NotSession, what + ": not a session type: " + to_string(t), loc);
  }

  DerivPtr core(const HgvContext &phi, const TermPtr &m, const Env &env) {
    SourceLoc loc = m->loc;
    switch (m->kind) {
      case TermKind::Var: {
        Name v = current(env, m->x);
        const TypePtr *t = phi.find(v);
        if (!t) throw TypeError(ErrorKind::Unbound, "unbound variable " + m->x.base, loc);
        for (const auto &[x, u] : phi.entries)
          if (!(x == v))
            throw TypeError(ErrorKind::LinearUnused, "variable " + x.base + " cannot be weakened here", loc);
        return node(HgvRule::Id, phi, tm::var(v, loc), *t);
      }
      case TermKind::Lam: {
        TypePtr t = binder_type(m);
        DerivPtr b = derive(extend(phi, m->x, t), m->a, env);
        return node(HgvRule::LinLamI, phi, tm::lam(m->x, t, b->term, loc), ty::lin_fun(t, b->type), {b});
      }
      case TermKind::App:
      case TermKind::Pair:
      case TermKind::Send:
      case TermKind::Link: {
        Split s = split(phi, env, {m->a}, {m->b}, {}, loc);
        DerivPtr d1 = derive(s.first, m->a, s.env_first);
        DerivPtr d2 = derive(s.second, m->b, s.env_second);
        DerivPtr d;
        if (m->kind == TermKind::App) {
          const TypePtr &f = d1->type;
          if (f->kind != TypeKind::LinFun) mismatch("application", ty::lin_fun(d2->type, ty::var("_")), f, loc);
          if (!type_equal(f->left, d2->type)) mismatch("argument", f->left, d2->type, m->b->loc);
          d = node(HgvRule::LinLamE, s.whole, tm::app(d1->term, d2->term, loc), f->right, {d1, d2});
        } else if (m->kind == TermKind::Pair) {
          d = node(HgvRule::TensorI, s.whole, tm::pair(d1->term, d2->term, loc), ty::tensor(d1->type, d2->type),
                   {d1, d2});
        } else if (m->kind == TermKind::Send) {
          const TypePtr &c = d2->type;
          if (c->kind != TypeKind::Output) mismatch("send", ty::output(d1->type, ty::var("_")), c, loc);
          if (!type_equal(c->left, d1->type)) mismatch("sent value", c->left, d1->type, m->a->loc);
          d = node(HgvRule::Send, s.whole, tm::send(d1->term, d2->term, loc), c->right, {d1, d2});
        } else {
          require_session(d1->type, "link", loc);
          require_session(d2->type, "link", loc);
          if (!type_equal(dual_session(d1->type), d2->type))
            throw TypeError(ErrorKind::NotDual,
                            "link endpoints not dual: " + to_string(d1->type) + " and " + to_string(d2->type), loc);
          d = node(HgvRule::Link, s.whole, tm::link(d1->term, d2->term, loc), ty::end_out(), {d1, d2});
        }
        return close_split(s, d);
      }
      case TermKind::LetPair: {
        Split s = split(phi, env, {m->a}, {m->b}, {m->x, m->y}, loc);
        DerivPtr d1 = derive(s.first, m->a, s.env_first);
        const TypePtr &t = d1->type;
        if (t->kind != TypeKind::Tensor) mismatch("pair elimination", ty::tensor(ty::var("_"), ty::var("_")), t, loc);
        DerivPtr d2 = derive(extend(extend(s.second, m->x, t->left), m->y, t->right), m->b, s.env_second);
        DerivPtr d = node(HgvRule::TensorE, s.whole, tm::let_pair(m->x, m->y, d1->term, d2->term, loc), d2->type,
                          {d1, d2});
        return close_split(s, d);
      }
      case TermKind::Case: {
        std::vector<TermPtr> bodies;
        std::set<Name> bound;
        for (const auto &arm : m->arms) {
          bodies.push_back(arm.body);
          bound.insert(arm.binder);
        }
        Split s = split(phi, env, {m->a}, bodies, bound, loc);
        DerivPtr d1 = derive(s.first, m->a, s.env_first);
        const TypePtr &c = d1->type;
        if (c->kind != TypeKind::Choice) mismatch("case", ty::choice({{Label{"_"}, ty::var("_")}}), c, loc);
        TypeBranches arm_bs;
        for (const auto &arm : m->arms) arm_bs.emplace_back(arm.label, ty::end_out());
        if (labels_of(arm_bs) != labels_of(c->branches))
          throw TypeError(ErrorKind::BranchMismatch,
                          "expected labels " + labels_of(c->branches) + ", got " + labels_of(arm_bs), loc);
        std::vector<DerivPtr> kids{d1};
        std::vector<CaseArm> arms;
        TypePtr result;
        for (const auto &arm : m->arms) {
          TypePtr s_l = *find_branch(c->branches, arm.label);
          DerivPtr d = derive(extend(s.second, arm.binder, s_l), arm.body, s.env_second);
          if (!result) result = d->type;
          else if (!type_equal(result, d->type)) mismatch("case branch " + arm.label.text, result, d->type, arm.body->loc);
          kids.push_back(d);
          arms.push_back({arm.label, arm.binder, d->term});
        }
        DerivPtr d = node(HgvRule::Case, s.whole, tm::case_(d1->term, std::move(arms), loc), result, std::move(kids));
        return close_split(s, d);
      }
      case TermKind::Fork:
      case TermKind::Serve: {
        bool fork = m->kind == TermKind::Fork;
        if (!fork) require_un(phi, "serve", loc);
        TypePtr s = binder_type(m);
        require_session(s, fork ? "fork" : "serve", loc);
        DerivPtr b = derive(extend(phi, m->x, s), m->a, env);
        if (b->type->kind != TypeKind::EndOut) mismatch(fork ? "fork body" : "serve body", ty::end_out(), b->type, loc);
        if (fork)
          return node(HgvRule::Fork, phi, tm::fork(m->x, s, b->term, loc), dual_session(s), {b});
        return node(HgvRule::Serve, phi, tm::serve(m->x, s, b->term, loc), ty::service(dual_session(s)), {b});
      }
      case TermKind::Receive: {
        DerivPtr d = derive(phi, m->a, env);
        const TypePtr &c = d->type;
        if (c->kind != TypeKind::Input) mismatch("receive", ty::input(ty::var("_"), ty::var("_")), c, loc);
        return node(HgvRule::Receive, phi, tm::receive(d->term, loc), ty::tensor(c->left, c->right), {d});
      }
      case TermKind::Select: {
        DerivPtr d = derive(phi, m->a, env);
        const TypePtr &c = d->type;
        if (c->kind != TypeKind::Select)
          throw TypeError(ErrorKind::Mismatch, "select on non-selection type " + to_string(c), loc);
        const TypePtr *b = find_branch(c->branches, m->label);
        if (!b)
          throw TypeError(ErrorKind::BranchMismatch, "label " + m->label.text + " not in " + labels_of(c->branches),
                          loc);
        return node(HgvRule::Select, phi, tm::select(m->label, d->term, loc), *b, {d});
      }
      case TermKind::SendType: {
        require_session(m->annot, "sendty", loc);
        DerivPtr d = derive(phi, m->a, env);
        const TypePtr &c = d->type;
        if (c->kind != TypeKind::OutputType)
          throw TypeError(ErrorKind::Mismatch, "sendty on " + to_string(c), loc);
        return node(HgvRule::SendType, phi, tm::send_type(m->annot, d->term, loc),
                    subst_type(c->right, c->var.ident, m->annot), {d});
      }
      case TermKind::ReceiveType: {
        for (const auto &[x, t] : phi.entries)
          if (free_tyvars(t).count(m->tyvar.ident))
            throw TypeError(ErrorKind::Mismatch,
                            "type variable " + m->tyvar.ident + " is free in the type of " + x.base, loc);
        DerivPtr d = derive(phi, m->a, env);
        const TypePtr &c = d->type;
        if (c->kind != TypeKind::InputType)
          throw TypeError(ErrorKind::Mismatch, "recvty on " + to_string(c), loc);
        return node(HgvRule::ReceiveType, phi, tm::receive_type(m->tyvar, d->term, loc),
                    subst_type(c->right, c->var.ident, ty::var(m->tyvar.ident)), {d});
      }
      case TermKind::Request: {
        DerivPtr d = derive(phi, m->a, env);
        const TypePtr &c = d->type;
        if (c->kind != TypeKind::Service) mismatch("request", ty::service(ty::var("_")), c, loc);
        return node(HgvRule::Request, phi, tm::request(d->term, loc), c->left, {d});
      }
      case TermKind::CoerceUn: {
        require_un(phi, "->-introduction", loc);
        DerivPtr d = derive(phi, m->a, env);
        TypePtr want = ty::lin_fun(m->annot->left, m->annot->right);
        if (!type_equal(want, d->type)) mismatch("coercion", want, d->type, loc);
        return node(HgvRule::UnLamI, phi, tm::coerce_un(d->term, m->annot, loc), m->annot, {d});
      }
      case TermKind::CoerceLin: {
        DerivPtr d = derive(phi, m->a, env);
        TypePtr want = ty::un_fun(m->annot->left, m->annot->right);
        if (!type_equal(want, d->type)) mismatch("coercion", want, d->type, loc);
        return node(HgvRule::UnLamE, phi, tm::coerce_lin(d->term, m->annot, loc), m->annot, {d});
      }
    }
    throw TypeError(ErrorKind::Mismatch, "unknown term", loc);
  }
};

}  // namespace

Typing typecheck(const HgvContext &ctx, const TermPtr &m, NameSupply &names, const WeakenHints *hints) {
  Inference inf;
  inf.run(m, ctx);
  Elaborator el(names, inf.binders, hints);
  el.prepare(m);
  DerivPtr d = el.derive(ctx, m, {});
  return Typing{d->type, d, d->term};
}

bool check_derivation(const DerivPtr &d, std::string *why) {
  NameSupply names(1u << 30);
  std::function<bool(const DerivPtr &)> go = [&](const DerivPtr &n) -> bool {
    try {
      Typing t = typecheck(n->ctx, n->term, names);
      if (!type_equal(t.type, n->type)) {
        if (why) *why = "node " + std::string(to_string(n->rule)) + " re-derives " + to_string(t.type);
        return false;
      }
    } catch (const TypeError &e) {
      if (why) *why = std::string("node ") + to_string(n->rule) + ": " + e.what();
      return false;
    }
    for (const auto &c : n->children)
      if (!go(c)) return false;
    return true;
  };
  return go(d);
}

PiCheck check_pi(const TermPtr &m, const TypePtr &t) {
  PiCheck r;
  auto bad = [&](const std::string &why) {
    if (r.ok) {
      r.ok = false;
      r.offender = why;
    }
  };
  if (t && !is_pure_session(t)) bad("result type " + to_string(t));
  std::function<void(const TermPtr &, bool)> go = [&](const TermPtr &n, bool fused) {
    if (!r.ok) return;
    switch (n->kind) {
      case TermKind::Lam: bad("lambda at " + print_term(n)); return;
      case TermKind::App: bad("application at " + print_term(n)); return;
      case TermKind::Pair: bad("pair at " + print_term(n)); return;
      case TermKind::CoerceUn:
      case TermKind::CoerceLin: bad("coercion at " + print_term(n)); return;
      case TermKind::Receive:
        if (!fused) {
          bad("unfused receive at " + print_term(n));
          return;
        }
        break;
      case TermKind::LetPair:
        if (n->a->kind != TermKind::Receive) {
          bad("pair elimination at " + print_term(n));
          return;
        }
        go(n->a, true);
        go(n->b, false);
        return;
      default: break;
    }
    if (n->annot && !is_pure_session(n->annot)) bad("annotation " + to_string(n->annot));
    if (n->a) go(n->a, false);
    if (n->b) go(n->b, false);
    for (const auto &arm : n->arms) go(arm.body, false);
  };
  go(m, false);
  return r;
}

TermPtr desugar_let(const Name &x, const TermPtr &m, const TermPtr &n, HgvMode mode, NameSupply &names,
                    const TypePtr &xty) {
  if (mode == HgvMode::Full) return tm::app(tm::lam(x, xty, n, n->loc), m, m->loc);
  Name z = names.fresh("z");
  Name z2 = names.fresh("z");
  TermPtr body = tm::let_pair(x, z2, tm::receive(tm::var(z)), tm::link(n, tm::var(z2)));
  TypePtr zty = xty ? ty::input(xty, ty::end_in()) : nullptr;
  return tm::send(m, tm::fork(z, zty, body), m->loc);
}

TermPtr desugar_with(const Name &xm, const TermPtr &m, const Name &xn, const TermPtr &n, HgvMode mode,
                     NameSupply &names) {
  return desugar_let(xn, tm::fork(xm, nullptr, m, m->loc), n, mode, names);
}

}  // namespace sessc
