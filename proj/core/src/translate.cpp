#include "sessc/translate.hpp"

#include <map>

namespace sessc {

// ===========================================================================
// HGV -> HGVpi

TypePtr tr_type_pi(const TypePtr &t) {
  switch (t->kind) {
    case TypeKind::LinFun: return ty::output(tr_type_pi(t->left), tr_type_pi(t->right));
    case TypeKind::UnFun: return ty::service(ty::output(tr_type_pi(t->left), tr_type_pi(t->right)));
    case TypeKind::Tensor: return ty::input(tr_type_pi(t->left), tr_type_pi(t->right));
    case TypeKind::Output: return ty::output(tr_type_pi(t->left), tr_type_pi(t->right));
    case TypeKind::Input: return ty::input(tr_type_pi(t->left), tr_type_pi(t->right));
    case TypeKind::Select:
    case TypeKind::Choice: {
      TypeBranches bs;
      for (const auto &[l, s] : t->branches) bs.emplace_back(l, tr_type_pi(s));
      return t->kind == TypeKind::Select ? ty::select(std::move(bs)) : ty::choice(std::move(bs));
    }
    case TypeKind::OutputType: return ty::output_type(t->var, tr_type_pi(t->right));
    case TypeKind::InputType: return ty::input_type(t->var, tr_type_pi(t->right));
    case TypeKind::Server: return ty::server(tr_type_pi(t->left));
    case TypeKind::Service: return ty::service(tr_type_pi(t->left));
    case TypeKind::EndOut:
    case TypeKind::EndIn:
    case TypeKind::Var:
    case TypeKind::Meta: return t;
  }
  return t;
}

HgvContext tr_context_pi(const HgvContext &ctx) {
  HgvContext out;
  for (const auto &[x, t] : ctx.entries) out.add(x, tr_type_pi(t));
  return out;
}

namespace {

TypePtr annot_pi(const TypePtr &t) { return t ? tr_type_pi(t) : nullptr; }

class PiTranslator {
 public:
  explicit PiTranslator(NameSupply &names) : names_(names) {}

  TermPtr go(const DerivPtr &d) {
    const TermPtr &m = d->term;
    const auto &k = d->children;
    switch (d->rule) {
      case HgvRule::Weaken: return go(k[0]);
      case HgvRule::Contract: return rename_term(go(k[0]), d->copy, d->name);
      case HgvRule::Id: return m;
      case HgvRule::LinLamI: {
        // fork z. let (x, z') = receive z in link N z'
        TypePtr t = tr_type_pi(m->annot), u = tr_type_pi(k[0]->type);
        Name z = names_.fresh("z"), z2 = names_.fresh("z");
        TermPtr body = tm::let_pair(m->x, z2, tm::receive(tm::var(z)), tm::link(go(k[0]), tm::var(z2)));
        return tm::fork(z, ty::input(t, dual_session(u)), body, m->loc);
      }
      case HgvRule::LinLamE: return tm::send(go(k[1]), go(k[0]), m->loc);
      case HgvRule::TensorI: {
        // fork z. link (send M z) N
        TypePtr t = tr_type_pi(k[0]->type), u = tr_type_pi(k[1]->type);
        Name z = names_.fresh("z");
        TermPtr body = tm::link(tm::send(go(k[0]), tm::var(z)), go(k[1]));
        return tm::fork(z, ty::output(t, dual_session(u)), body, m->loc);
      }
      case HgvRule::TensorE: return tm::let_pair(m->x, m->y, tm::receive(go(k[0])), go(k[1]), m->loc);
      case HgvRule::Receive: return go(k[0]);
      case HgvRule::UnLamI: {
        // serve z. link L z
        TypePtr t = tr_type_pi(m->annot->left), u = tr_type_pi(m->annot->right);
        Name z = names_.fresh("z");
        return tm::serve(z, ty::input(t, dual_session(u)), tm::link(go(k[0]), tm::var(z)), m->loc);
      }
      case HgvRule::UnLamE: return tm::request(go(k[0]), m->loc);
      case HgvRule::Send: return tm::send(go(k[0]), go(k[1]), m->loc);
      case HgvRule::Select: return tm::select(m->label, go(k[0]), m->loc);
      case HgvRule::Case: {
        std::vector<CaseArm> arms;
        for (std::size_t i = 0; i < m->arms.size(); ++i)
          arms.push_back({m->arms[i].label, m->arms[i].binder, go(k[i + 1])});
        return tm::case_(go(k[0]), std::move(arms), m->loc);
      }
      case HgvRule::Fork: return tm::fork(m->x, annot_pi(m->annot), go(k[0]), m->loc);
      case HgvRule::Serve: return tm::serve(m->x, annot_pi(m->annot), go(k[0]), m->loc);
      case HgvRule::Link: return tm::link(go(k[0]), go(k[1]), m->loc);
      case HgvRule::SendType: return tm::send_type(tr_type_pi(m->annot), go(k[0]), m->loc);
      case HgvRule::ReceiveType: return tm::receive_type(m->tyvar, go(k[0]), m->loc);
      case HgvRule::Request: return tm::request(go(k[0]), m->loc);
    }
    throw TranslationError("unknown derivation rule");
  }

 private:
  NameSupply &names_;
};

}  // namespace

TermPtr tr_term_pi(const DerivPtr &d, NameSupply &names) { return PiTranslator(names).go(d); }

// ===========================================================================
// HGVpi -> CP

PropPtr tr_type_cp(const TypePtr &t) {
  switch (t->kind) {
    case TypeKind::Output: return pr::tensor(dual_prop(tr_type_cp(t->left)), tr_type_cp(t->right));
    case TypeKind::Input: return pr::par(tr_type_cp(t->left), tr_type_cp(t->right));
    case TypeKind::Select:
    case TypeKind::Choice: {
      PropBranches bs;
      for (const auto &[l, s] : t->branches) bs.emplace_back(l, tr_type_cp(s));
      return t->kind == TypeKind::Select ? pr::plus(std::move(bs)) : pr::with(std::move(bs));
    }
    case TypeKind::EndOut: return pr::one();
    case TypeKind::EndIn: return pr::bottom();
    case TypeKind::Var: return pr::var(t->var);
    case TypeKind::OutputType: return pr::exists(t->var, tr_type_cp(t->right));
    case TypeKind::InputType: return pr::forall(t->var, tr_type_cp(t->right));
    case TypeKind::Server: return pr::of_course(tr_type_cp(t->left));
    case TypeKind::Service: return pr::why_not(tr_type_cp(t->left));
    case TypeKind::LinFun:
    case TypeKind::UnFun:
    case TypeKind::Tensor: return dual_prop(flip(t));
    case TypeKind::Meta: break;
  }
  throw TranslationError("cannot translate type " + to_string(t));
}

PropPtr flip(const TypePtr &t) {
  switch (t->kind) {
    case TypeKind::LinFun: return pr::par(dual_prop(flip(t->left)), flip(t->right));
    case TypeKind::UnFun: return pr::of_course(pr::par(dual_prop(flip(t->left)), flip(t->right)));
    case TypeKind::Tensor: return pr::tensor(flip(t->left), flip(t->right));
    default: return dual_prop(tr_type_cp(t));
  }
}

CpContext tr_context_cp(const HgvContext &ctx) {
  CpContext out;
  for (const auto &[x, t] : ctx.entries) out.add(x, tr_type_cp(t));
  return out;
}

namespace {

class CpTranslator {
 public:
  CpTranslator(NameSupply &names, bool direct) : names_(names), direct_(direct) {}

  // Process for d with continuation z : dual [T].
  ProcPtr go(const DerivPtr &d, const Name &z) {
    const TermPtr &m = d->term;
    const auto &k = d->children;
    switch (d->rule) {
      case HgvRule::Weaken: {
        const TypePtr &t = *d->ctx.find(d->name);
        ProcPtr p = go(k[0], z);
        return t->kind == TypeKind::EndIn ? proc::empty_in(d->name, p) : p;
      }
      case HgvRule::Contract: {
        const TypePtr &t = *d->ctx.find(d->name);
        ProcPtr p = go(k[0], z);
        if (t->kind == TypeKind::EndIn) return proc::cut(d->copy, pr::bottom(), p, proc::empty_out(d->copy));
        return rename_process(p, d->name, d->copy);
      }
      case HgvRule::Id: return proc::link(m->x, z);
      case HgvRule::Send: {
        // new x (x[y].(M y | x <-> z) | N x)
        Name x = names_.fresh("x"), y = names_.fresh("y");
        ProcPtr left = proc::out(x, y, go(k[0], y), proc::link(x, z));
        return proc::cut(x, ty_of(k[1]), left, go(k[1], x));
      }
      case HgvRule::TensorE: {
        // new y (M y | y(x). N z); a fused receive is erased by the Receive case
        const Name &x = m->x, &y = m->y;
        if (!direct_ && k[0]->term->kind != TermKind::Receive) outside("pair elimination");
        return proc::cut(y, dual_ty_of(k[0]), go(k[0], y), proc::in(y, x, go(k[1], z)));
      }
      case HgvRule::Receive: return go(k[0], z);
      case HgvRule::Select: {
        Name x = names_.fresh("x");
        return proc::cut(x, dual_ty_of(k[0]), go(k[0], x), proc::inject(x, m->label, proc::link(x, z)));
      }
      case HgvRule::Case: {
        Name x = names_.fresh("x");
        ProcBranches bs;
        for (std::size_t i = 0; i < m->arms.size(); ++i)
          bs.emplace_back(m->arms[i].label, rename_process(go(k[i + 1], z), x, m->arms[i].binder));
        return proc::cut(x, dual_ty_of(k[0]), go(k[0], x), proc::case_(x, std::move(bs)));
      }
      case HgvRule::Fork: {
        // new x (new y (M y | y[]) | x <-> z)
        Name y = names_.fresh("y");
        ProcPtr inner = proc::cut(y, pr::bottom(), go(k[0], y), proc::empty_out(y));
        return proc::cut(m->x, tr_type_cp(m->annot), inner, proc::link(m->x, z));
      }
      case HgvRule::Link: {
        Name x = names_.fresh("x");
        return proc::empty_in(z, proc::cut(x, dual_ty_of(k[0]), go(k[0], x), go(k[1], x)));
      }
      case HgvRule::SendType: {
        Name x = names_.fresh("x");
        ProcPtr right = proc::out_type(x, tr_type_cp(m->annot), proc::link(x, z));
        return proc::cut(x, dual_ty_of(k[0]), go(k[0], x), right);
      }
      case HgvRule::ReceiveType: {
        Name x = names_.fresh("x");
        ProcPtr right = proc::in_type(x, m->tyvar, proc::link(x, z));
        return proc::cut(x, dual_ty_of(k[0]), go(k[0], x), right);
      }
      case HgvRule::Serve: {
        Name x = names_.fresh("x");
        return proc::bang(z, m->x, proc::cut(x, pr::bottom(), go(k[0], x), proc::empty_out(x)));
      }
      case HgvRule::Request: {
        Name x = names_.fresh("x"), y = names_.fresh("y");
        return proc::cut(x, dual_ty_of(k[0]), go(k[0], x), proc::query(x, y, proc::link(y, z)));
      }
      // Non-session constructs: the direct extension.
      case HgvRule::LinLamI:
        if (!direct_) outside("lambda");
        return proc::in(z, m->x, go(k[0], z));
      case HgvRule::LinLamE: {
        if (!direct_) outside("application");
        Name y = names_.fresh("y"), x = names_.fresh("x");
        ProcPtr right = proc::out(y, x, go(k[1], x), proc::link(y, z));
        return proc::cut(y, dual_ty_of(k[0]), go(k[0], y), right);
      }
      case HgvRule::UnLamI: {
        if (!direct_) outside("->-introduction");
        Name y = names_.fresh("y");
        return proc::bang(z, y, go(k[0], y));
      }
      case HgvRule::UnLamE: {
        if (!direct_) outside("->-elimination");
        Name y = names_.fresh("y"), x = names_.fresh("x");
        return proc::cut(y, dual_ty_of(k[0]), go(k[0], y), proc::query(y, x, proc::link(x, z)));
      }
      case HgvRule::TensorI: {
        if (!direct_) outside("pair");
        Name y = names_.fresh("y");
        return proc::out(z, y, go(k[0], y), go(k[1], z));
      }
    }
    throw TranslationError("unknown derivation rule");
  }

 private:
  NameSupply &names_;
  bool direct_;

  [[noreturn]] void outside(const std::string &what) {
    throw TranslationError(what + " is not HGVpi; lower to HGVpi first or use direct mode");
  }
  static PropPtr ty_of(const DerivPtr &d) { return tr_type_cp(d->type); }
  static PropPtr dual_ty_of(const DerivPtr &d) { return dual_prop(tr_type_cp(d->type)); }
};

}  // namespace

ProcPtr tr_term_cp(const DerivPtr &d, const Name &z, NameSupply &names, bool direct) {
  return CpTranslator(names, direct).go(d, z);
}

// ===========================================================================
// CP -> HGVpi

TypePtr tr_cp_gv_type(const PropPtr &a) {
  switch (a->kind) {
    case PropKind::Tensor: return ty::output(dual_session(tr_cp_gv_type(a->left)), tr_cp_gv_type(a->right));
    case PropKind::Par: return ty::input(tr_cp_gv_type(a->left), tr_cp_gv_type(a->right));
    case PropKind::Plus:
    case PropKind::With: {
      TypeBranches bs;
      for (const auto &[l, b] : a->branches) bs.emplace_back(l, tr_cp_gv_type(b));
      return a->kind == PropKind::Plus ? ty::select(std::move(bs)) : ty::choice(std::move(bs));
    }
    case PropKind::One: return ty::end_out();
    case PropKind::Bottom: return ty::end_in();
    case PropKind::OfCourse: return ty::server(tr_cp_gv_type(a->left));
    case PropKind::WhyNot: return ty::service(tr_cp_gv_type(a->left));
    case PropKind::Exists: return ty::output_type(a->var, tr_cp_gv_type(a->right));
    case PropKind::Forall: return ty::input_type(a->var, tr_cp_gv_type(a->right));
    case PropKind::Var: return ty::var(a->var);
    case PropKind::Meta: break;
  }
  throw TranslationError("cannot translate proposition " + to_string(a));
}

HgvContext tr_context_gv(const CpContext &ctx) {
  HgvContext out;
  for (const auto &[x, a] : ctx.entries) out.add(x, tr_cp_gv_type(a));
  return out;
}

namespace {

class GvTranslator {
 public:
  explicit GvTranslator(NameSupply &names) : names_(names) {}
  WeakenHints hints;

  // env: CP name -> (current HGV name, its proposition)
  struct Entry {
    Name name;
    PropPtr prop;
  };
  using Env = std::map<Name, Entry>;

  TermPtr go(Env env, const ProcPtr &p) {
    switch (p->kind) {
      case ProcKind::Link: return tm::link(var(env, p->chan), var(env, p->fresh));
      case ProcKind::EmptyOut: return var(env, p->chan);
      case ProcKind::EmptyIn: {
        Name x = at(env, p->chan).name;
        env.erase(p->chan);
        TermPtr n = go(env, p->p);
        hints[n.get()].push_back(x);
        return n;
      }
      case ProcKind::Cut: {
        // let x = fork x. P in Q
        if (!p->prop) throw TranslationError("cut on " + p->fresh.base + " is not annotated");
        Name xp = names_.fresh_like(p->fresh), xq = names_.fresh_like(p->fresh);
        Env ep = env, eq = env;
        ep[p->fresh] = {xp, p->prop};
        eq[p->fresh] = {xq, dual_prop(p->prop)};
        TypePtr a = tr_cp_gv_type(p->prop);
        TermPtr forked = tm::fork(xp, a, go(ep, p->p));
        return let(xq, dual_session(a), forked, go(eq, p->q));
      }
      case ProcKind::Out: {
        // let x = send (fork y. P) x in Q
        const Entry &e = at(env, p->chan);
        const PropPtr &t = e.prop;
        Name y = names_.fresh_like(p->fresh), x2 = names_.fresh_like(p->chan);
        Env ep = env, eq = env;
        ep.erase(p->chan);
        ep[p->fresh] = {y, t->left};
        eq[p->chan] = {x2, t->right};
        TermPtr payload = tm::fork(y, tr_cp_gv_type(t->left), go(ep, p->p));
        return let(x2, tr_cp_gv_type(t->right), tm::send(payload, tm::var(e.name)), go(eq, p->q));
      }
      case ProcKind::In: {
        // let (y, x) = receive x in P
        const Entry e = at(env, p->chan);
        Name y = names_.fresh_like(p->fresh), x2 = names_.fresh_like(p->chan);
        env[p->fresh] = {y, e.prop->left};
        env[p->chan] = {x2, e.prop->right};
        return tm::let_pair(y, x2, tm::receive(tm::var(e.name)), go(env, p->p));
      }
      case ProcKind::Inject: {
        const Entry e = at(env, p->chan);
        const PropPtr *b = branch(e.prop, p->label);
        Name x2 = names_.fresh_like(p->chan);
        env[p->chan] = {x2, *b};
        return let(x2, tr_cp_gv_type(*b), tm::select(p->label, tm::var(e.name)), go(env, p->p));
      }
      case ProcKind::Case: {
        const Entry e = at(env, p->chan);
        std::vector<CaseArm> arms;
        for (const auto &[l, q] : p->branches) {
          Name x2 = names_.fresh_like(p->chan);
          Env el = env;
          el[p->chan] = {x2, *branch(e.prop, l)};
          arms.push_back({l, x2, go(el, q)});
        }
        return tm::case_(tm::var(e.name), std::move(arms));
      }
      case ProcKind::OutType: {
        const Entry e = at(env, p->chan);
        PropPtr b = subst_prop(e.prop->right, e.prop->var.ident, p->prop);
        Name x2 = names_.fresh_like(p->chan);
        env[p->chan] = {x2, b};
        return let(x2, tr_cp_gv_type(b), tm::send_type(tr_cp_gv_type(p->prop), tm::var(e.name)), go(env, p->p));
      }
      case ProcKind::InType: {
        const Entry e = at(env, p->chan);
        PropPtr b = subst_prop(e.prop->right, e.prop->var.ident, pr::var(p->tyvar.ident));
        Name x2 = names_.fresh_like(p->chan);
        env[p->chan] = {x2, b};
        return let(x2, tr_cp_gv_type(b), tm::receive_type(p->tyvar, tm::var(e.name)), go(env, p->p));
      }
      case ProcKind::Bang: {
        // link s (serve x. P)
        const Entry e = at(env, p->chan);
        Name x = names_.fresh_like(p->fresh);
        env.erase(p->chan);
        env[p->fresh] = {x, e.prop->left};
        TermPtr served = tm::serve(x, tr_cp_gv_type(e.prop->left), go(env, p->p));
        return tm::link(tm::var(e.name), served);
      }
      case ProcKind::Query: {
        // let x = request s in P; s stays available
        const Entry e = at(env, p->chan);
        Name x = names_.fresh_like(p->fresh);
        env[p->fresh] = {x, e.prop->left};
        return let(x, tr_cp_gv_type(e.prop->left), tm::request(tm::var(e.name)), go(env, p->p));
      }
    }
    throw TranslationError("unknown process");
  }

 private:
  NameSupply &names_;

  static const Entry &at(const Env &env, const Name &x) {
    auto it = env.find(x);
    if (it == env.end()) throw TranslationError("name " + x.base + " is not in the context");
    return it->second;
  }
  static TermPtr var(const Env &env, const Name &x) { return tm::var(at(env, x).name); }
  static const PropPtr *branch(const PropPtr &a, const Label &l) {
    for (const auto &[k, b] : a->branches)
      if (k == l) return &b;
    throw TranslationError("label " + l.text + " missing from " + to_string(a));
  }
  TermPtr let(const Name &x, const TypePtr &t, const TermPtr &m, const TermPtr &n) {
    return desugar_let(x, m, n, HgvMode::Pi, names_, t);
  }
};

}  // namespace

GvImage tr_cp_gv(const CpContext &ctx, const ProcPtr &p, NameSupply &names) {
  GvTranslator tr(names);
  GvTranslator::Env env;
  for (const auto &[x, a] : ctx.entries) env[x] = {x, a};
  TermPtr m = tr.go(env, p);
  return GvImage{m, std::move(tr.hints)};
}

}  // namespace sessc
