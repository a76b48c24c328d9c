#include "sessc/gen.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sessc/cp.hpp"
#include "sessc/hgv.hpp"
#include "sessc/syntax.hpp"

namespace sessc {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  // modulo rather than a distribution: the std distributions are not
  // specified bit for bit across library versions
  int below(int n) { return static_cast<int>(g_() % static_cast<std::uint64_t>(n)); }
  bool chance(int pct) { return below(100) < pct; }
  template <class T>
  const T &pick(const std::vector<T> &v) {
    return v[static_cast<std::size_t>(below(static_cast<int>(v.size())))];
  }

 private:
  std::mt19937_64 g_;
};

const Label kL{"l"}, kR{"r"};

// ---------------------------------------------------------------------------
// Types and propositions.

class TypeGen {
 public:
  TypeGen(Rng &rng, bool functional) : rng_(rng), functional_(functional) {}

  TypePtr session(int depth) {
    if (depth <= 0 || rng_.chance(15)) return base();
    switch (rng_.below(10)) {
      case 0:
      case 1: return ty::output(payload(depth - 1), session(depth - 1));
      case 2:
      case 3: return ty::input(payload(depth - 1), session(depth - 1));
      case 4: return ty::select({{kL, session(depth - 1)}, {kR, session(depth - 1)}});
      case 5: return ty::choice({{kL, session(depth - 1)}, {kR, session(depth - 1)}});
      case 6:
      case 7: {
        TypeVar x{"X" + std::to_string(scope_.size())};
        scope_.push_back(x.ident);
        TypePtr body = session(depth - 1);
        scope_.pop_back();
        return rng_.chance(50) ? ty::output_type(x, body) : ty::input_type(x, body);
      }
      case 8: return ty::server(session(depth - 1));
      default: return ty::service(session(depth - 1));
    }
  }

  TypePtr payload(int depth) {
    if (functional_ && depth > 0 && rng_.chance(30)) {
      switch (rng_.below(3)) {
        case 0: return ty::lin_fun(payload(depth - 1), payload(depth - 1));
        case 1: return ty::un_fun(payload(depth - 1), payload(depth - 1));
        default: return ty::tensor(payload(depth - 1), payload(depth - 1));
      }
    }
    return session(depth);
  }

  // Closed session types only (no type variables anywhere).
  TypePtr closed(int depth) {
    auto saved = std::move(scope_);
    scope_.clear();
    bool f = functional_;
    functional_ = false;
    TypePtr t;
    do t = session(depth);
    while (!free_tyvars(t).empty());
    functional_ = f;
    scope_ = std::move(saved);
    return t;
  }

  PropPtr prop(int depth) {
    if (depth <= 0 || rng_.chance(15)) {
      if (!pscope_.empty() && rng_.chance(40)) return pr::var(rng_.pick(pscope_), rng_.chance(50));
      return rng_.chance(50) ? pr::one() : pr::bottom();
    }
    switch (rng_.below(10)) {
      case 0: return pr::tensor(prop(depth - 1), prop(depth - 1));
      case 1: return pr::par(prop(depth - 1), prop(depth - 1));
      case 2: return pr::plus({{kL, prop(depth - 1)}, {kR, prop(depth - 1)}});
      case 3: return pr::with({{kL, prop(depth - 1)}, {kR, prop(depth - 1)}});
      case 4: return pr::of_course(prop(depth - 1));
      case 5: return pr::why_not(prop(depth - 1));
      case 6:
      case 7: {
        TypeVar x{"X" + std::to_string(pscope_.size())};
        pscope_.push_back(x.ident);
        PropPtr body = prop(depth - 1);
        pscope_.pop_back();
        return rng_.chance(50) ? pr::exists(x, body) : pr::forall(x, body);
      }
      default: return rng_.chance(50) ? pr::one() : pr::bottom();
    }
  }

 private:
  TypePtr base() {
    if (!scope_.empty() && rng_.chance(40)) return ty::var(rng_.pick(scope_), rng_.chance(50));
    return rng_.chance(50) ? ty::end_out() : ty::end_in();
  }

  Rng &rng_;
  bool functional_;
  std::vector<std::string> scope_, pscope_;
};

// ---------------------------------------------------------------------------
// HGV terms, bottom up. Every piece carries its own context; names are fresh
// so contexts of sibling pieces are disjoint, except unlimited names drawn
// from the shared pool (which is how Contract shows up).

struct Piece {
  TermPtr m;
  TypePtr t;
  HgvContext ctx;
};

void merge_into(HgvContext &a, const HgvContext &b) {
  for (const auto &[n, t] : b.entries)
    if (!a.contains(n)) a.add(n, t);
}

HgvContext without(HgvContext c, const Name &x) {
  c.remove(x);
  return c;
}

class TermGen {
 public:
  TermGen(Rng &rng, NameSupply &names, bool functional) : rng_(rng), names_(names), types_(rng, functional) {}

  Piece gen(int d, bool end) {
    if (d <= 0) return leaf(end ? ty::end_out() : small_type());
    for (int attempt = 0; attempt < 8; ++attempt) {
      std::optional<Piece> p;
      if (end) {
        switch (rng_.below(10)) {
          case 0: p = leaf(ty::end_out()); break;
          case 1:
          case 2: p = link(d); break;
          case 3: p = send(d, ty::end_out()); break;
          case 4: p = app(d, true); break;
          case 5: p = let_pair(d, true); break;
          case 6: p = select(d, ty::end_out()); break;
          case 7: p = request(d, ty::end_out()); break;
          case 8: p = case_(d, true); break;
          default: p = recv_type(d, ty::end_out()); break;
        }
      } else {
        switch (rng_.below(18)) {
          case 0: p = leaf(small_type()); break;
          case 1:
          case 2: p = lam(d, false); break;
          case 3:
          case 4: p = app(d, false); break;
          case 5: p = pair(d); break;
          case 6: p = let_pair(d, false); break;
          case 7: p = send(d, types_.session(2)); break;
          case 8: p = receive(d); break;
          case 9: p = select(d, types_.session(2)); break;
          case 10: p = case_(d, false); break;
          case 11:
          case 12: p = fork(d); break;
          case 13: p = link(d); break;
          case 14: p = send_type(d); break;
          case 15: p = serve(d); break;
          case 16: p = coerce_un(d); break;
          default: p = coerce_lin(d); break;
        }
      }
      if (p) return *p;
    }
    return leaf(end ? ty::end_out() : small_type());
  }

 private:
  Rng &rng_;
  NameSupply &names_;
  TypeGen types_;
  std::vector<std::pair<Name, TypePtr>> pool_;  // reusable unlimited names
  int tyvars_ = 0;

  TypePtr small_type() { return rng_.chance(70) ? types_.session(2) : types_.payload(2); }

  static std::string base_for(const TypePtr &t) {
    switch (t->kind) {
      case TypeKind::LinFun:
      case TypeKind::UnFun: return "f";
      case TypeKind::Tensor: return "p";
      case TypeKind::Service: return "s";
      case TypeKind::EndIn: return "e";
      default: return "c";
    }
  }

  bool pooled(const Name &n) const {
    for (const auto &[m, t] : pool_)
      if (m == n) return true;
    return false;
  }

  Piece leaf(const TypePtr &t) {
    if (is_unlimited(*t)) {
      if (rng_.chance(40))
        for (const auto &[n, u] : pool_)
          if (type_identical(u, t)) return Piece{tm::var(n), t, {{{n, t}}}};
      Name n = names_.fresh(base_for(t));
      pool_.emplace_back(n, t);
      return Piece{tm::var(n), t, {{{n, t}}}};
    }
    Name n = names_.fresh(base_for(t));
    return Piece{tm::var(n), t, {{{n, t}}}};
  }

  // A name of the piece's context that a binder may capture.
  std::optional<std::pair<Name, TypePtr>> binder(const HgvContext &c, bool session_only) {
    std::vector<std::pair<Name, TypePtr>> ok;
    for (const auto &[n, t] : c.entries)
      if (!pooled(n) && (!session_only || is_session(*t))) ok.emplace_back(n, t);
    if (ok.empty()) return std::nullopt;
    return rng_.pick(ok);
  }

  Piece of_type(const TypePtr &t, int d) {
    if (d > 0 && t->kind == TypeKind::Tensor && rng_.chance(50)) {
      Piece a = of_type(t->left, d - 1), b = of_type(t->right, d - 1);
      merge_into(a.ctx, b.ctx);
      return Piece{tm::pair(a.m, b.m), t, a.ctx};
    }
    return leaf(t);
  }

  std::optional<Piece> lam(int d, bool end) {
    Piece b = gen(d - 1, end);
    auto x = binder(b.ctx, false);
    if (!x) {
      Name v = names_.fresh("e");
      return Piece{tm::lam(v, ty::end_in(), b.m), ty::lin_fun(ty::end_in(), b.t), b.ctx};
    }
    return Piece{tm::lam(x->first, x->second, b.m), ty::lin_fun(x->second, b.t), without(b.ctx, x->first)};
  }

  std::optional<Piece> app(int d, bool end) {
    std::optional<Piece> f;
    if (rng_.chance(25) && !end) f = coerce_lin(d);
    else f = lam(d - 1 > 0 ? d - 1 : 1, end);
    if (!f || f->t->kind != TypeKind::LinFun) return std::nullopt;
    Piece a = of_type(f->t->left, d - 1);
    merge_into(f->ctx, a.ctx);
    return Piece{tm::app(f->m, a.m), f->t->right, f->ctx};
  }

  std::optional<Piece> pair(int d) {
    Piece a = gen(d - 1, false), b = gen(d - 1, false);
    merge_into(a.ctx, b.ctx);
    return Piece{tm::pair(a.m, b.m), ty::tensor(a.t, b.t), a.ctx};
  }

  std::optional<Piece> let_pair(int d, bool end) {
    Piece n = gen(d - 1, end);
    auto a = binder(n.ctx, false);
    if (!a) return std::nullopt;
    auto b = binder(without(n.ctx, a->first), false);
    if (!b) return std::nullopt;
    Piece m = is_session(*b->second) && rng_.chance(50)
                  ? [&] {
                      Piece c = leaf(ty::input(a->second, b->second));
                      return Piece{tm::receive(c.m), ty::tensor(a->second, b->second), c.ctx};
                    }()
                  : of_type(ty::tensor(a->second, b->second), d - 1);
    HgvContext ctx = without(without(n.ctx, a->first), b->first);
    merge_into(ctx, m.ctx);
    return Piece{tm::let_pair(a->first, b->first, m.m, n.m), n.t, ctx};
  }

  std::optional<Piece> send(int d, const TypePtr &cont) {
    Piece p = gen(d - 1, false);
    Piece c = leaf(ty::output(p.t, cont));
    merge_into(p.ctx, c.ctx);
    return Piece{tm::send(p.m, c.m), cont, p.ctx};
  }

  std::optional<Piece> receive(int) {
    TypePtr t = small_type(), s = types_.session(2);
    Piece c = leaf(ty::input(t, s));
    return Piece{tm::receive(c.m), ty::tensor(t, s), c.ctx};
  }

  std::optional<Piece> select(int, const TypePtr &s) {
    TypePtr other = types_.session(2);
    bool left = rng_.chance(50);
    TypeBranches bs = left ? TypeBranches{{kL, s}, {kR, other}} : TypeBranches{{kL, other}, {kR, s}};
    Piece c = leaf(ty::select(bs));
    return Piece{tm::select(left ? kL : kR, c.m), s, c.ctx};
  }

  // Both arms come from the same random choices, so they share a context up
  // to renaming; the copy is renamed back onto the first arm's names.
  std::optional<Piece> case_(int d, bool end) {
    Rng saved = rng_;
    auto pool = pool_;
    Piece b1 = gen(d - 1, end);
    auto x = binder(b1.ctx, true);
    if (!x) return std::nullopt;
    Rng after = rng_;
    auto pool_after = pool_;
    rng_ = saved;
    pool_ = pool;
    Piece b2 = gen(d - 1, end);
    auto x2 = binder(b2.ctx, true);
    rng_ = after;
    pool_ = pool_after;
    if (!x2 || b1.ctx.size() != b2.ctx.size()) return std::nullopt;
    TermPtr m2 = b2.m;
    for (std::size_t i = 0; i < b1.ctx.size(); ++i) {
      const Name &from = b2.ctx.entries[i].first, &to = b1.ctx.entries[i].first;
      if (from == x2->first || from == to) continue;
      m2 = rename_term(m2, from, to);
    }
    Piece c = leaf(ty::choice({{kL, x->second}, {kR, x2->second}}));
    HgvContext ctx = without(b1.ctx, x->first);
    merge_into(ctx, c.ctx);
    return Piece{tm::case_(c.m, {CaseArm{kL, x->first, b1.m}, CaseArm{kR, x2->first, m2}}), b1.t, ctx};
  }

  std::optional<Piece> fork(int d) {
    Piece b = gen(d - 1, true);
    auto x = binder(b.ctx, true);
    if (!x) return std::nullopt;
    // unannotated forks are often ambiguous for inference
    return Piece{tm::fork(x->first, x->second, b.m), dual_session(x->second), without(b.ctx, x->first)};
  }

  std::optional<Piece> link(int d) {
    Piece p = gen(d - 1, false);
    if (!is_session(*p.t)) return std::nullopt;
    Piece q = leaf(dual_session(p.t));
    merge_into(p.ctx, q.ctx);
    TermPtr m = rng_.chance(50) ? tm::link(p.m, q.m) : tm::link(q.m, p.m);
    return Piece{m, ty::end_out(), p.ctx};
  }

  std::optional<Piece> send_type(int) {
    TypeVar x{"X" + std::to_string(tyvars_++)};
    TypePtr body = rng_.chance(50) ? ty::var(x) : ty::output(ty::var(x), ty::end_out());
    TypePtr a = types_.closed(2);
    Piece c = leaf(ty::output_type(x, body));
    return Piece{tm::send_type(a, c.m), subst_type(body, x.ident, a), c.ctx};
  }

  // The binder is vacuous: a result type mentioning it is outside what the
  // CP side condition accepts.
  std::optional<Piece> recv_type(int, const TypePtr &s) {
    TypeVar x{"X" + std::to_string(tyvars_++)}, y{"Y" + std::to_string(tyvars_++)};
    Piece c = leaf(ty::input_type(x, s));
    return Piece{tm::receive_type(y, c.m), s, c.ctx};
  }

  // Serve bodies use nothing but the binder and services.
  std::optional<Piece> serve(int) {
    Name x = names_.fresh("c");
    if (rng_.chance(40))
      return Piece{tm::serve(x, ty::end_out(), tm::var(x)), ty::service(ty::end_in()), {}};
    TypePtr s = types_.closed(2);
    Piece srv = leaf(ty::service(dual_session(s)));
    return Piece{tm::serve(x, s, tm::link(tm::var(x), tm::request(srv.m))), ty::service(dual_session(s)), srv.ctx};
  }

  std::optional<Piece> request(int, const TypePtr &s) {
    Piece c = leaf(ty::service(s));
    return Piece{tm::request(c.m), s, c.ctx};
  }

  std::optional<Piece> coerce_un(int) {
    TypePtr a = types_.closed(1);
    Name x = names_.fresh("v");
    TermPtr body;
    TypePtr cod;
    HgvContext ctx;
    switch (rng_.below(3)) {
      case 0:
        body = tm::var(x);
        cod = a;
        break;
      case 1: {
        TypePtr s = types_.closed(1);
        Piece srv = leaf(ty::service(ty::output(a, s)));
        body = tm::send(tm::var(x), tm::request(srv.m));
        cod = s;
        ctx = srv.ctx;
        break;
      }
      default: {
        TypePtr s = types_.closed(1);
        Piece srv = leaf(ty::service(s));
        body = tm::pair(tm::var(x), tm::request(srv.m));
        cod = ty::tensor(a, s);
        ctx = srv.ctx;
        break;
      }
    }
    TypePtr t = ty::un_fun(a, cod);
    return Piece{tm::coerce_un(tm::lam(x, a, body), t), t, ctx};
  }

  std::optional<Piece> coerce_lin(int d) {
    Piece f = rng_.chance(50) ? *coerce_un(d) : leaf(ty::un_fun(types_.closed(1), types_.closed(1)));
    TypePtr t = ty::lin_fun(f.t->left, f.t->right);
    return Piece{tm::coerce_lin(f.m, t), t, f.ctx};
  }
};

// ---------------------------------------------------------------------------
// CP processes, bottom up, with cuts against a partner built top down.

struct PPiece {
  ProcPtr p;
  CpContext ctx;
};

void merge_into(CpContext &a, const CpContext &b) {
  for (const auto &[n, t] : b.entries)
    if (!a.contains(n)) a.add(n, t);
}

CpContext without(CpContext c, const Name &x) {
  c.remove(x);
  return c;
}

class ProcGen {
 public:
  ProcGen(Rng &rng, NameSupply &names) : rng_(rng), names_(names), types_(rng, false) {}

  PPiece gen(int d) {
    if (d <= 0) return atom();
    switch (rng_.below(14)) {
      case 0: return atom();
      case 1: return bottom(d);
      case 2:
      case 3: return tensor(d);
      case 4: return par(d);
      case 5: return plus(d);
      case 6: return with(d);
      case 7: return of_course(d);
      case 8: return why_not(d);
      case 9: return exists(d);
      case 10: return forall(d);
      default: return cut(d);
    }
  }

 private:
  Rng &rng_;
  NameSupply &names_;
  TypeGen types_;
  int tyvars_ = 0;

  Name fresh(const char *base) { return names_.fresh(base); }

  PropPtr small_prop() {
    PropPtr a;
    do a = types_.prop(2);
    while (!free_tyvars(a).empty());
    return a;
  }

  PPiece atom() {
    if (rng_.chance(50)) {
      Name x = fresh("x");
      return PPiece{proc::empty_out(x), {{{x, pr::one()}}}};
    }
    PropPtr a = rng_.chance(30) ? pr::var("X" + std::to_string(tyvars_++)) : small_prop();
    Name x = fresh("x"), y = fresh("y");
    return PPiece{proc::link(x, y), {{{x, dual_prop(a)}, {y, a}}}};
  }

  std::optional<std::pair<Name, PropPtr>> any_name(const CpContext &c) {
    if (c.empty()) return std::nullopt;
    return rng_.pick(c.entries);
  }

  PPiece bottom(int d) {
    PPiece p = gen(d - 1);
    Name x = fresh("x");
    p.ctx.add(x, pr::bottom());
    return PPiece{proc::empty_in(x, p.p), p.ctx};
  }

  PPiece tensor(int d) {
    PPiece a = gen(d - 1), b = gen(d - 1);
    auto y = any_name(a.ctx);
    auto x = any_name(b.ctx);
    CpContext ctx = without(a.ctx, y->first);
    merge_into(ctx, without(b.ctx, x->first));
    ctx.add(x->first, pr::tensor(y->second, x->second));
    return PPiece{proc::out(x->first, y->first, a.p, b.p), ctx};
  }

  PPiece par(int d) {
    PPiece a = gen(d - 1);
    if (a.ctx.size() < 2) return bottom(d);
    auto y = any_name(a.ctx);
    auto x = any_name(without(a.ctx, y->first));
    CpContext ctx = without(without(a.ctx, y->first), x->first);
    ctx.add(x->first, pr::par(y->second, x->second));
    return PPiece{proc::in(x->first, y->first, a.p), ctx};
  }

  PPiece plus(int d) {
    PPiece a = gen(d - 1);
    auto x = any_name(a.ctx);
    bool left = rng_.chance(50);
    PropPtr other = small_prop();
    PropBranches bs = left ? PropBranches{{kL, x->second}, {kR, other}} : PropBranches{{kL, other}, {kR, x->second}};
    CpContext ctx = without(a.ctx, x->first);
    ctx.add(x->first, pr::plus(bs));
    return PPiece{proc::inject(x->first, left ? kL : kR, a.p), ctx};
  }

  PPiece with(int d) {
    PPiece a = gen(d - 1);
    auto x = any_name(a.ctx);
    CpContext ctx = without(a.ctx, x->first);
    ctx.add(x->first, pr::with({{kL, x->second}, {kR, x->second}}));
    return PPiece{proc::case_(x->first, {{kL, a.p}, {kR, freshen(a.p, names_)}}), ctx};
  }

  // Everything else gets a ? wrapper so the ! rule applies.
  PPiece of_course(int d) {
    PPiece a = gen(d - 1);
    auto y = any_name(a.ctx);
    ProcPtr p = a.p;
    CpContext ctx;
    for (const auto &[n, t] : a.ctx.entries) {
      if (n == y->first) continue;
      if (is_why_not(t)) {
        ctx.add(n, t);
        continue;
      }
      Name w = fresh("w");
      p = proc::query(w, n, p);
      ctx.add(w, pr::why_not(t));
    }
    Name x = fresh("x");
    ctx.add(x, pr::of_course(y->second));
    return PPiece{proc::bang(x, y->first, p), ctx};
  }

  PPiece why_not(int d) {
    PPiece a = gen(d - 1);
    auto y = any_name(a.ctx);
    CpContext rest = without(a.ctx, y->first);
    // contraction: reuse a ?A already there
    for (const auto &[n, t] : rest.entries)
      if (is_why_not(t) && prop_equal(t->left, y->second) && rng_.chance(70))
        return PPiece{proc::query(n, y->first, a.p), rest};
    if (rng_.chance(15)) {
      a.ctx.add(fresh("x"), pr::why_not(small_prop()));  // weakening
      return a;
    }
    Name x = fresh("x");
    rest.add(x, pr::why_not(y->second));
    return PPiece{proc::query(x, y->first, a.p), rest};
  }

  PPiece exists(int d) {
    PPiece a = gen(d - 1);
    auto x = any_name(a.ctx);
    TypeVar v{"X" + std::to_string(tyvars_++)};
    PropPtr witness, body;
    if (rng_.chance(50)) {
      witness = x->second;
      body = pr::var(v);
    } else {
      witness = small_prop();
      body = x->second;
    }
    CpContext ctx = without(a.ctx, x->first);
    ctx.add(x->first, pr::exists(v, body));
    return PPiece{proc::out_type(x->first, witness, a.p), ctx};
  }

  PPiece forall(int d) {
    PPiece a = gen(d - 1);
    // a variable free in exactly one entry can be generalised there
    for (const auto &[n, t] : a.ctx.entries)
      for (const auto &v : free_tyvars(t)) {
        bool elsewhere = false;
        for (const auto &[m, u] : a.ctx.entries)
          if (!(m == n) && free_tyvars(u).count(v)) elsewhere = true;
        if (elsewhere || free_tyvars(a.p).count(v)) continue;
        CpContext ctx = without(a.ctx, n);
        ctx.add(n, pr::forall(TypeVar{v}, t));
        return PPiece{proc::in_type(n, TypeVar{v}, a.p), ctx};
      }
    auto x = any_name(a.ctx);
    TypeVar v{"X" + std::to_string(tyvars_++)};
    CpContext ctx = without(a.ctx, x->first);
    ctx.add(x->first, pr::forall(v, x->second));
    return PPiece{proc::in_type(x->first, v, a.p), ctx};
  }

  PPiece cut(int d) {
    PPiece a = gen(d - 1);
    auto x = any_name(a.ctx);
    Name y = fresh("y");
    PPiece b = partner(y, dual_prop(x->second), d - 1);
    CpContext ctx = without(a.ctx, x->first);
    merge_into(ctx, without(b.ctx, y));
    ProcPtr q = rename_process(b.p, x->first, y);
    bool flip = rng_.chance(50);
    PropPtr annot = flip ? dual_prop(x->second) : x->second;
    return PPiece{flip ? proc::cut(x->first, annot, q, a.p) : proc::cut(x->first, annot, a.p, q), ctx};
  }

  // A process using n : a, plus fresh names of its own.
  PPiece partner(const Name &n, const PropPtr &a, int d) {
    auto axiom = [&] {
      Name w = fresh("w");
      return PPiece{proc::link(n, w), {{{n, a}, {w, dual_prop(a)}}}};
    };
    if (d <= 0 && a->kind != PropKind::One) return axiom();
    if (rng_.chance(10)) return axiom();
    switch (a->kind) {
      case PropKind::One: return PPiece{proc::empty_out(n), {{{n, a}}}};
      case PropKind::Bottom: {
        PPiece p = gen(d - 1);
        p.ctx.add(n, a);
        return PPiece{proc::empty_in(n, p.p), p.ctx};
      }
      case PropKind::Tensor: {
        Name u = fresh("u");
        PPiece l = partner(u, a->left, d - 1), r = partner(n, a->right, d - 1);
        CpContext ctx = without(l.ctx, u);
        merge_into(ctx, without(r.ctx, n));
        ctx.add(n, a);
        return PPiece{proc::out(n, u, l.p, r.p), ctx};
      }
      case PropKind::Par: {
        Name u = fresh("u"), w = fresh("w"), t = fresh("t");
        ProcPtr p = proc::in(n, u, proc::out(w, t, proc::link(u, t), proc::link(w, n)));
        return PPiece{p, {{{n, a}, {w, pr::tensor(dual_prop(a->left), dual_prop(a->right))}}}};
      }
      case PropKind::Plus: {
        const auto &[l, b] = rng_.pick(a->branches);
        PPiece p = partner(n, b, d - 1);
        CpContext ctx = without(p.ctx, n);
        ctx.add(n, a);
        return PPiece{proc::inject(n, l, p.p), ctx};
      }
      case PropKind::With: {
        Name w = fresh("w");
        PropBranches duals;
        ProcBranches arms;
        for (const auto &[l, b] : a->branches) {
          duals.emplace_back(l, dual_prop(b));
          arms.emplace_back(l, proc::inject(w, l, proc::link(n, w)));
        }
        return PPiece{proc::case_(n, arms), {{{n, a}, {w, pr::plus(duals)}}}};
      }
      case PropKind::OfCourse: {
        Name u = fresh("u"), w = fresh("w"), v = fresh("v");
        ProcPtr p = proc::bang(n, u, proc::query(w, v, proc::link(u, v)));
        return PPiece{p, {{{n, a}, {w, pr::why_not(dual_prop(a->left))}}}};
      }
      case PropKind::WhyNot: {
        int r = rng_.below(3);
        if (r == 0) {
          PPiece p = gen(d - 1);
          p.ctx.add(n, a);  // weakened
          return p;
        }
        if (r == 1) {
          Name u = fresh("u");
          PPiece p = partner(u, a->left, d - 1);
          CpContext ctx = without(p.ctx, u);
          ctx.add(n, a);
          return PPiece{proc::query(n, u, p.p), ctx};
        }
        Name u = fresh("u"), v = fresh("v"), w = fresh("w"), t = fresh("t");
        PropPtr na = dual_prop(a->left);
        ProcPtr p = proc::query(n, u, proc::query(n, v, proc::out(w, t, proc::link(t, u), proc::link(w, v))));
        return PPiece{p, {{{n, a}, {w, pr::tensor(na, na)}}}};
      }
      case PropKind::Exists: {
        PropPtr b = small_prop();
        PPiece p = partner(n, subst_prop(a->right, a->var.ident, b), d - 1);
        CpContext ctx = without(p.ctx, n);
        ctx.add(n, a);
        return PPiece{proc::out_type(n, b, p.p), ctx};
      }
      default: return axiom();
    }
  }
};

}  // namespace

TypePtr gen_session_type(const GenConfig &cfg) {
  Rng rng(cfg.seed);
  return TypeGen(rng, cfg.functional).session(cfg.max_depth);
}

PropPtr gen_prop(const GenConfig &cfg) {
  Rng rng(cfg.seed);
  return TypeGen(rng, false).prop(cfg.max_depth);
}

GeneratedTerm gen_typed_term(const GenConfig &cfg, NameSupply &names) {
  Rng rng(cfg.seed);
  TermGen g(rng, names, cfg.functional);
  Piece p = g.gen(cfg.max_depth, false);
  try {
    NameSupply scratch(names.peek() + (1ull << 32));
    Typing t = typecheck(p.ctx, p.m, scratch);
    return GeneratedTerm{p.ctx, p.m, t.type};
  } catch (const std::exception &e) {
    throw GenError("generated term does not typecheck (seed " + std::to_string(cfg.seed) + "): " + e.what() +
                   "\n  " + print_term(p.m));
  }
}

GeneratedProcess gen_typed_process(const GenConfig &cfg, NameSupply &names) {
  Rng rng(cfg.seed);
  ProcGen g(rng, names);
  PPiece p = g.gen(cfg.max_depth);
  try {
    NameSupply scratch(names.peek() + (1ull << 32));
    cp_typecheck(p.ctx, p.p, scratch);
    return GeneratedProcess{p.ctx, p.p};
  } catch (const std::exception &e) {
    throw GenError("generated process does not typecheck (seed " + std::to_string(cfg.seed) + "): " + e.what() +
                   "\n  " + print_process(p.p));
  }
}

}  // namespace sessc
