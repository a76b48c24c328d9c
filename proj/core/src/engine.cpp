#include "sessc/engine.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

#include "cluster.hpp"
#include "json.hpp"
#include "sessc/cp.hpp"
#include "sessc/syntax.hpp"

namespace sessc {

const char *to_string(RuleTag t) {
  switch (t) {
    case RuleTag::Link: return "link";
    case RuleTag::TensorPar: return "beta-tensor-par";
    case RuleTag::PlusWith: return "beta-plus-with";
    case RuleTag::BangQuery: return "beta-bang-query";
    case RuleTag::BangWeaken: return "bang-weaken";
    case RuleTag::BangContract: return "bang-contract";
    case RuleTag::ExistsForall: return "beta-exists-forall";
    case RuleTag::OneBottom: return "beta-one-bottom";
    case RuleTag::CommTensorL: return "comm-tensor-l";
    case RuleTag::CommTensorR: return "comm-tensor-r";
    case RuleTag::CommPar: return "comm-par";
    case RuleTag::CommPlus: return "comm-plus";
    case RuleTag::CommWith: return "comm-with";
    case RuleTag::CommBang: return "comm-bang";
    case RuleTag::CommQuery: return "comm-query";
    case RuleTag::CommExists: return "comm-exists";
    case RuleTag::CommForall: return "comm-forall";
    case RuleTag::CommBottom: return "comm-bottom";
  }
  return "?";
}

bool is_principal(RuleTag t) { return t <= RuleTag::OneBottom; }

const char *to_string(ReachStatus s) {
  switch (s) {
    case ReachStatus::Found: return "found";
    case ReachStatus::BoundHit: return "bound-hit";
    case ReachStatus::Exhausted: return "exhausted";
  }
  return "?";
}

namespace {

using detail::Cluster;
using detail::Leaf;
using Plug = std::function<ProcPtr(const ProcPtr &)>;

ProcPtr with_child(const ProcPtr &p, int k, const ProcPtr &c) {
  auto n = std::make_shared<Process>(*p);
  if (p->kind == ProcKind::Case) n->branches[k].second = c;
  else if (k == 0) n->p = c;
  else n->q = c;
  return n;
}

bool acts_on(const ProcPtr &p, const Name &x) {
  switch (p->kind) {
    case ProcKind::Cut: return false;
    case ProcKind::Link: return p->chan == x || p->fresh == x;
    default: return p->chan == x;
  }
}

// x is only ever the subject of ?-prefixes in p. Links on x could go either
// way without types, so they count as no.
bool only_queried(const ProcPtr &p, const Name &x) {
  if (p->kind == ProcKind::Link) return !(p->chan == x || p->fresh == x);
  if (p->kind != ProcKind::Cut && p->kind != ProcKind::Query && p->chan == x) return false;
  if (p->p && !only_queried(p->p, x)) return false;
  if (p->q && !only_queried(p->q, x)) return false;
  for (const auto &[l, b] : p->branches)
    if (!only_queried(b, x)) return false;
  return true;
}

std::map<Name, bool> restrict_pol(const std::map<Name, bool> &pol, const ProcPtr &p) {
  std::map<Name, bool> out;
  for (const auto &[n, b] : pol)
    if (is_free_in(n, p)) out[n] = b;
  return out;
}

std::map<Name, bool> without(std::map<Name, bool> pol, const Name &x) {
  pol.erase(x);
  return pol;
}

// Rename x to x2 in the part of p that comes after the first point where x
// is used twice (a contraction point). Null if x is never shared.
ProcPtr split_second(const ProcPtr &p, const Name &x, const Name &x2) {
  switch (p->kind) {
    case ProcKind::Link:
    case ProcKind::EmptyOut: return nullptr;
    case ProcKind::Query:
      if (p->chan == x) {
        if (!is_free_in(x, p->p)) return nullptr;
        return proc::query(x, p->fresh, rename_process(p->p, x2, x));
      }
      break;
    case ProcKind::Out:
    case ProcKind::Cut: {
      bool l = is_free_in(x, p->p), r = is_free_in(x, p->q);
      if (l && r) return with_child(p, 1, rename_process(p->q, x2, x));
      if (l) {
        auto s = split_second(p->p, x, x2);
        return s ? with_child(p, 0, s) : nullptr;
      }
      if (r) {
        auto s = split_second(p->q, x, x2);
        return s ? with_child(p, 1, s) : nullptr;
      }
      return nullptr;
    }
    case ProcKind::Case: {
      auto n = std::make_shared<Process>(*p);
      bool any = false;
      for (auto &[l, b] : n->branches)
        if (auto s = split_second(b, x, x2)) {
          b = s;
          any = true;
        }
      return any ? n : nullptr;
    }
    default: break;
  }
  auto s = split_second(p->p, x, x2);
  return s ? with_child(p, 0, s) : nullptr;
}

class Stepper {
 public:
  Stepper(NameSupply &names, std::vector<Redex> &out) : names_(names), out_(out) {}

  void visit(const ProcPtr &p, const Path &path, const Plug &plug) {
    if (p->kind == ProcKind::Cut) {
      nest(p, path, plug);
      return;
    }
    visit_children(p, path, plug);
  }

 private:
  NameSupply &names_;
  std::vector<Redex> &out_;

  void visit_children(const ProcPtr &p, const Path &path, const Plug &plug) {
    auto child = [&](int k, const ProcPtr &c) {
      Path q = path;
      q.push_back(k);
      ProcPtr self = p;
      Plug inner = [plug, self, k](const ProcPtr &x) { return plug(with_child(self, k, x)); };
      visit(c, q, inner);
    };
    switch (p->kind) {
      case ProcKind::Link:
      case ProcKind::EmptyOut: return;
      case ProcKind::Out:
        child(0, p->p);
        child(1, p->q);
        return;
      case ProcKind::Case:
        for (int k = 0; k < static_cast<int>(p->branches.size()); ++k) child(k, p->branches[k].second);
        return;
      default: child(0, p->p);
    }
  }

  void emit(RuleTag tag, const Path &path, const Plug &plug, std::function<ProcPtr()> body) {
    out_.push_back(Redex{tag, path, [plug, body]() { return plug(body()); }});
  }

  void nest(const ProcPtr &p, const Path &path, const Plug &plug) {
    auto c = std::make_shared<const Cluster>(detail::flatten(p));
    principal(c, path, plug);
    commuting(c, path, plug);
    for (int i = 0; i < static_cast<int>(c->leaves.size()); ++i) {
      Path q = path;
      q.push_back(i);
      Plug inner = [plug, c, i](const ProcPtr &x) {
        Cluster d = *c;
        d.leaves[i].p = x;
        d.leaves[i].pol = restrict_pol(d.leaves[i].pol, x);
        return plug(detail::rebuild(d));
      };
      visit_children(c->leaves[i].p, q, inner);
    }
  }

  static std::vector<int> holders(const Cluster &c, const Name &x) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(c.leaves.size()); ++i)
      if (c.leaves[i].pol.count(x)) out.push_back(i);
    return out;
  }

  // Cluster minus leaves `drop` (indices into c.leaves).
  static Cluster minus(const Cluster &c, std::set<int> drop) {
    Cluster d;
    d.type = c.type;
    for (int i = 0; i < static_cast<int>(c.leaves.size()); ++i)
      if (!drop.count(i)) d.leaves.push_back(c.leaves[i]);
    return d;
  }

  void principal(const std::shared_ptr<const Cluster> &cp, const Path &path, const Plug &plug) {
    const Cluster &c = *cp;
    for (const auto &[x, xt] : c.type) {
      std::vector<int> hold = holders(c, x);
      std::vector<int> act;
      for (int i : hold)
        if (acts_on(c.leaves[i].p, x)) act.push_back(i);
      Name xn = x;
      for (int i : act) {
        const ProcPtr &li = c.leaves[i].p;
        if (li->kind == ProcKind::Link) {
          Name w = li->chan == x ? li->fresh : li->chan;
          if (w == x) continue;
          // x may be a ? name shared by several clients; the link can only
          // go if it is alone on its side
          bool alone = true;
          for (int k : hold)
            if (k != i && c.leaves[k].pol.at(x) == c.leaves[i].pol.at(x)) alone = false;
          if (!alone) continue;
          emit(RuleTag::Link, path, plug, [cp, i, xn, w]() {
            const Cluster &c = *cp;
            Cluster d = minus(c, {i});
            d.type.erase(xn);
            auto wp = c.leaves[i].pol.find(w);
            for (auto &l : d.leaves) {
              if (!l.pol.count(xn)) continue;
              l.p = rename_process(l.p, w, xn);
              l.pol.erase(xn);
              if (wp != c.leaves[i].pol.end()) l.pol[w] = wp->second;
            }
            return detail::rebuild(d);
          });
          continue;
        }
        for (int j : act) {
          if (j == i) continue;
          pair(cp, i, j, xn, hold, path, plug);
        }
        if (li->kind == ProcKind::Bang) bang(cp, i, xn, hold, path, plug);
      }
    }
  }

  void pair(const std::shared_ptr<const Cluster> &cp, int i, int j, const Name &x, const std::vector<int> &hold,
            const Path &path, const Plug &plug) {
    const Cluster &c = *cp;
    const ProcPtr &a = c.leaves[i].p, &b = c.leaves[j].p;
    if (a->kind == ProcKind::Out && b->kind == ProcKind::In) {
      emit(RuleTag::TensorPar, path, plug, [cp, i, j, x]() {
        const Cluster &c = *cp;
        const Leaf &la = c.leaves[i], &lb = c.leaves[j];
        PropPtr t = detail::seen(c, la, x);
        const Name &y = la.p->fresh;
        Cluster d = minus(c, {i, j});
        d.type[y] = t ? t->left : nullptr;
        d.type[x] = t ? t->right : nullptr;
        auto pa = without(la.pol, x), pb = without(lb.pol, x);
        auto pp = pa, pq = pa, pr = pb;
        pp[y] = true;
        pq[x] = true;
        pr[x] = false;
        pr[y] = false;
        detail::add_leaves(d, la.p->p, pp);
        detail::add_leaves(d, la.p->q, pq);
        detail::add_leaves(d, rename_process(lb.p->p, y, lb.p->fresh), pr);
        return detail::rebuild(d);
      });
    } else if (a->kind == ProcKind::Inject && b->kind == ProcKind::Case) {
      const ProcPtr *arm = nullptr;
      for (const auto &[l, q] : b->branches)
        if (l == a->label) arm = &q;
      if (!arm) return;
      ProcPtr qa = *arm;
      emit(RuleTag::PlusWith, path, plug, [cp, i, j, x, qa]() {
        const Cluster &c = *cp;
        const Leaf &la = c.leaves[i], &lb = c.leaves[j];
        PropPtr t = detail::seen(c, la, x);
        PropPtr bt;
        if (t)
          for (const auto &[l, u] : t->branches)
            if (l == la.p->label) bt = u;
        Cluster d = minus(c, {i, j});
        d.type[x] = bt;
        auto pa = la.pol, pb = lb.pol;
        pa[x] = true;
        pb[x] = false;
        detail::add_leaves(d, la.p->p, pa);
        detail::add_leaves(d, qa, pb);
        return detail::rebuild(d);
      });
    } else if (a->kind == ProcKind::OutType && b->kind == ProcKind::InType) {
      emit(RuleTag::ExistsForall, path, plug, [cp, i, j, x]() {
        const Cluster &c = *cp;
        const Leaf &la = c.leaves[i], &lb = c.leaves[j];
        PropPtr t = detail::seen(c, la, x);
        Cluster d = minus(c, {i, j});
        d.type[x] = t ? subst_prop(t->right, t->var.ident, la.p->prop) : nullptr;
        auto pa = la.pol, pb = lb.pol;
        pa[x] = true;
        pb[x] = false;
        detail::add_leaves(d, la.p->p, pa);
        detail::add_leaves(d, subst_process_type(lb.p->p, lb.p->tyvar.ident, la.p->prop), pb);
        return detail::rebuild(d);
      });
    } else if (a->kind == ProcKind::EmptyOut && b->kind == ProcKind::EmptyIn) {
      emit(RuleTag::OneBottom, path, plug, [cp, i, j, x]() {
        const Cluster &c = *cp;
        const Leaf &lb = c.leaves[j];
        Cluster d = minus(c, {i, j});
        d.type.erase(x);
        detail::add_leaves(d, lb.p->p, without(lb.pol, x));
        return detail::rebuild(d);
      });
    } else if (a->kind == ProcKind::Bang && b->kind == ProcKind::Query) {
      if (hold.size() != 2 || is_free_in(x, b->p)) return;
      emit(RuleTag::BangQuery, path, plug, [cp, i, j, x]() {
        const Cluster &c = *cp;
        const Leaf &la = c.leaves[i], &lb = c.leaves[j];
        PropPtr t = detail::seen(c, la, x);
        const Name &z = lb.p->fresh;
        Cluster d = minus(c, {i, j});
        d.type.erase(x);
        d.type[z] = t ? t->left : nullptr;
        auto pa = without(la.pol, x), pb = without(lb.pol, x);
        pa[z] = true;
        pb[z] = false;
        detail::add_leaves(d, rename_process(la.p->p, z, la.p->fresh), pa);
        detail::add_leaves(d, lb.p->p, pb);
        return detail::rebuild(d);
      });
    }
  }

  void bang(const std::shared_ptr<const Cluster> &cp, int i, const Name &x, const std::vector<int> &hold,
            const Path &path, const Plug &plug) {
    std::vector<int> others;
    for (int k : hold)
      if (k != i) others.push_back(k);
    NameSupply *names = &names_;
    if (others.empty()) {
      emit(RuleTag::BangWeaken, path, plug, [cp, i, x]() {
        Cluster d = minus(*cp, {i});
        d.type.erase(x);
        return detail::rebuild(d);
      });
      return;
    }
    // Duplicate the server for one client leaf, or for the second half of a
    // client that uses x twice.
    auto fire = [cp, i, x, names](int j, ProcPtr replaced, const Name &x2) {
      return [cp, i, j, x, names, replaced, x2]() {
        const Cluster &c = *cp;
        const Leaf &ls = c.leaves[i];
        Cluster d = c;
        d.type[x2] = c.type.at(x);
        d.leaves[j].p = replaced;
        d.leaves[j].pol = restrict_pol(d.leaves[j].pol, replaced);
        d.leaves[j].pol[x2] = c.leaves[j].pol.at(x);
        if (!is_free_in(x, replaced)) d.leaves[j].pol.erase(x);
        ProcPtr copy = rename_process(freshen(ls.p, *names), x2, x);
        auto pol = without(ls.pol, x);
        pol[x2] = ls.pol.at(x);
        d.leaves.push_back(Leaf{copy, restrict_pol(pol, copy)});
        return detail::rebuild(d);
      };
    };
    if (others.size() >= 2) {
      for (int j : others) {
        Name x2 = names_.fresh_like(x);
        emit(RuleTag::BangContract, path, plug, fire(j, rename_process(cp->leaves[j].p, x2, x), x2));
      }
      return;
    }
    int j = others[0];
    Name x2 = names_.fresh_like(x);
    if (ProcPtr s = split_second(cp->leaves[j].p, x, x2)) emit(RuleTag::BangContract, path, plug, fire(j, s, x2));
  }

  // Components of the leaf graph after removing hyperedge z.
  static std::vector<int> components(const Cluster &c, const Name &z) {
    int n = static_cast<int>(c.leaves.size());
    std::vector<int> comp(n, -1);
    int next = 0;
    for (int s = 0; s < n; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<int> stack{s};
      comp[s] = next;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (const auto &[m, pol] : c.leaves[u].pol) {
          if (m == z) continue;
          for (int v = 0; v < n; ++v)
            if (comp[v] < 0 && c.leaves[v].pol.count(m)) {
              comp[v] = next;
              stack.push_back(v);
            }
        }
      }
      ++next;
    }
    return comp;
  }

  void commuting(const std::shared_ptr<const Cluster> &cp, const Path &path, const Plug &plug) {
    const Cluster &c = *cp;
    for (int i = 0; i < static_cast<int>(c.leaves.size()); ++i) {
      const ProcPtr &li = c.leaves[i].p;
      if (li->kind == ProcKind::Link || li->kind == ProcKind::EmptyOut) continue;
      for (const auto &[z, zpol] : c.leaves[i].pol) {
        if (z == li->chan) continue;  // that is a principal cut, not a commuting one
        std::vector<int> comp = components(c, z);
        int n = static_cast<int>(c.leaves.size());
        std::set<int> other;
        bool ok = true, lone = true;
        for (int k = 0; k < n; ++k) {
          if (k == i || !c.leaves[k].pol.count(z)) continue;
          lone = false;
          if (comp[k] == comp[i]) ok = false;  // z shared with a leaf on i's side
          for (int v = 0; v < n; ++v)
            if (comp[v] == comp[k]) other.insert(v);
        }
        if (!ok || other.count(i)) continue;
        RuleTag tag;
        int cont = 0;
        switch (li->kind) {
          case ProcKind::Out: {
            bool l = is_free_in(z, li->p), r = is_free_in(z, li->q);
            if (l && r) continue;  // needs a contraction first
            tag = l ? RuleTag::CommTensorL : RuleTag::CommTensorR;
            cont = l ? 0 : 1;
            break;
          }
          case ProcKind::In: tag = RuleTag::CommPar; break;
          case ProcKind::Inject: tag = RuleTag::CommPlus; break;
          case ProcKind::Case: tag = RuleTag::CommWith; break;
          case ProcKind::Bang: tag = RuleTag::CommBang; break;
          case ProcKind::Query: tag = RuleTag::CommQuery; break;
          case ProcKind::OutType: tag = RuleTag::CommExists; break;
          case ProcKind::InType: tag = RuleTag::CommForall; break;
          case ProcKind::EmptyIn: tag = RuleTag::CommBottom; break;
          default: continue;
        }
        // Which leaves go under the prefix with the cut on z: the whole far
        // side, or (regrouping first) just the one leaf across z. When only
        // i holds z the far side weakened it, and any detached component
        // will do.
        std::vector<std::set<int>> sides;
        if (lone) {
          std::map<int, std::set<int>> parts;
          for (int v = 0; v < n; ++v)
            if (comp[v] != comp[i]) parts[comp[v]].insert(v);
          for (auto &[k, part] : parts) sides.push_back(std::move(part));
        } else {
          sides.push_back(other);
          std::vector<int> across;
          for (int k : other)
            if (c.leaves[k].pol.count(z)) across.push_back(k);
          if (across.size() == 1 && other.size() > 1) sides.push_back({across[0]});
        }
        for (const auto &side : sides) {
          std::set<Name> inner{z};
          bool others = side.size() + 1 < c.leaves.size();
          for (int k : side)
            for (const auto &[m, b] : c.leaves[k].pol) {
              std::vector<int> hs = holders(c, m);
              bool private_ = true;
              for (int v : hs)
                if (v != i && !side.count(v)) private_ = false;
              // a name held once was weakened somewhere outside; its cut
              // stays out here so that side keeps something to hang on
              if (hs.size() == 1 && others) private_ = false;
              if (private_) inner.insert(m);
            }
          bool fits = true;
          for (const auto &m : inner) {
            if (m == z || !c.leaves[i].pol.count(m)) continue;
            if (li->kind == ProcKind::Case || !is_free_in(m, cont == 0 ? li->p : li->q)) fits = false;
            if (li->kind == ProcKind::Out && is_free_in(m, cont == 0 ? li->q : li->p)) fits = false;
          }
          // a server body may only keep ? names
          if (fits && tag == RuleTag::CommBang)
            for (int k : side) {
              const Leaf &lk = c.leaves[k];
              for (const auto &n : free_names(lk.p)) {
                if (inner.count(n)) continue;
                if (lk.pol.count(n)) {
                  PropPtr t = detail::seen(c, lk, n);
                  if (!t || !is_why_not(t)) fits = false;
                } else if (!only_queried(lk.p, n)) {
                  fits = false;
                }
              }
            }
          if (fits) commute(cp, i, side, inner, tag, cont, path, plug);
        }
      }
    }
  }

  void commute(const std::shared_ptr<const Cluster> &cp, int i, const std::set<int> &side,
               const std::set<Name> &inner, RuleTag tag, int cont, const Path &path, const Plug &plug) {
    NameSupply *names = &names_;
    emit(tag, path, plug, [cp, i, side, inner, cont, names]() {
      const Cluster &c = *cp;
      const Leaf &l = c.leaves[i];
      auto sub = [&](const ProcPtr &body) {
        Cluster s;
        for (const auto &n : inner) s.type[n] = c.type.at(n);
        std::map<Name, bool> pol;
        for (const auto &[m, b] : l.pol)
          if (inner.count(m)) pol[m] = b;
        detail::add_leaves(s, body, pol);
        for (int k : side) {
          Leaf lk = c.leaves[k];
          for (auto it = lk.pol.begin(); it != lk.pol.end();)
            it = inner.count(it->first) ? std::next(it) : lk.pol.erase(it);
          s.leaves.push_back(std::move(lk));
        }
        return detail::rebuild(s);
      };
      ProcPtr moved;
      if (l.p->kind == ProcKind::Case) {
        auto n = std::make_shared<Process>(*l.p);
        bool first = true;
        for (auto &[lab, b] : n->branches) {
          ProcPtr s = sub(b);
          b = first ? s : freshen(s, *names);
          first = false;
        }
        moved = n;
      } else {
        moved = with_child(l.p, cont, sub(cont == 0 ? l.p->p : l.p->q));
      }
      std::set<int> drop = side;
      drop.insert(i);
      Cluster d = minus(c, drop);
      for (const auto &n : inner) d.type.erase(n);
      std::map<Name, bool> pol;
      for (const auto &[m, b] : l.pol)
        if (!inner.count(m)) pol[m] = b;
      for (int k : side)
        for (const auto &[m, b] : c.leaves[k].pol)
          if (!inner.count(m)) pol[m] = b;
      d.leaves.push_back(Leaf{moved, restrict_pol(pol, moved)});
      if (d.leaves.size() == 1) return moved;
      return detail::rebuild(d);
    });
  }
};

}  // namespace

std::vector<Redex> redexes(const ProcPtr &p, NameSupply &names) {
  std::vector<Redex> out;
  Stepper s(names, out);
  s.visit(p, {}, [](const ProcPtr &x) { return x; });
  return out;
}

namespace {

std::optional<StepResult> pick(const ProcPtr &p, NameSupply &names, Strategy s, bool principal) {
  std::vector<Redex> rs = redexes(p, names);
  auto fire = [](const Redex &r) { return StepResult{r.fire(), r.tag, r.path}; };
  if (s == Strategy::LeftmostOutermost) {
    for (const auto &r : rs)
      if (is_principal(r.tag) == principal) return fire(r);
  } else {
    for (auto it = rs.rbegin(); it != rs.rend(); ++it)
      if (is_principal(it->tag) == principal) return fire(*it);
  }
  return std::nullopt;
}

}  // namespace

std::optional<StepResult> principal_step(const ProcPtr &p, NameSupply &names, Strategy s) {
  return pick(p, names, s, true);
}

std::optional<StepResult> commuting_step(const ProcPtr &p, NameSupply &names, Strategy s) {
  return pick(p, names, s, false);
}

NormalizeResult normalize(const ProcPtr &p, NameSupply &names, const NormalizeOptions &opt) {
  NormalizeResult r;
  r.proc = p;
  while (true) {
    std::optional<StepResult> st = principal_step(r.proc, names, opt.strategy);
    if (!st && !opt.principal_only) {
      // Pick the conversion on the canonical representative, so the choice
      // depends on the class of r.proc and not on how it was reached.
      ProcPtr c = canonicalize(r.proc).proc;
      st = commuting_step(c, names, Strategy::LeftmostOutermost);
      if (st) r.proc = c;
    }
    if (!st) break;
    if (r.steps >= opt.max_steps) {
      r.limit_hit = true;
      break;
    }
    ++r.steps;
    (is_principal(st->tag) ? r.principal_steps : r.commuting_steps)++;
    if (opt.keep_trace) r.trace.push_back(TraceStep{st->tag, st->path, r.proc, st->proc});
    if (opt.audit) {
      try {
        NameSupply scratch(1ull << 40);
        cp_typecheck(*opt.audit, st->proc, scratch);
      } catch (const std::exception &e) {
        r.audit_failures.push_back(AuditFailure{r.steps, std::string(to_string(st->tag)) + ": " + e.what()});
      }
    }
    r.proc = st->proc;
  }
  return r;
}

namespace {

// Constructor counts. Principal steps remove constructors and commuting ones
// mostly shuffle them, so the distance is a decent guide.
// The second half sums prefix depth per constructor, which is what commuting
// conversions change.
using Census = std::array<long, 24>;

void census(const ProcPtr &p, Census &c, long depth) {
  auto k = static_cast<std::size_t>(p->kind);
  ++c[k];
  c[12 + k] += depth;
  long d = p->kind == ProcKind::Cut ? depth : depth + 1;
  if (p->p) census(p->p, c, d);
  if (p->q) census(p->q, c, d);
  for (const auto &[l, b] : p->branches) census(b, c, d);
}

Census census(const ProcPtr &p) {
  Census c{};
  census(p, c, 0);
  return c;
}

}  // namespace

ReachResult reaches(const ProcPtr &from, const ProcPtr &to, std::size_t bound, NameSupply &names) {
  const std::uint64_t target = canonical_hash(to);
  const std::string target_key = canonical_key(to);
  const Census tc = census(to);
  struct State {
    ProcPtr p;
    std::uint64_t parent;
    RuleTag tag;
    int depth;
  };
  std::unordered_map<std::uint64_t, State> seen;
  using Item = std::tuple<long, std::size_t, std::uint64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  std::size_t counter = 0;
  auto score = [&](const ProcPtr &p, int depth) {
    Census pc = census(p);
    long d = 0;
    for (std::size_t k = 0; k < 12; ++k) d += 16 * std::labs(pc[k] - tc[k]);
    for (std::size_t k = 12; k < 24; ++k) d += 2 * std::labs(pc[k] - tc[k]);
    return d + depth;
  };
  // hashes only pick candidates; a hit is confirmed on the full key
  auto is_target = [&](std::uint64_t h, const ProcPtr &p) { return h == target && canonical_key(p) == target_key; };

  // Link and 1/bottom steps commute with everything else. If the target has
  // none left, some path fires them first, so one of them stands in for all
  // successors.
  bool eager_ok = true;
  for (const auto &r : redexes(to, names))
    if (r.tag == RuleTag::Link || r.tag == RuleTag::OneBottom) eager_ok = false;

  ReachResult res{ReachStatus::Exhausted};
  const std::uint64_t h0 = canonical_hash(from);
  auto witness = [&](std::uint64_t k) {
    while (k != h0) {
      const State &s = seen.at(k);
      res.witness.push_back(s.tag);
      res.path.push_back(s.p);
      k = s.parent;
    }
    res.path.push_back(from);
    std::reverse(res.witness.begin(), res.witness.end());
    std::reverse(res.path.begin(), res.path.end());
    res.status = ReachStatus::Found;
  };
  seen.emplace(h0, State{from, h0, RuleTag::Link, 0});
  if (is_target(h0, from)) {
    witness(h0);
    return res;
  }
  open.emplace(score(from, 0), counter++, h0);
  while (!open.empty()) {
    if (res.expanded >= bound) {
      res.status = ReachStatus::BoundHit;
      return res;
    }
    auto [sc, n, key] = open.top();
    open.pop();
    ++res.expanded;
    State cur = seen.at(key);
    std::vector<Redex> next = redexes(cur.p, names);
    if (eager_ok)
      for (const auto &r : next)
        if (r.tag == RuleTag::Link || r.tag == RuleTag::OneBottom) {
          next = {r};
          break;
        }
    for (const auto &r : next) {
      ProcPtr q = r.fire();
      std::uint64_t kq = canonical_hash(q);
      if (seen.count(kq)) continue;
      seen.emplace(kq, State{q, key, r.tag, cur.depth + 1});
      if (is_target(kq, q)) {
        witness(kq);
        return res;
      }
      open.emplace(score(q, cur.depth + 1), counter++, kq);
    }
  }
  return res;
}

std::string trace_to_text(const Trace &t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::string path;
    for (int k : t[i].path) path += (path.empty() ? "" : ".") + std::to_string(k);
    out += std::to_string(i + 1) + " " + to_string(t[i].tag) + " @" + (path.empty() ? "root" : path) + "\n";
    out += "  - " + print_process(t[i].before) + "\n";
    out += "  + " + print_process(t[i].after) + "\n";
  }
  return out;
}

std::string trace_to_json(const Trace &t) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < t.size(); ++i)
    arr.push_back({{"step", i + 1},
                   {"rule", to_string(t[i].tag)},
                   {"principal", is_principal(t[i].tag)},
                   {"path", t[i].path},
                   {"before", print_process(t[i].before)},
                   {"after", print_process(t[i].after)}});
  return arr.dump(2);
}

}  // namespace sessc
