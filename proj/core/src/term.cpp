#include "sessc/term.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace sessc {

namespace tm {
namespace {
TermPtr make(Term t) { return std::make_shared<const Term>(std::move(t)); }
}  // namespace

TermPtr var(Name x, SourceLoc loc) {
  Term t{TermKind::Var};
  t.x = std::move(x);
  t.loc = loc;
  return make(std::move(t));
}
TermPtr lam(Name x, TypePtr dom, TermPtr body, SourceLoc loc) {
  Term t{TermKind::Lam};
  t.x = std::move(x);
  t.annot = std::move(dom);
  t.a = std::move(body);
  t.loc = loc;
  return make(std::move(t));
}
TermPtr app(TermPtr f, TermPtr arg, SourceLoc loc) {
  Term t{TermKind::App};
  t.a = std::move(f);
  t.b = std::move(arg);
  t.loc = loc;
  return make(std::move(t));
}
TermPtr pair(TermPtr l, TermPtr r, SourceLoc loc) {
  Term t{TermKind::Pair};
  t.a = std::move(l);
  t.b = std::move(r);
  t.loc = loc;
  return make(std::move(t));
}
TermPtr let_pair(Name x, Name y, TermPtr scrutinee, TermPtr body, SourceLoc loc) {
  Term t{TermKind::LetPair};
  t.x = std::move(x);
  t.y = std::move(y);
  t.a = std::move(scrutinee);
  t.b = std::move(body);
  t.loc = loc;
  return make(std::move(t));
}
TermPtr send(TermPtr payload, TermPtr chan, SourceLoc loc) {
  Term t{TermKind::Send};
  t.a = std::move(payload);
  t.b = std::move(chan);
  t.loc = loc;
  return make(std::move(t));
}
TermPtr receive(TermPtr chan, SourceLoc loc) {
  Term t{TermKind::Receive};
  t.a = std::move(chan);
  t.loc = loc;
  return make(std::move(t));
}
TermPtr select(Label l, TermPtr chan, SourceLoc loc) {
  Term t{TermKind::Select};
  t.label = std::move(l);
  t.a = std::move(chan);
  t.loc = loc;
  return make(std::move(t));
}
TermPtr case_(TermPtr scrutinee, std::vector<CaseArm> arms, SourceLoc loc) {
  Term t{TermKind::Case};
  t.a = std::move(scrutinee);
  t.arms = std::move(arms);
  t.loc = loc;
  return make(std::move(t));
}
TermPtr fork(Name x, TypePtr annot, TermPtr body, SourceLoc loc) {
  Term t{TermKind::Fork};
  t.x = std::move(x);
  t.annot = std::move(annot);
  t.a = std::move(body);
  t.loc = loc;
  return make(std::move(t));
}
TermPtr link(TermPtr l, TermPtr r, SourceLoc loc) {
  Term t{TermKind::Link};
  t.a = std::move(l);
  t.b = std::move(r);
  t.loc = loc;
  return make(std::move(t));
}
TermPtr send_type(TypePtr s, TermPtr chan, SourceLoc loc) {
  Term t{TermKind::SendType};
  t.annot = std::move(s);
  t.a = std::move(chan);
  t.loc = loc;
  return make(std::move(t));
}
TermPtr receive_type(TypeVar x, TermPtr chan, SourceLoc loc) {
  Term t{TermKind::ReceiveType};
  t.tyvar = x.positive();
  t.a = std::move(chan);
  t.loc = loc;
  return make(std::move(t));
}
TermPtr serve(Name x, TypePtr annot, TermPtr body, SourceLoc loc) {
  Term t{TermKind::Serve};
  t.x = std::move(x);
  t.annot = std::move(annot);
  t.a = std::move(body);
  t.loc = loc;
  return make(std::move(t));
}
TermPtr request(TermPtr chan, SourceLoc loc) {
  Term t{TermKind::Request};
  t.a = std::move(chan);
  t.loc = loc;
  return make(std::move(t));
}
TermPtr coerce_un(TermPtr m, TypePtr annot, SourceLoc loc) {
  Term t{TermKind::CoerceUn};
  t.a = std::move(m);
  t.annot = std::move(annot);
  t.loc = loc;
  return make(std::move(t));
}
TermPtr coerce_lin(TermPtr m, TypePtr annot, SourceLoc loc) {
  Term t{TermKind::CoerceLin};
  t.a = std::move(m);
  t.annot = std::move(annot);
  t.loc = loc;
  return make(std::move(t));
}
}  // namespace tm

namespace {

void collect_free(const TermPtr &m, std::set<Name> &bound, std::set<Name> &out) {
  auto under = [&](const Name &n, const TermPtr &body) {
    bool inserted = bound.insert(n).second;
    collect_free(body, bound, out);
    if (inserted) bound.erase(n);
  };
  switch (m->kind) {
    case TermKind::Var:
      if (!bound.count(m->x)) out.insert(m->x);
      return;
    case TermKind::Lam:
    case TermKind::Fork:
    case TermKind::Serve:
      under(m->x, m->a);
      return;
    case TermKind::LetPair: {
      collect_free(m->a, bound, out);
      bool ix = bound.insert(m->x).second;
      bool iy = bound.insert(m->y).second;
      collect_free(m->b, bound, out);
      if (ix) bound.erase(m->x);
      if (iy) bound.erase(m->y);
      return;
    }
    case TermKind::Case:
      collect_free(m->a, bound, out);
      for (const auto &arm : m->arms) under(arm.binder, arm.body);
      return;
    default:
      if (m->a) collect_free(m->a, bound, out);
      if (m->b) collect_free(m->b, bound, out);
  }
}

}  // namespace

std::set<Name> free_vars(const TermPtr &m) {
  std::set<Name> bound, out;
  collect_free(m, bound, out);
  return out;
}

int occurrences(const TermPtr &m, const Name &x) {
  switch (m->kind) {
    case TermKind::Var: return m->x == x ? 1 : 0;
    case TermKind::Lam:
    case TermKind::Fork:
    case TermKind::Serve:
      return m->x == x ? 0 : occurrences(m->a, x);
    case TermKind::LetPair:
      return occurrences(m->a, x) + ((m->x == x || m->y == x) ? 0 : occurrences(m->b, x));
    case TermKind::Case: {
      int n = occurrences(m->a, x);
      for (const auto &arm : m->arms)
        if (!(arm.binder == x)) n += occurrences(arm.body, x);
      return n;
    }
    default:
      return (m->a ? occurrences(m->a, x) : 0) + (m->b ? occurrences(m->b, x) : 0);
  }
}

TermPtr rename_term(const TermPtr &m, const Name &from, const Name &to) {
  if (occurrences(m, from) == 0) return m;
  Term t = *m;
  switch (m->kind) {
    case TermKind::Var:
      t.x = to;
      break;
    case TermKind::Lam:
    case TermKind::Fork:
    case TermKind::Serve:
      if (!(m->x == from)) t.a = rename_term(m->a, from, to);
      break;
    case TermKind::LetPair:
      t.a = rename_term(m->a, from, to);
      if (!(m->x == from) && !(m->y == from)) t.b = rename_term(m->b, from, to);
      break;
    case TermKind::Case:
      t.a = rename_term(m->a, from, to);
      for (auto &arm : t.arms)
        if (!(arm.binder == from)) arm.body = rename_term(arm.body, from, to);
      break;
    default:
      if (m->a) t.a = rename_term(m->a, from, to);
      if (m->b) t.b = rename_term(m->b, from, to);
  }
  return std::make_shared<const Term>(std::move(t));
}

std::set<std::string> free_tyvars(const TermPtr &m) {
  std::set<std::string> out;
  if (m->annot) out.merge(free_tyvars(m->annot));
  if (m->a) out.merge(free_tyvars(m->a));
  if (m->b) out.merge(free_tyvars(m->b));
  for (const auto &arm : m->arms) out.merge(free_tyvars(arm.body));
  if (m->kind == TermKind::ReceiveType) out.erase(m->tyvar.ident);
  return out;
}

namespace {

struct TermEncoder {
  std::map<Name, int> bound;
  int depth = 0;
  std::string out;

  void name(const Name &n) {
    auto it = bound.find(n);
    if (it != bound.end())
      out += "b" + std::to_string(depth - 1 - it->second);
    else
      out += "f" + std::to_string(n.uid);
  }

  void bind(const Name &n, const TermPtr &body) {
    auto saved = bound.find(n) == bound.end() ? std::optional<int>{} : std::optional<int>{bound[n]};
    bound[n] = depth++;
    enc(body);
    --depth;
    if (saved) bound[n] = *saved; else bound.erase(n);
  }

  void type(const TypePtr &t) {
    out += "<";
    if (t) out += type_key(t);
    out += ">";
  }

  void enc(const TermPtr &m) {
    out += "(" + std::to_string(static_cast<int>(m->kind));
    switch (m->kind) {
      case TermKind::Var: out += " "; name(m->x); break;
      case TermKind::Lam:
      case TermKind::Fork:
      case TermKind::Serve:
        type(m->annot);
        bind(m->x, m->a);
        break;
      case TermKind::LetPair: {
        enc(m->a);
        auto sx = bound.count(m->x) ? std::optional<int>{bound[m->x]} : std::nullopt;
        auto sy = bound.count(m->y) ? std::optional<int>{bound[m->y]} : std::nullopt;
        bound[m->x] = depth++;
        bound[m->y] = depth++;
        enc(m->b);
        depth -= 2;
        if (sx) bound[m->x] = *sx; else bound.erase(m->x);
        if (sy) bound[m->y] = *sy; else bound.erase(m->y);
        break;
      }
      case TermKind::Case: {
        enc(m->a);
        std::vector<std::pair<std::string, std::string>> arms;
        for (const auto &arm : m->arms) {
          TermEncoder sub{bound, depth, ""};
          sub.bind(arm.binder, arm.body);
          arms.emplace_back(arm.label.text, sub.out);
        }
        std::sort(arms.begin(), arms.end());
        for (const auto &[l, s] : arms) out += "[" + l + s + "]";
        break;
      }
      case TermKind::Select: out += m->label.text; enc(m->a); break;
      case TermKind::SendType: type(m->annot); enc(m->a); break;
      case TermKind::ReceiveType: out += m->tyvar.ident; enc(m->a); break;
      case TermKind::CoerceUn:
      case TermKind::CoerceLin:
        type(m->annot);
        enc(m->a);
        break;
      default:
        if (m->a) enc(m->a);
        if (m->b) enc(m->b);
    }
    out += ")";
  }
};

}  // namespace

std::string alpha_canonical(const TermPtr &m) {
  TermEncoder e;
  e.enc(m);
  return e.out;
}

bool alpha_equal(const TermPtr &a, const TermPtr &b) { return alpha_canonical(a) == alpha_canonical(b); }

std::size_t term_size(const TermPtr &m) {
  std::size_t n = 1;
  if (m->a) n += term_size(m->a);
  if (m->b) n += term_size(m->b);
  for (const auto &arm : m->arms) n += term_size(arm.body);
  return n;
}

}  // namespace sessc
