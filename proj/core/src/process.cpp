#include "sessc/process.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace sessc {

namespace proc {
namespace {
ProcPtr make(Process p) { return std::make_shared<const Process>(std::move(p)); }
}  // namespace

ProcPtr link(Name x, Name y) {
  Process p{ProcKind::Link};
  p.chan = std::move(x);
  p.fresh = std::move(y);
  return make(std::move(p));
}
ProcPtr cut(Name x, PropPtr annot, ProcPtr l, ProcPtr r) {
  Process p{ProcKind::Cut};
  p.fresh = std::move(x);
  p.prop = std::move(annot);
  p.p = std::move(l);
  p.q = std::move(r);
  return make(std::move(p));
}
ProcPtr out(Name x, Name y, ProcPtr l, ProcPtr r) {
  Process p{ProcKind::Out};
  p.chan = std::move(x);
  p.fresh = std::move(y);
  p.p = std::move(l);
  p.q = std::move(r);
  return make(std::move(p));
}
ProcPtr in(Name x, Name y, ProcPtr body) {
  Process p{ProcKind::In};
  p.chan = std::move(x);
  p.fresh = std::move(y);
  p.p = std::move(body);
  return make(std::move(p));
}
ProcPtr inject(Name x, Label l, ProcPtr body) {
  Process p{ProcKind::Inject};
  p.chan = std::move(x);
  p.label = std::move(l);
  p.p = std::move(body);
  return make(std::move(p));
}
ProcPtr case_(Name x, ProcBranches bs) {
  Process p{ProcKind::Case};
  p.chan = std::move(x);
  p.branches = std::move(bs);
  return make(std::move(p));
}
ProcPtr bang(Name x, Name y, ProcPtr body) {
  Process p{ProcKind::Bang};
  p.chan = std::move(x);
  p.fresh = std::move(y);
  p.p = std::move(body);
  return make(std::move(p));
}
ProcPtr query(Name x, Name y, ProcPtr body) {
  Process p{ProcKind::Query};
  p.chan = std::move(x);
  p.fresh = std::move(y);
  p.p = std::move(body);
  return make(std::move(p));
}
ProcPtr out_type(Name x, PropPtr a, ProcPtr body) {
  Process p{ProcKind::OutType};
  p.chan = std::move(x);
  p.prop = std::move(a);
  p.p = std::move(body);
  return make(std::move(p));
}
ProcPtr in_type(Name x, TypeVar v, ProcPtr body) {
  Process p{ProcKind::InType};
  p.chan = std::move(x);
  p.tyvar = v.positive();
  p.p = std::move(body);
  return make(std::move(p));
}
ProcPtr empty_out(Name x) {
  Process p{ProcKind::EmptyOut};
  p.chan = std::move(x);
  return make(std::move(p));
}
ProcPtr empty_in(Name x, ProcPtr body) {
  Process p{ProcKind::EmptyIn};
  p.chan = std::move(x);
  p.p = std::move(body);
  return make(std::move(p));
}
}  // namespace proc

int occurrences(const ProcPtr &p, const Name &x) {
  switch (p->kind) {
    case ProcKind::Link: return (p->chan == x ? 1 : 0) + (p->fresh == x ? 1 : 0);
    case ProcKind::Cut:
      if (p->fresh == x) return 0;
      return occurrences(p->p, x) + occurrences(p->q, x);
    case ProcKind::Out: {
      // fresh is bound in p only; chan continues in q
      int n = p->chan == x ? 1 : 0;
      if (!(p->fresh == x)) n += occurrences(p->p, x);
      return n + occurrences(p->q, x);
    }
    case ProcKind::In:
    case ProcKind::Bang:
    case ProcKind::Query:
      return (p->chan == x ? 1 : 0) + (p->fresh == x ? 0 : occurrences(p->p, x));
    case ProcKind::Case: {
      int n = p->chan == x ? 1 : 0;
      for (const auto &[l, b] : p->branches) n += occurrences(b, x);
      return n;
    }
    case ProcKind::EmptyOut: return p->chan == x ? 1 : 0;
    default:  // Inject, OutType, InType, EmptyIn
      return (p->chan == x ? 1 : 0) + occurrences(p->p, x);
  }
}

bool is_free_in(const Name &x, const ProcPtr &p) { return occurrences(p, x) > 0; }

namespace {

void collect_free(const ProcPtr &p, std::set<Name> &out) {
  auto minus = [&](const ProcPtr &body, const Name &bound) {
    std::set<Name> sub;
    collect_free(body, sub);
    sub.erase(bound);
    out.merge(sub);
  };
  switch (p->kind) {
    case ProcKind::Link:
      out.insert(p->chan);
      out.insert(p->fresh);
      return;
    case ProcKind::Cut: {
      std::set<Name> sub;
      collect_free(p->p, sub);
      collect_free(p->q, sub);
      sub.erase(p->fresh);
      out.merge(sub);
      return;
    }
    case ProcKind::Out:
      out.insert(p->chan);
      minus(p->p, p->fresh);
      collect_free(p->q, out);
      return;
    case ProcKind::In:
    case ProcKind::Bang:
    case ProcKind::Query:
      out.insert(p->chan);
      minus(p->p, p->fresh);
      return;
    case ProcKind::Case:
      out.insert(p->chan);
      for (const auto &[l, b] : p->branches) collect_free(b, out);
      return;
    case ProcKind::EmptyOut:
      out.insert(p->chan);
      return;
    default:
      out.insert(p->chan);
      collect_free(p->p, out);
  }
}

}  // namespace

std::set<Name> free_names(const ProcPtr &p) {
  std::set<Name> out;
  collect_free(p, out);
  return out;
}

ProcPtr rename_process(const ProcPtr &p, const Name &w, const Name &x) {
  if (occurrences(p, x) == 0) return p;
  Process r = *p;
  if (r.chan == x) r.chan = w;
  switch (p->kind) {
    case ProcKind::Link:
      if (r.fresh == x) r.fresh = w;
      break;
    case ProcKind::Cut:
      r.p = rename_process(p->p, w, x);
      r.q = rename_process(p->q, w, x);
      break;
    case ProcKind::Out:
      if (!(p->fresh == x)) r.p = rename_process(p->p, w, x);
      r.q = rename_process(p->q, w, x);
      break;
    case ProcKind::In:
    case ProcKind::Bang:
    case ProcKind::Query:
      if (!(p->fresh == x)) r.p = rename_process(p->p, w, x);
      break;
    case ProcKind::Case:
      for (auto &[l, b] : r.branches) b = rename_process(b, w, x);
      break;
    case ProcKind::EmptyOut:
      break;
    default:
      r.p = rename_process(p->p, w, x);
  }
  return std::make_shared<const Process>(std::move(r));
}

ProcPtr subst_process_type(const ProcPtr &p, const std::string &x, const PropPtr &a) {
  Process r = *p;
  switch (p->kind) {
    case ProcKind::Link:
    case ProcKind::EmptyOut:
      return p;
    case ProcKind::InType:
      if (p->tyvar.ident == x) return p;
      break;
    default:
      break;
  }
  if (r.prop) r.prop = subst_prop(r.prop, x, a);
  if (r.p) r.p = subst_process_type(r.p, x, a);
  if (r.q) r.q = subst_process_type(r.q, x, a);
  for (auto &[l, b] : r.branches) b = subst_process_type(b, x, a);
  return std::make_shared<const Process>(std::move(r));
}

std::set<std::string> free_tyvars(const ProcPtr &p) {
  std::set<std::string> out;
  if (p->prop) out.merge(free_tyvars(p->prop));
  if (p->p) out.merge(free_tyvars(p->p));
  if (p->q) out.merge(free_tyvars(p->q));
  for (const auto &[l, b] : p->branches) out.merge(free_tyvars(b));
  if (p->kind == ProcKind::InType) out.erase(p->tyvar.ident);
  return out;
}

ProcPtr freshen(const ProcPtr &p, NameSupply &names) {
  Process r = *p;
  switch (p->kind) {
    case ProcKind::Link:
    case ProcKind::EmptyOut:
      return p;
    case ProcKind::Cut: {
      Name n = names.fresh_like(p->fresh);
      r.fresh = n;
      r.p = freshen(rename_process(p->p, n, p->fresh), names);
      r.q = freshen(rename_process(p->q, n, p->fresh), names);
      break;
    }
    case ProcKind::Out: {
      Name n = names.fresh_like(p->fresh);
      r.fresh = n;
      r.p = freshen(rename_process(p->p, n, p->fresh), names);
      r.q = freshen(p->q, names);
      break;
    }
    case ProcKind::In:
    case ProcKind::Bang:
    case ProcKind::Query: {
      Name n = names.fresh_like(p->fresh);
      r.fresh = n;
      r.p = freshen(rename_process(p->p, n, p->fresh), names);
      break;
    }
    case ProcKind::Case:
      for (auto &[l, b] : r.branches) b = freshen(b, names);
      break;
    default:
      r.p = freshen(p->p, names);
  }
  return std::make_shared<const Process>(std::move(r));
}

namespace {

struct ProcEncoder {
  std::map<Name, int> bound;
  int depth = 0;

  std::string name(const Name &n) const {
    auto it = bound.find(n);
    if (it != bound.end()) return "b" + std::to_string(depth - 1 - it->second);
    return "f" + std::to_string(n.uid);
  }

  std::string under(const Name &n, const ProcPtr &body) {
    std::optional<int> saved;
    if (auto it = bound.find(n); it != bound.end()) saved = it->second;
    bound[n] = depth++;
    std::string s = enc(body);
    --depth;
    if (saved) bound[n] = *saved; else bound.erase(n);
    return s;
  }

  std::string enc(const ProcPtr &p) {
    switch (p->kind) {
      case ProcKind::Link: {
        std::string a = name(p->chan), b = name(p->fresh);
        if (b < a) std::swap(a, b);
        return "<" + a + "," + b + ">";
      }
      case ProcKind::Cut: {
        std::string a = under(p->fresh, p->p);
        std::string b = under(p->fresh, p->q);
        return "nu(" + a + "|" + b + ")";
      }
      case ProcKind::Out: {
        std::string a = under(p->fresh, p->p);
        return name(p->chan) + "[](" + a + "|" + enc(p->q) + ")";
      }
      case ProcKind::In: return name(p->chan) + "()." + under(p->fresh, p->p);
      case ProcKind::Bang: return "!" + name(p->chan) + "()." + under(p->fresh, p->p);
      case ProcKind::Query: return "?" + name(p->chan) + "[]." + under(p->fresh, p->p);
      case ProcKind::Inject: return name(p->chan) + "[" + p->label.text + "]." + enc(p->p);
      case ProcKind::Case: {
        std::vector<std::string> parts;
        for (const auto &[l, b] : p->branches) parts.push_back(l.text + "." + enc(b));
        std::sort(parts.begin(), parts.end());
        std::string s = "case " + name(p->chan) + "{";
        for (const auto &part : parts) s += part + ";";
        return s + "}";
      }
      case ProcKind::OutType: return name(p->chan) + "[T" + prop_key(p->prop) + "]." + enc(p->p);
      case ProcKind::InType: return name(p->chan) + "(T" + p->tyvar.ident + ")." + enc(p->p);
      case ProcKind::EmptyOut: return name(p->chan) + "[]";
      case ProcKind::EmptyIn: return name(p->chan) + "()0." + enc(p->p);
    }
    return {};
  }
};

}  // namespace

std::string alpha_canonical(const ProcPtr &p) {
  ProcEncoder e;
  return e.enc(p);
}

bool alpha_equal(const ProcPtr &a, const ProcPtr &b) { return alpha_canonical(a) == alpha_canonical(b); }

std::size_t process_size(const ProcPtr &p) {
  std::size_t n = 1;
  if (p->p) n += process_size(p->p);
  if (p->q) n += process_size(p->q);
  for (const auto &[l, b] : p->branches) n += process_size(b);
  return n;
}

int count_cuts(const ProcPtr &p) {
  int n = p->kind == ProcKind::Cut ? 1 : 0;
  if (p->p) n += count_cuts(p->p);
  if (p->q) n += count_cuts(p->q);
  for (const auto &[l, b] : p->branches) n += count_cuts(b);
  return n;
}

}  // namespace sessc
