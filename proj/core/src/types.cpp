#include "sessc/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace sessc {

namespace {

TypePtr make(TypeKind k, TypePtr l = nullptr, TypePtr r = nullptr, TypeBranches bs = {},
             TypeVar v = {}) {
  return std::make_shared<const Type>(Type{k, std::move(l), std::move(r), std::move(bs), std::move(v)});
}

PropPtr makep(PropKind k, PropPtr l = nullptr, PropPtr r = nullptr, PropBranches bs = {},
              TypeVar v = {}) {
  return std::make_shared<const Prop>(Prop{k, std::move(l), std::move(r), std::move(bs), std::move(v)});
}

std::string fresh_ident(const std::string &base, const std::set<std::string> &avoid) {
  std::string candidate = base + "'";
  while (avoid.count(candidate)) candidate += "'";
  return candidate;
}

}  // namespace

namespace ty {
TypePtr output(TypePtr p, TypePtr c) { return make(TypeKind::Output, std::move(p), std::move(c)); }
TypePtr input(TypePtr p, TypePtr c) { return make(TypeKind::Input, std::move(p), std::move(c)); }
TypePtr select(TypeBranches bs) { return make(TypeKind::Select, nullptr, nullptr, std::move(bs)); }
TypePtr choice(TypeBranches bs) { return make(TypeKind::Choice, nullptr, nullptr, std::move(bs)); }
TypePtr end_out() {
  static const TypePtr t = make(TypeKind::EndOut);
  return t;
}
TypePtr end_in() {
  static const TypePtr t = make(TypeKind::EndIn);
  return t;
}
TypePtr var(TypeVar v) { return make(TypeKind::Var, nullptr, nullptr, {}, std::move(v)); }
TypePtr var(std::string ident, bool dual) { return var(TypeVar{std::move(ident), dual}); }
TypePtr output_type(TypeVar b, TypePtr c) {
  return make(TypeKind::OutputType, nullptr, std::move(c), {}, b.positive());
}
TypePtr input_type(TypeVar b, TypePtr c) {
  return make(TypeKind::InputType, nullptr, std::move(c), {}, b.positive());
}
TypePtr server(TypePtr s) { return make(TypeKind::Server, std::move(s)); }
TypePtr service(TypePtr s) { return make(TypeKind::Service, std::move(s)); }
TypePtr lin_fun(TypePtr d, TypePtr c) { return make(TypeKind::LinFun, std::move(d), std::move(c)); }
TypePtr un_fun(TypePtr d, TypePtr c) { return make(TypeKind::UnFun, std::move(d), std::move(c)); }
TypePtr tensor(TypePtr l, TypePtr r) { return make(TypeKind::Tensor, std::move(l), std::move(r)); }
TypePtr meta(int id, bool dual) {
  return make(TypeKind::Meta, nullptr, nullptr, {}, TypeVar{std::to_string(id), dual});
}
}  // namespace ty

namespace pr {
PropPtr tensor(PropPtr a, PropPtr b) { return makep(PropKind::Tensor, std::move(a), std::move(b)); }
PropPtr par(PropPtr a, PropPtr b) { return makep(PropKind::Par, std::move(a), std::move(b)); }
PropPtr plus(PropBranches bs) { return makep(PropKind::Plus, nullptr, nullptr, std::move(bs)); }
PropPtr with(PropBranches bs) { return makep(PropKind::With, nullptr, nullptr, std::move(bs)); }
PropPtr one() {
  static const PropPtr p = makep(PropKind::One);
  return p;
}
PropPtr bottom() {
  static const PropPtr p = makep(PropKind::Bottom);
  return p;
}
PropPtr of_course(PropPtr a) { return makep(PropKind::OfCourse, std::move(a)); }
PropPtr why_not(PropPtr a) { return makep(PropKind::WhyNot, std::move(a)); }
PropPtr exists(TypeVar x, PropPtr b) {
  return makep(PropKind::Exists, nullptr, std::move(b), {}, x.positive());
}
PropPtr forall(TypeVar x, PropPtr b) {
  return makep(PropKind::Forall, nullptr, std::move(b), {}, x.positive());
}
PropPtr var(TypeVar v) { return makep(PropKind::Var, nullptr, nullptr, {}, std::move(v)); }
PropPtr var(std::string ident, bool dual) { return var(TypeVar{std::move(ident), dual}); }
PropPtr meta(int id, bool dual) {
  return makep(PropKind::Meta, nullptr, nullptr, {}, TypeVar{std::to_string(id), dual});
}
}  // namespace pr

bool is_session(const Type &t) {
  switch (t.kind) {
    case TypeKind::LinFun:
    case TypeKind::UnFun:
    case TypeKind::Tensor:
      return false;
    default:
      return true;
  }
}

bool is_unlimited(const Type &t) {
  return t.kind == TypeKind::Service || t.kind == TypeKind::UnFun || t.kind == TypeKind::EndIn;
}

TypePtr dual_session(const TypePtr &s) {
  switch (s->kind) {
    case TypeKind::Output: return ty::input(s->left, dual_session(s->right));
    case TypeKind::Input: return ty::output(s->left, dual_session(s->right));
    case TypeKind::Select:
    case TypeKind::Choice: {
      TypeBranches bs;
      bs.reserve(s->branches.size());
      for (const auto &[l, b] : s->branches) bs.emplace_back(l, dual_session(b));
      return s->kind == TypeKind::Select ? ty::choice(std::move(bs)) : ty::select(std::move(bs));
    }
    case TypeKind::EndOut: return ty::end_in();
    case TypeKind::EndIn: return ty::end_out();
    case TypeKind::Var: return ty::var(s->var.flipped());
    case TypeKind::Meta: return ty::meta(std::stoi(s->var.ident), !s->var.dual);
    case TypeKind::OutputType: return ty::input_type(s->var, dual_session(s->right));
    case TypeKind::InputType: return ty::output_type(s->var, dual_session(s->right));
    case TypeKind::Server: return ty::service(dual_session(s->left));
    case TypeKind::Service: return ty::server(dual_session(s->left));
    default:
      throw std::invalid_argument("dual of non-session type " + to_string(s));
  }
}

std::set<std::string> free_tyvars(const TypePtr &t) {
  std::set<std::string> out;
  switch (t->kind) {
    case TypeKind::Var: out.insert(t->var.ident); break;
    case TypeKind::OutputType:
    case TypeKind::InputType:
      out = free_tyvars(t->right);
      out.erase(t->var.ident);
      break;
    case TypeKind::Select:
    case TypeKind::Choice:
      for (const auto &[l, b] : t->branches) out.merge(free_tyvars(b));
      break;
    default:
      if (t->left) out.merge(free_tyvars(t->left));
      if (t->right) out.merge(free_tyvars(t->right));
  }
  return out;
}

TypePtr subst_type(const TypePtr &t, const std::string &x, const TypePtr &s) {
  switch (t->kind) {
    case TypeKind::Var:
      if (t->var.ident != x) return t;
      return t->var.dual ? dual_session(s) : s;
    case TypeKind::EndOut:
    case TypeKind::EndIn:
    case TypeKind::Meta:
      return t;
    case TypeKind::OutputType:
    case TypeKind::InputType: {
      if (t->var.ident == x) return t;
      TypeVar binder = t->var;
      TypePtr body = t->right;
      auto fs = free_tyvars(s);
      if (fs.count(binder.ident) && free_tyvars(body).count(x)) {
        auto avoid = fs;
        avoid.merge(free_tyvars(body));
        avoid.insert(x);
        TypeVar renamed{fresh_ident(binder.ident, avoid), false};
        body = subst_type(body, binder.ident, ty::var(renamed));
        binder = renamed;
      }
      body = subst_type(body, x, s);
      return t->kind == TypeKind::OutputType ? ty::output_type(binder, body)
                                             : ty::input_type(binder, body);
    }
    case TypeKind::Select:
    case TypeKind::Choice: {
      TypeBranches bs;
      for (const auto &[l, b] : t->branches) bs.emplace_back(l, subst_type(b, x, s));
      return t->kind == TypeKind::Select ? ty::select(std::move(bs)) : ty::choice(std::move(bs));
    }
    default: {
      TypePtr l = t->left ? subst_type(t->left, x, s) : nullptr;
      TypePtr r = t->right ? subst_type(t->right, x, s) : nullptr;
      return make(t->kind, std::move(l), std::move(r));
    }
  }
}

namespace {

void type_key_into(const TypePtr &t, std::vector<std::string> &bound, std::string &out) {
  switch (t->kind) {
    case TypeKind::Output: out += "!("; break;
    case TypeKind::Input: out += "?("; break;
    case TypeKind::LinFun: out += "-o("; break;
    case TypeKind::UnFun: out += "->("; break;
    case TypeKind::Tensor: out += "*("; break;
    case TypeKind::Server: out += "#("; break;
    case TypeKind::Service: out += "@("; break;
    case TypeKind::EndOut: out += "E!"; return;
    case TypeKind::EndIn: out += "E?"; return;
    case TypeKind::Meta: out += (t->var.dual ? "~m" : "m") + t->var.ident; return;
    case TypeKind::Var: {
      out += t->var.dual ? "~" : "";
      for (std::size_t i = bound.size(); i-- > 0;) {
        if (bound[i] == t->var.ident) {
          out += "#" + std::to_string(bound.size() - 1 - i);
          return;
        }
      }
      out += "'" + t->var.ident;
      return;
    }
    case TypeKind::OutputType:
    case TypeKind::InputType:
      out += t->kind == TypeKind::OutputType ? "!!(" : "?" "?(";
      bound.push_back(t->var.ident);
      type_key_into(t->right, bound, out);
      bound.pop_back();
      out += ")";
      return;
    case TypeKind::Select:
    case TypeKind::Choice: {
      out += t->kind == TypeKind::Select ? "+{" : "&{";
      std::vector<std::pair<std::string, std::string>> parts;
      for (const auto &[l, b] : t->branches) {
        std::string sub;
        type_key_into(b, bound, sub);
        parts.emplace_back(l.text, std::move(sub));
      }
      std::sort(parts.begin(), parts.end());
      for (const auto &[l, s] : parts) out += l + ":" + s + ",";
      out += "}";
      return;
    }
  }
  type_key_into(t->left, bound, out);
  if (t->right) {
    out += ",";
    type_key_into(t->right, bound, out);
  }
  out += ")";
}

void prop_key_into(const PropPtr &a, std::vector<std::string> &bound, std::string &out) {
  switch (a->kind) {
    case PropKind::Tensor: out += "*("; break;
    case PropKind::Par: out += "|("; break;
    case PropKind::OfCourse: out += "!("; break;
    case PropKind::WhyNot: out += "?("; break;
    case PropKind::One: out += "1"; return;
    case PropKind::Bottom: out += "0"; return;
    case PropKind::Meta: out += (a->var.dual ? "~m" : "m") + a->var.ident; return;
    case PropKind::Var: {
      out += a->var.dual ? "~" : "";
      for (std::size_t i = bound.size(); i-- > 0;) {
        if (bound[i] == a->var.ident) {
          out += "#" + std::to_string(bound.size() - 1 - i);
          return;
        }
      }
      out += "'" + a->var.ident;
      return;
    }
    case PropKind::Exists:
    case PropKind::Forall:
      out += a->kind == PropKind::Exists ? "E(" : "A(";
      bound.push_back(a->var.ident);
      prop_key_into(a->right, bound, out);
      bound.pop_back();
      out += ")";
      return;
    case PropKind::Plus:
    case PropKind::With: {
      out += a->kind == PropKind::Plus ? "+{" : "&{";
      std::vector<std::pair<std::string, std::string>> parts;
      for (const auto &[l, b] : a->branches) {
        std::string sub;
        prop_key_into(b, bound, sub);
        parts.emplace_back(l.text, std::move(sub));
      }
      std::sort(parts.begin(), parts.end());
      for (const auto &[l, s] : parts) out += l + ":" + s + ",";
      out += "}";
      return;
    }
  }
  prop_key_into(a->left, bound, out);
  if (a->right) {
    out += ",";
    prop_key_into(a->right, bound, out);
  }
  out += ")";
}

}  // namespace

std::string type_key(const TypePtr &t) {
  std::vector<std::string> bound;
  std::string out;
  type_key_into(t, bound, out);
  return out;
}

bool type_equal(const TypePtr &a, const TypePtr &b) {
  return a == b || type_key(a) == type_key(b);
}

bool type_identical(const TypePtr &a, const TypePtr &b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || !(a->var == b->var)) return false;
  if (a->branches.size() != b->branches.size()) return false;
  for (std::size_t i = 0; i < a->branches.size(); ++i) {
    if (a->branches[i].first != b->branches[i].first) return false;
    if (!type_identical(a->branches[i].second, b->branches[i].second)) return false;
  }
  if (static_cast<bool>(a->left) != static_cast<bool>(b->left)) return false;
  if (static_cast<bool>(a->right) != static_cast<bool>(b->right)) return false;
  return (!a->left || type_identical(a->left, b->left)) &&
         (!a->right || type_identical(a->right, b->right));
}

bool is_pure_session(const TypePtr &t) {
  if (!is_session(*t)) return false;
  for (const auto &[l, b] : t->branches)
    if (!is_pure_session(b)) return false;
  if (t->left && !is_pure_session(t->left)) return false;
  if (t->right && !is_pure_session(t->right)) return false;
  return true;
}

// ---------------------------------------------------------------------------

PropPtr dual_prop(const PropPtr &a) {
  switch (a->kind) {
    case PropKind::Tensor: return pr::par(dual_prop(a->left), dual_prop(a->right));
    case PropKind::Par: return pr::tensor(dual_prop(a->left), dual_prop(a->right));
    case PropKind::Plus:
    case PropKind::With: {
      PropBranches bs;
      bs.reserve(a->branches.size());
      for (const auto &[l, b] : a->branches) bs.emplace_back(l, dual_prop(b));
      return a->kind == PropKind::Plus ? pr::with(std::move(bs)) : pr::plus(std::move(bs));
    }
    case PropKind::One: return pr::bottom();
    case PropKind::Bottom: return pr::one();
    case PropKind::OfCourse: return pr::why_not(dual_prop(a->left));
    case PropKind::WhyNot: return pr::of_course(dual_prop(a->left));
    case PropKind::Exists: return pr::forall(a->var, dual_prop(a->right));
    case PropKind::Forall: return pr::exists(a->var, dual_prop(a->right));
    case PropKind::Var: return pr::var(a->var.flipped());
    case PropKind::Meta: return pr::meta(std::stoi(a->var.ident), !a->var.dual);
  }
  return a;
}

std::set<std::string> free_tyvars(const PropPtr &a) {
  std::set<std::string> out;
  switch (a->kind) {
    case PropKind::Var: out.insert(a->var.ident); break;
    case PropKind::Exists:
    case PropKind::Forall:
      out = free_tyvars(a->right);
      out.erase(a->var.ident);
      break;
    case PropKind::Plus:
    case PropKind::With:
      for (const auto &[l, b] : a->branches) out.merge(free_tyvars(b));
      break;
    default:
      if (a->left) out.merge(free_tyvars(a->left));
      if (a->right) out.merge(free_tyvars(a->right));
  }
  return out;
}

PropPtr subst_prop(const PropPtr &a, const std::string &x, const PropPtr &b) {
  switch (a->kind) {
    case PropKind::Var:
      if (a->var.ident != x) return a;
      return a->var.dual ? dual_prop(b) : b;
    case PropKind::One:
    case PropKind::Bottom:
    case PropKind::Meta:
      return a;
    case PropKind::Exists:
    case PropKind::Forall: {
      if (a->var.ident == x) return a;
      TypeVar binder = a->var;
      PropPtr body = a->right;
      auto fb = free_tyvars(b);
      if (fb.count(binder.ident) && free_tyvars(body).count(x)) {
        auto avoid = fb;
        avoid.merge(free_tyvars(body));
        avoid.insert(x);
        TypeVar renamed{fresh_ident(binder.ident, avoid), false};
        body = subst_prop(body, binder.ident, pr::var(renamed));
        binder = renamed;
      }
      body = subst_prop(body, x, b);
      return a->kind == PropKind::Exists ? pr::exists(binder, body) : pr::forall(binder, body);
    }
    case PropKind::Plus:
    case PropKind::With: {
      PropBranches bs;
      for (const auto &[l, c] : a->branches) bs.emplace_back(l, subst_prop(c, x, b));
      return a->kind == PropKind::Plus ? pr::plus(std::move(bs)) : pr::with(std::move(bs));
    }
    default: {
      PropPtr l = a->left ? subst_prop(a->left, x, b) : nullptr;
      PropPtr r = a->right ? subst_prop(a->right, x, b) : nullptr;
      return makep(a->kind, std::move(l), std::move(r));
    }
  }
}

std::string prop_key(const PropPtr &a) {
  std::vector<std::string> bound;
  std::string out;
  prop_key_into(a, bound, out);
  return out;
}

bool prop_equal(const PropPtr &a, const PropPtr &b) {
  return a == b || prop_key(a) == prop_key(b);
}

bool prop_identical(const PropPtr &a, const PropPtr &b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || !(a->var == b->var)) return false;
  if (a->branches.size() != b->branches.size()) return false;
  for (std::size_t i = 0; i < a->branches.size(); ++i) {
    if (a->branches[i].first != b->branches[i].first) return false;
    if (!prop_identical(a->branches[i].second, b->branches[i].second)) return false;
  }
  if (static_cast<bool>(a->left) != static_cast<bool>(b->left)) return false;
  if (static_cast<bool>(a->right) != static_cast<bool>(b->right)) return false;
  return (!a->left || prop_identical(a->left, b->left)) &&
         (!a->right || prop_identical(a->right, b->right));
}

bool is_why_not(const PropPtr &a) { return a->kind == PropKind::WhyNot; }

// ---------------------------------------------------------------------------
// Printing. Precedence levels for HGV types: 0 arrows, 1 tensor, 2 prefix/atoms.

namespace {

void print_type(const TypePtr &t, int prec, std::string &out);

void print_type_branches(const TypeBranches &bs, std::string &out) {
  out += "{";
  bool first = true;
  for (const auto &[l, b] : bs) {
    if (!first) out += ", ";
    first = false;
    out += l.text + ": ";
    print_type(b, 0, out);
  }
  out += "}";
}

// Payloads of !T.S / ?T.S must be atomic so that the '.' is unambiguous.
void print_payload(const TypePtr &t, std::string &out) {
  bool atomic = t->kind == TypeKind::EndOut || t->kind == TypeKind::EndIn ||
                t->kind == TypeKind::Var || t->kind == TypeKind::Meta ||
                t->kind == TypeKind::Select || t->kind == TypeKind::Choice;
  if (atomic) {
    print_type(t, 2, out);
  } else {
    out += "(";
    print_type(t, 0, out);
    out += ")";
  }
}

void print_type(const TypePtr &t, int prec, std::string &out) {
  switch (t->kind) {
    case TypeKind::Output:
    case TypeKind::Input:
      out += t->kind == TypeKind::Output ? "!" : "?";
      print_payload(t->left, out);
      out += ".";
      print_type(t->right, 2, out);
      return;
    case TypeKind::Select: out += "(+)"; print_type_branches(t->branches, out); return;
    case TypeKind::Choice: out += "(&)"; print_type_branches(t->branches, out); return;
    case TypeKind::EndOut: out += "end!"; return;
    case TypeKind::EndIn: out += "end?"; return;
    case TypeKind::Var: out += (t->var.dual ? "~" : "") + t->var.ident; return;
    case TypeKind::Meta: out += (t->var.dual ? "~%" : "%") + t->var.ident; return;
    case TypeKind::OutputType:
    case TypeKind::InputType:
      out += t->kind == TypeKind::OutputType ? "!!" : "??";
      out += t->var.ident + ".";
      print_type(t->right, 2, out);
      return;
    case TypeKind::Server:
    case TypeKind::Service:
      out += t->kind == TypeKind::Server ? "#" : "@";
      print_type(t->left, 2, out);
      return;
    case TypeKind::LinFun:
    case TypeKind::UnFun:
      if (prec > 0) out += "(";
      print_type(t->left, 1, out);
      out += t->kind == TypeKind::LinFun ? " -o " : " -> ";
      print_type(t->right, 0, out);
      if (prec > 0) out += ")";
      return;
    case TypeKind::Tensor:
      if (prec > 1) out += "(";
      print_type(t->left, 2, out);
      out += " * ";
      print_type(t->right, 1, out);
      if (prec > 1) out += ")";
      return;
  }
}

// Proposition precedence: 0 par, 1 tensor, 2 prefix/atoms.
void print_prop(const PropPtr &a, int prec, std::string &out);

void print_prop_branches(const PropBranches &bs, std::string &out) {
  out += "{";
  bool first = true;
  for (const auto &[l, b] : bs) {
    if (!first) out += ", ";
    first = false;
    out += l.text + ": ";
    print_prop(b, 0, out);
  }
  out += "}";
}

void print_prop(const PropPtr &a, int prec, std::string &out) {
  switch (a->kind) {
    case PropKind::Par:
      if (prec > 0) out += "(";
      print_prop(a->left, 1, out);
      out += " | ";
      print_prop(a->right, 0, out);
      if (prec > 0) out += ")";
      return;
    case PropKind::Tensor:
      if (prec > 1) out += "(";
      print_prop(a->left, 2, out);
      out += " * ";
      print_prop(a->right, 1, out);
      if (prec > 1) out += ")";
      return;
    case PropKind::Plus: out += "+"; print_prop_branches(a->branches, out); return;
    case PropKind::With: out += "&"; print_prop_branches(a->branches, out); return;
    case PropKind::One: out += "1"; return;
    case PropKind::Bottom: out += "bot"; return;
    case PropKind::OfCourse: out += "!"; print_prop(a->left, 2, out); return;
    case PropKind::WhyNot: out += "?"; print_prop(a->left, 2, out); return;
    case PropKind::Exists:
    case PropKind::Forall:
      if (prec > 0) out += "(";
      out += a->kind == PropKind::Exists ? "ex " : "all ";
      out += a->var.ident + ". ";
      print_prop(a->right, 0, out);
      if (prec > 0) out += ")";
      return;
    case PropKind::Var: out += (a->var.dual ? "~" : "") + a->var.ident; return;
    case PropKind::Meta: out += (a->var.dual ? "~%" : "%") + a->var.ident; return;
  }
}

}  // namespace

std::string to_string(const TypePtr &t) {
  std::string out;
  print_type(t, 0, out);
  return out;
}

std::string to_string(const PropPtr &a) {
  std::string out;
  print_prop(a, 0, out);
  return out;
}

}  // namespace sessc
