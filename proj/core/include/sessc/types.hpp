#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sessc/names.hpp"

namespace sessc {

// ---------------------------------------------------------------------------
// HGV types. Session types and the non-session formers share one node type;
// is_session() tells them apart at the root.

enum class TypeKind {
  Output,      // !T.S
  Input,       // ?T.S
  Select,      // (+){l:S,...}
  Choice,      // (&){l:S,...}
  EndOut,      // end!
  EndIn,       // end?
  Var,         // X or ~X
  OutputType,  // !!X.S
  InputType,   // ??X.S
  Server,      // #S
  Service,     // @S
  LinFun,      // T -o U
  UnFun,       // T -> U
  Tensor,      // T * U
  Meta,        // inference placeholder, never escapes the checker
};

struct Type;
using TypePtr = std::shared_ptr<const Type>;
using TypeBranches = std::vector<std::pair<Label, TypePtr>>;

struct Type {
  TypeKind kind;
  TypePtr left;   // payload, domain, left factor, or the body of Server/Service
  TypePtr right;  // continuation, codomain, right factor, or binder body
  TypeBranches branches;
  TypeVar var;    // Var, binder of OutputType/InputType; Meta uses ident as id
};

namespace ty {
TypePtr output(TypePtr payload, TypePtr cont);
TypePtr input(TypePtr payload, TypePtr cont);
TypePtr select(TypeBranches branches);
TypePtr choice(TypeBranches branches);
TypePtr end_out();
TypePtr end_in();
TypePtr var(TypeVar v);
TypePtr var(std::string ident, bool dual = false);
TypePtr output_type(TypeVar binder, TypePtr cont);
TypePtr input_type(TypeVar binder, TypePtr cont);
TypePtr server(TypePtr s);
TypePtr service(TypePtr s);
TypePtr lin_fun(TypePtr dom, TypePtr cod);
TypePtr un_fun(TypePtr dom, TypePtr cod);
TypePtr tensor(TypePtr l, TypePtr r);
TypePtr meta(int id, bool dual = false);
}  // namespace ty

bool is_session(const Type &t);
// Only services, unlimited functions and end? are unlimited.
bool is_unlimited(const Type &t);

TypePtr dual_session(const TypePtr &s);

// Capture-avoiding substitution: X := s and ~X := dual(s).
TypePtr subst_type(const TypePtr &t, const std::string &x, const TypePtr &s);
std::set<std::string> free_tyvars(const TypePtr &t);

// Equality modulo alpha on type binders; branch order is ignored.
bool type_equal(const TypePtr &a, const TypePtr &b);
// Exact structural identity (branch order and binder names significant).
bool type_identical(const TypePtr &a, const TypePtr &b);
// Canonical encoding underlying type_equal.
std::string type_key(const TypePtr &t);
// True if no LinFun/UnFun/Tensor occurs anywhere, payloads included.
bool is_pure_session(const TypePtr &t);

// ---------------------------------------------------------------------------
// CP propositions (classical linear logic).

enum class PropKind {
  Tensor,
  Par,
  Plus,
  With,
  One,
  Bottom,
  OfCourse,
  WhyNot,
  Exists,
  Forall,
  Var,
  Meta,
};

struct Prop;
using PropPtr = std::shared_ptr<const Prop>;
using PropBranches = std::vector<std::pair<Label, PropPtr>>;

struct Prop {
  PropKind kind;
  PropPtr left;   // A of A*B, A par B, !A, ?A
  PropPtr right;  // B, binder body
  PropBranches branches;
  TypeVar var;
};

namespace pr {
PropPtr tensor(PropPtr a, PropPtr b);
PropPtr par(PropPtr a, PropPtr b);
PropPtr plus(PropBranches bs);
PropPtr with(PropBranches bs);
PropPtr one();
PropPtr bottom();
PropPtr of_course(PropPtr a);
PropPtr why_not(PropPtr a);
PropPtr exists(TypeVar x, PropPtr body);
PropPtr forall(TypeVar x, PropPtr body);
PropPtr var(TypeVar v);
PropPtr var(std::string ident, bool dual = false);
PropPtr meta(int id, bool dual = false);
}  // namespace pr

PropPtr dual_prop(const PropPtr &a);
PropPtr subst_prop(const PropPtr &a, const std::string &x, const PropPtr &b);
std::set<std::string> free_tyvars(const PropPtr &a);
bool prop_equal(const PropPtr &a, const PropPtr &b);
bool prop_identical(const PropPtr &a, const PropPtr &b);
std::string prop_key(const PropPtr &a);
bool is_why_not(const PropPtr &a);

// Printers use the concrete syntax of the command-line tool.
std::string to_string(const TypePtr &t);
std::string to_string(const PropPtr &a);

}  // namespace sessc
