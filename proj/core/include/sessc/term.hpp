#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "sessc/names.hpp"
#include "sessc/types.hpp"

namespace sessc {

// HGV terms.
enum class TermKind {
  Var,          // x
  Lam,          // fn x:T. M
  App,          // M N
  Pair,         // (M, N)
  LetPair,      // let (x, y) = M in N
  Send,         // send M N
  Receive,      // receive M
  Select,       // select l M
  Case,         // case M { l(x). N; ... }
  Fork,         // fork x. M
  Link,         // link M N
  SendType,     // sendty S M
  ReceiveType,  // recvty X. M
  Serve,        // serve x. M
  Request,      // request M
  CoerceUn,     // (M : T -> U), the ->-introduction
  CoerceLin,    // (M : T -o U), the ->-elimination
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct CaseArm {
  Label label;
  Name binder;
  TermPtr body;
};

struct Term {
  TermKind kind;
  Name x;          // Var, binder of Lam/Fork/Serve, first binder of LetPair
  Name y;          // second binder of LetPair
  TypePtr annot;   // Lam domain, Fork/Serve binder type (optional), SendType
                   // argument, coercion target type
  TypeVar tyvar;   // ReceiveType binder
  Label label;     // Select
  TermPtr a;       // first subterm
  TermPtr b;       // second subterm
  std::vector<CaseArm> arms;
  SourceLoc loc;
};

namespace tm {
TermPtr var(Name x, SourceLoc loc = {});
TermPtr lam(Name x, TypePtr dom, TermPtr body, SourceLoc loc = {});
TermPtr app(TermPtr f, TermPtr arg, SourceLoc loc = {});
TermPtr pair(TermPtr l, TermPtr r, SourceLoc loc = {});
TermPtr let_pair(Name x, Name y, TermPtr scrutinee, TermPtr body, SourceLoc loc = {});
TermPtr send(TermPtr payload, TermPtr chan, SourceLoc loc = {});
TermPtr receive(TermPtr chan, SourceLoc loc = {});
TermPtr select(Label l, TermPtr chan, SourceLoc loc = {});
TermPtr case_(TermPtr scrutinee, std::vector<CaseArm> arms, SourceLoc loc = {});
TermPtr fork(Name x, TypePtr annot, TermPtr body, SourceLoc loc = {});
TermPtr link(TermPtr l, TermPtr r, SourceLoc loc = {});
TermPtr send_type(TypePtr s, TermPtr chan, SourceLoc loc = {});
TermPtr receive_type(TypeVar x, TermPtr chan, SourceLoc loc = {});
TermPtr serve(Name x, TypePtr annot, TermPtr body, SourceLoc loc = {});
TermPtr request(TermPtr chan, SourceLoc loc = {});
TermPtr coerce_un(TermPtr t, TypePtr annot, SourceLoc loc = {});
TermPtr coerce_lin(TermPtr t, TypePtr annot, SourceLoc loc = {});
}  // namespace tm

std::set<Name> free_vars(const TermPtr &m);
// Replaces free occurrences of `from` by `to`. Binders are globally unique,
// so no capture can occur when `to` is fresh or already free.
TermPtr rename_term(const TermPtr &m, const Name &from, const Name &to);
// Free type variables of all annotations in m.
std::set<std::string> free_tyvars(const TermPtr &m);
// Number of free occurrences of x.
int occurrences(const TermPtr &m, const Name &x);

// Canonical string: bound names become binder indices, free names keep uids.
std::string alpha_canonical(const TermPtr &m);
bool alpha_equal(const TermPtr &a, const TermPtr &b);

std::size_t term_size(const TermPtr &m);

}  // namespace sessc
