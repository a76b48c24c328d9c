#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "sessc/names.hpp"
#include "sessc/types.hpp"

namespace sessc {

// CP processes.
enum class ProcKind {
  Link,      // x <-> y
  Cut,       // new x (P | Q)
  Out,       // x[y].(P | Q)
  In,        // x(y). P
  Inject,    // x[l]. P
  Case,      // case x { l. P; ... }
  Bang,      // !x(y). P
  Query,     // ?x[y]. P
  OutType,   // x[A]. P
  InType,    // x(X). P
  EmptyOut,  // x[]
  EmptyIn,   // x(). P
};

struct Process;
using ProcPtr = std::shared_ptr<const Process>;
using ProcBranches = std::vector<std::pair<Label, ProcPtr>>;

struct Process {
  ProcKind kind;
  Name chan;      // subject; left end of Link
  Name fresh;     // bound name of Out/In/Bang/Query/Cut; right end of Link
  PropPtr prop;   // OutType witness; optional Cut annotation (type of the
                  // bound name inside p)
  TypeVar tyvar;  // InType binder
  Label label;    // Inject
  ProcPtr p;
  ProcPtr q;
  ProcBranches branches;
};

namespace proc {
ProcPtr link(Name x, Name y);
ProcPtr cut(Name x, PropPtr annot, ProcPtr p, ProcPtr q);
ProcPtr out(Name x, Name y, ProcPtr p, ProcPtr q);
ProcPtr in(Name x, Name y, ProcPtr p);
ProcPtr inject(Name x, Label l, ProcPtr p);
ProcPtr case_(Name x, ProcBranches bs);
ProcPtr bang(Name x, Name y, ProcPtr p);
ProcPtr query(Name x, Name y, ProcPtr p);
ProcPtr out_type(Name x, PropPtr a, ProcPtr p);
ProcPtr in_type(Name x, TypeVar v, ProcPtr p);
ProcPtr empty_out(Name x);
ProcPtr empty_in(Name x, ProcPtr p);
}  // namespace proc

std::set<Name> free_names(const ProcPtr &p);
bool is_free_in(const Name &x, const ProcPtr &p);
int occurrences(const ProcPtr &p, const Name &x);
// P{w/x}: every free occurrence of x becomes w.
ProcPtr rename_process(const ProcPtr &p, const Name &w, const Name &x);
// Q{A/X} on the type annotations inside a process.
ProcPtr subst_process_type(const ProcPtr &p, const std::string &x, const PropPtr &a);
// Copy with every bound name replaced by a fresh one.
ProcPtr freshen(const ProcPtr &p, NameSupply &names);
std::set<std::string> free_tyvars(const ProcPtr &p);

// Alpha-canonical encoding (no structural equivalence): bound names become
// binder indices, free names keep their uid, cut annotations are ignored.
std::string alpha_canonical(const ProcPtr &p);
bool alpha_equal(const ProcPtr &a, const ProcPtr &b);

std::size_t process_size(const ProcPtr &p);
int count_cuts(const ProcPtr &p);

}  // namespace sessc
