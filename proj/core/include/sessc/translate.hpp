#pragma once

#include <stdexcept>
#include <string>

#include "sessc/context.hpp"
#include "sessc/cp.hpp"
#include "sessc/hgv.hpp"
#include "sessc/process.hpp"
#include "sessc/term.hpp"

namespace sessc {

// Raised when a translation is handed something outside its domain, e.g. a
// lambda given to the HGVpi -> CP translation without direct mode.
class TranslationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// HGV -> HGVpi

TypePtr tr_type_pi(const TypePtr &t);
HgvContext tr_context_pi(const HgvContext &ctx);
// On an elaborated derivation (see typecheck). New fork/serve binders are
// annotated, so the output typechecks without inference.
TermPtr tr_term_pi(const DerivPtr &d, NameSupply &names);

// ---------------------------------------------------------------------------
// HGVpi -> CP, plus the direct extension to non-session types.

// Session types map per the table; non-session types (also as payloads) map
// to dual(flip(T)).
PropPtr tr_type_cp(const TypePtr &t);
// The interface flip. On session types this is dual(tr_type_cp(S)), not
// tr_type_cp(S); see README for why.
PropPtr flip(const TypePtr &t);
CpContext tr_context_cp(const HgvContext &ctx);

// CPS translation of a derivation of phi |- M : T. The result types under
// tr_context_cp(phi), z : dual(tr_type_cp(T)); every cut is annotated.
// Without `direct`, non-session constructs raise TranslationError.
ProcPtr tr_term_cp(const DerivPtr &d, const Name &z, NameSupply &names, bool direct = false);
inline ProcPtr tr_direct(const DerivPtr &d, const Name &z, NameSupply &names) {
  return tr_term_cp(d, z, names, true);
}

// ---------------------------------------------------------------------------
// CP -> HGVpi

TypePtr tr_cp_gv_type(const PropPtr &a);
HgvContext tr_context_gv(const CpContext &ctx);

struct GvImage {
  TermPtr term;
  // Where the x:end? coming from each x().P must be weakened, so that the
  // round trip puts x() back where it was.
  WeakenHints hints;
};

// p must have every cut annotated (the proc of a CpTyping is).
GvImage tr_cp_gv(const CpContext &ctx, const ProcPtr &p, NameSupply &names);

}  // namespace sessc
