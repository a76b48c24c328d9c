#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sessc/context.hpp"
#include "sessc/errors.hpp"
#include "sessc/process.hpp"

namespace sessc {

enum class CpRule {
  Ax,
  Cut,
  Tensor,
  Par,
  Plus,
  With,
  OfCourse,
  WhyNot,
  Weaken,
  Contract,
  Exists,
  Forall,
  One,
  Bottom,
};

const char *to_string(CpRule r);

struct CpDerivation;
using CpDerivPtr = std::shared_ptr<const CpDerivation>;

struct CpDerivation {
  CpRule rule;
  CpContext ctx;  // conclusion sequent
  ProcPtr proc;
  std::vector<CpDerivPtr> children;
  Name name;  // Weaken/Contract: the structural name
  Name copy;  // Contract: the second copy in the premise
};

struct CpTyping {
  CpDerivPtr deriv;
  ProcPtr proc;  // elaborated: every cut annotated with the type of its name on the left
};

// Unannotated cuts are solved by unification over the whole process.
CpTyping cp_typecheck(const CpContext &ctx, const ProcPtr &p, NameSupply &names);

// True iff every node's sequent follows from its premises by its rule.
bool check_sequent_eq(const CpDerivPtr &d, std::string *why = nullptr);

}  // namespace sessc
