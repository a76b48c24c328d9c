#pragma once

#include <map>
#include <string>
#include <string_view>

#include "sessc/context.hpp"
#include "sessc/errors.hpp"
#include "sessc/hgv.hpp"
#include "sessc/process.hpp"
#include "sessc/term.hpp"

namespace sessc {

// Source files:
//
//   ctx x: A, y: B.
//   <subject>
//   // type: T
//
// The header is optional. The footer records the expected type of the term
// (for .cp files: of the lifted term).
struct HgvSource {
  HgvContext ctx;
  TermPtr term;
  TypePtr expected;  // null if no footer
};

struct CpSource {
  CpContext ctx;
  ProcPtr proc;
  TypePtr expected;
};

// Parsing state shared across several inputs: binders get fresh uids, free
// names with the same spelling map to the same Name.
class Parser {
 public:
  explicit Parser(NameSupply &names) : names_(names) {}

  HgvSource hgv(std::string_view text, HgvMode mode = HgvMode::Full);
  CpSource cp(std::string_view text);
  TermPtr term(std::string_view text, HgvMode mode = HgvMode::Full);
  ProcPtr process(std::string_view text);

  Name free_name(const std::string &base);
  NameSupply &supply() { return names_; }

 private:
  NameSupply &names_;
  std::map<std::string, Name> free_;
};

TypePtr parse_type(std::string_view text);
PropPtr parse_prop(std::string_view text);

// A name prints as its base unless another name in the same printout shares
// that base, in which case it prints as base#uid.
std::string print_term(const TermPtr &m);
std::string print_process(const ProcPtr &p);
std::string print_context(const HgvContext &ctx);
std::string print_context(const CpContext &ctx);
std::string print_source(const HgvSource &s);
std::string print_source(const CpSource &s);

}  // namespace sessc
