#pragma once

#include <string>

#include "sessc/cp.hpp"
#include "sessc/engine.hpp"
#include "sessc/gen.hpp"
#include "sessc/hgv.hpp"
#include "sessc/syntax.hpp"
#include "sessc/translate.hpp"
#include "sessc/verify.hpp"

#ifndef SESSC_CORPUS_DIR
#error "SESSC_CORPUS_DIR must point at corpus/"
#endif

namespace sessc::test {

inline std::string corpus() { return SESSC_CORPUS_DIR; }

// One name supply and one parser, so free names agree across snippets.
struct Session {
  NameSupply names;
  Parser parser{names};

  TypePtr type(const std::string &s) { return parse_type(s); }
  PropPtr prop(const std::string &s) { return parse_prop(s); }
  TermPtr term(const std::string &s, HgvMode m = HgvMode::Full) { return parser.term(s, m); }
  ProcPtr proc(const std::string &s) { return parser.process(s); }
  HgvSource hgv(const std::string &s) { return parser.hgv(s); }
  CpSource cp(const std::string &s) { return parser.cp(s); }
  Name free(const std::string &s) { return parser.free_name(s); }
};

}  // namespace sessc::test
