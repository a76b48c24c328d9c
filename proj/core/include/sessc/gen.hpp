#pragma once

#include <cstdint>
#include <stdexcept>

#include "sessc/context.hpp"
#include "sessc/process.hpp"
#include "sessc/term.hpp"
#include "sessc/types.hpp"

namespace sessc {

// Random generation. Same config and same starting NameSupply give the same
// output, byte for byte.
struct GenConfig {
  std::uint64_t seed = 1;
  int max_depth = 4;
  // Allow -o, -> and * in payloads and leaf types. Off gives pure session
  // types, which is what the type round trips need.
  bool functional = true;
};

class GenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Depth counts type formers; depth 0 is end! or end?.
TypePtr gen_session_type(const GenConfig &cfg);
PropPtr gen_prop(const GenConfig &cfg);

struct GeneratedTerm {
  HgvContext ctx;
  TermPtr term;
  TypePtr type;
};

struct GeneratedProcess {
  CpContext ctx;
  ProcPtr proc;
};

// Built rule by rule, then re-checked; a subject that fails its own check is
// a GenError (a generator bug), never retried.
GeneratedTerm gen_typed_term(const GenConfig &cfg, NameSupply &names);
GeneratedProcess gen_typed_process(const GenConfig &cfg, NameSupply &names);

}  // namespace sessc
