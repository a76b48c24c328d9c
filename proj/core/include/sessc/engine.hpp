#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sessc/context.hpp"
#include "sessc/process.hpp"

namespace sessc {

// ---------------------------------------------------------------------------
// Structural equivalence: link symmetry, cut commutativity and
// scope-respecting associativity, up to alpha. Cut annotations are ignored.

// Equal keys iff equivalent. Free names print by uid, so compare processes
// that come from the same parser / name supply.
std::string canonical_key(const ProcPtr &p);
// Digest of the same encoding; cheaper, for deduplicating search states.
std::uint64_t canonical_hash(const ProcPtr &p);

struct CanonicalProcess {
  ProcPtr proc;  // cut nests regrouped deterministically
  std::string key;
  friend bool operator==(const CanonicalProcess &a, const CanonicalProcess &b) { return a.key == b.key; }
};

CanonicalProcess canonicalize(const ProcPtr &p);
bool equiv(const ProcPtr &p, const ProcPtr &q);

// ---------------------------------------------------------------------------
// Reduction.

enum class RuleTag {
  // principal
  Link,
  TensorPar,
  PlusWith,
  BangQuery,
  BangWeaken,
  BangContract,
  ExistsForall,
  OneBottom,
  // commuting
  CommTensorL,  // cut moves into the first component of an output
  CommTensorR,
  CommPar,
  CommPlus,
  CommWith,
  CommBang,
  CommQuery,
  CommExists,
  CommForall,
  CommBottom,
};

const char *to_string(RuleTag t);
bool is_principal(RuleTag t);

// Position of a redex: child indices from the root. A prefix's children are
// its continuations (case branches in order); a cut nest's children are its
// leaves, left to right.
using Path = std::vector<int>;

struct Redex {
  RuleTag tag;
  Path path;
  std::function<ProcPtr()> fire;
};

// Every single step from p, in pre-order (outer before inner, left before
// right; at a nest, principal before commuting).
std::vector<Redex> redexes(const ProcPtr &p, NameSupply &names);

enum class Strategy {
  LeftmostOutermost,
  RightmostInnermost,
};

struct StepResult {
  ProcPtr proc;
  RuleTag tag;
  Path path;
};

std::optional<StepResult> principal_step(const ProcPtr &p, NameSupply &names,
                                         Strategy s = Strategy::LeftmostOutermost);
std::optional<StepResult> commuting_step(const ProcPtr &p, NameSupply &names,
                                         Strategy s = Strategy::LeftmostOutermost);

struct TraceStep {
  RuleTag tag;
  Path path;
  ProcPtr before;
  ProcPtr after;
};
using Trace = std::vector<TraceStep>;

struct AuditFailure {
  std::size_t step;  // 1-based
  std::string message;
};

struct NormalizeOptions {
  std::size_t max_steps = 10000;
  Strategy strategy = Strategy::LeftmostOutermost;
  bool keep_trace = false;
  bool principal_only = false;
  // When set, every intermediate process is re-typechecked in this context.
  const CpContext *audit = nullptr;
};

struct NormalizeResult {
  ProcPtr proc;
  std::size_t steps = 0;
  bool limit_hit = false;  // StepLimitExceeded; proc and trace are partial
  Trace trace;
  std::vector<AuditFailure> audit_failures;
  std::size_t principal_steps = 0;
  std::size_t commuting_steps = 0;
};

NormalizeResult normalize(const ProcPtr &p, NameSupply &names, const NormalizeOptions &opt = {});

enum class ReachStatus {
  Found,
  BoundHit,   // gave up after `bound` expansions
  Exhausted,  // every reachable state was seen
};

const char *to_string(ReachStatus s);

struct ReachResult {
  ReachStatus status;
  std::size_t expanded = 0;
  std::vector<RuleTag> witness;  // steps from `from` to the state matching `to`
  std::vector<ProcPtr> path;     // states along the witness, `from` first
};

// Search over all single steps, states identified by canonical_key. Expands
// the states closest to the target first (size and cut count), so `bound`
// counts expansions rather than depth.
ReachResult reaches(const ProcPtr &from, const ProcPtr &to, std::size_t bound, NameSupply &names);

// Line-oriented text and a JSON array, one record per step.
std::string trace_to_text(const Trace &t);
std::string trace_to_json(const Trace &t);

}  // namespace sessc
