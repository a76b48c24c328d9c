#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sessc/engine.hpp"
#include "sessc/syntax.hpp"

namespace sessc {

enum class Theorem { T1, T2, T3, Factor, Soundness };

const char *to_string(Theorem t);
std::optional<Theorem> theorem_from_string(const std::string &s);

struct VerifyOptions {
  std::string corpus_dir;  // holds hgv/ and cp/; empty means no corpus
  std::size_t random = 0;  // generated subjects on top of the corpus
  std::uint64_t seed = 1;  // first generator seed; item k uses seed + k
  int max_depth = 5;
  std::size_t bound = 50000;
  bool audit = true;  // re-typecheck witness states and normalizations
};

struct VerifyItem {
  std::string subject;  // file path, or "random:<seed>"
  bool pass = false;
  std::string detail;  // counterexample or diagnostic
  // factor and soundness only
  std::optional<ReachStatus> reach;
  std::size_t expanded = 0;
  std::vector<RuleTag> witness;
  std::size_t principal_steps = 0;
  std::size_t commuting_steps = 0;
  double seconds = 0;
};

struct VerifyReport {
  Theorem theorem;
  std::vector<VerifyItem> items;
  std::size_t audited_states = 0;
  std::vector<std::string> audit_failures;
  // Audits skipped because the starting process is itself outside CP
  // typing (so subject reduction says nothing about it).
  std::vector<std::string> untyped_starts;
  double seconds = 0;

  std::size_t passed() const;
  bool ok() const { return passed() == items.size() && audit_failures.empty(); }
};

// Sorted paths of dir/hgv/*.hgv or dir/cp/*.cp.
std::vector<std::string> corpus_files(const std::string &dir, const std::string &calculus);
std::string read_file(const std::string &path);

// Uses -o, -> or * anywhere: in the term, its context or its type.
bool uses_functional(const HgvSource &src, const TypePtr &type);

VerifyReport verify(Theorem t, const VerifyOptions &opt);

// Single items, for tests and the CLI.
VerifyItem verify_t1(const HgvSource &src, NameSupply &names);
VerifyItem verify_t2(const HgvSource &src, NameSupply &names);
VerifyItem verify_t3(const CpSource &src, NameSupply &names);
VerifyItem verify_factor(const HgvSource &src, NameSupply &names, const VerifyOptions &opt, VerifyReport *audit = nullptr);
VerifyItem verify_soundness(const CpSource &src, NameSupply &names, const VerifyOptions &opt,
                            VerifyReport *audit = nullptr);

std::string report_to_text(const VerifyReport &r);
std::string report_to_json(const std::vector<VerifyReport> &rs);

}  // namespace sessc
