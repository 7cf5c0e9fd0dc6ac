#pragma once

#include "pps/eval_source.hpp"
#include "pps/infer.hpp"
#include "pps/syntax.hpp"
#include "pps/target.hpp"
#include "pps/translate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pps {

// ---------------------------------------------------------------------------
// corpus
// ---------------------------------------------------------------------------

struct CorpusEntry {
  std::string name;
  std::string source; // .atm text
  std::optional<Obs> expected;
  // expected runtime prompt allocations, where pinned
  std::optional<long long> prompts_naive;
  std::optional<long long> prompts_opt;
};

const std::vector<CorpusEntry> &corpus();

// reset (1 + (2 + ... + (n + shift k -> fun x -> throw k x)...))
src::TermPtr build_en(int n);
// the same program applied to `probe`
src::TermPtr build_en_probe(int n, long long probe);

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

// Systematically generates closed base-type programs from a fixed grammar
// slice (ints, add, lambda/app, shift/throw/reset, let), keeping those that
// infer successfully and whose source evaluation reaches a base value.
// Deterministic order; duplicates removed.
std::vector<src::TermPtr> enumerate_programs(int max_depth);

// ---------------------------------------------------------------------------
// differential checking
// ---------------------------------------------------------------------------

enum class VerdictStatus { Agree, Disagree, SourceStuck, TargetStuck, Fuel };

std::string to_string(VerdictStatus s);

struct Verdict {
  std::string program;
  Mode mode = Mode::Naive;
  VerdictStatus status = VerdictStatus::Disagree;
  std::optional<Obs> source_obs;
  std::optional<Obs> target_obs;
  RunStats stats;
  std::string detail;

  std::string records() const;
};

// Runs the source interpreter against translate-then-evaluate and compares
// base-type observations. Effectful-rooted programs are run under a source
// reset wrapper on the target side (a translated effectful term always
// shifts on its first prompt, so it cannot run bare).
Verdict differential_check(const std::string &name, const src::TermPtr &p,
                           Mode mode, long long fuel = 1'000'000);

struct TargetRun {
  TgtEval eval;
  tgt::TermPtr term;
  DerivPtr derivation; // of the program as translated (wrapped if effectful)
};

TargetRun run_translated(const src::TermPtr &p, Mode mode,
                         long long fuel = 1'000'000);

// ---------------------------------------------------------------------------
// instrumentation reports
// ---------------------------------------------------------------------------

struct PromptRow {
  int n = 0;
  Mode mode = Mode::Naive;
  long long prompts = 0;
  long long size = 0;

  std::string records() const;
};

std::vector<PromptRow> prompt_report(int max_n, const std::vector<Mode> &modes);

// ---------------------------------------------------------------------------
// structural helpers (one-pass residual property, prompt-free bodies)
// ---------------------------------------------------------------------------

long long count_newprompts(const tgt::TermPtr &t);
long long count_source_apps(const DerivPtr &d);

// first fix node in the term, if any
tgt::TermPtr find_fix(const tgt::TermPtr &t);

// Exhaustively beta-reduces administrative prompt redexes
// (fun p -> fun q -> body) P Q where p,q were introduced by the naive
// translator; the result is the one-pass residual, up to alpha.
tgt::TermPtr reduce_admin_redexes(const tgt::TermPtr &t,
                                  const std::set<std::string> &admin);

// number of application nodes whose argument is one of the given prompt
// variables
long long count_prompt_apps(const tgt::TermPtr &t,
                            const std::set<std::string> &prompts);

// true iff every prompt-variable application chain has length exactly two
// (the `e s q` shape the application clause emits)
bool prompt_apps_well_paired(const tgt::TermPtr &t,
                             const std::set<std::string> &prompts);

} // namespace pps
