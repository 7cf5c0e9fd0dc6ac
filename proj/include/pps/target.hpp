#pragma once

#include "pps/syntax.hpp"
#include "pps/types.hpp"

#include <optional>
#include <string>

namespace pps {

// ---------------------------------------------------------------------------
// type checking (unification-based inference over the target rules)
// ---------------------------------------------------------------------------

struct TgtTypeEnv {
  struct Entry {
    std::string name;
    tty::Scheme scheme;
  };
  std::vector<Entry> entries;

  const Entry *lookup(const std::string &name) const {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
      if (it->name == name) return &*it;
    return nullptr;
  }
  void bind(std::string name, tty::Scheme s) {
    entries.push_back({std::move(name), std::move(s)});
  }
};

// Infers the term's type. shift[v]/reset[v] demand v : t prompt with the
// body at type t; omega checks at any type; newp binds a prompt whose
// payload is solved by use. Throws TypeError / PromptTypeMismatch /
// ScopeError.
tty::Ty check_target(const TgtTypeEnv &env, const tgt::TermPtr &term);

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

enum class TgtStuck {
  NoMatchingReset,
  NonPromptInControlPosition,
  OmegaEvaluated,
  UnboundVariable,
  BadApplication,
  BadAddition,
  BadCondition,
  HeadOfEmpty,
  TailOfEmpty,
  NotAList,
  LetNonValue,
};

std::string to_string(TgtStuck r);

struct RunStats {
  long long steps = 0;
  long long prompts_generated = 0;
  bool omega_hit = false;

  std::string records() const; // flat key=value record
};

// One evaluation run: owns the prompt counter and instrumentation.
struct TargetMachine {
  explicit TargetMachine(tgt::TermPtr t) : term(std::move(t)) {}

  enum class Status { Stepped, Done, Stuck };
  Status step();

  tgt::TermPtr term;
  RunStats stats;
  long long next_prompt = 0;
  TgtStuck reason = TgtStuck::NoMatchingReset;
  tgt::TermPtr stuck_term;
};

struct TgtEval {
  enum class Status { Value, Stuck, FuelExhausted } status;
  tgt::TermPtr value;
  tgt::TermPtr stuck_term;
  TgtStuck reason = TgtStuck::NoMatchingReset;
  RunStats stats;
};

TgtEval eval_target(const tgt::TermPtr &t, long long fuel = 1'000'000);

tgt::TermPtr subst(const tgt::TermPtr &t, const std::string &x,
                   const tgt::TermPtr &v);

std::optional<Obs> observe(const tgt::TermPtr &value);
std::string show_value(const tgt::TermPtr &value);

} // namespace pps
