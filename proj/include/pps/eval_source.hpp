#pragma once

#include "pps/syntax.hpp"

#include <optional>
#include <string>

namespace pps {

enum class SrcStuck {
  UndelimitedShift,
  UnboundVariable,
  BadApplication,
  BadAddition,
  BadCondition,
  HeadOfEmpty,
  TailOfEmpty,
  NotAList,
  LetNonValue,
  UnresolvedThrow,
};

std::string to_string(SrcStuck r);

struct SrcStep {
  enum class Kind { Stepped, AlreadyValue, Stuck } kind;
  src::TermPtr term; // next term / the value / the stuck redex
  SrcStuck reason = SrcStuck::UndelimitedShift;
};

// Performs exactly one Fig-style reduction: decompose into an evaluation
// context and redex (right-to-left application order), apply the matching
// rule. Capture substitutes k := fun y -> reset F[y], treating throw
// specially: (throw k e){k:=K} = reset (K e{k:=K}).
SrcStep step_source(const src::TermPtr &t);

struct SrcEval {
  enum class Status { Value, Stuck, FuelExhausted } status;
  src::TermPtr value;      // when Value
  src::TermPtr stuck_term; // when Stuck
  SrcStuck reason = SrcStuck::UndelimitedShift;
  long long steps = 0;
};

SrcEval eval_source(const src::TermPtr &t, long long fuel = 1'000'000);

// Capture-avoiding substitution of a value for an ordinary variable.
src::TermPtr subst(const src::TermPtr &t, const std::string &x,
                   const src::TermPtr &v);
// Continuation substitution with the special throw clause.
src::TermPtr subst_cont(const src::TermPtr &t, const std::string &k,
                        const src::TermPtr &cont);

// Base-type observation of a value (ints, bools, possibly nested lists).
std::optional<Obs> observe(const src::TermPtr &value);
std::string show_value(const src::TermPtr &value);

} // namespace pps
