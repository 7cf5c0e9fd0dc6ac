#pragma once

#include "pps/syntax.hpp"
#include "pps/types.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pps {

enum class Rule {
  Var,
  Const,
  Exp,
  Fun,
  App,
  Reset,
  Shift,
  Throw,
  Let,
  Add,
  If,
  Fix,
  NilIntro,
  ConsPure,
  HeadPure,
  TailPure,
  IsNilPure,
  ConsEff,
  HeadEff,
  TailEff,
  IsNilEff,
};

std::string rule_name(Rule r);

// Either a pure judgment (type only) or an effectful judgment
// (type ; ans_in, ans_out).
struct Judgment {
  bool pure = true;
  sty::Ty type;
  sty::Ty ans_in;  // null when pure
  sty::Ty ans_out; // null when pure
};

std::string show(const Judgment &j);

struct Derivation;
using DerivPtr = std::shared_ptr<Derivation>;

// A typing derivation elaborated from a term: exp coercions are explicit
// nodes, every node carries its judgment and syntactic purity class.
struct Derivation {
  Rule rule;
  src::TermPtr subject;
  Judgment judgment;
  std::vector<DerivPtr> children;
  Purity purity = Purity::Effectful;
};

// A closed program, optionally annotated with the type the author expects
// its judgment to carry.
struct SourceProgram {
  src::TermPtr term;
  std::optional<sty::Ty> expected_type;
};

struct TypeEnv {
  struct Entry {
    std::string name;
    sty::Scheme scheme;
    bool is_cont = false; // continuation variables hold monomorphic pure arrows
  };
  std::vector<Entry> entries;

  const Entry *lookup(const std::string &name) const {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
      if (it->name == name) return &*it;
    return nullptr;
  }
  void bind(std::string name, sty::Scheme s, bool cont = false) {
    entries.push_back({std::move(name), std::move(s), cont});
  }
};

// Infers the most general judgment for the term under env, elaborating a
// derivation with explicit exp nodes and purity classes. Throws ScopeError,
// TypeError, or ImpureShiftBody.
DerivPtr infer(const TypeEnv &env, const src::TermPtr &term);

// Re-checks every node of a derivation against its rule schema. Returns
// false and fills fail_path (a '/'-separated child index path) at the first
// node whose judgment does not follow from its children.
bool validate(const DerivPtr &d, const TypeEnv &env = {},
              std::string *fail_path = nullptr);

} // namespace pps
