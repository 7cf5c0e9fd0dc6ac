#pragma once

#include "pps/infer.hpp"
#include "pps/syntax.hpp"
#include "pps/target.hpp"
#include "pps/types.hpp"

#include <set>
#include <string>

namespace pps {

enum class Mode { Naive, OnePass, Opt };

const char *mode_name(Mode m);
Mode parse_mode(const std::string &s); // "naive" | "onepass" | "opt"

// Type translation: base types and variables are fixed, pure arrows map
// homomorphically, and an effectful arrow (s/a -> t/b) becomes
//   s -> b prompt -> a prompt -> t.
tty::Ty translate_type(const sty::Ty &t);
// The judgment triple (t ; a, b) becomes  b prompt -> a prompt -> t.
tty::Ty translate_triple(const sty::Ty &t, const sty::Ty &a, const sty::Ty &b);
tty::Scheme translate_scheme(const sty::Scheme &s);
TgtTypeEnv translate_env(const TypeEnv &env);

// Names the translator introduced, for structural checks on the output.
struct TranslationInfo {
  // binders of administrative prompt lambdas (naive mode: every effectful
  // clause starts fun p -> fun q -> ...)
  std::set<std::string> admin_prompt_params;
  // dynamic prompt parameters surviving in residual terms (lambda/fix
  // clauses and materialized effectful roots)
  std::set<std::string> residual_prompt_params;
  // newp binder names
  std::set<std::string> prompt_binders;
};

// The three prompt-passing-style translations. All consume an elaborated
// derivation (exp nodes explicit, purity classes filled).
tgt::TermPtr translate_naive(const DerivPtr &d, TranslationInfo *info = nullptr);
tgt::TermPtr translate_onepass(const DerivPtr &d,
                               TranslationInfo *info = nullptr);
tgt::TermPtr translate_opt(const DerivPtr &d, TranslationInfo *info = nullptr);

tgt::TermPtr translate(const DerivPtr &d, Mode mode,
                       TranslationInfo *info = nullptr);

struct TypedTranslation {
  DerivPtr derivation;
  tgt::TermPtr term;
  tty::Ty checked;  // what check_target inferred for the output
  tty::Ty expected; // translation of the source judgment
};

// Runs inference, the selected translator, and check_target; asserts the
// checked type equals the translated judgment (triple for effectful roots,
// plain for pure roots) up to renaming of type variables. Throws
// TypePreservationViolation on mismatch.
TypedTranslation typed_translate(const src::TermPtr &program, Mode mode);

// Additionally checks the program's annotation, when present, against the
// inferred type (TypeError on mismatch).
TypedTranslation typed_translate(const SourceProgram &program, Mode mode);

} // namespace pps
