#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace pps {

template <class... Fs> struct overloaded : Fs... { using Fs::operator()...; };
template <class... Fs> overloaded(Fs...) -> overloaded<Fs...>;

// Literal constants shared by both calculi: integers, booleans, and
// integer-list constants (the only list literals the surface syntax has).
struct Lit {
  std::variant<long long, bool, std::vector<long long>> v;
  bool operator==(const Lit &o) const { return v == o.v; }
};

std::string lit_to_string(const Lit &l);

// Observable result of a run: a base-type value, possibly a nested list.
struct Obs {
  std::variant<long long, bool, std::vector<Obs>> v;
  bool operator==(const Obs &o) const;
  std::string str(bool compact = false) const;
};

// Syntactic purity classes. Pure terms are the grammar
//   e_p ::= x | c | fun x -> e | fix f x -> e | reset e | throw k e
// extended with list primitives whose arguments are all pure; q-pure terms
// additionally allow let-nests around a q-pure body.
enum class Purity { Pure, QPure, Effectful };

// ---------------------------------------------------------------------------
// source terms
// ---------------------------------------------------------------------------

namespace src {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Var { std::string name; };
struct Const { Lit value; };
struct Lam { std::string param; TermPtr body; };
struct App { TermPtr fn; TermPtr arg; };
struct Let { std::string name; TermPtr value; TermPtr body; };
struct Shift { std::string k; TermPtr body; };
struct Throw { std::string k; TermPtr arg; };
struct Reset { TermPtr body; };
struct Add { TermPtr lhs; TermPtr rhs; };
struct If { TermPtr cond; TermPtr then_branch; TermPtr else_branch; };
struct Fix { std::string self; std::string param; TermPtr body; };
struct Nil {};
struct Cons { TermPtr head; TermPtr tail; };
struct Head { TermPtr arg; };
struct Tail { TermPtr arg; };
struct IsNil { TermPtr arg; };

using Node = std::variant<Var, Const, Lam, App, Let, Shift, Throw, Reset, Add,
                          If, Fix, Nil, Cons, Head, Tail, IsNil>;

struct Term {
  Node node;
};

TermPtr make(Node n);
TermPtr var(std::string name);
TermPtr constant(Lit v);
TermPtr integer(long long n);
TermPtr boolean(bool b);
TermPtr intlist(std::vector<long long> xs);
TermPtr lam(std::string x, TermPtr body);
TermPtr app(TermPtr fn, TermPtr arg);
TermPtr let_(std::string x, TermPtr v, TermPtr body);
TermPtr shift(std::string k, TermPtr body);
TermPtr throw_(std::string k, TermPtr arg);
TermPtr reset(TermPtr body);
TermPtr add(TermPtr l, TermPtr r);
TermPtr if_(TermPtr c, TermPtr t, TermPtr e);
TermPtr fix(std::string f, std::string x, TermPtr body);
TermPtr nil();
TermPtr cons(TermPtr h, TermPtr t);
TermPtr head(TermPtr a);
TermPtr tail(TermPtr a);
TermPtr isnil(TermPtr a);

// Runtime value predicate: variables, constants, lambdas, fix terms, nil,
// and cons cells of values.
bool is_value(const TermPtr &t);
// The strict value grammar used by let (value restriction).
bool is_let_value(const TermPtr &t);

Purity classify_purity(const TermPtr &t);

} // namespace src

// ---------------------------------------------------------------------------
// target terms
// ---------------------------------------------------------------------------

namespace tgt {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Var { std::string name; };
struct Const { Lit value; };
struct Lam { std::string param; TermPtr body; };
struct App { TermPtr fn; TermPtr arg; };
struct Let { std::string name; TermPtr value; TermPtr body; };
// shift[p] k -> e ; the prompt position holds a value (variable or, at
// runtime, a prompt constant).
struct ShiftP { TermPtr prompt; std::string k; TermPtr body; };
struct ResetP { TermPtr prompt; TermPtr body; };
struct NewPrompt { std::string name; TermPtr body; };
struct Omega {};
// Runtime-only: a dynamically allocated prompt. Translators never emit these.
struct PromptConst { long long id; };
struct Add { TermPtr lhs; TermPtr rhs; };
struct If { TermPtr cond; TermPtr then_branch; TermPtr else_branch; };
struct Fix { std::string self; std::string param; TermPtr body; };
struct Nil {};
struct Cons { TermPtr head; TermPtr tail; };
struct Head { TermPtr arg; };
struct Tail { TermPtr arg; };
struct IsNil { TermPtr arg; };

using Node =
    std::variant<Var, Const, Lam, App, Let, ShiftP, ResetP, NewPrompt, Omega,
                 PromptConst, Add, If, Fix, Nil, Cons, Head, Tail, IsNil>;

struct Term {
  Node node;
};

TermPtr make(Node n);
TermPtr var(std::string name);
TermPtr constant(Lit v);
TermPtr integer(long long n);
TermPtr boolean(bool b);
TermPtr intlist(std::vector<long long> xs);
TermPtr lam(std::string x, TermPtr body);
TermPtr app(TermPtr fn, TermPtr arg);
TermPtr let_(std::string x, TermPtr v, TermPtr body);
TermPtr shiftp(TermPtr prompt, std::string k, TermPtr body);
TermPtr resetp(TermPtr prompt, TermPtr body);
TermPtr newprompt(std::string p, TermPtr body);
TermPtr omega();
TermPtr prompt_const(long long id);
TermPtr add(TermPtr l, TermPtr r);
TermPtr if_(TermPtr c, TermPtr t, TermPtr e);
TermPtr fix(std::string f, std::string x, TermPtr body);
TermPtr nil();
TermPtr cons(TermPtr h, TermPtr t);
TermPtr head(TermPtr a);
TermPtr tail(TermPtr a);
TermPtr isnil(TermPtr a);

bool is_value(const TermPtr &t);
bool is_let_value(const TermPtr &t);

} // namespace tgt

// ---------------------------------------------------------------------------
// parsing, printing, structural utilities
// ---------------------------------------------------------------------------

// Parses `.atm` source text. Applications are left-associative; `+` binds
// tighter than `::`; fun/let/shift/fix/if bodies extend as far right as
// possible. Comments are `(* ... *)` and nest.
src::TermPtr parse_source(const std::string &text);

// Parses `.mps` target text: adds `newp p in e`, `reset[p] e`,
// `shift[p] k -> e`, `omega`, and `#n` prompt constants.
tgt::TermPtr parse_target(const std::string &text);

std::string pretty(const src::TermPtr &t);
std::string pretty(const tgt::TermPtr &t);

// Equality up to consistent renaming of bound variables and prompt binders.
bool alpha_eq(const src::TermPtr &a, const src::TermPtr &b);
bool alpha_eq(const tgt::TermPtr &a, const tgt::TermPtr &b);

std::size_t term_size(const src::TermPtr &t);
std::size_t term_size(const tgt::TermPtr &t);

// Every identifier occurring anywhere in the term (free, bound, or binder).
std::set<std::string> collect_names(const src::TermPtr &t);
std::set<std::string> collect_names(const tgt::TermPtr &t);

} // namespace pps
