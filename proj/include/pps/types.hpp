#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace pps {

// ---------------------------------------------------------------------------
// source types: t | b | tau list | (s -> t) | (s/a -> t/b)
// ---------------------------------------------------------------------------

namespace sty {

struct Type;
using Ty = std::shared_ptr<const Type>;

struct TVar { std::string name; };
struct Int {};
struct Bool {};
struct List { Ty elem; };
// Pure function space, used for continuations.
struct PureArrow { Ty from; Ty to; };
// (from/ans0 -> to/ans1): calling changes the answer type from ans0 to ans1.
struct EffArrow { Ty from; Ty ans0; Ty to; Ty ans1; };

using Node = std::variant<TVar, Int, Bool, List, PureArrow, EffArrow>;

struct Type { Node node; };

Ty make(Node n);
Ty tvar(std::string name);
Ty tint();
Ty tbool();
Ty tlist(Ty elem);
Ty parrow(Ty from, Ty to);
Ty earrow(Ty from, Ty ans0, Ty to, Ty ans1);

struct Scheme {
  std::vector<std::string> bound;
  Ty body;
};

bool equal(const Ty &a, const Ty &b);
// Equality up to a bijection on type variables.
bool alpha_equal(const Ty &a, const Ty &b);
void free_vars(const Ty &t, std::set<std::string> &out);
std::string show(const Ty &t);

// Unification with occurs check. Types are immutable; the unifier owns a
// substitution that `resolve`/`zonk` apply.
struct Unifier {
  Ty fresh();
  Ty resolve(const Ty &t) const; // follow substitution at the root only
  Ty zonk(const Ty &t) const;    // deep substitution
  void unify(const Ty &a, const Ty &b);

  std::map<std::string, Ty> subst;
  long long counter = 0;
};

} // namespace sty

// ---------------------------------------------------------------------------
// target types: t | b | tau list | (s -> t) | tau prompt
// ---------------------------------------------------------------------------

namespace tty {

struct Type;
using Ty = std::shared_ptr<const Type>;

struct TVar { std::string name; };
struct Int {};
struct Bool {};
struct List { Ty elem; };
struct Arrow { Ty from; Ty to; };
struct Prompt { Ty payload; };

using Node = std::variant<TVar, Int, Bool, List, Arrow, Prompt>;

struct Type { Node node; };

Ty make(Node n);
Ty tvar(std::string name);
Ty tint();
Ty tbool();
Ty tlist(Ty elem);
Ty arrow(Ty from, Ty to);
Ty prompt(Ty payload);

struct Scheme {
  std::vector<std::string> bound;
  Ty body;
};

bool equal(const Ty &a, const Ty &b);
bool alpha_equal(const Ty &a, const Ty &b);
void free_vars(const Ty &t, std::set<std::string> &out);
std::string show(const Ty &t);

struct Unifier {
  Ty fresh();
  Ty resolve(const Ty &t) const;
  Ty zonk(const Ty &t) const;
  void unify(const Ty &a, const Ty &b);

  std::map<std::string, Ty> subst;
  long long counter = 0;
};

} // namespace tty

} // namespace pps
