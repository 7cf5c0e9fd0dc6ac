#include "pps/eval_source.hpp"

#include <cassert>

namespace pps {

std::string to_string(SrcStuck r) {
  switch (r) {
  case SrcStuck::UndelimitedShift: return "shift with no enclosing reset";
  case SrcStuck::UnboundVariable: return "unbound variable";
  case SrcStuck::BadApplication: return "application of a non-function";
  case SrcStuck::BadAddition: return "addition of non-integers";
  case SrcStuck::BadCondition: return "non-boolean condition";
  case SrcStuck::HeadOfEmpty: return "head of empty list";
  case SrcStuck::TailOfEmpty: return "tail of empty list";
  case SrcStuck::NotAList: return "list primitive on a non-list";
  case SrcStuck::LetNonValue: return "let binding a non-value";
  case SrcStuck::UnresolvedThrow: return "throw with unresolved continuation";
  }
  return "stuck";
}

namespace src {
namespace {

// evaluation context frames, outermost first in the stack
struct FAppArg { TermPtr fn; };   // fn pending, hole in the argument
struct FAppFn { TermPtr arg; };   // argument already a value, hole in fn
struct FAddR { TermPtr lhs; };    // lhs pending, hole in rhs
struct FAddL { TermPtr rhs; };    // rhs a value, hole in lhs
struct FConsTail { TermPtr head; };
struct FConsHead { TermPtr tail; };
struct FHead {};
struct FTail {};
struct FIsNil {};
struct FIf { TermPtr then_branch; TermPtr else_branch; };
struct FReset {};

using Frame = std::variant<FAppArg, FAppFn, FAddR, FAddL, FConsTail, FConsHead,
                           FHead, FTail, FIsNil, FIf, FReset>;

TermPtr plug1(const Frame &f, const TermPtr &t) {
  return std::visit(
      overloaded{[&](const FAppArg &a) { return app(a.fn, t); },
                 [&](const FAppFn &a) { return app(t, a.arg); },
                 [&](const FAddR &a) { return add(a.lhs, t); },
                 [&](const FAddL &a) { return add(t, a.rhs); },
                 [&](const FConsTail &c) { return cons(c.head, t); },
                 [&](const FConsHead &c) { return cons(t, c.tail); },
                 [&](const FHead &) { return head(t); },
                 [&](const FTail &) { return tail(t); },
                 [&](const FIsNil &) { return isnil(t); },
                 [&](const FIf &i) {
                   return if_(t, i.then_branch, i.else_branch);
                 },
                 [&](const FReset &) { return reset(t); }},
      f);
}

// folds frames[from..end) around t, innermost (back) first
TermPtr plug_from(const std::vector<Frame> &frames, std::size_t from,
                  TermPtr t) {
  for (std::size_t i = frames.size(); i > from; --i)
    t = plug1(frames[i - 1], t);
  return t;
}

// folds frames[0..count) around t
TermPtr plug_upto(const std::vector<Frame> &frames, std::size_t count,
                  TermPtr t) {
  for (std::size_t i = count; i > 0; --i)
    t = plug1(frames[i - 1], t);
  return t;
}

// Walks to the unique focus: a non-value whose evaluated positions hold
// values. The application order is right-to-left throughout.
TermPtr decompose(const TermPtr &t, std::vector<Frame> &frames) {
  return std::visit(
      overloaded{
          [&](const App &a) -> TermPtr {
            if (!is_value(a.arg)) {
              frames.push_back(FAppArg{a.fn});
              return decompose(a.arg, frames);
            }
            if (!is_value(a.fn)) {
              frames.push_back(FAppFn{a.arg});
              return decompose(a.fn, frames);
            }
            return t;
          },
          [&](const Add &a) -> TermPtr {
            if (!is_value(a.rhs)) {
              frames.push_back(FAddR{a.lhs});
              return decompose(a.rhs, frames);
            }
            if (!is_value(a.lhs)) {
              frames.push_back(FAddL{a.rhs});
              return decompose(a.lhs, frames);
            }
            return t;
          },
          [&](const Cons &c) -> TermPtr {
            if (!is_value(c.tail)) {
              frames.push_back(FConsTail{c.head});
              return decompose(c.tail, frames);
            }
            assert(!is_value(c.head)); // a cons of values is a value
            frames.push_back(FConsHead{c.tail});
            return decompose(c.head, frames);
          },
          [&](const Reset &r) -> TermPtr {
            if (!is_value(r.body)) {
              frames.push_back(FReset{});
              return decompose(r.body, frames);
            }
            return t;
          },
          [&](const Head &h) -> TermPtr {
            if (!is_value(h.arg)) {
              frames.push_back(FHead{});
              return decompose(h.arg, frames);
            }
            return t;
          },
          [&](const Tail &h) -> TermPtr {
            if (!is_value(h.arg)) {
              frames.push_back(FTail{});
              return decompose(h.arg, frames);
            }
            return t;
          },
          [&](const IsNil &h) -> TermPtr {
            if (!is_value(h.arg)) {
              frames.push_back(FIsNil{});
              return decompose(h.arg, frames);
            }
            return t;
          },
          [&](const If &i) -> TermPtr {
            if (!is_value(i.cond)) {
              frames.push_back(FIf{i.then_branch, i.else_branch});
              return decompose(i.cond, frames);
            }
            return t;
          },
          [&](const auto &) -> TermPtr { return t; }},
      t->node);
}

// uncons(v): nullopt if not a list value; otherwise (head, tail) or
// (nullptr, nullptr) for the empty list.
std::optional<std::pair<TermPtr, TermPtr>> uncons(const TermPtr &v) {
  if (std::holds_alternative<Nil>(v->node))
    return std::make_pair(TermPtr{}, TermPtr{});
  if (const auto *c = std::get_if<Cons>(&v->node))
    return std::make_pair(c->head, c->tail);
  if (const auto *k = std::get_if<Const>(&v->node)) {
    if (const auto *xs = std::get_if<std::vector<long long>>(&k->value.v)) {
      if (xs->empty()) return std::make_pair(TermPtr{}, TermPtr{});
      TermPtr hd = integer((*xs)[0]);
      TermPtr tl = xs->size() == 1
                       ? nil()
                       : intlist(std::vector<long long>(xs->begin() + 1,
                                                        xs->end()));
      return std::make_pair(hd, tl);
    }
  }
  return std::nullopt;
}

std::string fresh_binder(const TermPtr &scope, const std::string &base) {
  auto used = collect_names(scope);
  for (long long i = 1;; ++i) {
    std::string n = base + std::to_string(i);
    if (!used.count(n)) return n;
  }
}

} // namespace
} // namespace src

src::TermPtr subst(const src::TermPtr &t, const std::string &x,
                   const src::TermPtr &v) {
  using namespace src;
  return std::visit(
      overloaded{
          [&](const Var &w) { return w.name == x ? v : t; },
          [&](const Const &) { return t; },
          [&](const Nil &) { return t; },
          [&](const Lam &l) {
            return l.param == x ? t : lam(l.param, subst(l.body, x, v));
          },
          [&](const Fix &f) {
            return (f.self == x || f.param == x)
                       ? t
                       : fix(f.self, f.param, subst(f.body, x, v));
          },
          [&](const Let &l) {
            TermPtr nv = subst(l.value, x, v);
            return let_(l.name, nv,
                        l.name == x ? l.body : subst(l.body, x, v));
          },
          [&](const Shift &s) {
            // shift's binder shadows the ordinary name space as well
            return s.k == x ? t : shift(s.k, subst(s.body, x, v));
          },
          [&](const Throw &th) { return throw_(th.k, subst(th.arg, x, v)); },
          [&](const Reset &r) { return reset(subst(r.body, x, v)); },
          [&](const App &a) {
            return app(subst(a.fn, x, v), subst(a.arg, x, v));
          },
          [&](const Add &a) {
            return add(subst(a.lhs, x, v), subst(a.rhs, x, v));
          },
          [&](const Cons &c) {
            return cons(subst(c.head, x, v), subst(c.tail, x, v));
          },
          [&](const Head &h) { return head(subst(h.arg, x, v)); },
          [&](const Tail &h) { return tail(subst(h.arg, x, v)); },
          [&](const IsNil &h) { return isnil(subst(h.arg, x, v)); },
          [&](const If &i) {
            return if_(subst(i.cond, x, v), subst(i.then_branch, x, v),
                       subst(i.else_branch, x, v));
          }},
      t->node);
}

src::TermPtr subst_cont(const src::TermPtr &t, const std::string &k,
                        const src::TermPtr &cont) {
  using namespace src;
  return std::visit(
      overloaded{
          [&](const Var &) { return t; },
          [&](const Const &) { return t; },
          [&](const Nil &) { return t; },
          [&](const Lam &l) {
            // an ordinary binder shadows the continuation name space
            return l.param == k ? t : lam(l.param, subst_cont(l.body, k, cont));
          },
          [&](const Fix &f) {
            return (f.self == k || f.param == k)
                       ? t
                       : fix(f.self, f.param, subst_cont(f.body, k, cont));
          },
          [&](const Let &l) {
            TermPtr nv = subst_cont(l.value, k, cont);
            return let_(l.name, nv,
                        l.name == k ? l.body : subst_cont(l.body, k, cont));
          },
          [&](const Shift &s) {
            return s.k == k ? t : shift(s.k, subst_cont(s.body, k, cont));
          },
          [&](const Throw &th) -> TermPtr {
            TermPtr arg = subst_cont(th.arg, k, cont);
            if (th.k == k) return reset(app(cont, arg)); // throw k e = <k e>
            return throw_(th.k, arg);
          },
          [&](const Reset &r) { return reset(subst_cont(r.body, k, cont)); },
          [&](const App &a) {
            return app(subst_cont(a.fn, k, cont), subst_cont(a.arg, k, cont));
          },
          [&](const Add &a) {
            return add(subst_cont(a.lhs, k, cont), subst_cont(a.rhs, k, cont));
          },
          [&](const Cons &c) {
            return cons(subst_cont(c.head, k, cont),
                        subst_cont(c.tail, k, cont));
          },
          [&](const Head &h) { return head(subst_cont(h.arg, k, cont)); },
          [&](const Tail &h) { return tail(subst_cont(h.arg, k, cont)); },
          [&](const IsNil &h) { return isnil(subst_cont(h.arg, k, cont)); },
          [&](const If &i) {
            return if_(subst_cont(i.cond, k, cont),
                       subst_cont(i.then_branch, k, cont),
                       subst_cont(i.else_branch, k, cont));
          }},
      t->node);
}

SrcStep step_source(const src::TermPtr &t) {
  using namespace src;
  if (is_value(t)) {
    if (std::holds_alternative<Var>(t->node))
      return {SrcStep::Kind::Stuck, t, SrcStuck::UnboundVariable};
    return {SrcStep::Kind::AlreadyValue, t, {}};
  }

  std::vector<Frame> frames;
  TermPtr focus = decompose(t, frames);

  auto stepped = [&](TermPtr next) {
    return SrcStep{SrcStep::Kind::Stepped,
                   plug_upto(frames, frames.size(), std::move(next)),
                   {}};
  };
  auto stuck = [&](SrcStuck r) { return SrcStep{SrcStep::Kind::Stuck, focus, r}; };

  return std::visit(
      overloaded{
          [&](const App &a) -> SrcStep {
            if (const auto *l = std::get_if<Lam>(&a.fn->node))
              return stepped(subst(l->body, l->param, a.arg));
            if (const auto *f = std::get_if<Fix>(&a.fn->node)) {
              TermPtr body = f->param == f->self
                                 ? f->body
                                 : subst(f->body, f->self, a.fn);
              return stepped(subst(body, f->param, a.arg));
            }
            return stuck(SrcStuck::BadApplication);
          },
          [&](const Let &l) -> SrcStep {
            if (!is_value(l.value)) return stuck(SrcStuck::LetNonValue);
            return stepped(subst(l.body, l.name, l.value));
          },
          [&](const Reset &r) -> SrcStep { return stepped(r.body); },
          [&](const Shift &s) -> SrcStep {
            // nearest enclosing reset; the frames below it form F
            std::size_t idx = frames.size();
            while (idx > 0 && !std::holds_alternative<FReset>(frames[idx - 1]))
              --idx;
            if (idx == 0) return stuck(SrcStuck::UndelimitedShift);
            // frames[idx-1] is the reset; frames[idx..] are the pure frames
            std::string y = fresh_binder(t, "y");
            TermPtr cont = lam(y, reset(plug_from(frames, idx, var(y))));
            TermPtr inner = reset(subst_cont(s.body, s.k, cont));
            return SrcStep{SrcStep::Kind::Stepped,
                           plug_upto(frames, idx - 1, std::move(inner)),
                           {}};
          },
          [&](const Add &a) -> SrcStep {
            const auto *l = std::get_if<Const>(&a.lhs->node);
            const auto *r = std::get_if<Const>(&a.rhs->node);
            if (!l || !r) return stuck(SrcStuck::BadAddition);
            const auto *ln = std::get_if<long long>(&l->value.v);
            const auto *rn = std::get_if<long long>(&r->value.v);
            if (!ln || !rn) return stuck(SrcStuck::BadAddition);
            return stepped(integer(*ln + *rn));
          },
          [&](const If &i) -> SrcStep {
            const auto *c = std::get_if<Const>(&i.cond->node);
            const auto *b = c ? std::get_if<bool>(&c->value.v) : nullptr;
            if (!b) return stuck(SrcStuck::BadCondition);
            return stepped(*b ? i.then_branch : i.else_branch);
          },
          [&](const Head &h) -> SrcStep {
            auto p = uncons(h.arg);
            if (!p) return stuck(SrcStuck::NotAList);
            if (!p->first) return stuck(SrcStuck::HeadOfEmpty);
            return stepped(p->first);
          },
          [&](const Tail &h) -> SrcStep {
            auto p = uncons(h.arg);
            if (!p) return stuck(SrcStuck::NotAList);
            if (!p->first) return stuck(SrcStuck::TailOfEmpty);
            return stepped(p->second);
          },
          [&](const IsNil &h) -> SrcStep {
            auto p = uncons(h.arg);
            if (!p) return stuck(SrcStuck::NotAList);
            return stepped(boolean(!p->first));
          },
          [&](const Throw &) -> SrcStep {
            return stuck(SrcStuck::UnresolvedThrow);
          },
          [&](const Var &) -> SrcStep {
            return stuck(SrcStuck::UnboundVariable);
          },
          [&](const auto &) -> SrcStep {
            return stuck(SrcStuck::BadApplication);
          }},
      focus->node);
}

SrcEval eval_source(const src::TermPtr &t, long long fuel) {
  src::TermPtr cur = t;
  SrcEval out;
  for (long long i = 0; i <= fuel; ++i) {
    SrcStep s = step_source(cur);
    switch (s.kind) {
    case SrcStep::Kind::AlreadyValue:
      out.status = SrcEval::Status::Value;
      out.value = cur;
      out.steps = i;
      return out;
    case SrcStep::Kind::Stuck:
      out.status = SrcEval::Status::Stuck;
      out.stuck_term = s.term;
      out.reason = s.reason;
      out.steps = i;
      return out;
    case SrcStep::Kind::Stepped:
      if (i == fuel) {
        out.status = SrcEval::Status::FuelExhausted;
        out.steps = i;
        return out;
      }
      cur = s.term;
      break;
    }
  }
  out.status = SrcEval::Status::FuelExhausted;
  out.steps = fuel;
  return out;
}

std::optional<Obs> observe(const src::TermPtr &value) {
  using namespace src;
  if (const auto *c = std::get_if<Const>(&value->node)) {
    return std::visit(
        overloaded{[](long long n) { return Obs{n}; },
                   [](bool b) { return Obs{b}; },
                   [](const std::vector<long long> &xs) {
                     std::vector<Obs> os;
                     os.reserve(xs.size());
                     for (long long x : xs) os.push_back(Obs{x});
                     return Obs{std::move(os)};
                   }},
        c->value.v);
  }
  if (std::holds_alternative<Nil>(value->node))
    return Obs{std::vector<Obs>{}};
  if (const auto *c = std::get_if<Cons>(&value->node)) {
    auto h = observe(c->head);
    auto t = observe(c->tail);
    if (!h || !t) return std::nullopt;
    const auto *xs = std::get_if<std::vector<Obs>>(&t->v);
    if (!xs) return std::nullopt;
    std::vector<Obs> os;
    os.push_back(*h);
    os.insert(os.end(), xs->begin(), xs->end());
    return Obs{std::move(os)};
  }
  return std::nullopt;
}

std::string show_value(const src::TermPtr &value) {
  if (auto o = observe(value)) return o->str();
  return pretty(value);
}

} // namespace pps
