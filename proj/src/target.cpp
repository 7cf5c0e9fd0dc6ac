#include "pps/target.hpp"

#include "pps/errors.hpp"

#include <cassert>

namespace pps {

// ---------------------------------------------------------------------------
// check_target
// ---------------------------------------------------------------------------

namespace {

using tty::Ty;

Ty subst_tvars(const Ty &t, const std::map<std::string, Ty> &m) {
  using namespace tty;
  return std::visit(
      overloaded{[&](const TVar &v) -> Ty {
                   auto it = m.find(v.name);
                   return it == m.end() ? t : it->second;
                 },
                 [&](const Int &) { return t; }, [&](const Bool &) { return t; },
                 [&](const List &l) { return tlist(subst_tvars(l.elem, m)); },
                 [&](const Arrow &a) {
                   return arrow(subst_tvars(a.from, m), subst_tvars(a.to, m));
                 },
                 [&](const Prompt &p) {
                   return prompt(subst_tvars(p.payload, m));
                 }},
      t->node);
}

struct TargetChecker {
  tty::Unifier u;
  // one payload type per dynamically allocated prompt, solved by use
  std::map<long long, Ty> prompt_payloads;

  Ty instantiate(const tty::Scheme &s) {
    if (s.bound.empty()) return s.body;
    std::map<std::string, Ty> m;
    for (const auto &b : s.bound) m[b] = u.fresh();
    return subst_tvars(s.body, m);
  }

  tty::Scheme generalize(const TgtTypeEnv &env, const Ty &ty) {
    Ty z = u.zonk(ty);
    std::set<std::string> fvs;
    tty::free_vars(z, fvs);
    std::set<std::string> env_fvs;
    for (const auto &e : env.entries) {
      std::set<std::string> fv;
      tty::free_vars(u.zonk(e.scheme.body), fv);
      for (const auto &b : e.scheme.bound) fv.erase(b);
      env_fvs.insert(fv.begin(), fv.end());
    }
    std::vector<std::string> bound;
    for (const auto &v : fvs)
      if (!env_fvs.count(v)) bound.push_back(v);
    return tty::Scheme{std::move(bound), z};
  }

  // unify the body type with the prompt payload, reporting the dedicated
  // diagnostic on failure
  void unify_payload(const Ty &body, const Ty &payload, const char *where) {
    try {
      u.unify(body, payload);
    } catch (const TypeError &e) {
      throw PromptTypeMismatch(std::string(where) + ": " + e.what());
    }
  }

  Ty check(const TgtTypeEnv &env, const tgt::TermPtr &t) {
    using namespace tgt;
    return std::visit(
        overloaded{
            [&](const Var &v) -> Ty {
              const auto *e = env.lookup(v.name);
              if (!e) throw ScopeError("unbound variable '" + v.name + "'");
              return instantiate(e->scheme);
            },
            [&](const Const &c) -> Ty {
              return std::visit(
                  overloaded{[](long long) { return tty::tint(); },
                             [](bool) { return tty::tbool(); },
                             [](const std::vector<long long> &) {
                               return tty::tlist(tty::tint());
                             }},
                  c.value.v);
            },
            [&](const Nil &) -> Ty { return tty::tlist(u.fresh()); },
            [&](const Omega &) -> Ty { return u.fresh(); },
            [&](const PromptConst &p) -> Ty {
              auto it = prompt_payloads.find(p.id);
              if (it == prompt_payloads.end())
                it = prompt_payloads.emplace(p.id, u.fresh()).first;
              return tty::prompt(it->second);
            },
            [&](const Lam &l) -> Ty {
              Ty sigma = u.fresh();
              TgtTypeEnv env2 = env;
              env2.bind(l.param, tty::Scheme{{}, sigma});
              Ty body = check(env2, l.body);
              return tty::arrow(sigma, body);
            },
            [&](const Fix &f) -> Ty {
              Ty sigma = u.fresh(), tau = u.fresh();
              Ty arrow_ty = tty::arrow(sigma, tau);
              TgtTypeEnv env2 = env;
              env2.bind(f.self, tty::Scheme{{}, arrow_ty});
              env2.bind(f.param, tty::Scheme{{}, sigma});
              Ty body = check(env2, f.body);
              u.unify(body, tau);
              return arrow_ty;
            },
            [&](const App &a) -> Ty {
              Ty fn = check(env, a.fn);
              Ty arg = check(env, a.arg);
              Ty res = u.fresh();
              u.unify(fn, tty::arrow(arg, res));
              return res;
            },
            [&](const Let &l) -> Ty {
              // runtime values included: substitution may leave a list value
              // in binding position
              if (!is_value(l.value))
                throw TypeError("let binds a value: " + pretty(l.value));
              Ty v = check(env, l.value);
              tty::Scheme s = generalize(env, v);
              TgtTypeEnv env2 = env;
              env2.bind(l.name, std::move(s));
              return check(env2, l.body);
            },
            [&](const ShiftP &s) -> Ty {
              Ty pr = check(env, s.prompt);
              Ty payload = u.fresh();
              u.unify(pr, tty::prompt(payload));
              Ty tau = u.fresh();
              TgtTypeEnv env2 = env;
              env2.bind(s.k, tty::Scheme{{}, tty::arrow(tau, payload)});
              Ty body = check(env2, s.body);
              unify_payload(body, payload, "shift body");
              return tau;
            },
            [&](const ResetP &r) -> Ty {
              Ty pr = check(env, r.prompt);
              Ty payload = u.fresh();
              u.unify(pr, tty::prompt(payload));
              Ty body = check(env, r.body);
              unify_payload(body, payload, "reset body");
              return payload;
            },
            [&](const NewPrompt &n) -> Ty {
              TgtTypeEnv env2 = env;
              env2.bind(n.name, tty::Scheme{{}, tty::prompt(u.fresh())});
              return check(env2, n.body);
            },
            [&](const Add &a) -> Ty {
              u.unify(check(env, a.lhs), tty::tint());
              u.unify(check(env, a.rhs), tty::tint());
              return tty::tint();
            },
            [&](const If &i) -> Ty {
              u.unify(check(env, i.cond), tty::tbool());
              Ty t1 = check(env, i.then_branch);
              Ty t2 = check(env, i.else_branch);
              u.unify(t1, t2);
              return t1;
            },
            [&](const Cons &c) -> Ty {
              Ty h = check(env, c.head);
              Ty tl = check(env, c.tail);
              u.unify(tl, tty::tlist(h));
              return tl;
            },
            [&](const Head &h) -> Ty {
              Ty elem = u.fresh();
              u.unify(check(env, h.arg), tty::tlist(elem));
              return elem;
            },
            [&](const Tail &h) -> Ty {
              Ty elem = u.fresh();
              u.unify(check(env, h.arg), tty::tlist(elem));
              return tty::tlist(elem);
            },
            [&](const IsNil &h) -> Ty {
              Ty elem = u.fresh();
              u.unify(check(env, h.arg), tty::tlist(elem));
              return tty::tbool();
            }},
        t->node);
  }
};

std::string canonical_name(std::size_t i) {
  std::string s = "'";
  s += static_cast<char>('a' + i % 26);
  if (i >= 26) s += std::to_string(i / 26);
  return s;
}

void collect_var_order(const Ty &t, std::vector<std::string> &order,
                       std::set<std::string> &seen) {
  using namespace tty;
  std::visit(overloaded{[&](const TVar &v) {
                          if (seen.insert(v.name).second)
                            order.push_back(v.name);
                        },
                        [&](const Int &) {}, [&](const Bool &) {},
                        [&](const List &l) {
                          collect_var_order(l.elem, order, seen);
                        },
                        [&](const Arrow &a) {
                          collect_var_order(a.from, order, seen);
                          collect_var_order(a.to, order, seen);
                        },
                        [&](const Prompt &p) {
                          collect_var_order(p.payload, order, seen);
                        }},
             t->node);
}

} // namespace

tty::Ty check_target(const TgtTypeEnv &env, const tgt::TermPtr &term) {
  TargetChecker ck;
  Ty ty = ck.u.zonk(ck.check(env, term));
  std::vector<std::string> order;
  std::set<std::string> seen;
  collect_var_order(ty, order, seen);
  std::map<std::string, Ty> rename;
  std::size_t next = 0;
  for (const auto &v : order)
    if (v.rfind('%', 0) == 0) rename[v] = tty::tvar(canonical_name(next++));
  return rename.empty() ? ty : subst_tvars(ty, rename);
}

// ---------------------------------------------------------------------------
// machine
// ---------------------------------------------------------------------------

std::string to_string(TgtStuck r) {
  switch (r) {
  case TgtStuck::NoMatchingReset: return "shift with no matching reset";
  case TgtStuck::NonPromptInControlPosition:
    return "non-prompt value in a control position";
  case TgtStuck::OmegaEvaluated: return "omega evaluated";
  case TgtStuck::UnboundVariable: return "unbound variable";
  case TgtStuck::BadApplication: return "application of a non-function";
  case TgtStuck::BadAddition: return "addition of non-integers";
  case TgtStuck::BadCondition: return "non-boolean condition";
  case TgtStuck::HeadOfEmpty: return "head of empty list";
  case TgtStuck::TailOfEmpty: return "tail of empty list";
  case TgtStuck::NotAList: return "list primitive on a non-list";
  case TgtStuck::LetNonValue: return "let binding a non-value";
  }
  return "stuck";
}

std::string RunStats::records() const {
  return "steps=" + std::to_string(steps) +
         " prompts=" + std::to_string(prompts_generated) +
         " omega=" + std::string(omega_hit ? "1" : "0");
}

namespace tgteval {

using namespace tgt;

struct FAppArg { TermPtr fn; };
struct FAppFn { TermPtr arg; };
struct FAddR { TermPtr lhs; };
struct FAddL { TermPtr rhs; };
struct FConsTail { TermPtr head; };
struct FConsHead { TermPtr tail; };
struct FHead {};
struct FTail {};
struct FIsNil {};
struct FIf { TermPtr then_branch; TermPtr else_branch; };
struct FResetP { long long prompt; };

using Frame = std::variant<FAppArg, FAppFn, FAddR, FAddL, FConsTail, FConsHead,
                           FHead, FTail, FIsNil, FIf, FResetP>;

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
                 [&](const FResetP &r) {
                   return resetp(prompt_const(r.prompt), t);
                 }},
      f);
}

TermPtr plug_from(const std::vector<Frame> &frames, std::size_t from,
                  TermPtr t) {
  for (std::size_t i = frames.size(); i > from; --i)
    t = plug1(frames[i - 1], t);
  return t;
}

TermPtr plug_upto(const std::vector<Frame> &frames, std::size_t count,
                  TermPtr t) {
  for (std::size_t i = count; i > 0; --i)
    t = plug1(frames[i - 1], t);
  return t;
}

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
            assert(!is_value(c.head));
            frames.push_back(FConsHead{c.tail});
            return decompose(c.head, frames);
          },
          [&](const ResetP &r) -> TermPtr {
            const auto *p = std::get_if<PromptConst>(&r.prompt->node);
            if (!p) return t; // non-prompt control position: stuck at focus
            if (!is_value(r.body)) {
              frames.push_back(FResetP{p->id});
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

} // namespace tgteval

tgt::TermPtr subst(const tgt::TermPtr &t, const std::string &x,
                   const tgt::TermPtr &v) {
  using namespace tgt;
  return std::visit(
      overloaded{
          [&](const Var &w) { return w.name == x ? v : t; },
          [&](const Const &) { return t; },
          [&](const Nil &) { return t; },
          [&](const Omega &) { return t; },
          [&](const PromptConst &) { return t; },
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
          [&](const ShiftP &s) {
            TermPtr p = subst(s.prompt, x, v);
            return s.k == x ? shiftp(p, s.k, s.body)
                            : shiftp(p, s.k, subst(s.body, x, v));
          },
          [&](const ResetP &r) {
            return resetp(subst(r.prompt, x, v), subst(r.body, x, v));
          },
          [&](const NewPrompt &n) {
            return n.name == x ? t
                               : newprompt(n.name, subst(n.body, x, v));
          },
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

TargetMachine::Status TargetMachine::step() {
  using namespace tgt;
  using namespace tgteval;

  if (is_value(term)) {
    if (std::holds_alternative<Var>(term->node)) {
      reason = TgtStuck::UnboundVariable;
      stuck_term = term;
      return Status::Stuck;
    }
    return Status::Done;
  }

  std::vector<Frame> frames;
  TermPtr focus = decompose(term, frames);

  auto stepped = [&](TermPtr next) {
    term = plug_upto(frames, frames.size(), std::move(next));
    ++stats.steps;
    return Status::Stepped;
  };
  auto stuck = [&](TgtStuck r) {
    reason = r;
    stuck_term = focus;
    return Status::Stuck;
  };

  return std::visit(
      overloaded{
          [&](const App &a) -> Status {
            if (const auto *l = std::get_if<Lam>(&a.fn->node))
              return stepped(subst(l->body, l->param, a.arg));
            if (const auto *f = std::get_if<Fix>(&a.fn->node)) {
              TermPtr body = f->param == f->self
                                 ? f->body
                                 : subst(f->body, f->self, a.fn);
              return stepped(subst(body, f->param, a.arg));
            }
            return stuck(TgtStuck::BadApplication);
          },
          [&](const Let &l) -> Status {
            if (!is_value(l.value)) return stuck(TgtStuck::LetNonValue);
            return stepped(subst(l.body, l.name, l.value));
          },
          [&](const NewPrompt &n) -> Status {
            TermPtr p = prompt_const(next_prompt++);
            ++stats.prompts_generated;
            return stepped(subst(n.body, n.name, p));
          },
          [&](const ResetP &r) -> Status {
            if (!std::holds_alternative<PromptConst>(r.prompt->node))
              return stuck(TgtStuck::NonPromptInControlPosition);
            return stepped(r.body); // reset of a value
          },
          [&](const ShiftP &s) -> Status {
            const auto *p = std::get_if<PromptConst>(&s.prompt->node);
            if (!p) return stuck(TgtStuck::NonPromptInControlPosition);
            std::size_t idx = frames.size();
            while (idx > 0) {
              if (const auto *f = std::get_if<FResetP>(&frames[idx - 1]);
                  f && f->prompt == p->id)
                break;
              --idx;
            }
            if (idx == 0) return stuck(TgtStuck::NoMatchingReset);
            // frames[idx-1] is the matching reset; frames[idx..] form E_p
            std::string y = fresh_binder(term, "y");
            TermPtr cont =
                lam(y, resetp(prompt_const(p->id),
                              plug_from(frames, idx, var(y))));
            TermPtr inner =
                resetp(prompt_const(p->id), subst(s.body, s.k, cont));
            term = plug_upto(frames, idx - 1, std::move(inner));
            ++stats.steps;
            return Status::Stepped;
          },
          [&](const Omega &) -> Status {
            stats.omega_hit = true;
            return stuck(TgtStuck::OmegaEvaluated);
          },
          [&](const Add &a) -> Status {
            const auto *l = std::get_if<Const>(&a.lhs->node);
            const auto *r = std::get_if<Const>(&a.rhs->node);
            const auto *ln = l ? std::get_if<long long>(&l->value.v) : nullptr;
            const auto *rn = r ? std::get_if<long long>(&r->value.v) : nullptr;
            if (!ln || !rn) return stuck(TgtStuck::BadAddition);
            return stepped(integer(*ln + *rn));
          },
          [&](const If &i) -> Status {
            const auto *c = std::get_if<Const>(&i.cond->node);
            const auto *b = c ? std::get_if<bool>(&c->value.v) : nullptr;
            if (!b) return stuck(TgtStuck::BadCondition);
            return stepped(*b ? i.then_branch : i.else_branch);
          },
          [&](const Head &h) -> Status {
            auto pr = uncons(h.arg);
            if (!pr) return stuck(TgtStuck::NotAList);
            if (!pr->first) return stuck(TgtStuck::HeadOfEmpty);
            return stepped(pr->first);
          },
          [&](const Tail &h) -> Status {
            auto pr = uncons(h.arg);
            if (!pr) return stuck(TgtStuck::NotAList);
            if (!pr->first) return stuck(TgtStuck::TailOfEmpty);
            return stepped(pr->second);
          },
          [&](const IsNil &h) -> Status {
            auto pr = uncons(h.arg);
            if (!pr) return stuck(TgtStuck::NotAList);
            return stepped(boolean(!pr->first));
          },
          [&](const Var &) -> Status {
            return stuck(TgtStuck::UnboundVariable);
          },
          [&](const auto &) -> Status {
            return stuck(TgtStuck::BadApplication);
          }},
      focus->node);
}

TgtEval eval_target(const tgt::TermPtr &t, long long fuel) {
  TargetMachine m(t);
  TgtEval out;
  for (;;) {
    if (m.stats.steps >= fuel) {
      out.status = TgtEval::Status::FuelExhausted;
      out.stats = m.stats;
      return out;
    }
    TargetMachine::Status s = m.step();
    if (s == TargetMachine::Status::Done) {
      out.status = TgtEval::Status::Value;
      out.value = m.term;
      out.stats = m.stats;
      return out;
    }
    if (s == TargetMachine::Status::Stuck) {
      out.status = TgtEval::Status::Stuck;
      out.stuck_term = m.stuck_term;
      out.reason = m.reason;
      out.stats = m.stats;
      return out;
    }
  }
}

std::optional<Obs> observe(const tgt::TermPtr &value) {
  using namespace tgt;
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

std::string show_value(const tgt::TermPtr &value) {
  if (auto o = observe(value)) return o->str();
  return pretty(value);
}

} // namespace pps
