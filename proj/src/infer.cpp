#include "pps/infer.hpp"

#include "pps/errors.hpp"

#include <algorithm>
#include <cassert>

namespace pps {

std::string rule_name(Rule r) {
  switch (r) {
  case Rule::Var: return "var";
  case Rule::Const: return "const";
  case Rule::Exp: return "exp";
  case Rule::Fun: return "fun";
  case Rule::App: return "app";
  case Rule::Reset: return "reset";
  case Rule::Shift: return "shift";
  case Rule::Throw: return "throw";
  case Rule::Let: return "let";
  case Rule::Add: return "add";
  case Rule::If: return "if";
  case Rule::Fix: return "fix";
  case Rule::NilIntro: return "nil";
  case Rule::ConsPure: return "cons-p";
  case Rule::HeadPure: return "head-p";
  case Rule::TailPure: return "tail-p";
  case Rule::IsNilPure: return "isnil-p";
  case Rule::ConsEff: return "cons";
  case Rule::HeadEff: return "head";
  case Rule::TailEff: return "tail";
  case Rule::IsNilEff: return "isnil";
  }
  return "?";
}

std::string show(const Judgment &j) {
  if (j.pure) return "pure : " + sty::show(j.type);
  return sty::show(j.type) + " ; " + sty::show(j.ans_in) + ", " +
         sty::show(j.ans_out);
}

namespace {

using sty::Ty;

Ty subst_vars(const Ty &t, const std::map<std::string, Ty> &m) {
  using namespace sty;
  return std::visit(
      overloaded{[&](const TVar &v) -> Ty {
                   auto it = m.find(v.name);
                   return it == m.end() ? t : it->second;
                 },
                 [&](const Int &) { return t; }, [&](const Bool &) { return t; },
                 [&](const List &l) { return tlist(subst_vars(l.elem, m)); },
                 [&](const PureArrow &p) {
                   return parrow(subst_vars(p.from, m), subst_vars(p.to, m));
                 },
                 [&](const EffArrow &e) {
                   return earrow(subst_vars(e.from, m), subst_vars(e.ans0, m),
                                 subst_vars(e.to, m), subst_vars(e.ans1, m));
                 }},
      t->node);
}

struct Inferencer {
  sty::Unifier u;

  Ty instantiate(const sty::Scheme &s) {
    if (s.bound.empty()) return s.body;
    std::map<std::string, Ty> m;
    for (const auto &b : s.bound) m[b] = u.fresh();
    return subst_vars(s.body, m);
  }

  sty::Scheme generalize(const TypeEnv &env, const Ty &ty) {
    Ty z = u.zonk(ty);
    std::set<std::string> fvs;
    sty::free_vars(z, fvs);
    std::set<std::string> env_fvs;
    for (const auto &e : env.entries) {
      std::set<std::string> fv;
      sty::free_vars(u.zonk(e.scheme.body), fv);
      for (const auto &b : e.scheme.bound) fv.erase(b);
      env_fvs.insert(fv.begin(), fv.end());
    }
    std::vector<std::string> bound;
    for (const auto &v : fvs)
      if (!env_fvs.count(v)) bound.push_back(v);
    return sty::Scheme{std::move(bound), z};
  }

  DerivPtr node(Rule r, const src::TermPtr &subject, Judgment j,
                std::vector<DerivPtr> children) {
    auto d = std::make_shared<Derivation>();
    d->rule = r;
    d->subject = subject;
    d->judgment = std::move(j);
    d->children = std::move(children);
    d->purity = src::classify_purity(subject);
    return d;
  }

  static Judgment pure_j(Ty t) { return Judgment{true, std::move(t), {}, {}}; }
  static Judgment eff_j(Ty t, Ty a, Ty b) {
    return Judgment{false, std::move(t), std::move(a), std::move(b)};
  }

  DerivPtr pure(const TypeEnv &env, const src::TermPtr &t) {
    using namespace src;
    return std::visit(
        overloaded{
            [&](const Var &v) {
              const auto *e = env.lookup(v.name);
              if (!e) throw ScopeError("unbound variable '" + v.name + "'");
              if (e->is_cont)
                throw ScopeError("continuation '" + v.name +
                                 "' used as an ordinary value");
              return node(Rule::Var, t, pure_j(instantiate(e->scheme)), {});
            },
            [&](const Const &c) {
              Ty ty = std::visit(
                  overloaded{[](long long) { return sty::tint(); },
                             [](bool) { return sty::tbool(); },
                             [](const std::vector<long long> &) {
                               return sty::tlist(sty::tint());
                             }},
                  c.value.v);
              return node(Rule::Const, t, pure_j(ty), {});
            },
            [&](const Nil &) {
              return node(Rule::NilIntro, t, pure_j(sty::tlist(u.fresh())), {});
            },
            [&](const Lam &l) {
              Ty sigma = u.fresh();
              TypeEnv env2 = env;
              env2.bind(l.param, sty::Scheme{{}, sigma});
              DerivPtr body = eff(env2, l.body);
              Ty arrow = sty::earrow(sigma, body->judgment.ans_in,
                                     body->judgment.type,
                                     body->judgment.ans_out);
              return node(Rule::Fun, t, pure_j(arrow), {body});
            },
            [&](const Fix &f) {
              Ty sigma = u.fresh(), alpha = u.fresh(), tau = u.fresh(),
                 beta = u.fresh();
              Ty arrow = sty::earrow(sigma, alpha, tau, beta);
              TypeEnv env2 = env;
              env2.bind(f.self, sty::Scheme{{}, arrow});
              env2.bind(f.param, sty::Scheme{{}, sigma});
              DerivPtr body = eff(env2, f.body);
              u.unify(body->judgment.type, tau);
              u.unify(body->judgment.ans_in, alpha);
              u.unify(body->judgment.ans_out, beta);
              return node(Rule::Fix, t, pure_j(arrow), {body});
            },
            [&](const Reset &r) {
              DerivPtr body = eff(env, r.body);
              u.unify(body->judgment.type, body->judgment.ans_in);
              return node(Rule::Reset, t, pure_j(body->judgment.ans_out),
                          {body});
            },
            [&](const Throw &th) {
              const auto *e = env.lookup(th.k);
              if (!e || !e->is_cont)
                throw ScopeError("throw refers to '" + th.k +
                                 "', which is not a continuation in scope");
              const auto *arrow = std::get_if<sty::PureArrow>(&e->scheme.body->node);
              assert(arrow && "continuation bound to a non-arrow");
              if (classify_purity(th.arg) != Purity::Pure)
                throw TypeError("throw argument must be a pure term: " +
                                pretty(th.arg));
              DerivPtr arg = pure(env, th.arg);
              u.unify(arg->judgment.type, arrow->from);
              return node(Rule::Throw, t, pure_j(arrow->to), {arg});
            },
            [&](const Cons &c) {
              DerivPtr h = pure(env, c.head);
              DerivPtr tl = pure(env, c.tail);
              Ty elem = u.fresh();
              u.unify(h->judgment.type, elem);
              u.unify(tl->judgment.type, sty::tlist(elem));
              return node(Rule::ConsPure, t, pure_j(sty::tlist(elem)), {h, tl});
            },
            [&](const Head &hd) {
              DerivPtr a = pure(env, hd.arg);
              Ty elem = u.fresh();
              u.unify(a->judgment.type, sty::tlist(elem));
              return node(Rule::HeadPure, t, pure_j(elem), {a});
            },
            [&](const Tail &tl) {
              DerivPtr a = pure(env, tl.arg);
              Ty elem = u.fresh();
              u.unify(a->judgment.type, sty::tlist(elem));
              return node(Rule::TailPure, t, pure_j(sty::tlist(elem)), {a});
            },
            [&](const IsNil &in) {
              DerivPtr a = pure(env, in.arg);
              Ty elem = u.fresh();
              u.unify(a->judgment.type, sty::tlist(elem));
              return node(Rule::IsNilPure, t, pure_j(sty::tbool()), {a});
            },
            [&](const auto &) -> DerivPtr {
              throw TypeError("internal: pure inference on an effectful term");
            }},
        t->node);
  }

  DerivPtr eff(const TypeEnv &env, const src::TermPtr &t) {
    using namespace src;
    if (classify_purity(t) == Purity::Pure) {
      DerivPtr child = pure(env, t);
      Ty alpha = u.fresh();
      return node(Rule::Exp, t, eff_j(child->judgment.type, alpha, alpha),
                  {child});
    }
    return std::visit(
        overloaded{
            [&](const Let &l) {
              if (classify_purity(l.value) != Purity::Pure)
                throw TypeError("let binds a value: " + pretty(l.value));
              DerivPtr v = pure(env, l.value);
              sty::Scheme s = generalize(env, v->judgment.type);
              TypeEnv env2 = env;
              env2.bind(l.name, std::move(s));
              DerivPtr body = eff(env2, l.body);
              return node(Rule::Let, t,
                          eff_j(body->judgment.type, body->judgment.ans_in,
                                body->judgment.ans_out),
                          {v, body});
            },
            [&](const App &a) {
              DerivPtr d1 = eff(env, a.fn);
              DerivPtr d2 = eff(env, a.arg);
              Ty sigma = u.fresh(), alpha = u.fresh(), tau = u.fresh(),
                 beta = u.fresh();
              u.unify(d1->judgment.type, sty::earrow(sigma, alpha, tau, beta));
              u.unify(d1->judgment.ans_in, beta);
              u.unify(d2->judgment.type, sigma);
              u.unify(d2->judgment.ans_in, d1->judgment.ans_out);
              return node(Rule::App, t,
                          eff_j(tau, alpha, d2->judgment.ans_out), {d1, d2});
            },
            [&](const Add &a) {
              DerivPtr d1 = eff(env, a.lhs);
              DerivPtr d2 = eff(env, a.rhs);
              u.unify(d1->judgment.type, sty::tint());
              u.unify(d2->judgment.type, sty::tint());
              u.unify(d1->judgment.ans_out, d2->judgment.ans_in);
              return node(Rule::Add, t,
                          eff_j(sty::tint(), d1->judgment.ans_in,
                                d2->judgment.ans_out),
                          {d1, d2});
            },
            [&](const Shift &s) {
              if (classify_purity(s.body) != Purity::Pure)
                throw ImpureShiftBody(pretty(s.body));
              Ty tau = u.fresh(), alpha = u.fresh();
              TypeEnv env2 = env;
              env2.bind(s.k, sty::Scheme{{}, sty::parrow(tau, alpha)}, true);
              DerivPtr body = pure(env2, s.body);
              return node(Rule::Shift, t,
                          eff_j(tau, alpha, body->judgment.type), {body});
            },
            [&](const If &i) {
              DerivPtr dc = eff(env, i.cond);
              u.unify(dc->judgment.type, sty::tbool());
              DerivPtr dt = eff(env, i.then_branch);
              DerivPtr de = eff(env, i.else_branch);
              u.unify(dt->judgment.type, de->judgment.type);
              u.unify(dt->judgment.ans_in, de->judgment.ans_in);
              u.unify(dt->judgment.ans_out, de->judgment.ans_out);
              u.unify(dc->judgment.ans_in, dt->judgment.ans_out);
              return node(Rule::If, t,
                          eff_j(dt->judgment.type, dt->judgment.ans_in,
                                dc->judgment.ans_out),
                          {dc, dt, de});
            },
            [&](const Cons &c) {
              DerivPtr h = eff(env, c.head);
              DerivPtr tl = eff(env, c.tail);
              Ty elem = u.fresh();
              u.unify(h->judgment.type, elem);
              u.unify(tl->judgment.type, sty::tlist(elem));
              u.unify(h->judgment.ans_out, tl->judgment.ans_in);
              return node(Rule::ConsEff, t,
                          eff_j(sty::tlist(elem), h->judgment.ans_in,
                                tl->judgment.ans_out),
                          {h, tl});
            },
            [&](const Head &hd) {
              DerivPtr a = eff(env, hd.arg);
              Ty elem = u.fresh();
              u.unify(a->judgment.type, sty::tlist(elem));
              return node(Rule::HeadEff, t,
                          eff_j(elem, a->judgment.ans_in, a->judgment.ans_out),
                          {a});
            },
            [&](const Tail &tl) {
              DerivPtr a = eff(env, tl.arg);
              Ty elem = u.fresh();
              u.unify(a->judgment.type, sty::tlist(elem));
              return node(Rule::TailEff, t,
                          eff_j(sty::tlist(elem), a->judgment.ans_in,
                                a->judgment.ans_out),
                          {a});
            },
            [&](const IsNil &in) {
              DerivPtr a = eff(env, in.arg);
              Ty elem = u.fresh();
              u.unify(a->judgment.type, sty::tlist(elem));
              return node(Rule::IsNilEff, t,
                          eff_j(sty::tbool(), a->judgment.ans_in,
                                a->judgment.ans_out),
                          {a});
            },
            [&](const auto &) -> DerivPtr {
              throw TypeError("internal: effectful inference on a pure term");
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

void zonk_judgments(const DerivPtr &d, const sty::Unifier &u) {
  d->judgment.type = u.zonk(d->judgment.type);
  if (!d->judgment.pure) {
    d->judgment.ans_in = u.zonk(d->judgment.ans_in);
    d->judgment.ans_out = u.zonk(d->judgment.ans_out);
  }
  for (const auto &c : d->children) zonk_judgments(c, u);
}

void collect_var_order(const Ty &t, std::vector<std::string> &order,
                       std::set<std::string> &seen) {
  using namespace sty;
  std::visit(overloaded{[&](const TVar &v) {
                          if (seen.insert(v.name).second)
                            order.push_back(v.name);
                        },
                        [&](const Int &) {}, [&](const Bool &) {},
                        [&](const List &l) {
                          collect_var_order(l.elem, order, seen);
                        },
                        [&](const PureArrow &p) {
                          collect_var_order(p.from, order, seen);
                          collect_var_order(p.to, order, seen);
                        },
                        [&](const EffArrow &e) {
                          collect_var_order(e.from, order, seen);
                          collect_var_order(e.ans0, order, seen);
                          collect_var_order(e.to, order, seen);
                          collect_var_order(e.ans1, order, seen);
                        }},
             t->node);
}

void collect_judgment_vars(const DerivPtr &d, std::vector<std::string> &order,
                           std::set<std::string> &seen) {
  collect_var_order(d->judgment.type, order, seen);
  if (!d->judgment.pure) {
    collect_var_order(d->judgment.ans_in, order, seen);
    collect_var_order(d->judgment.ans_out, order, seen);
  }
  for (const auto &c : d->children) collect_judgment_vars(c, order, seen);
}

void rename_judgments(const DerivPtr &d, const std::map<std::string, Ty> &m) {
  d->judgment.type = subst_vars(d->judgment.type, m);
  if (!d->judgment.pure) {
    d->judgment.ans_in = subst_vars(d->judgment.ans_in, m);
    d->judgment.ans_out = subst_vars(d->judgment.ans_out, m);
  }
  for (const auto &c : d->children) rename_judgments(c, m);
}

} // namespace

DerivPtr infer(const TypeEnv &env, const src::TermPtr &term) {
  Inferencer inf;
  DerivPtr root = src::classify_purity(term) == Purity::Pure
                      ? inf.pure(env, term)
                      : inf.eff(env, term);
  zonk_judgments(root, inf.u);
  // canonical names for remaining free type variables, root judgment first
  std::vector<std::string> order;
  std::set<std::string> seen;
  collect_judgment_vars(root, order, seen);
  std::map<std::string, Ty> rename;
  std::size_t next = 0;
  for (const auto &v : order)
    if (v.rfind('%', 0) == 0) rename[v] = sty::tvar(canonical_name(next++));
  if (!rename.empty()) rename_judgments(root, rename);
  return root;
}

// ---------------------------------------------------------------------------
// validation
// ---------------------------------------------------------------------------

namespace {

bool match_instance(const Ty &pattern, const Ty &ty,
                    const std::set<std::string> &flexible,
                    std::map<std::string, Ty> &binding) {
  using namespace sty;
  if (const auto *v = std::get_if<TVar>(&pattern->node)) {
    if (flexible.count(v->name)) {
      auto it = binding.find(v->name);
      if (it == binding.end()) {
        binding[v->name] = ty;
        return true;
      }
      return equal(it->second, ty);
    }
  }
  if (pattern->node.index() != ty->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const TVar &v) { return v.name == std::get<TVar>(ty->node).name; },
          [&](const Int &) { return true; }, [&](const Bool &) { return true; },
          [&](const List &l) {
            return match_instance(l.elem, std::get<List>(ty->node).elem,
                                  flexible, binding);
          },
          [&](const PureArrow &p) {
            const auto &r = std::get<PureArrow>(ty->node);
            return match_instance(p.from, r.from, flexible, binding) &&
                   match_instance(p.to, r.to, flexible, binding);
          },
          [&](const EffArrow &e) {
            const auto &r = std::get<EffArrow>(ty->node);
            return match_instance(e.from, r.from, flexible, binding) &&
                   match_instance(e.ans0, r.ans0, flexible, binding) &&
                   match_instance(e.to, r.to, flexible, binding) &&
                   match_instance(e.ans1, r.ans1, flexible, binding);
          }},
      pattern->node);
}

bool is_instance_of(const Ty &ty, const sty::Scheme &s) {
  std::set<std::string> flexible(s.bound.begin(), s.bound.end());
  std::map<std::string, Ty> binding;
  return match_instance(s.body, ty, flexible, binding);
}

struct Validator {
  std::string fail_path;

  bool fail(const std::string &path) {
    fail_path = path.empty() ? "root" : path;
    return false;
  }

  bool check(const DerivPtr &d, const TypeEnv &env, const std::string &path) {
    using namespace src;
    const Judgment &j = d->judgment;
    auto child_path = [&](std::size_t i) {
      return path.empty() ? std::to_string(i) : path + "/" + std::to_string(i);
    };
    auto expect = [&](bool ok) { return ok ? true : fail(path); };

    switch (d->rule) {
    case Rule::Var: {
      const auto *v = std::get_if<Var>(&d->subject->node);
      if (!v || !j.pure) return fail(path);
      const auto *e = env.lookup(v->name);
      if (!e || e->is_cont) return fail(path);
      return expect(is_instance_of(j.type, e->scheme));
    }
    case Rule::Const: {
      const auto *c = std::get_if<Const>(&d->subject->node);
      if (!c || !j.pure) return fail(path);
      Ty want = std::visit(
          overloaded{[](long long) { return sty::tint(); },
                     [](bool) { return sty::tbool(); },
                     [](const std::vector<long long> &) {
                       return sty::tlist(sty::tint());
                     }},
          c->value.v);
      return expect(sty::equal(j.type, want));
    }
    case Rule::NilIntro:
      return expect(j.pure &&
                    std::holds_alternative<sty::List>(j.type->node));
    case Rule::Exp: {
      if (j.pure || d->children.size() != 1) return fail(path);
      const Judgment &c = d->children[0]->judgment;
      if (!c.pure || !sty::equal(c.type, j.type) ||
          !sty::equal(j.ans_in, j.ans_out))
        return fail(path);
      return check(d->children[0], env, child_path(0));
    }
    case Rule::Fun: {
      const auto *l = std::get_if<Lam>(&d->subject->node);
      if (!l || !j.pure || d->children.size() != 1) return fail(path);
      const auto *ar = std::get_if<sty::EffArrow>(&j.type->node);
      if (!ar) return fail(path);
      const Judgment &b = d->children[0]->judgment;
      if (b.pure || !sty::equal(b.type, ar->to) ||
          !sty::equal(b.ans_in, ar->ans0) || !sty::equal(b.ans_out, ar->ans1))
        return fail(path);
      TypeEnv env2 = env;
      env2.bind(l->param, sty::Scheme{{}, ar->from});
      return check(d->children[0], env2, child_path(0));
    }
    case Rule::Fix: {
      const auto *f = std::get_if<Fix>(&d->subject->node);
      if (!f || !j.pure || d->children.size() != 1) return fail(path);
      const auto *ar = std::get_if<sty::EffArrow>(&j.type->node);
      if (!ar) return fail(path);
      const Judgment &b = d->children[0]->judgment;
      if (b.pure || !sty::equal(b.type, ar->to) ||
          !sty::equal(b.ans_in, ar->ans0) || !sty::equal(b.ans_out, ar->ans1))
        return fail(path);
      TypeEnv env2 = env;
      env2.bind(f->self, sty::Scheme{{}, j.type});
      env2.bind(f->param, sty::Scheme{{}, ar->from});
      return check(d->children[0], env2, child_path(0));
    }
    case Rule::App: {
      if (j.pure || d->children.size() != 2) return fail(path);
      const Judgment &d1 = d->children[0]->judgment;
      const Judgment &d2 = d->children[1]->judgment;
      if (d1.pure || d2.pure) return fail(path);
      const auto *ar = std::get_if<sty::EffArrow>(&d1.type->node);
      if (!ar) return fail(path);
      if (!sty::equal(d1.ans_in, ar->ans1) ||
          !sty::equal(d2.type, ar->from) ||
          !sty::equal(d2.ans_in, d1.ans_out) ||
          !sty::equal(j.type, ar->to) || !sty::equal(j.ans_in, ar->ans0) ||
          !sty::equal(j.ans_out, d2.ans_out))
        return fail(path);
      return check(d->children[0], env, child_path(0)) &&
             check(d->children[1], env, child_path(1));
    }
    case Rule::Reset: {
      if (!j.pure || d->children.size() != 1) return fail(path);
      const Judgment &b = d->children[0]->judgment;
      if (b.pure || !sty::equal(b.type, b.ans_in) ||
          !sty::equal(j.type, b.ans_out))
        return fail(path);
      return check(d->children[0], env, child_path(0));
    }
    case Rule::Shift: {
      const auto *s = std::get_if<Shift>(&d->subject->node);
      if (!s || j.pure || d->children.size() != 1) return fail(path);
      const Judgment &b = d->children[0]->judgment;
      if (!b.pure || !sty::equal(b.type, j.ans_out)) return fail(path);
      TypeEnv env2 = env;
      env2.bind(s->k, sty::Scheme{{}, sty::parrow(j.type, j.ans_in)}, true);
      return check(d->children[0], env2, child_path(0));
    }
    case Rule::Throw: {
      const auto *th = std::get_if<Throw>(&d->subject->node);
      if (!th || !j.pure || d->children.size() != 1) return fail(path);
      const auto *e = env.lookup(th->k);
      if (!e || !e->is_cont) return fail(path);
      const auto *ar = std::get_if<sty::PureArrow>(&e->scheme.body->node);
      if (!ar) return fail(path);
      const Judgment &a = d->children[0]->judgment;
      if (!a.pure || !sty::equal(a.type, ar->from) ||
          !sty::equal(j.type, ar->to))
        return fail(path);
      return check(d->children[0], env, child_path(0));
    }
    case Rule::Let: {
      const auto *l = std::get_if<Let>(&d->subject->node);
      if (!l || j.pure || d->children.size() != 2) return fail(path);
      const Judgment &v = d->children[0]->judgment;
      const Judgment &b = d->children[1]->judgment;
      if (!v.pure || b.pure || !sty::equal(j.type, b.type) ||
          !sty::equal(j.ans_in, b.ans_in) || !sty::equal(j.ans_out, b.ans_out))
        return fail(path);
      if (!check(d->children[0], env, child_path(0))) return false;
      // Gen(sigma; env)
      std::set<std::string> fvs;
      sty::free_vars(v.type, fvs);
      std::set<std::string> env_fvs;
      for (const auto &en : env.entries) {
        std::set<std::string> fv;
        sty::free_vars(en.scheme.body, fv);
        for (const auto &bn : en.scheme.bound) fv.erase(bn);
        env_fvs.insert(fv.begin(), fv.end());
      }
      std::vector<std::string> bound;
      for (const auto &fv : fvs)
        if (!env_fvs.count(fv)) bound.push_back(fv);
      TypeEnv env2 = env;
      env2.bind(l->name, sty::Scheme{std::move(bound), v.type});
      return check(d->children[1], env2, child_path(1));
    }
    case Rule::Add: {
      if (j.pure || d->children.size() != 2) return fail(path);
      const Judgment &d1 = d->children[0]->judgment;
      const Judgment &d2 = d->children[1]->judgment;
      if (d1.pure || d2.pure || !sty::equal(d1.type, sty::tint()) ||
          !sty::equal(d2.type, sty::tint()) ||
          !sty::equal(j.type, sty::tint()) ||
          !sty::equal(d1.ans_out, d2.ans_in) ||
          !sty::equal(j.ans_in, d1.ans_in) ||
          !sty::equal(j.ans_out, d2.ans_out))
        return fail(path);
      return check(d->children[0], env, child_path(0)) &&
             check(d->children[1], env, child_path(1));
    }
    case Rule::If: {
      if (j.pure || d->children.size() != 3) return fail(path);
      const Judgment &c = d->children[0]->judgment;
      const Judgment &t1 = d->children[1]->judgment;
      const Judgment &t2 = d->children[2]->judgment;
      if (c.pure || t1.pure || t2.pure) return fail(path);
      if (!sty::equal(c.type, sty::tbool()) || !sty::equal(t1.type, t2.type) ||
          !sty::equal(t1.ans_in, t2.ans_in) ||
          !sty::equal(t1.ans_out, t2.ans_out) ||
          !sty::equal(c.ans_in, t1.ans_out) || !sty::equal(j.type, t1.type) ||
          !sty::equal(j.ans_in, t1.ans_in) || !sty::equal(j.ans_out, c.ans_out))
        return fail(path);
      return check(d->children[0], env, child_path(0)) &&
             check(d->children[1], env, child_path(1)) &&
             check(d->children[2], env, child_path(2));
    }
    case Rule::ConsPure: {
      if (!j.pure || d->children.size() != 2) return fail(path);
      const auto *lt = std::get_if<sty::List>(&j.type->node);
      if (!lt) return fail(path);
      const Judgment &h = d->children[0]->judgment;
      const Judgment &tl = d->children[1]->judgment;
      if (!h.pure || !tl.pure || !sty::equal(h.type, lt->elem) ||
          !sty::equal(tl.type, j.type))
        return fail(path);
      return check(d->children[0], env, child_path(0)) &&
             check(d->children[1], env, child_path(1));
    }
    case Rule::HeadPure:
    case Rule::TailPure:
    case Rule::IsNilPure: {
      if (!j.pure || d->children.size() != 1) return fail(path);
      const Judgment &a = d->children[0]->judgment;
      if (!a.pure) return fail(path);
      const auto *lt = std::get_if<sty::List>(&a.type->node);
      if (!lt) return fail(path);
      bool ok = d->rule == Rule::HeadPure ? sty::equal(j.type, lt->elem)
                : d->rule == Rule::TailPure
                    ? sty::equal(j.type, a.type)
                    : sty::equal(j.type, sty::tbool());
      if (!ok) return fail(path);
      return check(d->children[0], env, child_path(0));
    }
    case Rule::ConsEff: {
      if (j.pure || d->children.size() != 2) return fail(path);
      const auto *lt = std::get_if<sty::List>(&j.type->node);
      if (!lt) return fail(path);
      const Judgment &h = d->children[0]->judgment;
      const Judgment &tl = d->children[1]->judgment;
      if (h.pure || tl.pure || !sty::equal(h.type, lt->elem) ||
          !sty::equal(tl.type, j.type) || !sty::equal(h.ans_out, tl.ans_in) ||
          !sty::equal(j.ans_in, h.ans_in) || !sty::equal(j.ans_out, tl.ans_out))
        return fail(path);
      return check(d->children[0], env, child_path(0)) &&
             check(d->children[1], env, child_path(1));
    }
    case Rule::HeadEff:
    case Rule::TailEff:
    case Rule::IsNilEff: {
      if (j.pure || d->children.size() != 1) return fail(path);
      const Judgment &a = d->children[0]->judgment;
      if (a.pure || !sty::equal(j.ans_in, a.ans_in) ||
          !sty::equal(j.ans_out, a.ans_out))
        return fail(path);
      const auto *lt = std::get_if<sty::List>(&a.type->node);
      if (!lt) return fail(path);
      bool ok = d->rule == Rule::HeadEff ? sty::equal(j.type, lt->elem)
                : d->rule == Rule::TailEff
                    ? sty::equal(j.type, a.type)
                    : sty::equal(j.type, sty::tbool());
      if (!ok) return fail(path);
      return check(d->children[0], env, child_path(0));
    }
    }
    return fail(path);
  }
};

} // namespace

bool validate(const DerivPtr &d, const TypeEnv &env, std::string *fail_path) {
  Validator v;
  bool ok = v.check(d, env, "");
  if (!ok && fail_path) *fail_path = v.fail_path;
  return ok;
}

} // namespace pps
