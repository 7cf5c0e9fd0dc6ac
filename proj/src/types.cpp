#include "pps/types.hpp"

#include "pps/errors.hpp"
#include "pps/syntax.hpp"

namespace pps {

// ---------------------------------------------------------------------------
// source types
// ---------------------------------------------------------------------------

namespace sty {

Ty make(Node n) { return std::make_shared<const Type>(Type{std::move(n)}); }
Ty tvar(std::string name) { return make(TVar{std::move(name)}); }
Ty tint() {
  static Ty t = make(Int{});
  return t;
}
Ty tbool() {
  static Ty t = make(Bool{});
  return t;
}
Ty tlist(Ty elem) { return make(List{std::move(elem)}); }
Ty parrow(Ty from, Ty to) { return make(PureArrow{std::move(from), std::move(to)}); }
Ty earrow(Ty from, Ty ans0, Ty to, Ty ans1) {
  return make(EffArrow{std::move(from), std::move(ans0), std::move(to),
                       std::move(ans1)});
}

bool equal(const Ty &a, const Ty &b) {
  if (a->node.index() != b->node.index()) return false;
  const auto &bn = b->node;
  return std::visit(
      overloaded{
          [&](const TVar &v) { return v.name == std::get<TVar>(bn).name; },
          [&](const Int &) { return true; },
          [&](const Bool &) { return true; },
          [&](const List &l) { return equal(l.elem, std::get<List>(bn).elem); },
          [&](const PureArrow &p) {
            const auto &r = std::get<PureArrow>(bn);
            return equal(p.from, r.from) && equal(p.to, r.to);
          },
          [&](const EffArrow &e) {
            const auto &r = std::get<EffArrow>(bn);
            return equal(e.from, r.from) && equal(e.ans0, r.ans0) &&
                   equal(e.to, r.to) && equal(e.ans1, r.ans1);
          }},
      a->node);
}

namespace {

bool alpha_eq_ty(const Ty &a, const Ty &b,
                 std::map<std::string, std::string> &fwd,
                 std::map<std::string, std::string> &bwd) {
  if (a->node.index() != b->node.index()) return false;
  const auto &bn = b->node;
  return std::visit(
      overloaded{
          [&](const TVar &v) {
            const auto &w = std::get<TVar>(bn);
            auto f = fwd.find(v.name);
            auto g = bwd.find(w.name);
            if (f == fwd.end() && g == bwd.end()) {
              fwd[v.name] = w.name;
              bwd[w.name] = v.name;
              return true;
            }
            return f != fwd.end() && g != bwd.end() && f->second == w.name &&
                   g->second == v.name;
          },
          [&](const Int &) { return true; },
          [&](const Bool &) { return true; },
          [&](const List &l) {
            return alpha_eq_ty(l.elem, std::get<List>(bn).elem, fwd, bwd);
          },
          [&](const PureArrow &p) {
            const auto &r = std::get<PureArrow>(bn);
            return alpha_eq_ty(p.from, r.from, fwd, bwd) &&
                   alpha_eq_ty(p.to, r.to, fwd, bwd);
          },
          [&](const EffArrow &e) {
            const auto &r = std::get<EffArrow>(bn);
            return alpha_eq_ty(e.from, r.from, fwd, bwd) &&
                   alpha_eq_ty(e.ans0, r.ans0, fwd, bwd) &&
                   alpha_eq_ty(e.to, r.to, fwd, bwd) &&
                   alpha_eq_ty(e.ans1, r.ans1, fwd, bwd);
          }},
      a->node);
}

} // namespace

bool alpha_equal(const Ty &a, const Ty &b) {
  std::map<std::string, std::string> fwd, bwd;
  return alpha_eq_ty(a, b, fwd, bwd);
}

void free_vars(const Ty &t, std::set<std::string> &out) {
  std::visit(overloaded{[&](const TVar &v) { out.insert(v.name); },
                        [&](const Int &) {}, [&](const Bool &) {},
                        [&](const List &l) { free_vars(l.elem, out); },
                        [&](const PureArrow &p) {
                          free_vars(p.from, out);
                          free_vars(p.to, out);
                        },
                        [&](const EffArrow &e) {
                          free_vars(e.from, out);
                          free_vars(e.ans0, out);
                          free_vars(e.to, out);
                          free_vars(e.ans1, out);
                        }},
             t->node);
}

namespace {

std::string show_prec(const Ty &t, bool atom) {
  std::string s;
  bool needs_parens = false;
  std::visit(overloaded{[&](const TVar &v) { s = v.name; },
                        [&](const Int &) { s = "int"; },
                        [&](const Bool &) { s = "bool"; },
                        [&](const List &l) {
                          s = show_prec(l.elem, true) + " list";
                        },
                        [&](const PureArrow &p) {
                          s = show_prec(p.from, true) + " -> " +
                              show_prec(p.to, false);
                          needs_parens = true;
                        },
                        [&](const EffArrow &e) {
                          s = show_prec(e.from, true) + "/" +
                              show_prec(e.ans0, true) + " -> " +
                              show_prec(e.to, true) + "/" +
                              show_prec(e.ans1, true);
                          // effectful arrows always display parenthesized
                          s = "(" + s + ")";
                        }},
             t->node);
  if (needs_parens && atom) s = "(" + s + ")";
  return s;
}

} // namespace

std::string show(const Ty &t) { return show_prec(t, false); }

Ty Unifier::fresh() { return tvar("%" + std::to_string(counter++)); }

Ty Unifier::resolve(const Ty &t) const {
  Ty cur = t;
  while (const auto *v = std::get_if<TVar>(&cur->node)) {
    auto it = subst.find(v->name);
    if (it == subst.end()) break;
    cur = it->second;
  }
  return cur;
}

Ty Unifier::zonk(const Ty &t) const {
  Ty r = resolve(t);
  return std::visit(
      overloaded{[&](const TVar &) { return r; }, [&](const Int &) { return r; },
                 [&](const Bool &) { return r; },
                 [&](const List &l) { return tlist(zonk(l.elem)); },
                 [&](const PureArrow &p) {
                   return parrow(zonk(p.from), zonk(p.to));
                 },
                 [&](const EffArrow &e) {
                   return earrow(zonk(e.from), zonk(e.ans0), zonk(e.to),
                                 zonk(e.ans1));
                 }},
      r->node);
}

namespace {

bool occurs(const Unifier &u, const std::string &name, const Ty &t) {
  Ty r = u.resolve(t);
  return std::visit(
      overloaded{[&](const TVar &v) { return v.name == name; },
                 [&](const Int &) { return false; },
                 [&](const Bool &) { return false; },
                 [&](const List &l) { return occurs(u, name, l.elem); },
                 [&](const PureArrow &p) {
                   return occurs(u, name, p.from) || occurs(u, name, p.to);
                 },
                 [&](const EffArrow &e) {
                   return occurs(u, name, e.from) || occurs(u, name, e.ans0) ||
                          occurs(u, name, e.to) || occurs(u, name, e.ans1);
                 }},
      r->node);
}

} // namespace

void Unifier::unify(const Ty &a0, const Ty &b0) {
  Ty a = resolve(a0), b = resolve(b0);
  if (const auto *v = std::get_if<TVar>(&a->node)) {
    if (const auto *w = std::get_if<TVar>(&b->node); w && w->name == v->name)
      return;
    if (occurs(*this, v->name, b))
      throw TypeError("occurs check: " + v->name + " in " + show(zonk(b)));
    subst[v->name] = b;
    return;
  }
  if (std::holds_alternative<TVar>(b->node)) {
    unify(b, a);
    return;
  }
  if (a->node.index() != b->node.index())
    throw TypeError("cannot unify " + show(zonk(a)) + " with " + show(zonk(b)));
  std::visit(overloaded{[&](const Int &) {}, [&](const Bool &) {},
                        [&](const TVar &) {},
                        [&](const List &l) {
                          unify(l.elem, std::get<List>(b->node).elem);
                        },
                        [&](const PureArrow &p) {
                          const auto &r = std::get<PureArrow>(b->node);
                          unify(p.from, r.from);
                          unify(p.to, r.to);
                        },
                        [&](const EffArrow &e) {
                          const auto &r = std::get<EffArrow>(b->node);
                          unify(e.from, r.from);
                          unify(e.ans0, r.ans0);
                          unify(e.to, r.to);
                          unify(e.ans1, r.ans1);
                        }},
             a->node);
}

} // namespace sty

// ---------------------------------------------------------------------------
// target types
// ---------------------------------------------------------------------------

namespace tty {

Ty make(Node n) { return std::make_shared<const Type>(Type{std::move(n)}); }
Ty tvar(std::string name) { return make(TVar{std::move(name)}); }
Ty tint() {
  static Ty t = make(Int{});
  return t;
}
Ty tbool() {
  static Ty t = make(Bool{});
  return t;
}
Ty tlist(Ty elem) { return make(List{std::move(elem)}); }
Ty arrow(Ty from, Ty to) { return make(Arrow{std::move(from), std::move(to)}); }
Ty prompt(Ty payload) { return make(Prompt{std::move(payload)}); }

bool equal(const Ty &a, const Ty &b) {
  if (a->node.index() != b->node.index()) return false;
  const auto &bn = b->node;
  return std::visit(
      overloaded{
          [&](const TVar &v) { return v.name == std::get<TVar>(bn).name; },
          [&](const Int &) { return true; },
          [&](const Bool &) { return true; },
          [&](const List &l) { return equal(l.elem, std::get<List>(bn).elem); },
          [&](const Arrow &p) {
            const auto &r = std::get<Arrow>(bn);
            return equal(p.from, r.from) && equal(p.to, r.to);
          },
          [&](const Prompt &p) {
            return equal(p.payload, std::get<Prompt>(bn).payload);
          }},
      a->node);
}

namespace {

bool alpha_eq_ty(const Ty &a, const Ty &b,
                 std::map<std::string, std::string> &fwd,
                 std::map<std::string, std::string> &bwd) {
  if (a->node.index() != b->node.index()) return false;
  const auto &bn = b->node;
  return std::visit(
      overloaded{
          [&](const TVar &v) {
            const auto &w = std::get<TVar>(bn);
            auto f = fwd.find(v.name);
            auto g = bwd.find(w.name);
            if (f == fwd.end() && g == bwd.end()) {
              fwd[v.name] = w.name;
              bwd[w.name] = v.name;
              return true;
            }
            return f != fwd.end() && g != bwd.end() && f->second == w.name &&
                   g->second == v.name;
          },
          [&](const Int &) { return true; },
          [&](const Bool &) { return true; },
          [&](const List &l) {
            return alpha_eq_ty(l.elem, std::get<List>(bn).elem, fwd, bwd);
          },
          [&](const Arrow &p) {
            const auto &r = std::get<Arrow>(bn);
            return alpha_eq_ty(p.from, r.from, fwd, bwd) &&
                   alpha_eq_ty(p.to, r.to, fwd, bwd);
          },
          [&](const Prompt &p) {
            return alpha_eq_ty(p.payload, std::get<Prompt>(bn).payload, fwd,
                               bwd);
          }},
      a->node);
}

} // namespace

bool alpha_equal(const Ty &a, const Ty &b) {
  std::map<std::string, std::string> fwd, bwd;
  return alpha_eq_ty(a, b, fwd, bwd);
}

void free_vars(const Ty &t, std::set<std::string> &out) {
  std::visit(overloaded{[&](const TVar &v) { out.insert(v.name); },
                        [&](const Int &) {}, [&](const Bool &) {},
                        [&](const List &l) { free_vars(l.elem, out); },
                        [&](const Arrow &p) {
                          free_vars(p.from, out);
                          free_vars(p.to, out);
                        },
                        [&](const Prompt &p) { free_vars(p.payload, out); }},
             t->node);
}

namespace {

std::string show_prec(const Ty &t, bool atom) {
  std::string s;
  bool needs_parens = false;
  std::visit(overloaded{[&](const TVar &v) { s = v.name; },
                        [&](const Int &) { s = "int"; },
                        [&](const Bool &) { s = "bool"; },
                        [&](const List &l) {
                          s = show_prec(l.elem, true) + " list";
                        },
                        [&](const Prompt &p) {
                          s = show_prec(p.payload, true) + " prompt";
                        },
                        [&](const Arrow &p) {
                          s = show_prec(p.from, true) + " -> " +
                              show_prec(p.to, false);
                          needs_parens = true;
                        }},
             t->node);
  if (needs_parens && atom) s = "(" + s + ")";
  return s;
}

} // namespace

std::string show(const Ty &t) { return show_prec(t, false); }

Ty Unifier::fresh() { return tvar("%" + std::to_string(counter++)); }

Ty Unifier::resolve(const Ty &t) const {
  Ty cur = t;
  while (const auto *v = std::get_if<TVar>(&cur->node)) {
    auto it = subst.find(v->name);
    if (it == subst.end()) break;
    cur = it->second;
  }
  return cur;
}

Ty Unifier::zonk(const Ty &t) const {
  Ty r = resolve(t);
  return std::visit(
      overloaded{[&](const TVar &) { return r; }, [&](const Int &) { return r; },
                 [&](const Bool &) { return r; },
                 [&](const List &l) { return tlist(zonk(l.elem)); },
                 [&](const Arrow &p) { return arrow(zonk(p.from), zonk(p.to)); },
                 [&](const Prompt &p) { return prompt(zonk(p.payload)); }},
      r->node);
}

namespace {

bool occurs(const Unifier &u, const std::string &name, const Ty &t) {
  Ty r = u.resolve(t);
  return std::visit(
      overloaded{[&](const TVar &v) { return v.name == name; },
                 [&](const Int &) { return false; },
                 [&](const Bool &) { return false; },
                 [&](const List &l) { return occurs(u, name, l.elem); },
                 [&](const Arrow &p) {
                   return occurs(u, name, p.from) || occurs(u, name, p.to);
                 },
                 [&](const Prompt &p) { return occurs(u, name, p.payload); }},
      r->node);
}

} // namespace

void Unifier::unify(const Ty &a0, const Ty &b0) {
  Ty a = resolve(a0), b = resolve(b0);
  if (const auto *v = std::get_if<TVar>(&a->node)) {
    if (const auto *w = std::get_if<TVar>(&b->node); w && w->name == v->name)
      return;
    if (occurs(*this, v->name, b))
      throw TypeError("occurs check: " + v->name + " in " + show(zonk(b)));
    subst[v->name] = b;
    return;
  }
  if (std::holds_alternative<TVar>(b->node)) {
    unify(b, a);
    return;
  }
  if (a->node.index() != b->node.index())
    throw TypeError("cannot unify " + show(zonk(a)) + " with " + show(zonk(b)));
  std::visit(overloaded{[&](const Int &) {}, [&](const Bool &) {},
                        [&](const TVar &) {},
                        [&](const List &l) {
                          unify(l.elem, std::get<List>(b->node).elem);
                        },
                        [&](const Arrow &p) {
                          const auto &r = std::get<Arrow>(b->node);
                          unify(p.from, r.from);
                          unify(p.to, r.to);
                        },
                        [&](const Prompt &p) {
                          unify(p.payload, std::get<Prompt>(b->node).payload);
                        }},
             a->node);
}

} // namespace tty

} // namespace pps
