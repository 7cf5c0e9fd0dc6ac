#include "pps/translate.hpp"

#include "pps/errors.hpp"

#include <cassert>
#include <functional>
#include <map>

namespace pps {

const char *mode_name(Mode m) {
  switch (m) {
  case Mode::Naive: return "naive";
  case Mode::OnePass: return "onepass";
  case Mode::Opt: return "opt";
  }
  return "?";
}

Mode parse_mode(const std::string &s) {
  if (s == "naive") return Mode::Naive;
  if (s == "onepass") return Mode::OnePass;
  if (s == "opt") return Mode::Opt;
  throw std::runtime_error("unknown mode '" + s + "' (naive|onepass|opt)");
}

// ---------------------------------------------------------------------------
// type translation
// ---------------------------------------------------------------------------

tty::Ty translate_type(const sty::Ty &t) {
  using namespace sty;
  return std::visit(
      overloaded{
          [&](const TVar &v) { return tty::tvar(v.name); },
          [&](const Int &) { return tty::tint(); },
          [&](const Bool &) { return tty::tbool(); },
          [&](const List &l) { return tty::tlist(translate_type(l.elem)); },
          [&](const PureArrow &p) {
            return tty::arrow(translate_type(p.from), translate_type(p.to));
          },
          [&](const EffArrow &e) {
            return tty::arrow(translate_type(e.from),
                              translate_triple(e.to, e.ans0, e.ans1));
          }},
      t->node);
}

tty::Ty translate_triple(const sty::Ty &t, const sty::Ty &a,
                         const sty::Ty &b) {
  return tty::arrow(tty::prompt(translate_type(b)),
                    tty::arrow(tty::prompt(translate_type(a)),
                               translate_type(t)));
}

tty::Scheme translate_scheme(const sty::Scheme &s) {
  return tty::Scheme{s.bound, translate_type(s.body)};
}

TgtTypeEnv translate_env(const TypeEnv &env) {
  TgtTypeEnv out;
  for (const auto &e : env.entries)
    out.bind(e.name, translate_scheme(e.scheme));
  return out;
}

// ---------------------------------------------------------------------------
// shared translator plumbing
// ---------------------------------------------------------------------------

namespace {

using tgt::TermPtr;

struct NameGen {
  std::set<std::string> used;
  std::map<std::string, long long> counters;

  explicit NameGen(std::set<std::string> taken) : used(std::move(taken)) {}

  std::string fresh(const std::string &base) {
    for (;;) {
      std::string n = base + std::to_string(++counters[base]);
      if (used.insert(n).second) return n;
    }
  }
};

bool is_qpure(const DerivPtr &d) { return d->purity != Purity::Effectful; }

TermPtr app2(TermPtr f, TermPtr a, TermPtr b) {
  return tgt::app(tgt::app(std::move(f), std::move(a)), std::move(b));
}

// ---------------------------------------------------------------------------
// naive translation
// ---------------------------------------------------------------------------

struct NaiveTr {
  NameGen ng;
  TranslationInfo info;

  explicit NaiveTr(std::set<std::string> taken) : ng(std::move(taken)) {}

  TermPtr pure(const DerivPtr &d) {
    using namespace src;
    switch (d->rule) {
    case Rule::Var:
      return tgt::var(std::get<Var>(d->subject->node).name);
    case Rule::Const:
      return tgt::constant(std::get<Const>(d->subject->node).value);
    case Rule::NilIntro:
      return tgt::nil();
    case Rule::Fun:
      return tgt::lam(std::get<Lam>(d->subject->node).param,
                      eff(d->children[0]));
    case Rule::Fix: {
      const auto &f = std::get<Fix>(d->subject->node);
      return tgt::fix(f.self, f.param, eff(d->children[0]));
    }
    case Rule::Reset: {
      std::string p = ng.fresh("p"), q = ng.fresh("q"), y = ng.fresh("y");
      info.prompt_binders.insert(p);
      info.prompt_binders.insert(q);
      TermPtr body = app2(eff(d->children[0]), tgt::var(p), tgt::var(q));
      TermPtr catcher =
          tgt::lam(y, tgt::shiftp(tgt::var(q), "_", tgt::var(y)));
      return tgt::newprompt(
          p, tgt::newprompt(
                 q, tgt::resetp(tgt::var(p), tgt::app(catcher, body))));
    }
    case Rule::Throw:
      return tgt::app(tgt::var(std::get<Throw>(d->subject->node).k),
                      pure(d->children[0]));
    case Rule::ConsPure:
      return tgt::cons(pure(d->children[0]), pure(d->children[1]));
    case Rule::HeadPure:
      return tgt::head(pure(d->children[0]));
    case Rule::TailPure:
      return tgt::tail(pure(d->children[0]));
    case Rule::IsNilPure:
      return tgt::isnil(pure(d->children[0]));
    default:
      throw UnsupportedNode(rule_name(d->rule) + std::string(" in pure position"));
    }
  }

  // every effectful node becomes fun p -> fun q -> <body>
  TermPtr eff(const DerivPtr &d) {
    std::string p = ng.fresh("p"), q = ng.fresh("q");
    info.admin_prompt_params.insert(p);
    info.admin_prompt_params.insert(q);
    return tgt::lam(p, tgt::lam(q, eff_body(d, tgt::var(p), tgt::var(q))));
  }

  TermPtr eff_body(const DerivPtr &d, TermPtr P, TermPtr Q) {
    using namespace src;
    switch (d->rule) {
    case Rule::Exp: {
      std::string k = ng.fresh("k");
      return tgt::shiftp(
          P, k, tgt::resetp(Q, tgt::app(tgt::var(k), pure(d->children[0]))));
    }
    case Rule::App: {
      std::string r = ng.fresh("r"), s = ng.fresh("s");
      info.prompt_binders.insert(r);
      info.prompt_binders.insert(s);
      TermPtr fn = app2(eff(d->children[0]), tgt::var(r), tgt::var(s));
      TermPtr arg = app2(eff(d->children[1]), P, tgt::var(r));
      TermPtr call = app2(tgt::app(fn, arg), tgt::var(s), Q);
      return tgt::newprompt(r, tgt::newprompt(s, call));
    }
    case Rule::Let: {
      const auto &l = std::get<Let>(d->subject->node);
      return tgt::let_(l.name, pure(d->children[0]),
                       app2(eff(d->children[1]), P, Q));
    }
    case Rule::Shift: {
      const auto &sh = std::get<Shift>(d->subject->node);
      std::string kp = ng.fresh("k"), y = ng.fresh("y");
      TermPtr detox = tgt::lam(
          y, tgt::resetp(Q, tgt::app(tgt::lam("_", tgt::omega()),
                                     tgt::app(tgt::var(kp), tgt::var(y)))));
      return tgt::shiftp(
          P, kp, tgt::app(tgt::lam(sh.k, pure(d->children[0])), detox));
    }
    case Rule::Add: {
      std::string r = ng.fresh("r");
      info.prompt_binders.insert(r);
      return tgt::newprompt(
          r, tgt::add(app2(eff(d->children[0]), tgt::var(r), Q),
                      app2(eff(d->children[1]), P, tgt::var(r))));
    }
    case Rule::If: {
      std::string r = ng.fresh("r");
      info.prompt_binders.insert(r);
      return tgt::newprompt(
          r, tgt::if_(app2(eff(d->children[0]), P, tgt::var(r)),
                      app2(eff(d->children[1]), tgt::var(r), Q),
                      app2(eff(d->children[2]), tgt::var(r), Q)));
    }
    case Rule::ConsEff: {
      std::string r = ng.fresh("r");
      info.prompt_binders.insert(r);
      return tgt::newprompt(
          r, tgt::cons(app2(eff(d->children[0]), tgt::var(r), Q),
                       app2(eff(d->children[1]), P, tgt::var(r))));
    }
    case Rule::HeadEff:
      return tgt::head(app2(eff(d->children[0]), P, Q));
    case Rule::TailEff:
      return tgt::tail(app2(eff(d->children[0]), P, Q));
    case Rule::IsNilEff:
      return tgt::isnil(app2(eff(d->children[0]), P, Q));
    default:
      throw UnsupportedNode(rule_name(d->rule) +
                            std::string(" in effectful position"));
    }
  }
};

// ---------------------------------------------------------------------------
// one-pass translation: static prompt abstractions are translator-level
// functions, so administrative redexes never reach the residual term
// ---------------------------------------------------------------------------

struct OnePassTr {
  NameGen ng;
  TranslationInfo info;

  explicit OnePassTr(std::set<std::string> taken) : ng(std::move(taken)) {}

  TermPtr pure(const DerivPtr &d) {
    using namespace src;
    switch (d->rule) {
    case Rule::Var:
      return tgt::var(std::get<Var>(d->subject->node).name);
    case Rule::Const:
      return tgt::constant(std::get<Const>(d->subject->node).value);
    case Rule::NilIntro:
      return tgt::nil();
    case Rule::Fun: {
      const auto &l = std::get<Lam>(d->subject->node);
      std::string p = ng.fresh("p"), q = ng.fresh("q");
      info.residual_prompt_params.insert(p);
      info.residual_prompt_params.insert(q);
      return tgt::lam(
          l.param,
          tgt::lam(p, tgt::lam(q, eff(d->children[0], tgt::var(p),
                                      tgt::var(q)))));
    }
    case Rule::Fix: {
      const auto &f = std::get<Fix>(d->subject->node);
      std::string p = ng.fresh("p"), q = ng.fresh("q");
      info.residual_prompt_params.insert(p);
      info.residual_prompt_params.insert(q);
      return tgt::fix(
          f.self, f.param,
          tgt::lam(p, tgt::lam(q, eff(d->children[0], tgt::var(p),
                                      tgt::var(q)))));
    }
    case Rule::Reset: {
      std::string p = ng.fresh("p"), q = ng.fresh("q"), y = ng.fresh("y");
      info.prompt_binders.insert(p);
      info.prompt_binders.insert(q);
      TermPtr catcher =
          tgt::lam(y, tgt::shiftp(tgt::var(q), "_", tgt::var(y)));
      TermPtr body = eff(d->children[0], tgt::var(p), tgt::var(q));
      return tgt::newprompt(
          p, tgt::newprompt(
                 q, tgt::resetp(tgt::var(p), tgt::app(catcher, body))));
    }
    case Rule::Throw:
      return tgt::app(tgt::var(std::get<Throw>(d->subject->node).k),
                      pure(d->children[0]));
    case Rule::ConsPure:
      return tgt::cons(pure(d->children[0]), pure(d->children[1]));
    case Rule::HeadPure:
      return tgt::head(pure(d->children[0]));
    case Rule::TailPure:
      return tgt::tail(pure(d->children[0]));
    case Rule::IsNilPure:
      return tgt::isnil(pure(d->children[0]));
    default:
      throw UnsupportedNode(rule_name(d->rule) +
                            std::string(" in pure position"));
    }
  }

  // the static layer: an effectful node applied to two prompt expressions
  TermPtr eff(const DerivPtr &d, TermPtr P, TermPtr Q) {
    using namespace src;
    switch (d->rule) {
    case Rule::Exp: {
      std::string k = ng.fresh("k");
      return tgt::shiftp(
          P, k, tgt::resetp(Q, tgt::app(tgt::var(k), pure(d->children[0]))));
    }
    case Rule::App: {
      std::string r = ng.fresh("r"), s = ng.fresh("s");
      info.prompt_binders.insert(r);
      info.prompt_binders.insert(s);
      TermPtr fn = eff(d->children[0], tgt::var(r), tgt::var(s));
      TermPtr arg = eff(d->children[1], P, tgt::var(r));
      TermPtr call = app2(tgt::app(fn, arg), tgt::var(s), Q);
      return tgt::newprompt(r, tgt::newprompt(s, call));
    }
    case Rule::Let: {
      const auto &l = std::get<Let>(d->subject->node);
      return tgt::let_(l.name, pure(d->children[0]),
                       eff(d->children[1], P, Q));
    }
    case Rule::Shift: {
      const auto &sh = std::get<Shift>(d->subject->node);
      std::string kp = ng.fresh("k"), y = ng.fresh("y");
      TermPtr detox = tgt::lam(
          y, tgt::resetp(Q, tgt::app(tgt::lam("_", tgt::omega()),
                                     tgt::app(tgt::var(kp), tgt::var(y)))));
      return tgt::shiftp(
          P, kp, tgt::app(tgt::lam(sh.k, pure(d->children[0])), detox));
    }
    case Rule::Add: {
      std::string r = ng.fresh("r");
      info.prompt_binders.insert(r);
      return tgt::newprompt(
          r, tgt::add(eff(d->children[0], tgt::var(r), Q),
                      eff(d->children[1], P, tgt::var(r))));
    }
    case Rule::If: {
      std::string r = ng.fresh("r");
      info.prompt_binders.insert(r);
      return tgt::newprompt(
          r, tgt::if_(eff(d->children[0], P, tgt::var(r)),
                      eff(d->children[1], tgt::var(r), Q),
                      eff(d->children[2], tgt::var(r), Q)));
    }
    case Rule::ConsEff: {
      std::string r = ng.fresh("r");
      info.prompt_binders.insert(r);
      return tgt::newprompt(
          r, tgt::cons(eff(d->children[0], tgt::var(r), Q),
                       eff(d->children[1], P, tgt::var(r))));
    }
    case Rule::HeadEff:
      return tgt::head(eff(d->children[0], P, Q));
    case Rule::TailEff:
      return tgt::tail(eff(d->children[0], P, Q));
    case Rule::IsNilEff:
      return tgt::isnil(eff(d->children[0], P, Q));
    default:
      throw UnsupportedNode(rule_name(d->rule) +
                            std::string(" in effectful position"));
    }
  }
};

// ---------------------------------------------------------------------------
// optimized translation: dispatches on q-purity, generating prompts only
// when a subterm can actually modify the answer type
// ---------------------------------------------------------------------------

struct OptTr {
  NameGen ng;
  TranslationInfo info;

  explicit OptTr(std::set<std::string> taken) : ng(std::move(taken)) {}

  // q-pure terms translate to plain values/computations with no prompts
  TermPtr pure(const DerivPtr &d) {
    using namespace src;
    switch (d->rule) {
    case Rule::Exp:
      return pure(d->children[0]); // dispatch looks through coercions
    case Rule::Var:
      return tgt::var(std::get<Var>(d->subject->node).name);
    case Rule::Const:
      return tgt::constant(std::get<Const>(d->subject->node).value);
    case Rule::NilIntro:
      return tgt::nil();
    case Rule::Fun: {
      const auto &l = std::get<Lam>(d->subject->node);
      return tgt::lam(l.param, fn_body(d->children[0]));
    }
    case Rule::Fix: {
      const auto &f = std::get<Fix>(d->subject->node);
      return tgt::fix(f.self, f.param, fn_body(d->children[0]));
    }
    case Rule::Reset: {
      const DerivPtr &body = d->children[0];
      if (is_qpure(body)) return pure(body); // the reset disappears
      std::string p = ng.fresh("p"), q = ng.fresh("q"), y = ng.fresh("y");
      info.prompt_binders.insert(p);
      info.prompt_binders.insert(q);
      TermPtr catcher =
          tgt::lam(y, tgt::shiftp(tgt::var(q), "_", tgt::var(y)));
      TermPtr inner = eff(body, tgt::var(p), tgt::var(q));
      return tgt::newprompt(
          p, tgt::newprompt(
                 q, tgt::resetp(tgt::var(p), tgt::app(catcher, inner))));
    }
    case Rule::Throw:
      return tgt::app(tgt::var(std::get<Throw>(d->subject->node).k),
                      pure(d->children[0]));
    case Rule::Let: {
      const auto &l = std::get<Let>(d->subject->node);
      return tgt::let_(l.name, pure(d->children[0]), pure(d->children[1]));
    }
    case Rule::ConsPure:
      return tgt::cons(pure(d->children[0]), pure(d->children[1]));
    case Rule::HeadPure:
      return tgt::head(pure(d->children[0]));
    case Rule::TailPure:
      return tgt::tail(pure(d->children[0]));
    case Rule::IsNilPure:
      return tgt::isnil(pure(d->children[0]));
    default:
      throw UnsupportedNode(rule_name(d->rule) +
                            std::string(" in q-pure position"));
    }
  }

  // function bodies keep their two dynamic prompt parameters; a q-pure body
  // embeds the shift/reset pair directly
  TermPtr fn_body(const DerivPtr &body) {
    std::string p = ng.fresh("p"), q = ng.fresh("q");
    info.residual_prompt_params.insert(p);
    info.residual_prompt_params.insert(q);
    TermPtr inner = use(body, tgt::var(p), tgt::var(q));
    return tgt::lam(p, tgt::lam(q, inner));
  }

  // a subterm in an effectful position with prompts (P, Q): q-pure subterms
  // go through the exp embedding, everything else recurses
  TermPtr use(const DerivPtr &d, TermPtr P, TermPtr Q) {
    if (is_qpure(d)) {
      std::string k = ng.fresh("k");
      return tgt::shiftp(P, k,
                         tgt::resetp(Q, tgt::app(tgt::var(k), pure(d))));
    }
    return eff(d, P, Q);
  }

  TermPtr eff(const DerivPtr &d, TermPtr P, TermPtr Q) {
    using namespace src;
    assert(!is_qpure(d));
    switch (d->rule) {
    case Rule::App: {
      const DerivPtr &d1 = d->children[0];
      const DerivPtr &d2 = d->children[1];
      bool q1 = is_qpure(d1), q2 = is_qpure(d2);
      if (q1 && q2)
        return app2(tgt::app(pure(d1), pure(d2)), P, Q);
      if (q1) {
        std::string r = ng.fresh("r");
        info.prompt_binders.insert(r);
        return tgt::newprompt(
            r, app2(tgt::app(pure(d1), eff(d2, P, tgt::var(r))), tgt::var(r),
                    Q));
      }
      if (q2) {
        std::string r = ng.fresh("r");
        info.prompt_binders.insert(r);
        return tgt::newprompt(
            r, app2(tgt::app(eff(d1, P, tgt::var(r)), pure(d2)), tgt::var(r),
                    Q));
      }
      std::string r = ng.fresh("r"), s = ng.fresh("s");
      info.prompt_binders.insert(r);
      info.prompt_binders.insert(s);
      TermPtr call = app2(tgt::app(eff(d1, tgt::var(r), tgt::var(s)),
                                   eff(d2, P, tgt::var(r))),
                          tgt::var(s), Q);
      return tgt::newprompt(r, tgt::newprompt(s, call));
    }
    case Rule::Add:
    case Rule::ConsEff: {
      const DerivPtr &d1 = d->children[0];
      const DerivPtr &d2 = d->children[1];
      bool q1 = is_qpure(d1), q2 = is_qpure(d2);
      auto build = [&](TermPtr a, TermPtr b) {
        return d->rule == Rule::Add ? tgt::add(std::move(a), std::move(b))
                                    : tgt::cons(std::move(a), std::move(b));
      };
      if (q1 && q2) {
        // still must pass through the protocol: embed the pure computation
        std::string k = ng.fresh("k");
        return tgt::shiftp(
            P, k,
            tgt::resetp(Q, tgt::app(tgt::var(k), build(pure(d1), pure(d2)))));
      }
      if (q1) return build(pure(d1), eff(d2, P, Q));
      if (q2) return build(eff(d1, P, Q), pure(d2));
      std::string r = ng.fresh("r");
      info.prompt_binders.insert(r);
      return tgt::newprompt(r, build(eff(d1, tgt::var(r), Q),
                                     eff(d2, P, tgt::var(r))));
    }
    case Rule::If: {
      const DerivPtr &dc = d->children[0];
      const DerivPtr &dt = d->children[1];
      const DerivPtr &de = d->children[2];
      if (is_qpure(dc))
        return tgt::if_(pure(dc), use(dt, P, Q), use(de, P, Q));
      std::string r = ng.fresh("r");
      info.prompt_binders.insert(r);
      return tgt::newprompt(
          r, tgt::if_(eff(dc, P, tgt::var(r)), use(dt, tgt::var(r), Q),
                      use(de, tgt::var(r), Q)));
    }
    case Rule::HeadEff:
    case Rule::TailEff:
    case Rule::IsNilEff: {
      const DerivPtr &a = d->children[0];
      auto build = [&](TermPtr x) {
        switch (d->rule) {
        case Rule::HeadEff: return tgt::head(std::move(x));
        case Rule::TailEff: return tgt::tail(std::move(x));
        default: return tgt::isnil(std::move(x));
        }
      };
      if (is_qpure(a)) {
        std::string k = ng.fresh("k");
        return tgt::shiftp(
            P, k, tgt::resetp(Q, tgt::app(tgt::var(k), build(pure(a)))));
      }
      return build(eff(a, P, Q));
    }
    case Rule::Let: {
      const auto &l = std::get<Let>(d->subject->node);
      return tgt::let_(l.name, pure(d->children[0]),
                       eff(d->children[1], P, Q));
    }
    case Rule::Shift: {
      const auto &sh = std::get<Shift>(d->subject->node);
      std::string kp = ng.fresh("k"), y = ng.fresh("y");
      TermPtr detox = tgt::lam(
          y, tgt::resetp(Q, tgt::app(tgt::lam("_", tgt::omega()),
                                     tgt::app(tgt::var(kp), tgt::var(y)))));
      return tgt::shiftp(
          P, kp, tgt::app(tgt::lam(sh.k, pure(d->children[0])), detox));
    }
    default:
      throw UnsupportedNode(rule_name(d->rule) +
                            std::string(" in effectful position"));
    }
  }
};

std::set<std::string> taken_names(const DerivPtr &d) {
  return collect_names(d->subject);
}

} // namespace

tgt::TermPtr translate_naive(const DerivPtr &d, TranslationInfo *info) {
  NaiveTr tr(taken_names(d));
  tgt::TermPtr out =
      d->judgment.pure ? tr.pure(d) : tr.eff(d);
  if (info) *info = std::move(tr.info);
  return out;
}

tgt::TermPtr translate_onepass(const DerivPtr &d, TranslationInfo *info) {
  OnePassTr tr(taken_names(d));
  tgt::TermPtr out;
  if (d->judgment.pure) {
    out = tr.pure(d);
  } else {
    std::string p = tr.ng.fresh("p"), q = tr.ng.fresh("q");
    tr.info.residual_prompt_params.insert(p);
    tr.info.residual_prompt_params.insert(q);
    out = tgt::lam(p,
                   tgt::lam(q, tr.eff(d, tgt::var(p), tgt::var(q))));
  }
  if (info) *info = std::move(tr.info);
  return out;
}

tgt::TermPtr translate_opt(const DerivPtr &d, TranslationInfo *info) {
  OptTr tr(taken_names(d));
  tgt::TermPtr out;
  if (d->judgment.pure) {
    out = tr.pure(d);
  } else {
    std::string p = tr.ng.fresh("p"), q = tr.ng.fresh("q");
    tr.info.residual_prompt_params.insert(p);
    tr.info.residual_prompt_params.insert(q);
    out = tgt::lam(p,
                   tgt::lam(q, tr.use(d, tgt::var(p), tgt::var(q))));
  }
  if (info) *info = std::move(tr.info);
  return out;
}

tgt::TermPtr translate(const DerivPtr &d, Mode mode, TranslationInfo *info) {
  switch (mode) {
  case Mode::Naive: return translate_naive(d, info);
  case Mode::OnePass: return translate_onepass(d, info);
  case Mode::Opt: return translate_opt(d, info);
  }
  throw std::runtime_error("bad mode");
}

TypedTranslation typed_translate(const src::TermPtr &program, Mode mode) {
  DerivPtr d = infer({}, program);
  std::string path;
  if (!validate(d, {}, &path))
    throw TypePreservationViolation("inferred derivation fails validation at " +
                                    path);
  tgt::TermPtr out = translate(d, mode);
  tty::Ty expected =
      d->judgment.pure
          ? translate_type(d->judgment.type)
          : translate_triple(d->judgment.type, d->judgment.ans_in,
                             d->judgment.ans_out);
  tty::Ty checked = check_target({}, out);
  if (!tty::alpha_equal(checked, expected))
    throw TypePreservationViolation(
        std::string(mode_name(mode)) + ": checked type " + tty::show(checked) +
        " does not match translated judgment " + tty::show(expected));
  return TypedTranslation{d, out, checked, expected};
}

TypedTranslation typed_translate(const SourceProgram &program, Mode mode) {
  TypedTranslation tt = typed_translate(program.term, mode);
  if (program.expected_type &&
      !sty::alpha_equal(tt.derivation->judgment.type, *program.expected_type))
    throw TypeError("program annotation " + sty::show(*program.expected_type) +
                    " does not match the inferred type " +
                    sty::show(tt.derivation->judgment.type));
  return tt;
}

} // namespace pps
