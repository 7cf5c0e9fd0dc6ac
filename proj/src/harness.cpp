#include "pps/harness.hpp"

#include "pps/errors.hpp"

#include <map>

namespace pps {

// ---------------------------------------------------------------------------
// corpus
// ---------------------------------------------------------------------------

namespace {

Obs oi(long long n) { return Obs{n}; }
Obs ob(bool b) { return Obs{b}; }
Obs ints(std::vector<long long> xs) {
  std::vector<Obs> os;
  os.reserve(xs.size());
  for (long long x : xs) os.push_back(oi(x));
  return Obs{std::move(os)};
}
Obs list(std::vector<Obs> os) { return Obs{std::move(os)}; }

const char *kAppendProgram =
    "let append = fix f lst -> "
    "if isnil lst then (shift k -> fun ys -> throw k ys) "
    "else head lst :: f (tail lst) "
    "in reset (append [1;2;3]) [4;5;6]";

const char *kAppendReset =
    "let append = fix f lst -> "
    "if isnil lst then (shift k -> fun ys -> throw k ys) "
    "else head lst :: f (tail lst) "
    "in reset (append [1;2;3])";

std::string prefix_program(const std::string &input) {
  return "let prefix = fix aux x -> "
         "if isnil x then (shift k -> []) "
         "else head x :: (shift k -> throw k [] :: "
         "reset ((fun y -> throw k y) (aux (tail x)))) "
         "in reset (prefix " +
         input + ")";
}

} // namespace

const std::vector<CorpusEntry> &corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> c;
    auto put = [&](std::string name, std::string source,
                   std::optional<Obs> expected = std::nullopt,
                   std::optional<long long> pn = std::nullopt,
                   std::optional<long long> po = std::nullopt) {
      c.push_back({std::move(name), std::move(source), std::move(expected),
                   pn, po});
    };

    put("const_five", "5", oi(5));
    put("const_true", "true", ob(true));
    put("const_list", "[1;2;3]", ints({1, 2, 3}));
    put("add_simple", "1 + 2", oi(3));
    put("add_nested", "1 + (2 + 3)", oi(6));
    put("id_app", "(fun x -> x) 41", oi(41));
    put("app_chain", "(fun f -> f 1) (fun x -> x + 1)", oi(2));
    put("let_value", "let x = 5 in x + x", oi(10));
    put("let_poly", "let id = fun x -> x in (id (fun y -> y)) (id 7)", oi(7));
    put("reset_value", "reset 5", oi(5), 2, 0);
    put("reset_add", "reset (1 + 2)", oi(3), 3, 2);
    put("reset_discard", "reset ((fun y -> shift k -> y) 42)", oi(42));
    put("paper3", "reset (5 + shift k -> fun x -> throw k x)", std::nullopt,
        3, 2);
    put("paper3_probe", "reset (5 + shift k -> fun x -> throw k x) 9",
        oi(14));
    put("e1_probe", "reset (1 + shift k -> fun x -> throw k x) 9", oi(10));
    put("append", kAppendProgram, ints({1, 2, 3, 4, 5, 6}));
    put("append_reset", kAppendReset, std::nullopt, std::nullopt, 2);
    put("prefix", prefix_program("[1;2;3]"),
        list({ints({1}), ints({1, 2}), ints({1, 2, 3})}));
    put("prefix_single", prefix_program("[5]"), list({ints({5})}));
    put("prefix_empty", prefix_program("[]"), list({}));
    put("qpure_lets", "reset (let x = 3 in let y = 5 in 7)", oi(7), 2, 0);
    put("qpure_nested_use", "let x = 5 in let y = x in y + y", oi(10));
    put("shift_id_probe", "reset (shift k -> fun x -> throw k x) 5", oi(5));
    put("shift_discard", "reset (1 + shift k -> 42)", oi(42));
    put("multishot",
        "reset (10 + shift k -> fun x -> throw k (throw k x)) 5", oi(25));
    put("if_true", "if true then 1 else 2", oi(1));
    put("if_list", "if isnil (tail [1]) then 10 else 20", oi(10));
    put("if_shift", "reset (if (shift k -> true) then 1 else 2)", ob(true));
    put("if_shift_use", "reset (if (shift k -> throw k true) then 1 else 2)",
        oi(1));
    put("list_ops", "head [1;2;3] + head (tail [2;3])", oi(4));
    put("cons_build", "1 :: 2 :: []", ints({1, 2}));
    put("cons_shift", "reset (1 :: shift k -> throw k [])", ints({1}));
    put("fix_sum",
        "let sum = fix f x -> if isnil x then 0 else head x + f (tail x) "
        "in sum [1;2;3;4]",
        oi(10));
    put("fix_len",
        "let len = fix f x -> if isnil x then 0 else 1 + f (tail x) "
        "in len [5;5;5]",
        oi(3));
    put("app_capture",
        "reset ((fun x -> x + 1) (shift k -> fun y -> throw k y) + 10) 5",
        oi(16));
    put("let_capture",
        "reset (let x = 5 in x + shift k -> fun y -> throw k y) 100",
        oi(105));
    put("nested_reset", "reset (1 + reset (2 + shift k -> throw k 10))",
        oi(13));
    put("reset_in_reset_probe",
        "reset (reset (3 + shift k -> fun x -> throw k x) 7 + 100)", oi(110));
    put("lam_qpure_body", "(fun x -> let y = x in y) 8", oi(8));
    put("isnil_true", "isnil []", ob(true));
    put("isnil_false", "isnil [1]", ob(false));

    // the e_n family with pinned prompt counts
    for (int n = 1; n <= 3; ++n) {
      CorpusEntry e;
      e.name = "e" + std::to_string(n);
      e.source = pretty(build_en(n));
      e.prompts_naive = n + 2;
      e.prompts_opt = 2;
      c.push_back(std::move(e));
    }
    return c;
  }();
  return entries;
}

src::TermPtr build_en(int n) {
  using namespace src;
  TermPtr body = shift("k", lam("x", throw_("k", var("x"))));
  for (int i = n; i >= 1; --i) body = add(integer(i), body);
  return reset(body);
}

src::TermPtr build_en_probe(int n, long long probe) {
  return src::app(build_en(n), src::integer(probe));
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

namespace {

using src::TermPtr;

struct Enumerator {
  // memoized by (depth, number of bound int variables)
  std::map<std::pair<int, int>, std::vector<TermPtr>> memo;

  static std::string var_name(int i) { return "x" + std::to_string(i); }

  std::vector<TermPtr> atoms(int nvars) {
    std::vector<TermPtr> out = {src::integer(1), src::integer(2)};
    if (nvars > 0) out.push_back(src::var(var_name(nvars))); // innermost only
    return out;
  }

  std::vector<TermPtr> shift_forms() {
    using namespace src;
    std::string k = "k";
    return {
        shift(k, integer(2)),
        shift(k, throw_(k, integer(2))),
        shift(k, lam("w", throw_(k, var("w")))),
    };
  }

  // terms that may occur under a reset
  const std::vector<TermPtr> &inside(int depth, int nvars) {
    auto key = std::make_pair(depth, nvars);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    using namespace src;
    std::vector<TermPtr> out = atoms(nvars);
    if (depth >= 1) {
      for (auto &s : shift_forms()) out.push_back(s);
      for (const auto &t : inside(depth - 1, nvars)) {
        out.push_back(add(integer(1), t));
        out.push_back(add(t, integer(2)));
        out.push_back(reset(t));
      }
      std::string x = var_name(nvars + 1);
      for (const auto &t : inside(depth - 1, nvars + 1))
        out.push_back(let_(x, integer(4), t));
      if (depth >= 2)
        for (const auto &t : inside(depth - 2, nvars + 1))
          out.push_back(app(lam(x, t), integer(3)));
    }
    return memo.emplace(key, std::move(out)).first->second;
  }
};

bool is_base_type(const sty::Ty &t) {
  using namespace sty;
  return std::visit(
      overloaded{[](const Int &) { return true; },
                 [](const Bool &) { return true; },
                 [](const List &l) { return is_base_type(l.elem); },
                 [](const auto &) { return false; }},
      t->node);
}

} // namespace

std::vector<src::TermPtr> enumerate_programs(int max_depth) {
  using namespace src;
  if (max_depth > 5)
    throw std::invalid_argument("enumeration depth is capped at 5");
  Enumerator en;
  std::vector<TermPtr> candidates;

  // shift-free warm-ups
  candidates.push_back(integer(1));
  candidates.push_back(add(integer(1), integer(2)));
  candidates.push_back(app(lam("x0", add(var("x0"), integer(1))), integer(5)));
  candidates.push_back(let_("x0", integer(2), add(var("x0"), var("x0"))));

  if (max_depth >= 1)
    for (const auto &t : en.inside(max_depth - 1, 0))
      candidates.push_back(reset(t));
  if (max_depth >= 2)
    for (const auto &t : en.inside(max_depth - 2, 0))
      candidates.push_back(app(reset(t), integer(9)));

  std::vector<TermPtr> out;
  std::set<std::string> seen;
  for (const auto &t : candidates) {
    DerivPtr d;
    try {
      d = infer({}, t);
    } catch (const std::exception &) {
      continue;
    }
    if (!is_base_type(d->judgment.type)) continue;
    SrcEval ev = eval_source(t, 100'000);
    if (ev.status != SrcEval::Status::Value) continue;
    if (!observe(ev.value)) continue;
    std::string key = pretty(t);
    if (seen.insert(key).second) out.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// differential checking
// ---------------------------------------------------------------------------

std::string to_string(VerdictStatus s) {
  switch (s) {
  case VerdictStatus::Agree: return "agree";
  case VerdictStatus::Disagree: return "disagree";
  case VerdictStatus::SourceStuck: return "source-stuck";
  case VerdictStatus::TargetStuck: return "target-stuck";
  case VerdictStatus::Fuel: return "fuel";
  }
  return "?";
}

std::string Verdict::records() const {
  std::string s = "program=" + program + " mode=" + mode_name(mode) +
                  " status=" + to_string(status);
  s += " source=" + (source_obs ? source_obs->str(true) : "-");
  s += " target=" + (target_obs ? target_obs->str(true) : "-");
  s += " steps=" + std::to_string(stats.steps);
  s += " prompts=" + std::to_string(stats.prompts_generated);
  if (!detail.empty()) s += " detail=\"" + detail + "\"";
  return s;
}

TargetRun run_translated(const src::TermPtr &p, Mode mode, long long fuel) {
  DerivPtr d = infer({}, p);
  src::TermPtr to_run = d->judgment.pure ? p : src::reset(p);
  TypedTranslation tt = typed_translate(to_run, mode);
  TargetRun out;
  out.term = tt.term;
  out.derivation = tt.derivation;
  out.eval = eval_target(tt.term, fuel);
  return out;
}

Verdict differential_check(const std::string &name, const src::TermPtr &p,
                           Mode mode, long long fuel) {
  Verdict v;
  v.program = name;
  v.mode = mode;

  SrcEval se = eval_source(p, fuel);
  if (se.status == SrcEval::Status::Stuck) {
    v.status = VerdictStatus::SourceStuck;
    v.detail = to_string(se.reason);
    return v;
  }
  if (se.status == SrcEval::Status::FuelExhausted) {
    v.status = VerdictStatus::Fuel;
    v.detail = "source fuel exhausted";
    return v;
  }
  v.source_obs = observe(se.value);

  TargetRun tr = run_translated(p, mode, fuel);
  v.stats = tr.eval.stats;
  if (tr.eval.status == TgtEval::Status::Stuck) {
    v.status = VerdictStatus::TargetStuck;
    v.detail = to_string(tr.eval.reason);
    return v;
  }
  if (tr.eval.status == TgtEval::Status::FuelExhausted) {
    v.status = VerdictStatus::Fuel;
    v.detail = "target fuel exhausted";
    return v;
  }
  v.target_obs = observe(tr.eval.value);

  v.status = (v.source_obs && v.target_obs && *v.source_obs == *v.target_obs)
                 ? VerdictStatus::Agree
                 : VerdictStatus::Disagree;
  return v;
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

std::string PromptRow::records() const {
  return "family=en n=" + std::to_string(n) + " mode=" + mode_name(mode) +
         " prompts=" + std::to_string(prompts) +
         " size=" + std::to_string(size);
}

std::vector<PromptRow> prompt_report(int max_n,
                                     const std::vector<Mode> &modes) {
  std::vector<PromptRow> rows;
  for (int n = 1; n <= max_n; ++n) {
    src::TermPtr en = build_en(n);
    for (Mode m : modes) {
      TypedTranslation tt = typed_translate(en, m);
      TgtEval ev = eval_target(tt.term, 1'000'000);
      if (ev.status != TgtEval::Status::Value)
        throw std::runtime_error("e_n evaluation failed for n=" +
                                 std::to_string(n));
      rows.push_back(PromptRow{n, m, ev.stats.prompts_generated,
                               static_cast<long long>(term_size(tt.term))});
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// structural helpers
// ---------------------------------------------------------------------------

long long count_newprompts(const tgt::TermPtr &t) {
  using namespace tgt;
  long long self = std::holds_alternative<NewPrompt>(t->node) ? 1 : 0;
  return self +
         std::visit(
             overloaded{
                 [](const Var &) -> long long { return 0; },
                 [](const Const &) -> long long { return 0; },
                 [](const Nil &) -> long long { return 0; },
                 [](const Omega &) -> long long { return 0; },
                 [](const PromptConst &) -> long long { return 0; },
                 [](const Lam &l) { return count_newprompts(l.body); },
                 [](const Fix &f) { return count_newprompts(f.body); },
                 [](const NewPrompt &n) { return count_newprompts(n.body); },
                 [](const ShiftP &s) { return count_newprompts(s.body); },
                 [](const ResetP &r) { return count_newprompts(r.body); },
                 [](const Let &l) {
                   return count_newprompts(l.value) + count_newprompts(l.body);
                 },
                 [](const App &a) {
                   return count_newprompts(a.fn) + count_newprompts(a.arg);
                 },
                 [](const Add &a) {
                   return count_newprompts(a.lhs) + count_newprompts(a.rhs);
                 },
                 [](const Cons &c) {
                   return count_newprompts(c.head) + count_newprompts(c.tail);
                 },
                 [](const Head &h) { return count_newprompts(h.arg); },
                 [](const Tail &h) { return count_newprompts(h.arg); },
                 [](const IsNil &h) { return count_newprompts(h.arg); },
                 [](const If &i) {
                   return count_newprompts(i.cond) +
                          count_newprompts(i.then_branch) +
                          count_newprompts(i.else_branch);
                 }},
             t->node);
}

long long count_source_apps(const DerivPtr &d) {
  long long n = d->rule == Rule::App ? 1 : 0;
  for (const auto &c : d->children) n += count_source_apps(c);
  return n;
}

tgt::TermPtr find_fix(const tgt::TermPtr &t) {
  using namespace tgt;
  using Ptr = tgt::TermPtr;
  if (std::holds_alternative<Fix>(t->node)) return t;
  return std::visit(
      overloaded{
          [](const Var &) { return Ptr{}; },
          [](const Const &) { return Ptr{}; },
          [](const Nil &) { return Ptr{}; },
          [](const Omega &) { return Ptr{}; },
          [](const PromptConst &) { return Ptr{}; },
          [](const Lam &l) { return find_fix(l.body); },
          [](const Fix &f) { return find_fix(f.body); },
          [](const NewPrompt &n) { return find_fix(n.body); },
          [](const ShiftP &s) { return find_fix(s.body); },
          [](const ResetP &r) { return find_fix(r.body); },
          [](const Let &l) {
            Ptr a = find_fix(l.value);
            return a ? a : find_fix(l.body);
          },
          [](const App &a) {
            Ptr x = find_fix(a.fn);
            return x ? x : find_fix(a.arg);
          },
          [](const Add &a) {
            Ptr x = find_fix(a.lhs);
            return x ? x : find_fix(a.rhs);
          },
          [](const Cons &c) {
            Ptr x = find_fix(c.head);
            return x ? x : find_fix(c.tail);
          },
          [](const Head &h) { return find_fix(h.arg); },
          [](const Tail &h) { return find_fix(h.arg); },
          [](const IsNil &h) { return find_fix(h.arg); },
          [](const If &i) {
            Ptr x = find_fix(i.cond);
            if (x) return x;
            x = find_fix(i.then_branch);
            return x ? x : find_fix(i.else_branch);
          }},
      t->node);
}

namespace {

tgt::TermPtr admin_reduce(const tgt::TermPtr &t,
                          const std::set<std::string> &admin) {
  using namespace tgt;
  // children first
  tgt::TermPtr r = std::visit(
      overloaded{
          [&](const Var &) { return t; },
          [&](const Const &) { return t; },
          [&](const Nil &) { return t; },
          [&](const Omega &) { return t; },
          [&](const PromptConst &) { return t; },
          [&](const Lam &l) { return lam(l.param, admin_reduce(l.body, admin)); },
          [&](const Fix &f) {
            return fix(f.self, f.param, admin_reduce(f.body, admin));
          },
          [&](const NewPrompt &n) {
            return newprompt(n.name, admin_reduce(n.body, admin));
          },
          [&](const ShiftP &s) {
            return shiftp(s.prompt, s.k, admin_reduce(s.body, admin));
          },
          [&](const ResetP &rp) {
            return resetp(rp.prompt, admin_reduce(rp.body, admin));
          },
          [&](const Let &l) {
            return let_(l.name, admin_reduce(l.value, admin),
                        admin_reduce(l.body, admin));
          },
          [&](const App &a) {
            return app(admin_reduce(a.fn, admin), admin_reduce(a.arg, admin));
          },
          [&](const Add &a) {
            return add(admin_reduce(a.lhs, admin), admin_reduce(a.rhs, admin));
          },
          [&](const Cons &c) {
            return cons(admin_reduce(c.head, admin),
                        admin_reduce(c.tail, admin));
          },
          [&](const Head &h) { return head(admin_reduce(h.arg, admin)); },
          [&](const Tail &h) { return tail(admin_reduce(h.arg, admin)); },
          [&](const IsNil &h) { return isnil(admin_reduce(h.arg, admin)); },
          [&](const If &i) {
            return if_(admin_reduce(i.cond, admin),
                       admin_reduce(i.then_branch, admin),
                       admin_reduce(i.else_branch, admin));
          }},
      t->node);

  // (fun p -> fun q -> body) P Q  with p,q administrative
  const auto *outer = std::get_if<App>(&r->node);
  if (!outer) return r;
  const auto *inner = std::get_if<App>(&outer->fn->node);
  if (!inner) return r;
  const auto *lp = std::get_if<Lam>(&inner->fn->node);
  if (!lp || !admin.count(lp->param)) return r;
  const auto *lq = std::get_if<Lam>(&lp->body->node);
  if (!lq || !admin.count(lq->param)) return r;
  tgt::TermPtr body = subst(lq->body, lq->param, outer->arg);
  body = subst(body, lp->param, inner->arg);
  return body;
}

} // namespace

tgt::TermPtr reduce_admin_redexes(const tgt::TermPtr &t,
                                  const std::set<std::string> &admin) {
  return admin_reduce(t, admin);
}

long long count_prompt_apps(const tgt::TermPtr &t,
                            const std::set<std::string> &prompts) {
  using namespace tgt;
  long long self = 0;
  if (const auto *a = std::get_if<App>(&t->node))
    if (const auto *v = std::get_if<Var>(&a->arg->node))
      if (prompts.count(v->name)) self = 1;
  return self +
         std::visit(
             overloaded{
                 [](const Var &) -> long long { return 0; },
                 [](const Const &) -> long long { return 0; },
                 [](const Nil &) -> long long { return 0; },
                 [](const Omega &) -> long long { return 0; },
                 [](const PromptConst &) -> long long { return 0; },
                 [&](const Lam &l) { return count_prompt_apps(l.body, prompts); },
                 [&](const Fix &f) { return count_prompt_apps(f.body, prompts); },
                 [&](const NewPrompt &n) {
                   return count_prompt_apps(n.body, prompts);
                 },
                 [&](const ShiftP &s) {
                   return count_prompt_apps(s.body, prompts);
                 },
                 [&](const ResetP &r) {
                   return count_prompt_apps(r.body, prompts);
                 },
                 [&](const Let &l) {
                   return count_prompt_apps(l.value, prompts) +
                          count_prompt_apps(l.body, prompts);
                 },
                 [&](const App &a) {
                   return count_prompt_apps(a.fn, prompts) +
                          count_prompt_apps(a.arg, prompts);
                 },
                 [&](const Add &a) {
                   return count_prompt_apps(a.lhs, prompts) +
                          count_prompt_apps(a.rhs, prompts);
                 },
                 [&](const Cons &c) {
                   return count_prompt_apps(c.head, prompts) +
                          count_prompt_apps(c.tail, prompts);
                 },
                 [&](const Head &h) { return count_prompt_apps(h.arg, prompts); },
                 [&](const Tail &h) { return count_prompt_apps(h.arg, prompts); },
                 [&](const IsNil &h) {
                   return count_prompt_apps(h.arg, prompts);
                 },
                 [&](const If &i) {
                   return count_prompt_apps(i.cond, prompts) +
                          count_prompt_apps(i.then_branch, prompts) +
                          count_prompt_apps(i.else_branch, prompts);
                 }},
             t->node);
}

namespace {

// returns the prompt-application chain length at the head of t; flags chains
// of length other than 0 or 2 at position boundaries
long long chain_check(const tgt::TermPtr &t,
                      const std::set<std::string> &prompts, bool &ok);

void boundary(const tgt::TermPtr &t, const std::set<std::string> &prompts,
              bool &ok) {
  long long c = chain_check(t, prompts, ok);
  if (c != 0 && c != 2) ok = false;
}

long long chain_check(const tgt::TermPtr &t,
                      const std::set<std::string> &prompts, bool &ok) {
  using namespace tgt;
  if (const auto *a = std::get_if<App>(&t->node)) {
    bool arg_is_prompt = false;
    if (const auto *v = std::get_if<Var>(&a->arg->node))
      arg_is_prompt = prompts.count(v->name) > 0;
    if (arg_is_prompt) return chain_check(a->fn, prompts, ok) + 1;
    boundary(a->fn, prompts, ok);
    boundary(a->arg, prompts, ok);
    return 0;
  }
  std::visit(
      overloaded{[](const Var &) {}, [](const Const &) {}, [](const Nil &) {},
                 [](const Omega &) {}, [](const PromptConst &) {},
                 [&](const Lam &l) { boundary(l.body, prompts, ok); },
                 [&](const Fix &f) { boundary(f.body, prompts, ok); },
                 [&](const NewPrompt &n) { boundary(n.body, prompts, ok); },
                 [&](const ShiftP &s) { boundary(s.body, prompts, ok); },
                 [&](const ResetP &r) { boundary(r.body, prompts, ok); },
                 [&](const Let &l) {
                   boundary(l.value, prompts, ok);
                   boundary(l.body, prompts, ok);
                 },
                 [&](const App &) {},
                 [&](const Add &a) {
                   boundary(a.lhs, prompts, ok);
                   boundary(a.rhs, prompts, ok);
                 },
                 [&](const Cons &c) {
                   boundary(c.head, prompts, ok);
                   boundary(c.tail, prompts, ok);
                 },
                 [&](const Head &h) { boundary(h.arg, prompts, ok); },
                 [&](const Tail &h) { boundary(h.arg, prompts, ok); },
                 [&](const IsNil &h) { boundary(h.arg, prompts, ok); },
                 [&](const If &i) {
                   boundary(i.cond, prompts, ok);
                   boundary(i.then_branch, prompts, ok);
                   boundary(i.else_branch, prompts, ok);
                 }},
      t->node);
  return 0;
}

} // namespace

bool prompt_apps_well_paired(const tgt::TermPtr &t,
                             const std::set<std::string> &prompts) {
  bool ok = true;
  boundary(t, prompts, ok);
  return ok;
}

} // namespace pps
