// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion.

#include "pps/errors.hpp"
#include "pps/eval_source.hpp"
#include "pps/harness.hpp"
#include "pps/infer.hpp"
#include "pps/syntax.hpp"
#include "pps/target.hpp"
#include "pps/translate.hpp"

#include <functional>
#include <iostream>
#include <sstream>

using namespace pps;

namespace {

int failures = 0;

void criterion(int n, const std::string &what, bool ok,
               const std::string &detail = "") {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << what;
  if (!ok && !detail.empty()) std::cout << " -- " << detail;
  std::cout << "\n";
  if (!ok) ++failures;
}

const std::vector<Mode> kModes = {Mode::Naive, Mode::OnePass, Mode::Opt};

const CorpusEntry &entry(const std::string &name) {
  for (const auto &e : corpus())
    if (e.name == name) return e;
  throw std::runtime_error("missing corpus entry " + name);
}

// direct evaluation and all three modes must produce exactly `expected`
bool golden(const std::string &name, const Obs &expected, std::string &why) {
  auto p = parse_source(entry(name).source);
  SrcEval se = eval_source(p, 1'000'000);
  if (se.status != SrcEval::Status::Value) {
    why = name + ": source evaluation did not finish";
    return false;
  }
  auto obs = observe(se.value);
  if (!obs || !(*obs == expected)) {
    why = name + ": direct evaluation produced " +
          (obs ? obs->str() : std::string("<non-base>"));
    return false;
  }
  for (Mode m : kModes) {
    Verdict v = differential_check(name, p, m);
    if (v.status != VerdictStatus::Agree || !v.target_obs ||
        !(*v.target_obs == expected)) {
      why = name + " [" + mode_name(m) + "]: " + to_string(v.status);
      return false;
    }
  }
  return true;
}

// a one-way instance check: now's judgment generalizes before's
bool judgment_generalizes(const Judgment &now, const Judgment &before) {
  if (!now.pure && before.pure) return false;
  auto encode = [](const Judgment &j) {
    if (!j.pure) return sty::earrow(j.type, j.ans_in, j.ans_in, j.ans_out);
    auto g = sty::tvar("%sr_fresh");
    return sty::earrow(j.type, g, g, g);
  };
  sty::Ty gen = now.type, ins = before.type;
  if (!(now.pure && before.pure)) {
    gen = encode(now);
    ins = encode(before);
  }
  std::map<std::string, sty::Ty> binding;
  std::function<bool(const sty::Ty &, const sty::Ty &)> match =
      [&](const sty::Ty &g, const sty::Ty &i) -> bool {
    if (const auto *v = std::get_if<sty::TVar>(&g->node)) {
      auto it = binding.find(v->name);
      if (it == binding.end()) {
        binding[v->name] = i;
        return true;
      }
      return sty::equal(it->second, i);
    }
    if (g->node.index() != i->node.index()) return false;
    return std::visit(
        overloaded{[&](const sty::TVar &) { return true; },
                   [&](const sty::Int &) { return true; },
                   [&](const sty::Bool &) { return true; },
                   [&](const sty::List &l) {
                     return match(l.elem, std::get<sty::List>(i->node).elem);
                   },
                   [&](const sty::PureArrow &p) {
                     const auto &r = std::get<sty::PureArrow>(i->node);
                     return match(p.from, r.from) && match(p.to, r.to);
                   },
                   [&](const sty::EffArrow &e) {
                     const auto &r = std::get<sty::EffArrow>(i->node);
                     return match(e.from, r.from) && match(e.ans0, r.ans0) &&
                            match(e.to, r.to) && match(e.ans1, r.ans1);
                   }},
        g->node);
  };
  return match(gen, ins);
}

} // namespace

int main() {
  // 1. golden outputs for append and prefix, direct and translated
  {
    std::string why;
    bool ok = golden("append", *entry("append").expected, why) &&
              golden("prefix", *entry("prefix").expected, why);
    criterion(1, "append = [1; 2; 3; 4; 5; 6], prefix = "
                 "[[1]; [1; 2]; [1; 2; 3]], direct and all modes",
              ok, why);
  }

  // 2. the worked example probed with 9 evaluates to 14 in every mode
  {
    std::string why;
    bool ok = golden("paper3_probe", Obs{14LL}, why);
    criterion(2, "reset (5 + shift k -> fun x -> throw k x) applied to 9 = 14",
              ok, why);
  }

  // 3. runtime prompt counts for reset(e_n), n = 1..50
  {
    bool ok = true;
    std::string why;
    for (int n = 1; n <= 50 && ok; ++n) {
      for (Mode m : kModes) {
        TypedTranslation tt = typed_translate(build_en(n), m);
        TgtEval ev = eval_target(tt.term, 1'000'000);
        long long want = m == Mode::Opt ? 2 : n + 2;
        if (ev.status != TgtEval::Status::Value ||
            ev.stats.prompts_generated != want) {
          ok = false;
          why = "n=" + std::to_string(n) + " mode=" + mode_name(m) +
                " prompts=" + std::to_string(ev.stats.prompts_generated) +
                " want=" + std::to_string(want);
          break;
        }
      }
    }
    criterion(3, "e_n prompts: naive/one-pass = n+2, optimized = 2, n in 1..50",
              ok, why);
  }

  // 4. per-program type preservation over corpus and depth-4 enumeration
  {
    bool ok = true;
    std::string why;
    auto check_one = [&](const std::string &name, const src::TermPtr &p) {
      for (Mode m : kModes) {
        try {
          typed_translate(p, m);
        } catch (const std::exception &e) {
          ok = false;
          why = name + " [" + mode_name(m) + "]: " + e.what();
          return;
        }
      }
    };
    for (const auto &e : corpus()) {
      if (!ok) break;
      check_one(e.name, parse_source(e.source));
    }
    auto enumerated = enumerate_programs(4);
    for (const auto &p : enumerated) {
      if (!ok) break;
      check_one(pretty(p), p);
    }
    criterion(4, "type preservation (checked type = translated judgment) on " +
                     std::to_string(corpus().size()) + " corpus + " +
                     std::to_string(enumerated.size()) +
                     " enumerated programs, all modes",
              ok, why);
  }

  // 5. semantic agreement on every base-type program, all modes
  {
    bool ok = true;
    std::string why;
    long long checks = 0;
    auto diff_all = [&](const std::string &name, const src::TermPtr &p) {
      for (Mode m : kModes) {
        Verdict v = differential_check(name, p, m);
        ++checks;
        if (v.status != VerdictStatus::Agree) {
          ok = false;
          why = name + " [" + mode_name(m) + "]: " + to_string(v.status) +
                (v.detail.empty() ? "" : " " + v.detail);
          return;
        }
      }
    };
    for (const auto &e : corpus()) {
      if (!ok) break;
      if (!e.expected) continue; // function-valued programs have no base obs
      diff_all(e.name, parse_source(e.source));
    }
    for (const auto &p : enumerate_programs(4)) {
      if (!ok) break;
      diff_all(pretty(p), p);
    }
    criterion(5, "semantic agreement on corpus + enumeration(4): " +
                     std::to_string(checks) + " checks, zero disagree/stuck",
              ok, why);
  }

  // 6. subject reduction along every corpus evaluation
  {
    bool ok = true;
    std::string why;
    for (const auto &e : corpus()) {
      if (!ok) break;
      src::TermPtr t = parse_source(e.source);
      Judgment j = infer({}, t)->judgment;
      for (int i = 0; i < 1'000'000; ++i) {
        SrcStep s = step_source(t);
        if (s.kind == SrcStep::Kind::Stuck) {
          ok = false;
          why = e.name + ": stuck during evaluation";
          break;
        }
        if (s.kind == SrcStep::Kind::AlreadyValue) break;
        t = s.term;
        Judgment j2;
        try {
          j2 = infer({}, t)->judgment;
        } catch (const std::exception &ex) {
          ok = false;
          why = e.name + ": re-inference failed: " + ex.what();
          break;
        }
        if (!judgment_generalizes(j2, j)) {
          ok = false;
          why = e.name + ": judgment changed from " + show(j) + " to " +
                show(j2);
          break;
        }
        j = j2;
      }
    }
    criterion(6, "subject reduction: re-inference preserves the judgment at "
                 "every step, full corpus",
              ok, why);
  }

  // 7. one-pass residual property
  {
    bool ok = true;
    std::string why;
    for (const auto &e : corpus()) {
      auto d = infer({}, parse_source(e.source));
      TranslationInfo ninfo, oinfo;
      auto naive = translate_naive(d, &ninfo);
      auto onepass = translate_onepass(d, &oinfo);
      if (!alpha_eq(reduce_admin_redexes(naive, ninfo.admin_prompt_params),
                    onepass)) {
        ok = false;
        why = e.name + ": admin-reduced naive differs from one-pass";
        break;
      }
      std::set<std::string> prompts = oinfo.prompt_binders;
      prompts.insert(oinfo.residual_prompt_params.begin(),
                     oinfo.residual_prompt_params.end());
      if (count_prompt_apps(onepass, prompts) != 2 * count_source_apps(d) ||
          !prompt_apps_well_paired(onepass, prompts)) {
        ok = false;
        why = e.name + ": residual passes prompts outside application nodes";
        break;
      }
    }
    criterion(7, "one-pass residual = admin-reduced naive; dynamic prompt "
                 "passing only at applications",
              ok, why);
  }

  // 8. safety invariants: no stranded shift, no omega, corpus x modes
  {
    bool ok = true;
    std::string why;
    for (const auto &e : corpus()) {
      if (!ok) break;
      auto p = parse_source(e.source);
      for (Mode m : kModes) {
        TargetRun r = run_translated(p, m);
        bool bad_stuck =
            r.eval.status == TgtEval::Status::Stuck &&
            (r.eval.reason == TgtStuck::NoMatchingReset ||
             r.eval.reason == TgtStuck::OmegaEvaluated);
        if (bad_stuck || r.eval.stats.omega_hit ||
            r.eval.status != TgtEval::Status::Value) {
          ok = false;
          why = e.name + " [" + mode_name(m) + "]";
          break;
        }
      }
    }
    criterion(8, "no translated run reaches a stranded shift or evaluates "
                 "omega, corpus x modes",
              ok, why);
  }

  // 9. size ordering on the e_n family
  {
    bool ok = true;
    std::string why;
    for (int n = 1; n <= 50 && ok; ++n) {
      auto d = infer({}, build_en(n));
      auto naive = term_size(translate_naive(d));
      auto onepass = term_size(translate_onepass(d));
      auto opt = term_size(translate_opt(d));
      if (!(opt <= onepass && onepass <= naive)) {
        ok = false;
        why = "n=" + std::to_string(n);
      }
    }
    criterion(9, "term sizes: optimized <= one-pass <= naive on e_n, n in 1..50",
              ok, why);
  }

  if (failures == 0)
    std::cout << "all acceptance criteria passed\n";
  else
    std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}
