#include "doctest.h"

#include "pps/errors.hpp"
#include "pps/harness.hpp"
#include "pps/infer.hpp"
#include "pps/syntax.hpp"
#include "pps/translate.hpp"

using namespace pps;

namespace {

const char *kPaper3 = "reset (5 + shift k -> fun x -> throw k x)";

DerivPtr inf(const std::string &s) { return infer({}, parse_source(s)); }

} // namespace

TEST_CASE("type translation") {
  // base types and variables are fixed
  CHECK(tty::show(translate_type(sty::tint())) == "int");
  CHECK(tty::show(translate_type(sty::tvar("'a"))) == "'a");
  CHECK(tty::show(translate_type(sty::tlist(sty::tint()))) == "int list");
  // triple: (int ; int, int) -> int prompt -> int prompt -> int
  CHECK(tty::show(translate_triple(sty::tint(), sty::tint(), sty::tint())) ==
        "int prompt -> int prompt -> int");
  // effectful arrows: (int/int -> int/int)
  CHECK(tty::show(translate_type(
            sty::earrow(sty::tint(), sty::tint(), sty::tint(), sty::tint()))) ==
        "int -> int prompt -> int prompt -> int");
  // with a free answer variable
  auto a = sty::tvar("'a");
  CHECK(tty::show(translate_type(sty::earrow(sty::tint(), a, sty::tint(), a))) ==
        "int -> 'a prompt -> 'a prompt -> int");
  // pure (continuation) arrows are homomorphic
  CHECK(tty::show(translate_type(sty::parrow(sty::tint(), a))) ==
        "int -> 'a");
  // schemes and environments translate pointwise
  sty::Scheme s{{"'a"}, sty::parrow(a, a)};
  CHECK(tty::show(translate_scheme(s).body) == "'a -> 'a");
  TypeEnv env;
  env.bind("f", s);
  CHECK(translate_env(env).lookup("f") != nullptr);
}

TEST_CASE("naive translation of the worked example matches the paper shape") {
  auto out = translate_naive(inf(kPaper3));
  auto golden = parse_target(
      "newp p1 in newp q1 in reset[p1] ((fun y1 -> shift[q1] z -> y1) "
      "((fun p2 -> fun q2 -> newp r1 in "
      "(fun p3 -> fun q3 -> shift[p3] h -> reset[q3] (h 5)) r1 q2 + "
      "(fun p4 -> fun q4 -> shift[p4] kp -> "
      "(fun k -> fun x -> fun p5 -> fun q5 -> shift[p5] h2 -> "
      "reset[q5] (h2 (k x))) "
      "(fun y2 -> reset[q4] ((fun w -> omega) (kp y2)))) p2 r1) p1 q1))");
  CHECK(alpha_eq(out, golden));
}

TEST_CASE("naive translation of reset 5 inserts the exp protocol") {
  auto out = translate_naive(inf("reset 5"));
  auto golden = parse_target(
      "newp p in newp q in reset[p] ((fun y -> shift[q] z -> y) "
      "((fun a -> fun b -> shift[a] k -> reset[b] (k 5)) p q))");
  CHECK(alpha_eq(out, golden));
}

TEST_CASE("one-pass translation of the worked example has no static residue") {
  auto out = translate_onepass(inf(kPaper3));
  auto golden = parse_target(
      "newp p in newp q in reset[p] ((fun y -> shift[q] z -> y) "
      "(newp r in (shift[r] h -> reset[q] (h 5)) + "
      "(shift[p] kp -> (fun k -> fun x -> fun pp -> fun qq -> "
      "shift[pp] h2 -> reset[qq] (h2 (k x))) "
      "(fun u -> reset[r] ((fun w -> omega) (kp u))))))");
  CHECK(alpha_eq(out, golden));
}

TEST_CASE("optimized translation of reset(e_3) keeps the source's shape") {
  auto out = translate_opt(infer({}, build_en(3)));
  auto golden = parse_target(
      "newp p in newp q in reset[p] ((fun y -> shift[q] z -> y) "
      "(1 + (2 + (3 + (shift[p] kp -> "
      "(fun k -> fun x -> fun pp -> fun qq -> shift[pp] h -> "
      "reset[qq] (h (k x))) "
      "(fun u -> reset[q] ((fun w -> omega) (kp u))))))))");
  CHECK(alpha_eq(out, golden));
  CHECK(count_newprompts(out) == 2);
}

TEST_CASE("optimized translation drops resets around q-pure bodies") {
  auto out = translate_opt(inf("reset (let x = 3 in let y = 5 in 7)"));
  CHECK(alpha_eq(out, parse_target("let x = 3 in let y = 5 in 7")));
  CHECK(count_newprompts(out) == 0);
}

TEST_CASE("optimized append allocates no prompts inside the recursion") {
  auto out = translate_opt(inf(
      "let append = fix f lst -> "
      "if isnil lst then (shift k -> fun ys -> throw k ys) "
      "else head lst :: f (tail lst) "
      "in reset (append [1;2;3])"));
  auto fx = find_fix(out);
  REQUIRE(fx);
  CHECK(count_newprompts(fx) == 0);
  // the recursive function takes the element and then the two prompts
  const auto *f = std::get_if<tgt::Fix>(&fx->node);
  REQUIRE(f);
  const auto *p = std::get_if<tgt::Lam>(&f->body->node);
  REQUIRE(p);
  CHECK(std::holds_alternative<tgt::Lam>(p->body->node));
  // and the whole image allocates exactly the reset pair
  CHECK(count_newprompts(out) == 2);
}

TEST_CASE("typed_translate on trivial and effectful roots") {
  auto five = typed_translate(parse_source("5"), Mode::Naive);
  CHECK(alpha_eq(five.term, parse_target("5")));
  CHECK(tty::show(five.checked) == "int");

  auto addition = typed_translate(parse_source("1 + 2"), Mode::OnePass);
  CHECK(tty::show(addition.checked) == "'a prompt -> 'a prompt -> int");

  auto en = typed_translate(build_en(3), Mode::Opt);
  CHECK(tty::show(en.checked) == "int -> 'a prompt -> 'a prompt -> int");
}

TEST_CASE("type preservation across the corpus, all modes") {
  for (const auto &e : corpus()) {
    CAPTURE(e.name);
    auto p = parse_source(e.source);
    for (Mode m : {Mode::Naive, Mode::OnePass, Mode::Opt}) {
      CAPTURE(mode_name(m));
      CHECK_NOTHROW(typed_translate(p, m));
    }
  }
}

TEST_CASE("translators are deterministic") {
  auto p = parse_source(kPaper3);
  for (Mode m : {Mode::Naive, Mode::OnePass, Mode::Opt}) {
    auto a = typed_translate(p, m);
    auto b = typed_translate(p, m);
    CHECK(pretty(a.term) == pretty(b.term)); // stable naming, byte-identical
  }
}

TEST_CASE("one-pass output is the naive output minus administrative redexes") {
  for (const auto &e : corpus()) {
    CAPTURE(e.name);
    auto d = inf(e.source);
    TranslationInfo naive_info;
    auto naive = translate_naive(d, &naive_info);
    auto onepass = translate_onepass(d);
    auto reduced =
        reduce_admin_redexes(naive, naive_info.admin_prompt_params);
    CHECK(alpha_eq(reduced, onepass));
  }
}

TEST_CASE("one-pass residuals are administrative-redex free") {
  for (const auto &e : corpus()) {
    CAPTURE(e.name);
    TranslationInfo info;
    auto onepass = translate_onepass(inf(e.source), &info);
    auto again = reduce_admin_redexes(onepass, info.residual_prompt_params);
    CHECK(alpha_eq(again, onepass)); // reduction is a no-op
  }
}

TEST_CASE("one-pass residuals pass prompts only at source applications") {
  for (const auto &e : corpus()) {
    CAPTURE(e.name);
    auto d = inf(e.source);
    TranslationInfo info;
    auto onepass = translate_onepass(d, &info);
    std::set<std::string> prompts = info.prompt_binders;
    prompts.insert(info.residual_prompt_params.begin(),
                   info.residual_prompt_params.end());
    CHECK(count_prompt_apps(onepass, prompts) == 2 * count_source_apps(d));
    CHECK(prompt_apps_well_paired(onepass, prompts));
  }
}

TEST_CASE("translated programs re-check at every machine step") {
  // subject reduction modulo dynamically created prompts: re-checking after
  // each step succeeds, with one payload type per allocated prompt
  for (const char *text : {"reset (5 + shift k -> fun x -> throw k x) 9",
                           "reset (1 :: shift k -> throw k [])",
                           "reset (1 + reset (2 + shift k -> throw k 10))"}) {
    CAPTURE(text);
    auto p = parse_source(text);
    auto d = infer({}, p);
    auto to_run = d->judgment.pure ? p : src::reset(p);
    for (Mode m : {Mode::Naive, Mode::Opt}) {
      TargetMachine machine(typed_translate(to_run, m).term);
      for (int i = 0; i < 10'000; ++i) {
        CHECK_NOTHROW(check_target({}, machine.term));
        auto st = machine.step();
        if (st != TargetMachine::Status::Stepped) {
          CHECK(st == TargetMachine::Status::Done);
          break;
        }
      }
    }
  }
}

TEST_CASE("translated corpus programs round-trip through the target syntax") {
  for (const auto &e : corpus()) {
    CAPTURE(e.name);
    auto d = infer({}, parse_source(e.source));
    for (Mode m : {Mode::Naive, Mode::OnePass, Mode::Opt}) {
      auto out = translate(d, m);
      CHECK(alpha_eq(parse_target(pretty(out)), out));
    }
  }
}

TEST_CASE("program annotations are checked against the inferred type") {
  SourceProgram ok{parse_source("reset (5 + shift k -> fun x -> throw k x)"),
                   sty::earrow(sty::tint(), sty::tvar("'a"), sty::tint(),
                               sty::tvar("'a"))};
  CHECK_NOTHROW(typed_translate(ok, Mode::Naive));
  SourceProgram bad{parse_source("5"), sty::tbool()};
  CHECK_THROWS_AS(typed_translate(bad, Mode::Naive), TypeError);
  SourceProgram unannotated{parse_source("5"), std::nullopt};
  CHECK_NOTHROW(typed_translate(unannotated, Mode::Opt));
}

TEST_CASE("term sizes shrink from naive to one-pass to optimized") {
  for (int n = 1; n <= 10; ++n) {
    CAPTURE(n);
    auto d = infer({}, build_en(n));
    auto naive = term_size(translate_naive(d));
    auto onepass = term_size(translate_onepass(d));
    auto opt = term_size(translate_opt(d));
    CHECK(opt <= onepass);
    CHECK(onepass <= naive);
  }
}
