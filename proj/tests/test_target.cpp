#include "doctest.h"

#include "pps/errors.hpp"
#include "pps/syntax.hpp"
#include "pps/target.hpp"

using namespace pps;

namespace {

tty::Ty check(const std::string &s) {
  return check_target({}, parse_target(s));
}

TgtEval run(const std::string &s, long long fuel = 1'000'000) {
  return eval_target(parse_target(s), fuel);
}

} // namespace

TEST_CASE("checking prompts and control operators") {
  CHECK(tty::show(check("newp p in reset[p] (shift[p] k -> 1)")) == "int");
  CHECK(tty::show(check("newp p in reset[p] (1 + shift[p] k -> k 2)")) ==
        "int");
  // an unused prompt's payload stays polymorphic
  CHECK(tty::show(check("newp p in 5")) == "int");
  CHECK(tty::show(check("fun p -> reset[p] 1")) == "int prompt -> int");
}

TEST_CASE("omega checks at any type") {
  CHECK(tty::show(check("1 + omega")) == "int");
  CHECK(tty::show(check("omega 1")) == "'a");
  CHECK(tty::show(check("if true then omega else [1]")) == "int list");
}

TEST_CASE("prompt payload mismatches are their own diagnostic") {
  CHECK_THROWS_AS(check("newp p in reset[p] (1 + shift[p] k -> true)"),
                  PromptTypeMismatch);
  CHECK_THROWS_AS(check("newp p in (reset[p] 1) + (reset[p] true) + 0"),
                  TypeError);
  CHECK_THROWS_AS(check("reset[5] 1"), TypeError);
  CHECK_THROWS_AS(check("missing"), ScopeError);
}

TEST_CASE("target let generalizes values") {
  CHECK(tty::show(check("let id = fun x -> x in id id 7")) == "int");
  // the checker itself also enforces the value restriction
  auto bad = tgt::let_("x", tgt::app(tgt::omega(), tgt::omega()),
                       tgt::var("x"));
  CHECK_THROWS_AS(check_target({}, bad), TypeError);
}

TEST_CASE("single capture that discards its continuation") {
  TgtEval e = run("newp p in reset[p] ((fun y -> shift[p] z -> y) 42)");
  REQUIRE(e.status == TgtEval::Status::Value);
  CHECK(show_value(e.value) == "42");
  CHECK(e.stats.prompts_generated == 1);
}

TEST_CASE("the displayed translation image applied to 9 reduces to 14") {
  // hand transcription of the displayed image of reset (5 + shift k -> k):
  // the shift body returns the detoxified continuation itself, so the
  // machine's value is a one-argument function
  const char *image =
      "newp p in newp q in reset[p] ((fun y -> shift[q] z -> y) "
      "(newp r in (shift[r] k -> reset[q] (k 5)) + "
      "(shift[p] kp -> (fun k -> k) "
      "(fun u -> reset[r] ((fun w -> omega) (kp u))))))";
  std::string probed = "(" + std::string(image) + ") 9";
  TgtEval e = run(probed);
  REQUIRE(e.status == TgtEval::Status::Value);
  CHECK(show_value(e.value) == "14");
  CHECK(e.stats.prompts_generated == 3);
  CHECK_FALSE(e.stats.omega_hit);
}

TEST_CASE("omega is trapped, never silently looped") {
  TgtEval e = run("omega");
  REQUIRE(e.status == TgtEval::Status::Stuck);
  CHECK(e.reason == TgtStuck::OmegaEvaluated);
  CHECK(e.stats.omega_hit);
}

TEST_CASE("shift with no matching reset reports the prompt") {
  TgtEval e = run("newp p in shift[p] k -> 1");
  REQUIRE(e.status == TgtEval::Status::Stuck);
  CHECK(e.reason == TgtStuck::NoMatchingReset);

  // a reset with a different prompt does not count
  TgtEval f = run("newp p in newp q in reset[q] (shift[p] k -> 1)");
  REQUIRE(f.status == TgtEval::Status::Stuck);
  CHECK(f.reason == TgtStuck::NoMatchingReset);
}

TEST_CASE("capture crosses resets with other prompts") {
  TgtEval e = run("newp p in newp q in reset[p] (reset[q] (shift[p] k -> 5))");
  REQUIRE(e.status == TgtEval::Status::Value);
  CHECK(show_value(e.value) == "5");
}

TEST_CASE("captured continuations replay the frames between shift and reset") {
  TgtEval e =
      run("newp p in reset[p] (10 + shift[p] k -> k 1 + k 2)");
  REQUIRE(e.status == TgtEval::Status::Value);
  CHECK(show_value(e.value) == "23"); // (10+1) + (10+2)
}

TEST_CASE("non-prompt values in control position get stuck") {
  TgtEval e = run("reset[5] 1");
  REQUIRE(e.status == TgtEval::Status::Stuck);
  CHECK(e.reason == TgtStuck::NonPromptInControlPosition);
}

TEST_CASE("prompt generation is deterministic") {
  const char *p = "newp p in reset[p] ((fun y -> shift[p] z -> y) "
                  "(newp q in reset[q] (1 + shift[q] k -> k 2)))";
  TgtEval a = run(p), b = run(p);
  REQUIRE(a.status == TgtEval::Status::Value);
  CHECK(a.stats.prompts_generated == b.stats.prompts_generated);
  CHECK(a.stats.steps == b.stats.steps);
  CHECK(show_value(a.value) == show_value(b.value));
}

TEST_CASE("run stats serialize as a flat record") {
  RunStats s;
  s.steps = 12;
  s.prompts_generated = 3;
  CHECK(s.records() == "steps=12 prompts=3 omega=0");
}

TEST_CASE("fuel exhaustion") {
  // self-application loops forever in the untyped machine
  TgtEval e = run("(fun x -> x x) (fun x -> x x)", 100);
  CHECK(e.status == TgtEval::Status::FuelExhausted);
  CHECK(e.stats.steps == 100);
}

TEST_CASE("a capture step reifies the context under its own reset") {
  TargetMachine m(parse_target("newp p in reset[p] (1 + shift[p] k -> k 0)"));
  REQUIRE(m.step() == TargetMachine::Status::Stepped); // allocate #0
  REQUIRE(m.step() == TargetMachine::Status::Stepped); // capture
  auto expected = tgt::resetp(
      tgt::prompt_const(0),
      tgt::app(tgt::lam("y", tgt::resetp(tgt::prompt_const(0),
                                         tgt::add(tgt::integer(1),
                                                  tgt::var("y")))),
               tgt::integer(0)));
  CHECK(alpha_eq(m.term, expected));
}

TEST_CASE("prompt constants print and parse") {
  auto t = parse_target("reset[#3] (1 + 2)");
  CHECK(pretty(t) == "reset[#3] (1 + 2)");
  const auto *r = std::get_if<tgt::ResetP>(&t->node);
  REQUIRE(r);
  CHECK(std::get<tgt::PromptConst>(r->prompt->node).id == 3);
}
