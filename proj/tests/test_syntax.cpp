#include "doctest.h"

#include "pps/errors.hpp"
#include "pps/harness.hpp"
#include "pps/syntax.hpp"

using namespace pps;

TEST_CASE("parse identity function") {
  auto t = parse_source("fun x -> x");
  const auto *l = std::get_if<src::Lam>(&t->node);
  REQUIRE(l);
  CHECK(l->param == "x");
  CHECK(std::holds_alternative<src::Var>(l->body->node));
}

TEST_CASE("parse the worked reset/shift example") {
  auto t = parse_source("reset (5 + shift k -> fun x -> throw k x)");
  auto expected = src::reset(src::add(
      src::integer(5),
      src::shift("k", src::lam("x", src::throw_("k", src::var("x"))))));
  CHECK(alpha_eq(t, expected));
}

TEST_CASE("binder forms swallow the rest after an operator") {
  auto a = parse_source("1 + shift k -> throw k 2");
  auto b = parse_source("1 + (shift k -> throw k 2)");
  CHECK(alpha_eq(a, b));
  auto c = parse_source("1 :: shift k -> []");
  const auto *cons = std::get_if<src::Cons>(&c->node);
  REQUIRE(cons);
  CHECK(std::holds_alternative<src::Shift>(cons->tail->node));
}

TEST_CASE("the append listing parses to a fix over an isnil conditional") {
  auto t = parse_source(
      "let append = fix f lst -> "
      "if isnil lst then (shift k -> fun ys -> throw k ys) "
      "else head lst :: f (tail lst) "
      "in reset (append [1;2;3]) [4;5;6]");
  const auto *let = std::get_if<src::Let>(&t->node);
  REQUIRE(let);
  const auto *fx = std::get_if<src::Fix>(&let->value->node);
  REQUIRE(fx);
  const auto *cond = std::get_if<src::If>(&fx->body->node);
  REQUIRE(cond);
  CHECK(std::holds_alternative<src::IsNil>(cond->cond->node));
  CHECK(std::holds_alternative<src::Shift>(cond->then_branch->node));
  CHECK(std::holds_alternative<src::Cons>(cond->else_branch->node));
  // the probe is an ordinary application of the reset's value
  const auto *probe = std::get_if<src::App>(&let->body->node);
  REQUIRE(probe);
  CHECK(std::holds_alternative<src::Reset>(probe->fn->node));
}

TEST_CASE("parse target basics") {
  CHECK(std::holds_alternative<tgt::Omega>(parse_target("omega")->node));
  auto t = parse_target("newp p in reset[p] 1");
  auto expected =
      tgt::newprompt("p", tgt::resetp(tgt::var("p"), tgt::integer(1)));
  CHECK(alpha_eq(t, expected));
  auto s = parse_target("shift[p] k -> k 1");
  const auto *sh = std::get_if<tgt::ShiftP>(&s->node);
  REQUIRE(sh);
  CHECK(sh->k == "k");
}

TEST_CASE("target pretty/parse round-trip on a hand-written translation") {
  // the naive image of reset (5 + shift k -> fun x -> throw k x)
  const char *text =
      "newp p1 in newp q1 in reset[p1] ((fun y1 -> shift[q1] z -> y1) "
      "((fun p2 -> fun q2 -> newp r1 in "
      "(fun p3 -> fun q3 -> shift[p3] h -> reset[q3] (h 5)) r1 q2 + "
      "(fun p4 -> fun q4 -> shift[p4] kp -> "
      "(fun k -> fun x -> fun p5 -> fun q5 -> shift[p5] h2 -> "
      "reset[q5] (h2 (k x))) "
      "(fun y2 -> reset[q4] ((fun w -> omega) (kp y2)))) p2 r1) p1 q1))";
  auto t = parse_target(text);
  auto again = parse_target(pretty(t));
  CHECK(alpha_eq(t, again));
}

TEST_CASE("pretty round-trips through the parser on the corpus") {
  for (const auto &e : corpus()) {
    CAPTURE(e.name);
    auto t = parse_source(e.source);
    auto again = parse_source(pretty(t));
    CHECK(alpha_eq(t, again));
    auto third = parse_source(pretty(again));
    CHECK(pretty(again) == pretty(third)); // printing is a fixpoint
  }
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(parse_source("fun x -> x"), parse_source("fun y -> y")));
  CHECK_FALSE(alpha_eq(parse_source("fun x -> fun y -> x"),
                       parse_source("fun x -> fun y -> y")));
  CHECK(alpha_eq(parse_target("newp p in reset[p] 1"),
                 parse_target("newp q in reset[q] 1")));
  CHECK_FALSE(alpha_eq(parse_target("newp p in newp q in reset[p] 1"),
                       parse_target("newp p in newp q in reset[q] 1")));
  // free variables must match by name
  CHECK(alpha_eq(parse_source("a b"), parse_source("a b")));
  CHECK_FALSE(alpha_eq(parse_source("a b"), parse_source("a c")));
}

TEST_CASE("printing fixpoints") {
  CHECK(pretty(parse_source("fun x -> x")) == "fun x -> x");
  CHECK(pretty(parse_target("omega")) == "omega");
  // binder operands print parenthesized even where the parser is lenient
  CHECK(pretty(parse_source("reset (5 + shift k -> fun x -> throw k x)")) ==
        "reset (5 + (shift k -> fun x -> throw k x))");
  CHECK(pretty(parse_source("head (tail [1;2])")) == "head (tail [1; 2])");
  CHECK(pretty(parse_source("1 + 2 + 3")) == "1 + 2 + 3");
  CHECK(pretty(parse_source("1 + (2 + 3)")) == "1 + (2 + 3)");
}

TEST_CASE("term sizes") {
  CHECK(term_size(parse_source("5")) == 1);
  CHECK(term_size(parse_source("1 + 2")) == 3);
  CHECK(term_size(parse_source("fun x -> x")) == 2);
  CHECK(term_size(parse_target("omega")) == 1);
}

TEST_CASE("value restriction is syntactic") {
  CHECK_THROWS_AS(parse_source("let x = reset 5 in x"), SyntaxError);
  CHECK_THROWS_AS(parse_source("let x = 1 + 2 in x"), SyntaxError);
  CHECK_NOTHROW(parse_source("let x = fun y -> y in x"));
  CHECK_NOTHROW(parse_source("let x = [1;2] in x"));
}

TEST_CASE("continuation scope discipline") {
  CHECK_THROWS_AS(parse_source("throw k 1"), ScopeError);
  // a shift-bound name is not an ordinary value
  CHECK_THROWS_AS(parse_source("shift k -> k"), ScopeError);
  // and binders shadow across the two name spaces
  CHECK_NOTHROW(parse_source("shift k -> fun k -> k"));
  CHECK_THROWS_AS(parse_source("fun k -> throw k 1"), ScopeError);
}

TEST_CASE("comments and list literals") {
  auto t = parse_source("(* sum (* nested *) *) [1;2;3]");
  const auto *c = std::get_if<src::Const>(&t->node);
  REQUIRE(c);
  CHECK(lit_to_string(c->value) == "[1; 2; 3]");
  CHECK(std::holds_alternative<src::Nil>(parse_source("[]")->node));
  CHECK_THROWS_AS(parse_source("[[1];[2]]"), SyntaxError);
  CHECK_THROWS_AS(parse_source("[1; true]"), SyntaxError);
}

TEST_CASE("purity classification") {
  CHECK(src::classify_purity(parse_source("fun x -> x")) == Purity::Pure);
  CHECK(src::classify_purity(parse_source("reset (1 + 2)")) == Purity::Pure);
  CHECK(src::classify_purity(parse_source("1 + 2")) == Purity::Effectful);
  CHECK(src::classify_purity(parse_source("let x = 3 in let y = 5 in 7")) ==
        Purity::QPure);
  CHECK(src::classify_purity(parse_source("let x = 3 in x + x")) ==
        Purity::Effectful);
  CHECK(src::classify_purity(parse_source("head [1;2]")) == Purity::Pure);
  CHECK(src::classify_purity(parse_source("head ((fun x -> x) [1])")) ==
        Purity::Effectful);
}
