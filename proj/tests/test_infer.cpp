#include "doctest.h"

#include "pps/errors.hpp"
#include "pps/harness.hpp"
#include "pps/infer.hpp"
#include "pps/syntax.hpp"

using namespace pps;

namespace {

DerivPtr inf(const std::string &s) { return infer({}, parse_source(s)); }

} // namespace

TEST_CASE("constants are pure") {
  auto d = inf("5");
  CHECK(d->judgment.pure);
  CHECK(sty::show(d->judgment.type) == "int");
  CHECK(show(inf("true")->judgment) == "pure : bool");
  CHECK(show(inf("[1;2]")->judgment) == "pure : int list");
}

TEST_CASE("reflecting the continuation types as an effectful function") {
  // shift k -> fun x -> throw k x : t ; a, (t/c -> a/c)
  auto d = inf("shift k -> fun x -> throw k x");
  REQUIRE_FALSE(d->judgment.pure);
  auto expected_type = sty::tvar("t");
  auto a = sty::tvar("a");
  auto c = sty::tvar("c");
  auto expected_out = sty::earrow(expected_type, c, a, c);
  CHECK(sty::alpha_equal(d->judgment.type, expected_type));
  CHECK(sty::alpha_equal(d->judgment.ans_in, a));
  CHECK(sty::alpha_equal(d->judgment.ans_out, expected_out));
  // the judgment is internally consistent: answer-in differs from the type
  // variable itself but matches the reflected arrow's result
  const auto *arrow = std::get_if<sty::EffArrow>(&d->judgment.ans_out->node);
  REQUIRE(arrow);
  CHECK(sty::equal(arrow->from, d->judgment.type));
  CHECK(sty::equal(arrow->to, d->judgment.ans_in));
  CHECK(sty::equal(arrow->ans0, arrow->ans1));
}

TEST_CASE("the e_n family types as the paper's judgment") {
  for (int n : {1, 3, 7}) {
    CAPTURE(n);
    auto reset_d = infer({}, build_en(n));
    CHECK(show(reset_d->judgment) == "pure : (int/'a -> int/'a)");
    // under the reset, e_n itself carries the initial answer type int
    REQUIRE(reset_d->rule == Rule::Reset);
    CHECK(show(reset_d->children.at(0)->judgment) ==
          "int ; int, (int/'a -> int/'a)");
  }
}

TEST_CASE("append's reset types as a list-to-list effectful function") {
  auto d = inf("let append = fix f lst -> "
               "if isnil lst then (shift k -> fun ys -> throw k ys) "
               "else head lst :: f (tail lst) "
               "in reset (append [1;2;3])");
  // answer type modified: the reset's value is a function from list to list
  REQUIRE_FALSE(d->judgment.pure); // a let-nest, coerced by exp
  CHECK(sty::show(d->judgment.type) == "(int list/'a -> int list/'a)");
}

TEST_CASE("prefix types at a list-of-lists observation") {
  auto d = inf("let prefix = fix aux x -> "
               "if isnil x then (shift k -> []) "
               "else head x :: (shift k -> throw k [] :: "
               "reset ((fun y -> throw k y) (aux (tail x)))) "
               "in reset (prefix [1;2;3])");
  CHECK(sty::show(d->judgment.type) == "int list list");
}

TEST_CASE("validate accepts every corpus derivation") {
  for (const auto &e : corpus()) {
    CAPTURE(e.name);
    auto d = infer({}, parse_source(e.source));
    std::string path;
    bool ok = validate(d, {}, &path);
    CAPTURE(path);
    CHECK(ok);
  }
}

TEST_CASE("validate rejects a corrupted answer type") {
  auto d = inf("reset (1 + shift k -> 42)");
  // walk to some effectful node and break its answers
  REQUIRE_FALSE(d->children.empty());
  auto &inner = d->children[0];
  REQUIRE_FALSE(inner->judgment.pure);
  inner->judgment.ans_out = sty::tbool();
  std::string path;
  CHECK_FALSE(validate(d, {}, &path));
  CHECK_FALSE(path.empty());
}

TEST_CASE("validate rejects a corrupted result type") {
  auto d = inf("1 + 2");
  d->judgment.type = sty::tbool();
  CHECK_FALSE(validate(d));
}

TEST_CASE("exp nodes appear exactly at pure subterms of effectful positions") {
  auto d = inf("1 + 2");
  REQUIRE(d->rule == Rule::Add);
  REQUIRE(d->children.size() == 2);
  for (const auto &c : d->children) {
    CHECK(c->rule == Rule::Exp);
    CHECK_FALSE(c->judgment.pure);
    CHECK(sty::equal(c->judgment.ans_in, c->judgment.ans_out));
    CHECK(c->children.at(0)->judgment.pure);
  }
}

TEST_CASE("impure shift bodies are rejected with the reset hint") {
  try {
    inf("reset (shift k -> 1 + 1)");
    FAIL("expected ImpureShiftBody");
  } catch (const ImpureShiftBody &e) {
    CHECK(std::string(e.what()).find("reset") != std::string::npos);
  }
  // wrapping the body in a reset makes it typable, as the hint says
  CHECK_NOTHROW(inf("reset (shift k -> reset (1 + 1))"));
}

TEST_CASE("throw takes a pure argument") {
  CHECK_THROWS_AS(inf("reset (1 + shift k -> fun x -> throw k (x + 1))"),
                  TypeError);
  CHECK_NOTHROW(inf("reset (1 + shift k -> fun x -> throw k (reset (x + 1)))"));
}

TEST_CASE("let polymorphism with the value restriction") {
  CHECK_NOTHROW(inf("let id = fun x -> x in (id (fun y -> y)) (id 7)"));
  // without generalization the two uses of id would clash
  CHECK_THROWS_AS(inf("(fun id -> (id (fun y -> y)) (id 7)) (fun x -> x)"),
                  TypeError);
}

TEST_CASE("type errors carry the failing construct") {
  CHECK_THROWS_AS(inf("fun x -> x x"), TypeError);      // occurs check
  CHECK_THROWS_AS(inf("1 + true"), TypeError);          // clash
  CHECK_THROWS_AS(inf("if 1 then 2 else 3"), TypeError);
  CHECK_THROWS_AS(inf("head 5"), TypeError);
  CHECK_THROWS_AS(inf("unknown"), ScopeError);
}

TEST_CASE("purity classes are recorded on every node") {
  auto d = inf("reset (let x = 3 in let y = 5 in 7)");
  CHECK(d->purity == Purity::Pure); // the reset itself
  const auto &body = d->children[0];
  CHECK(body->purity == Purity::QPure);
  auto shifted = inf("reset (1 + shift k -> 42)");
  CHECK(shifted->children[0]->purity == Purity::Effectful);
}
