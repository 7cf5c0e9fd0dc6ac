#include "doctest.h"

#include "pps/harness.hpp"

using namespace pps;

TEST_CASE("every corpus program infers successfully") {
  CHECK(corpus().size() >= 30);
  for (const auto &e : corpus()) {
    CAPTURE(e.name);
    CHECK_NOTHROW(infer({}, parse_source(e.source)));
  }
}

TEST_CASE("enumeration at depth 1 yields base constants") {
  auto ps = enumerate_programs(1);
  REQUIRE_FALSE(ps.empty());
  for (const auto &p : ps) {
    auto d = infer({}, p);
    CAPTURE(pretty(p));
    CHECK(eval_source(p, 1000).status == SrcEval::Status::Value);
  }
}

TEST_CASE("enumeration contains the canonical capture example by depth 3") {
  auto target = parse_source("reset (1 + shift k -> throw k 2)");
  bool found = false;
  for (const auto &p : enumerate_programs(3))
    if (alpha_eq(p, target)) found = true;
  CHECK(found);
}

TEST_CASE("enumeration is deterministic across runs") {
  auto a = enumerate_programs(3);
  auto b = enumerate_programs(3);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(pretty(a[i]) == pretty(b[i]));
  CHECK(enumerate_programs(2).size() < a.size());
}

TEST_CASE("differential agreement on the flagship programs") {
  auto append = parse_source(
      "let append = fix f lst -> "
      "if isnil lst then (shift k -> fun ys -> throw k ys) "
      "else head lst :: f (tail lst) "
      "in reset (append [1;2;3]) [4;5;6]");
  auto paper3 = parse_source("reset (5 + shift k -> fun x -> throw k x) 9");
  for (Mode m : {Mode::Naive, Mode::OnePass, Mode::Opt}) {
    CAPTURE(mode_name(m));
    Verdict va = differential_check("append", append, m);
    CHECK(va.status == VerdictStatus::Agree);
    REQUIRE(va.target_obs);
    CHECK(va.target_obs->str() == "[1; 2; 3; 4; 5; 6]");
    Verdict vp = differential_check("paper3", paper3, m);
    CHECK(vp.status == VerdictStatus::Agree);
    REQUIRE(vp.target_obs);
    CHECK(vp.target_obs->str() == "14");
  }
}

TEST_CASE("differential agreement across enumeration at depth 3") {
  for (const auto &p : enumerate_programs(3)) {
    for (Mode m : {Mode::Naive, Mode::OnePass, Mode::Opt}) {
      Verdict v = differential_check(pretty(p), p, m);
      CAPTURE(pretty(p));
      CAPTURE(mode_name(m));
      CHECK(v.status == VerdictStatus::Agree);
    }
  }
}

TEST_CASE("pinned corpus prompt counts") {
  for (const auto &e : corpus()) {
    if (!e.prompts_naive && !e.prompts_opt) continue;
    CAPTURE(e.name);
    auto p = parse_source(e.source);
    if (e.prompts_naive) {
      for (Mode m : {Mode::Naive, Mode::OnePass}) {
        TargetRun r = run_translated(p, m);
        REQUIRE(r.eval.status == TgtEval::Status::Value);
        CHECK(r.eval.stats.prompts_generated == *e.prompts_naive);
      }
    }
    if (e.prompts_opt) {
      TargetRun r = run_translated(p, Mode::Opt);
      REQUIRE(r.eval.status == TgtEval::Status::Value);
      CHECK(r.eval.stats.prompts_generated == *e.prompts_opt);
    }
  }
}

TEST_CASE("prompt counts: optimized <= one-pass = naive on the corpus") {
  for (const auto &e : corpus()) {
    CAPTURE(e.name);
    auto p = parse_source(e.source);
    TargetRun naive = run_translated(p, Mode::Naive);
    TargetRun onepass = run_translated(p, Mode::OnePass);
    TargetRun opt = run_translated(p, Mode::Opt);
    REQUIRE(naive.eval.status == TgtEval::Status::Value);
    REQUIRE(onepass.eval.status == TgtEval::Status::Value);
    REQUIRE(opt.eval.status == TgtEval::Status::Value);
    CHECK(naive.eval.stats.prompts_generated ==
          onepass.eval.stats.prompts_generated);
    CHECK(opt.eval.stats.prompts_generated <=
          onepass.eval.stats.prompts_generated);
  }
}

TEST_CASE("prompt report matches the closed forms") {
  auto rows = prompt_report(5, {Mode::Naive, Mode::OnePass, Mode::Opt});
  long long last_naive_size = 0;
  for (const auto &r : rows) {
    CAPTURE(r.n);
    CAPTURE(mode_name(r.mode));
    if (r.mode == Mode::Opt) {
      CHECK(r.prompts == 2);
    } else {
      CHECK(r.prompts == r.n + 2);
    }
    if (r.mode == Mode::Naive) {
      CHECK(r.size > last_naive_size); // sizes grow with n
      last_naive_size = r.size;
    }
  }
  CHECK(rows.size() == 15);
  CHECK(rows[0].records() == "family=en n=1 mode=naive prompts=3 size=" +
                                 std::to_string(rows[0].size));
}

TEST_CASE("verdict records are machine-readable") {
  Verdict v = differential_check("add", parse_source("1 + 2"), Mode::Opt);
  CHECK(v.records().find("program=add mode=opt status=agree source=3 "
                         "target=3") == 0);
}

TEST_CASE("enumerated programs round-trip through the source syntax") {
  for (const auto &p : enumerate_programs(3)) {
    CAPTURE(pretty(p));
    CHECK(alpha_eq(parse_source(pretty(p)), p));
  }
}

TEST_CASE("pure roots get pure judgments and never shift at top level") {
  for (const auto &e : corpus()) {
    auto t = parse_source(e.source);
    if (src::classify_purity(t) != Purity::Pure) continue;
    CAPTURE(e.name);
    CHECK(infer({}, t)->judgment.pure);
    SrcEval ev = eval_source(t, 1'000'000);
    CHECK(ev.status == SrcEval::Status::Value);
  }
}

TEST_CASE("translated well-typed programs never strand a shift or run omega") {
  for (const auto &e : corpus()) {
    CAPTURE(e.name);
    auto p = parse_source(e.source);
    for (Mode m : {Mode::Naive, Mode::OnePass, Mode::Opt}) {
      CAPTURE(mode_name(m));
      TargetRun r = run_translated(p, m);
      REQUIRE(r.eval.status == TgtEval::Status::Value);
      CHECK_FALSE(r.eval.stats.omega_hit);
    }
  }
}
