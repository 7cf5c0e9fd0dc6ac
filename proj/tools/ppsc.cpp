// ppsc: type checker, interpreters, and prompt-passing-style translators
// for a shift/reset calculus with answer-type modification.

#include "pps/errors.hpp"
#include "pps/eval_source.hpp"
#include "pps/harness.hpp"
#include "pps/infer.hpp"
#include "pps/syntax.hpp"
#include "pps/target.hpp"
#include "pps/translate.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUserError = 1;
constexpr int kExitInternal = 2;

std::string read_input(const std::string &path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<pps::Mode> modes_from_flag(const std::string &m) {
  if (m == "all")
    return {pps::Mode::Naive, pps::Mode::OnePass, pps::Mode::Opt};
  return {pps::parse_mode(m)};
}

int cmd_check(const std::string &file) {
  pps::src::TermPtr t = pps::parse_source(read_input(file));
  pps::DerivPtr d = pps::infer({}, t);
  std::cout << pps::show(d->judgment) << "\n";
  return kExitOk;
}

int cmd_run(const std::string &file, long long fuel) {
  pps::src::TermPtr t = pps::parse_source(read_input(file));
  pps::infer({}, t); // reject ill-typed programs up front
  pps::SrcEval ev = pps::eval_source(t, fuel);
  switch (ev.status) {
  case pps::SrcEval::Status::Value:
    std::cout << pps::show_value(ev.value) << "\n";
    return kExitOk;
  case pps::SrcEval::Status::Stuck:
    std::cerr << "stuck: " << pps::to_string(ev.reason) << " at "
              << pps::pretty(ev.stuck_term) << "\n";
    return kExitUserError;
  case pps::SrcEval::Status::FuelExhausted:
    std::cerr << "fuel exhausted after " << ev.steps << " steps\n";
    return kExitUserError;
  }
  return kExitInternal;
}

int cmd_run_target(const std::string &file, long long fuel, bool records) {
  pps::tgt::TermPtr t = pps::parse_target(read_input(file));
  pps::check_target({}, t);
  pps::TgtEval ev = pps::eval_target(t, fuel);
  switch (ev.status) {
  case pps::TgtEval::Status::Value:
    if (records)
      std::cout << "value=" << pps::show_value(ev.value) << " "
                << ev.stats.records() << "\n";
    else
      std::cout << pps::show_value(ev.value) << "\n"
                << ev.stats.records() << "\n";
    return kExitOk;
  case pps::TgtEval::Status::Stuck:
    std::cerr << "stuck: " << pps::to_string(ev.reason) << " at "
              << pps::pretty(ev.stuck_term) << "\n";
    return kExitUserError;
  case pps::TgtEval::Status::FuelExhausted:
    std::cerr << "fuel exhausted after " << ev.stats.steps << " steps\n";
    return kExitUserError;
  }
  return kExitInternal;
}

int cmd_translate(const std::string &file, const std::string &mode) {
  pps::src::TermPtr t = pps::parse_source(read_input(file));
  pps::TypedTranslation tt = pps::typed_translate(t, pps::parse_mode(mode));
  std::cout << pps::pretty(tt.term) << " : " << pps::tty::show(tt.checked)
            << "\n";
  return kExitOk;
}

int cmd_compare(const std::string &file, int enumerate_depth,
                const std::string &mode, long long fuel, bool records) {
  std::vector<std::pair<std::string, pps::src::TermPtr>> programs;
  if (!file.empty()) {
    programs.emplace_back(file == "-" ? "stdin" : file,
                          pps::parse_source(read_input(file)));
  } else if (enumerate_depth > 0) {
    auto terms = pps::enumerate_programs(enumerate_depth);
    for (std::size_t i = 0; i < terms.size(); ++i)
      programs.emplace_back("enum" + std::to_string(i), terms[i]);
  } else {
    for (const auto &e : pps::corpus()) {
      if (!e.expected) continue; // base-type observations only
      programs.emplace_back(e.name, pps::parse_source(e.source));
    }
  }

  long long agree = 0, total = 0;
  bool all_ok = true;
  for (const auto &[name, term] : programs) {
    for (pps::Mode m : modes_from_flag(mode)) {
      pps::Verdict v = pps::differential_check(name, term, m, fuel);
      ++total;
      if (v.status == pps::VerdictStatus::Agree)
        ++agree;
      else
        all_ok = false;
      if (records)
        std::cout << v.records() << "\n";
      else if (v.status != pps::VerdictStatus::Agree)
        std::cout << name << " [" << pps::mode_name(m)
                  << "]: " << pps::to_string(v.status)
                  << (v.detail.empty() ? "" : " (" + v.detail + ")") << "\n";
    }
  }
  if (!records)
    std::cout << agree << "/" << total << " agree\n";
  return all_ok ? kExitOk : kExitInternal;
}

int cmd_stats(const std::string &family, int max_n, const std::string &mode,
              bool records) {
  if (family != "en")
    throw std::runtime_error("unknown family '" + family + "' (try: en)");
  auto rows = pps::prompt_report(max_n, modes_from_flag(mode));
  if (records) {
    for (const auto &r : rows) std::cout << r.records() << "\n";
  } else {
    std::cout << std::left << std::setw(6) << "n" << std::setw(10) << "mode"
              << std::setw(10) << "prompts" << std::setw(10) << "size"
              << "\n";
    for (const auto &r : rows)
      std::cout << std::left << std::setw(6) << r.n << std::setw(10)
                << pps::mode_name(r.mode) << std::setw(10) << r.prompts
                << std::setw(10) << r.size << "\n";
  }
  return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"shift/reset with answer-type modification: interpreters, "
               "type checkers, and prompt-passing-style translation"};
  app.require_subcommand(1);

  std::string file;
  std::string mode = "naive";
  std::string format = "text";
  std::string family = "en";
  long long fuel = 1'000'000;
  int enumerate_depth = 0;
  int max_n = 10;

  auto add_fuel = [&](CLI::App *c) {
    c->add_option("--fuel", fuel, "maximum reduction steps")
        ->check(CLI::PositiveNumber);
  };
  auto add_format = [&](CLI::App *c) {
    c->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "records"}));
  };

  CLI::App *check = app.add_subcommand("check", "infer and print a judgment");
  check->add_option("file", file, "source file (- for stdin)")->required();

  CLI::App *run = app.add_subcommand("run", "evaluate a source program");
  run->add_option("file", file)->required();
  add_fuel(run);

  CLI::App *runt =
      app.add_subcommand("run-target", "evaluate a target program");
  runt->add_option("file", file)->required();
  add_fuel(runt);
  add_format(runt);

  CLI::App *tr = app.add_subcommand("translate",
                                    "translate to multi-prompt shift/reset");
  tr->add_option("file", file)->required();
  tr->add_option("--mode", mode, "naive|onepass|opt")
      ->check(CLI::IsMember({"naive", "onepass", "opt"}));

  CLI::App *cmp = app.add_subcommand(
      "compare", "differential check: source vs translated target");
  cmp->add_option("file", file, "program (default: built-in corpus)");
  cmp->add_option("--enumerate", enumerate_depth,
                  "check all enumerated programs up to this depth")
      ->check(CLI::Range(1, 5));
  cmp->add_option("--mode", mode, "naive|onepass|opt|all")
      ->check(CLI::IsMember({"naive", "onepass", "opt", "all"}));
  add_fuel(cmp);
  add_format(cmp);

  CLI::App *st = app.add_subcommand("stats", "prompt/size table for e_n");
  st->add_option("--family", family, "program family");
  st->add_option("--max", max_n, "largest n")->check(CLI::PositiveNumber);
  st->add_option("--mode", mode, "naive|onepass|opt|all")
      ->check(CLI::IsMember({"naive", "onepass", "opt", "all"}));
  add_format(st);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(file);
    if (run->parsed()) return cmd_run(file, fuel);
    if (runt->parsed()) return cmd_run_target(file, fuel, format == "records");
    if (tr->parsed()) return cmd_translate(file, mode);
    if (cmp->parsed())
      return cmd_compare(file, enumerate_depth, cmp->count("--mode") ? mode : "all",
                         fuel, format == "records");
    if (st->parsed())
      return cmd_stats(family, max_n, st->count("--mode") ? mode : "all",
                       format == "records");
  } catch (const pps::TypePreservationViolation &e) {
    std::cerr << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception &e) {
    std::cerr << e.what() << "\n";
    return kExitUserError;
  }
  return kExitUserError;
}
