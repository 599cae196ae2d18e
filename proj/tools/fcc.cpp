// SPDX-License-Identifier: Apache-2.0
//
// fcc — command-line driver for the toolkit: parsing, type checking,
// evaluation, the cc/hoist/cps transformations, differential test
// campaigns, and bounded relation checks.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fcc/closure_convert.hpp"
#include "fcc/cps.hpp"
#include "fcc/eval.hpp"
#include "fcc/hoist.hpp"
#include "fcc/parser.hpp"
#include "fcc/printer.hpp"
#include "fcc/relation.hpp"
#include "fcc/testkit.hpp"
#include "fcc/typing.hpp"

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_target_path(const std::string& path) { return path.size() >= 5 && path.ends_with(".ftgt"); }

std::uint64_t default_fuel() {
  if (const char* env = std::getenv("FCC_FUEL")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw IoError("FCC_FUEL is not a number");
    }
  }
  return 500;
}

int cmd_check(const std::string& path) {
  std::string text = read_file(path);
  if (is_target_path(path)) {
    fcc::TgtTermPtr m = fcc::parse_tgt(text);
    std::cout << fcc::print_type(fcc::type_of_tgt(fcc::TgtCtx{}, m)) << "\n";
  } else {
    fcc::SrcTermPtr m = fcc::parse_src(text);
    std::cout << fcc::print_type(fcc::type_of_src(fcc::SrcCtx{}, m)) << "\n";
  }
  return 0;
}

template <class Result, class Printer>
int report_eval(const Result& r, std::uint64_t fuel, Printer&& pr) {
  switch (r.kind) {
    case Result::Kind::Value:
      std::cout << pr(r.term) << "\n" << "steps: " << r.steps << "\n";
      return 0;
    case Result::Kind::Timeout:
      std::cerr << "fcc: timeout: no value within " << fuel << " steps\n";
      return 1;
    case Result::Kind::Stuck:
      std::cerr << "fcc: stuck: " << pr(r.term) << "\n";
      return 1;
  }
  return 1;
}

int cmd_run(const std::string& path, std::uint64_t fuel) {
  std::string text = read_file(path);
  if (is_target_path(path)) {
    fcc::TgtTermPtr m = fcc::parse_tgt(text);
    if (!fcc::is_closed(m)) throw fcc::UnboundVariable(fcc::free_vars(m).front());
    return report_eval(fcc::eval(m, fuel), fuel, [](const fcc::TgtTermPtr& t) { return fcc::print_tgt(t); });
  }
  fcc::SrcTermPtr m = fcc::parse_src(text);
  if (!fcc::is_closed(m)) throw fcc::UnboundVariable(fcc::free_vars(m).front());
  return report_eval(fcc::eval(m, fuel), fuel, [](const fcc::SrcTermPtr& t) { return fcc::print_src(t); });
}

void emit(const std::string& text, bool json, const char* pass) {
  if (json) {
    nlohmann::json j{{"schema", 1}, {"pass", pass}, {"output", text}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << text << "\n";
  }
}

int cmd_cc(const std::string& path, bool json) {
  if (is_target_path(path)) throw IoError("cc expects a source (.fsrc) input");
  emit(fcc::print_tgt(fcc::cc_program(fcc::parse_src(read_file(path)))), json, "cc");
  return 0;
}

int cmd_hoist(const std::string& path, bool json) {
  if (!is_target_path(path)) throw IoError("hoist expects a target (.ftgt) input; run cc first");
  fcc::HoistedProgram p = fcc::hoist(fcc::parse_tgt(read_file(path)));
  emit(fcc::print_letfun(p.funs, p.main), json, "hoist");
  return 0;
}

int cmd_cps(const std::string& path, bool json) {
  if (is_target_path(path)) throw IoError("cps expects a source (.fsrc) input");
  emit(fcc::print_src(fcc::cps_program(fcc::parse_src(read_file(path)))), json, "cps");
  return 0;
}

int cmd_test(const std::string& pass_name, std::uint64_t count, std::uint64_t seed, std::uint64_t fuel,
             std::uint64_t transformed_fuel, bool json) {
  fcc::Pass pass;
  if (pass_name == "cc")
    pass = fcc::Pass::Cc;
  else if (pass_name == "cc+hoist")
    pass = fcc::Pass::CcHoist;
  else if (pass_name == "cps")
    pass = fcc::Pass::Cps;
  else
    throw IoError("unknown pass '" + pass_name + "' (expected cc, cc+hoist, or cps)");

  fcc::GenCfg cfg;
  cfg.seed = seed;
  cfg.fuel = fuel;
  fcc::Report report = fcc::differential_run(pass, cfg, count, transformed_fuel);

  if (json)
    std::cout << report.to_json().dump() << "\n";
  else
    std::cout << report.to_text();

  for (std::size_t i = 0; i < report.counterexamples.size(); ++i) {
    std::string file = "counterexample-" + std::to_string(i + 1) + ".fsrc";
    std::ofstream out(file, std::ios::binary);
    out << report.counterexamples[i].shrunk << "\n";
    std::cerr << "fcc: counterexample: written to " << file << "\n";
  }
  return report.counterexamples.empty() ? 0 : 1;
}

int cmd_relcheck(const std::string& type_text, unsigned index, const std::string& src_path,
                 const std::string& tgt_path, bool json) {
  fcc::SrcTy type = fcc::parse_src_type(type_text);
  fcc::SrcTermPtr m = fcc::parse_src(read_file(src_path));
  fcc::TgtTermPtr mp = fcc::parse_tgt(read_file(tgt_path));
  if (!fcc::is_closed(m)) throw fcc::UnboundVariable(fcc::free_vars(m).front());
  if (!fcc::is_closed(mp)) throw fcc::UnboundVariable(fcc::free_vars(mp).front());
  fcc::Verdict v = fcc::sim_check(type, index, m, mp, fcc::default_equiv_cfg());
  if (json) {
    std::cout << fcc::verdict_json(fcc::print_type(type), index, v).dump() << "\n";
  } else {
    std::cout << "verdict: " << fcc::verdict_name(v.kind) << "\n";
    if (!v.witness.empty()) std::cout << "witness: " << v.witness << "\n";
  }
  return v.unrelated() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compiler middle-end toolkit for a small functional language"};
  app.require_subcommand(1);

  std::string path, pass = "cc", type_text;
  std::uint64_t count = 1000, seed = 0, transformed_fuel = 20000;
  std::optional<std::uint64_t> fuel_opt;
  unsigned index = 3;
  bool json = false;
  std::string src_path, tgt_path;

  CLI::App* check = app.add_subcommand("check", "type-check a program and print its type");
  check->add_option("file", path)->required();

  CLI::App* run = app.add_subcommand("run", "evaluate a program; print the value and step count");
  run->add_option("file", path)->required();
  run->add_option("--fuel", fuel_opt, "step budget (default 500, or FCC_FUEL)");

  CLI::App* cc_cmd = app.add_subcommand("cc", "closure-convert a source program");
  cc_cmd->add_option("file", path)->required();
  cc_cmd->add_flag("--json", json);

  CLI::App* hoist_cmd = app.add_subcommand("hoist", "hoist the functions of a target program");
  hoist_cmd->add_option("file", path)->required();
  hoist_cmd->add_flag("--json", json);

  CLI::App* cps_cmd = app.add_subcommand("cps", "CPS-transform a source program of type nat");
  cps_cmd->add_option("file", path)->required();
  cps_cmd->add_flag("--json", json);

  CLI::App* test = app.add_subcommand("test", "differential campaign over generated programs");
  test->add_option("--pass", pass, "cc, cc+hoist, or cps")->required();
  test->add_option("--count", count, "number of programs (default 1000)");
  test->add_option("--seed", seed, "generator seed")->required();
  test->add_option("--fuel", fuel_opt, "source step budget (default 500, or FCC_FUEL)");
  test->add_option("--transformed-fuel", transformed_fuel, "transformed-side step budget (default 20000)");
  test->add_flag("--json", json);

  CLI::App* rel = app.add_subcommand("relcheck", "bounded simulation verdict for a source/target pair");
  rel->add_option("--type", type_text, "source type, e.g. '(-> nat nat)'")->required();
  rel->add_option("--index", index, "step index k (default 3)");
  rel->add_option("src", src_path)->required();
  rel->add_option("tgt", tgt_path)->required();
  rel->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "fcc: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    std::uint64_t fuel = fuel_opt ? *fuel_opt : default_fuel();
    if (check->parsed()) return cmd_check(path);
    if (run->parsed()) return cmd_run(path, fuel);
    if (cc_cmd->parsed()) return cmd_cc(path, json);
    if (hoist_cmd->parsed()) return cmd_hoist(path, json);
    if (cps_cmd->parsed()) return cmd_cps(path, json);
    if (test->parsed()) return cmd_test(pass, count, seed, fuel, transformed_fuel, json);
    if (rel->parsed()) return cmd_relcheck(type_text, index, src_path, tgt_path, json);
  } catch (const fcc::SyntaxError& e) {
    std::cerr << "fcc: parse-error: " << path << ":" << e.what() << "\n";
    return 2;
  } catch (const fcc::TypeError& e) {
    std::cerr << "fcc: type-error: " << e.what() << "\n";
    return 2;
  } catch (const fcc::TransformError& e) {
    std::cerr << "fcc: transform-error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "fcc: io-error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fcc: internal-error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
