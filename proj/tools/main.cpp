// lambdad: parse, typecheck, run and translate λD programs.
//
// Exit status: 0 on success, 1 on a user error (bad input, ill-typed
// program, evaluation failure), 2 when an internal invariant breaks.
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "lambdad/bridges.hpp"
#include "lambdad/cps.hpp"
#include "lambdad/errors.hpp"
#include "lambdad/machine.hpp"
#include "lambdad/oracle.hpp"
#include "lambdad/parser.hpp"
#include "lambdad/printer.hpp"
#include "lambdad/serialize.hpp"
#include "lambdad/testing/acceptance.hpp"
#include "lambdad/typechecker.hpp"

namespace {

using namespace lambdad;

// Raised for conditions the library promises never happen.
struct InvariantBreach : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string file = "-";
  std::size_t fuel = 1'000'000;
  std::string emit = "text";
  bool trace = false;
};

SourceProgram read_source(const std::string& path) {
  if (path == "-") {
    return {std::string(std::istreambuf_iterator<char>(std::cin), {}), "<stdin>"};
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open");
  return {std::string(std::istreambuf_iterator<char>(in), {}), path};
}

Term load(const Common& c) { return parse_term(read_source(c.file)); }

bool tree(const Common& c) { return c.emit == "tree"; }

Goal parse_goal(const std::string& g) {
  if (g == "program") return Goal::Program;
  if (g == "toplevel") return Goal::TopLevel;
  if (g == "any") return Goal::Any;
  throw std::invalid_argument("unknown goal '" + g + "'");
}

int cmd_parse(const Common& c) {
  Term t = load(c);
  std::cout << (tree(c) ? to_json_tree(t) : serialize(t)) << '\n';
  return 0;
}

int cmd_check(const Common& c, const std::string& goal, bool strict) {
  Term t = load(c);
  ElaborateOptions o;
  o.goal = parse_goal(goal);
  o.strict = strict;
  Elaboration el = elaborate(t, {}, o);
  for (const auto& d : el.defaulted) std::cerr << "defaulted " << d << '\n';
  std::cout << (tree(c) ? to_json_tree(el.derivation) : print_derivation(el.derivation)) << '\n';
  return 0;
}

int cmd_infer(const Common& c, bool strict) {
  Term t = load(c);
  Inference inf = infer_pure_shift(t, strict);
  for (const auto& d : inf.defaulted) std::cerr << "defaulted " << d << '\n';
  if (tree(c)) {
    std::cout << to_json_tree(inf.judgment.tau) << '\n';
  } else {
    std::cout << to_display(inf.judgment) << '\n';
  }
  return 0;
}

int cmd_run(const Common& c) {
  Term t = load(c);
  machine::Options o;
  o.fuel = c.fuel;
  if (c.trace) {
    o.trace = [](const std::string& construct, std::size_t trail, std::size_t meta) {
      std::cout << construct << ' ' << trail << ' ' << meta << '\n';
    };
  }
  machine::Result r = machine::run(t, o);
  std::cout << machine::show(r.value) << '\n';
  if (c.trace) std::cout << "steps " << r.steps << '\n';
  return 0;
}

int cmd_oracle(const Common& c) {
  Term t = load(c);
  oracle::Options o;
  o.fuel = c.fuel;
  bool first = true;
  o.on_step = [&](const Term& e) {
    std::cout << (first ? "  " : "→ ") << print_term(e, true) << '\n';
    first = false;
  };
  oracle::normalize(t, o);
  return 0;
}

int cmd_cps(const Common& c) {
  Term t = load(c);
  Elaboration el = elaborate(t);
  lc::CTerm ct = cps_term(el.derivation);
  lc::CType ty = cps_judgment_type(el.derivation.judgment);
  std::string why;
  if (!ctype_check(ct, ty, {}, &why)) throw InvariantBreach("CPS image does not typecheck: " + why);
  if (tree(c)) {
    std::cout << to_json_tree(ct) << '\n';
  } else {
    std::cout << serialize(ct) << '\n' << ": " << serialize(ty) << '\n';
  }
  return 0;
}

int cmd_bridge(const std::string& from, const std::string& to, const std::string& type, const std::string& gamma,
               std::size_t corpus, std::uint64_t seed) {
  bridge::System f = bridge::parse_system(from), t = bridge::parse_system(to);
  std::optional<bridge::BType> g;
  if (!gamma.empty()) g = bridge::parse_btype(gamma, "--gamma");
  if (corpus > 0) {
    auto rows = testing::transport_table(f, t, g, corpus, seed);
    std::cout << "term\t" << bridge::name(f) << '\t' << bridge::name(t) << '\n';
    for (const auto& row : rows) {
      std::cout << row.term << '\t' << row.source << '\t' << row.target << '\n';
    }
    return 0;
  }
  if (type.empty()) throw std::invalid_argument("bridge needs --type or --corpus");
  std::cout << bridge::to_string(bridge::translate(f, t, bridge::parse_btype(type, "--type"), g)) << '\n';
  return 0;
}

int cmd_corpus(testing::AcceptanceConfig cfg) {
  bool ok = true;
  for (const auto& r : testing::run_acceptance(cfg)) {
    std::cout << testing::format(r) << '\n';
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.what() << '\n';
    return 1;
  } catch (const EvalError& e) {
    std::cerr << "evaluation error: " << e.what() << '\n';
    return 1;
  } catch (const OracleError& e) {
    std::cerr << "reduction error: " << e.what() << '\n';
    return 1;
  } catch (const BridgeError& e) {
    std::cerr << "bridge error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const InvariantBreach& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"λD: shift, control, shift0 and control0 with trails and meta continuations"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* sub, bool fuel, bool emit) {
    sub->add_option("file", c.file, "source file, - for stdin")->capture_default_str();
    if (fuel) sub->add_option("--fuel", c.fuel, "step bound")->capture_default_str();
    if (emit) sub->add_option("--emit", c.emit, "output form")->check(CLI::IsMember({"text", "tree"}))->capture_default_str();
  };

  auto* parse = app.add_subcommand("parse", "echo the AST");
  add_common(parse, false, true);

  std::string goal = "program";
  bool strict = false;
  auto* check = app.add_subcommand("check", "typecheck and print the derivation");
  add_common(check, false, true);
  check->add_option("--goal", goal, "program | toplevel | any")->capture_default_str();
  check->add_flag("--strict", strict, "reject residual type variables");

  auto* infer = app.add_subcommand("infer", "infer a type (pure terms with shift/reset)");
  add_common(infer, false, true);
  infer->add_flag("--strict", strict, "reject residual type variables");

  auto* run = app.add_subcommand("run", "evaluate on the abstract machine");
  add_common(run, true, false);
  run->add_flag("--trace", c.trace, "one line per step: construct, trail depth, meta depth");

  auto* orc = app.add_subcommand("oracle", "print every reduction step");
  add_common(orc, true, false);

  auto* cps = app.add_subcommand("cps", "CPS-translate and print the term with its type");
  add_common(cps, false, true);

  std::string from, to, type, gamma;
  std::size_t table = 0;
  std::uint64_t seed = 1;
  auto* br = app.add_subcommand("bridge", "translate types between systems");
  br->add_option("--from", from, "DF DF2 4Dfun 4Dsr CP MB D' 4D")->required();
  br->add_option("--to", to, "target system")->required();
  br->add_option("--type", type, "type as an s-expression");
  br->add_option("--gamma", gamma, "answer type for DF -> DF2 and CP -> 4Dfun");
  br->add_option("--corpus", table, "instead of a type, tabulate verdicts on N generated terms");
  br->add_option("--seed", seed, "corpus seed")->capture_default_str();

  testing::AcceptanceConfig acc;
  auto* corpus = app.add_subcommand("corpus", "run the acceptance matrix");
  corpus->add_option("--seed", acc.seed)->capture_default_str();
  corpus->add_option("--size", acc.corpus_size, "typed corpus size")->capture_default_str();
  corpus->add_option("--archive", acc.archive_dir, "directory for counterexamples");
  corpus->add_option("--fuel", acc.fuel)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  return guarded([&] {
    if (*parse) return cmd_parse(c);
    if (*check) return cmd_check(c, goal, strict);
    if (*infer) return cmd_infer(c, strict);
    if (*run) return cmd_run(c);
    if (*orc) return cmd_oracle(c);
    if (*cps) return cmd_cps(c);
    if (*br) return cmd_bridge(from, to, type, gamma, table, seed);
    return cmd_corpus(acc);
  });
}
