// brnr: obstruction reports for central extensions of elementary abelian
// p-groups.
//
// Exit codes: 0 ok, 2 parse error, 3 domain/validation error, 4 budget
// refusal, 5 oracle disagreement or selftest failure, 1 internal error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "brnr/acceptance.hpp"
#include "brnr/errors.hpp"
#include "brnr/explorer.hpp"
#include "brnr/extalg.hpp"
#include "brnr/groupspec.hpp"
#include "brnr/io.hpp"
#include "brnr/obstr.hpp"

namespace {

using namespace brnr;

constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitBudget = 4;
constexpr int kExitDisagree = 5;
constexpr int kExitInternal = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string file_stem(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = base.rfind('.');
  return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
}

Thm34Sign parse_variant(const std::string& v) {
  if (v == "sec3") return Thm34Sign::sec3;
  if (v == "printed") return Thm34Sign::printed;
  throw DomainError("variant must be printed or sec3");
}

struct Options {
  bool machine = false;

  // builtin parameters
  std::int64_t p = 0;
  std::int64_t t = 1;
  std::int64_t a = 0;
  std::int64_t b = 1;
  int n = 2;
  std::string variant = "sec3";

  std::string file;
  std::string name;
  std::string w;

  std::string explicit_file;
  std::vector<std::uint64_t> random;
  int exhaustive = 0;

  std::uint64_t budget = 10'000'000;
  std::vector<int> degrees{2};

  std::string selftest_variant = "sec3";
};

BuiltinParams builtin_params(const Options& o) {
  BuiltinParams bp;
  bp.p = o.p;
  bp.t = o.t;
  bp.a = o.a;
  bp.b = o.b;
  bp.n = o.n;
  bp.variant = parse_variant(o.variant);
  return bp;
}

int cmd_report(const Options& o) {
  const CentralExtensionSpec spec = parse_presentation(read_file(o.file), file_stem(o.file));
  const ObstructionReport r = report(spec);
  if (o.machine)
    std::cout << to_json(r).dump() << '\n';
  else
    std::cout << to_text(r);
  return 0;
}

int cmd_builtin(const Options& o) {
  const BuiltinParams bp = builtin_params(o);
  const CentralExtensionSpec spec = builtin(o.name, bp);
  const ObstructionReport r = report(spec);
  const PrimeField& f = spec.field();

  Json extra = Json::object();
  std::string preface;
  if (o.name == "thm2.6") {
    const Scalar t = f.reduce(bp.t);
    const bool square = f.is_square(t);
    extra["t"] = t;
    extra["t_is_square"] = square;
    extra["expected_h3_lower_dim"] = square ? 0 : 2;
    preface = "t = " + std::to_string(t) + " is " + (square ? "a square" : "a non-square") + " mod " +
              std::to_string(f.p()) + ", so K3max/K3 is expected to have dimension " + (square ? "0" : "2") + '\n';
  } else if (o.name == "thm3.4") {
    const bool printed = bp.variant == Thm34Sign::printed;
    extra["variant"] = printed ? "printed" : "sec3";
    preface = printed ? "variant: printed sign, [u1,u6]^-1 = v7\n" : "variant: sec3 sign, [u1,u6] = v7\n";
  }

  if (o.machine) {
    Json j = to_json(r);
    for (auto& [k, v] : extra.items()) j[k] = v;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << preface << to_text(r);
  }
  return 0;
}

int cmd_xw(const Options& o) {
  const PrimeField f(o.p);
  const MultiVector w = parse_multivector(o.w, f, o.n, Side::primal);
  if (w.degree() != 3) throw DimensionError("w must be a trivector");
  const Subspace xw = compute_xw(w);
  const auto witness = partial_decomposability_witness(w);
  if (o.machine) {
    Json j;
    j["p"] = f.p();
    j["n"] = o.n;
    j["w"] = to_string(w);
    j["dim"] = xw.dim();
    j["basis"] = multivectors_json(as_multivectors(xw, o.n, 2, Side::dual));
    j["partially_decomposable"] = witness.has_value();
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "w = " << to_string(w) << '\n';
    std::cout << "dim X_w = " << xw.dim() << '\n';
    for (const MultiVector& x : as_multivectors(xw, o.n, 2, Side::dual)) std::cout << "  " << to_string(x) << '\n';
    if (witness) {
      std::cout << "w is partially decomposable (w ^ u0 = 0 for u0 = "
                << to_string(MultiVector::vector(f, Side::primal, *witness))
                << "); it lies in S3_dec for every K2, so it is not a search target\n";
    } else {
      std::cout << "w is not partially decomposable: eligible search target\n";
    }
  }
  return 0;
}

/// One candidate per non-empty line: dual bivectors separated by ';'.
std::vector<std::vector<MultiVector>> parse_candidates(const std::string& text, const PrimeField& f, int n) {
  std::vector<std::vector<MultiVector>> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<MultiVector> gens;
    std::istringstream fields(line);
    std::string item;
    while (std::getline(fields, item, ';')) {
      if (item.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        gens.push_back(parse_multivector(item, f, n, Side::dual));
      } catch (const ParseError& e) {
        throw ParseError(lineno, e.what());
      }
      if (gens.back().degree() != 2) throw ParseError(lineno, "candidate generators must be bivectors");
    }
    out.push_back(std::move(gens));
  }
  return out;
}

int cmd_search(const Options& o) {
  const PrimeField f(o.p);
  const MultiVector w = parse_multivector(o.w, f, 6, Side::primal);
  if (w.degree() != 3) throw DimensionError("w must be a trivector");

  SearchStrategy strategy;
  const int chosen = (o.explicit_file.empty() ? 0 : 1) + (o.random.empty() ? 0 : 1) + (o.exhaustive > 0 ? 1 : 0);
  if (chosen != 1) throw DomainError("choose exactly one of --explicit, --random, --exhaustive");
  if (!o.explicit_file.empty()) {
    strategy = ExplicitStrategy{parse_candidates(read_file(o.explicit_file), f, 6)};
  } else if (!o.random.empty()) {
    const int k = static_cast<int>(o.random[0]);
    strategy = RandomStrategy{k, k, o.random[2], static_cast<std::size_t>(o.random[1])};
  } else {
    strategy = ExhaustiveStrategy{o.exhaustive};
  }

  std::size_t counts[3] = {0, 0, 0};
  if (!o.machine) std::cout << "w = " << to_string(w) << ", dim X_w = " << compute_xw(w).dim() << '\n';
  search(w, strategy, [&](const SearchOutcome& out) {
    ++counts[static_cast<int>(out.classification)];
    if (o.machine)
      std::cout << to_json(out).dump() << '\n';
    else
      std::cout << to_text(out);
  });
  if (!o.machine) {
    std::cout << "harmful " << counts[0] << ", brauer-obstructed " << counts[1] << ", clean " << counts[2] << '\n';
  }
  return 0;
}

int cmd_oracle(const Options& o) {
  const CentralExtensionSpec spec = o.name.empty() ? parse_presentation(read_file(o.file), file_stem(o.file))
                                                   : builtin(o.name, builtin_params(o));
  const ObstructionReport r = report(spec);
  const int n = spec.dim_u();

  struct Check {
    std::string label;
    int d;
    std::optional<bool> agree;
    std::string detail;
  };
  std::vector<Check> checks;
  auto run = [&](const std::string& label, int d, auto&& oracle) {
    const Subspace& fast = d == 2 ? r.s2dec : r.s3dec;
    Check c{label, d, std::nullopt, {}};
    try {
      const Subspace slow = oracle();
      c.agree = slow == fast;
      c.detail = render_subspace(slow, n, d, Side::primal);
    } catch (const BudgetExceeded& e) {
      c.detail = e.what();
    }
    checks.push_back(std::move(c));
  };
  for (const int d : o.degrees) {
    if (d != 2 && d != 3) throw DomainError("--degree must be 2 or 3");
    if (d > n) continue;
    const Subspace& s = d == 2 ? r.s2 : r.s3;
    run("factor enumeration, d=" + std::to_string(d), d, [&] { return sdec_oracle(s, n, d, o.budget); });
    if (d == 2) run("Plucker enumeration, d=2", 2, [&] { return plucker_oracle_s2(r.s2, n, o.budget); });
  }

  bool disagree = false;
  bool refused = false;
  Json arr = Json::array();
  for (const Check& c : checks) {
    disagree |= c.agree.has_value() && !*c.agree;
    refused |= !c.agree.has_value();
    const char* status = !c.agree ? "refused" : (*c.agree ? "agree" : "DISAGREE");
    if (o.machine) {
      arr.push_back(Json{{"oracle", c.label}, {"status", status}, {"detail", c.detail}});
    } else {
      std::cout << c.label << ": " << status << "  " << c.detail << '\n';
    }
  }
  if (o.machine) {
    Json j;
    j["name"] = r.name;
    j["p"] = r.field.p();
    j["budget"] = o.budget;
    j["checks"] = std::move(arr);
    std::cout << j.dump() << '\n';
  }
  if (disagree) return kExitDisagree;
  if (refused) return kExitBudget;
  return 0;
}

int cmd_selftest(const Options& o) {
  AcceptanceOptions opts;
  opts.thm34 = parse_variant(o.selftest_variant);
  bool all = true;
  Json arr = Json::array();
  const auto start = std::chrono::steady_clock::now();
  for (int id = 1; id <= kCriterionCount; ++id) {
    const auto t0 = std::chrono::steady_clock::now();
    const CriterionResult res = run_criterion(id, opts);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all &= res.passed;
    if (o.machine) {
      arr.push_back(Json{{"id", res.id}, {"title", res.title}, {"passed", res.passed}, {"notes", res.notes},
                         {"seconds", secs}});
    } else {
      std::cout << summary_line(res) << "  (" << std::fixed << std::setprecision(2) << secs << " s)\n";
      for (const std::string& note : res.notes) std::cout << "        " << note << '\n';
      std::cout.flush();
    }
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.machine) {
    std::cout << Json{{"passed", all}, {"criteria", std::move(arr)}}.dump() << '\n';
  } else {
    std::cout << (all ? "selftest passed" : "selftest FAILED") << " in " << std::fixed << std::setprecision(1) << total
              << " s\n";
  }
  return all ? 0 : kExitDisagree;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unramified Brauer and degree-three obstructions for central extensions over F_p"};
  app.require_subcommand(1, 1);
  Options o;
  app.add_flag("--machine", o.machine, "JSON output");

  auto add_p = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--p", o.p, "odd prime");
    if (required) opt->required();
  };
  auto add_builtin_params = [&](CLI::App* sub) {
    sub->add_option("--t", o.t, "thm2.6 parameter (mod p)");
    sub->add_option("--a", o.a, "prop3.3 parameter a (mod p)");
    sub->add_option("--b", o.b, "prop3.3 parameter b (mod p)");
    sub->add_option("--n", o.n, "extraspecial half-rank");
    sub->add_option("--variant", o.variant, "thm3.4 sign: printed or sec3");
  };
  // --machine is accepted after the subcommand too.
  auto add_machine = [&](CLI::App* sub) { sub->add_flag("--machine", o.machine, "JSON output"); };

  auto* report_cmd = app.add_subcommand("report", "report for a presentation file");
  report_cmd->add_option("FILE", o.file, "presentation file")->required();
  add_machine(report_cmd);

  auto* builtin_cmd = app.add_subcommand("builtin", "report for a builtin group");
  builtin_cmd->add_option("NAME", o.name, "builtin name")->required();
  add_p(builtin_cmd, true);
  add_builtin_params(builtin_cmd);
  add_machine(builtin_cmd);

  auto* xw_cmd = app.add_subcommand("xw", "X_w for a trivector w");
  add_p(xw_cmd, true);
  xw_cmd->add_option("--n", o.n, "dim U")->required();
  xw_cmd->add_option("--w", o.w, "trivector, e.g. (1,2,3)+(3,4,5)+(5,6,1)")->required();
  add_machine(xw_cmd);

  auto* search_cmd = app.add_subcommand("search", "evaluate subspaces K2 of X_w (dim U = 6)");
  add_p(search_cmd, true);
  search_cmd->add_option("--w", o.w, "target trivector")->required();
  search_cmd->add_option("--explicit", o.explicit_file, "file with one candidate per line");
  search_cmd->add_option("--random", o.random, "K COUNT SEED")->expected(3);
  search_cmd->add_option("--exhaustive", o.exhaustive, "K");
  add_machine(search_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "compare S_dec against brute-force enumeration");
  oracle_cmd->add_option("FILE", o.file, "presentation file");
  oracle_cmd->add_option("--builtin", o.name, "builtin name");
  add_p(oracle_cmd, false);
  add_builtin_params(oracle_cmd);
  oracle_cmd->add_option("--budget", o.budget, "maximum enumeration size per oracle");
  oracle_cmd->add_option("--degree", o.degrees, "degrees to check (2, 3)");
  add_machine(oracle_cmd);

  auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance table at p = 3, 5, 7");
  selftest_cmd->add_option("--thm34-variant", o.selftest_variant, "sign asserted in row 4: sec3 or printed");
  add_machine(selftest_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*report_cmd) return cmd_report(o);
    if (*builtin_cmd) return cmd_builtin(o);
    if (*xw_cmd) return cmd_xw(o);
    if (*search_cmd) return cmd_search(o);
    if (*oracle_cmd) {
      if (o.file.empty() == o.name.empty()) throw DomainError("oracle needs exactly one of FILE or --builtin");
      if (!o.name.empty() && o.p == 0) throw DomainError("--builtin needs --p");
      return cmd_oracle(o);
    }
    if (*selftest_cmd) return cmd_selftest(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kExitBudget;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
