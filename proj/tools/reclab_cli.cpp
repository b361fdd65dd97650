#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "reclab/reclab.hpp"

using namespace reclab;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 64;

struct RunConfig {
  u64 p = 3;
  int m = 1;
  int N = 8;
  int D = 18;
  std::optional<u64> seed_flag;
  u64 seed = 0;
  std::size_t trials = 100;
  bool json = false;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--p", cfg.p, "prime (3, 5 or 7)");
  cmd->add_option("--m", cfg.m, "unramified degree exponent, [M:L] = p^m (1 or 2)");
  cmd->add_option("-N,--precision", cfg.N, "p-adic working precision");
  cmd->add_option("--trunc-D", cfg.D, "series truncation degree");
  cmd->add_option("--seed", cfg.seed_flag, "random seed (overrides REC_LAB_SEED)");
  cmd->add_option("--trials", cfg.trials, "number of random trials");
  cmd->add_flag("--json", cfg.json, "JSON output");
}

void finalize(RunConfig& cfg) {
  if (cfg.p != 3 && cfg.p != 5 && cfg.p != 7) fail(Errc::UnsupportedPrime, "--p must be 3, 5 or 7");
  if (cfg.m != 1 && cfg.m != 2) fail(Errc::ConstructionFailed, "--m must be 1 or 2");
  if (cfg.N < 4) fail(Errc::PrecisionTooLow, "-N must be at least 4");
  if (cfg.trials < 1) fail(Errc::ConstructionFailed, "--trials must be at least 1");
  if (cfg.seed_flag) {
    cfg.seed = *cfg.seed_flag;
  } else if (const char* env = std::getenv("REC_LAB_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      fail(Errc::ParseError, "REC_LAB_SEED is not an integer");
    }
  }
}

int print_rows(const std::string& title, const std::vector<CheckRow>& rows, bool as_json) {
  const bool ok = all_pass(rows);
  if (as_json) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back({{"name", r.name}, {"status", r.pass ? "PASS" : "FAIL"}, {"detail", r.detail}});
    std::cout << json{{"suite", title}, {"rows", arr}, {"pass", ok}}.dump(2) << "\n";
  } else {
    std::cout << "== " << title << "\n";
    for (const auto& r : rows) {
      std::cout << (r.pass ? "PASS  " : "FAIL  ") << r.name;
      if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
      std::cout << "\n";
    }
  }
  return ok ? 0 : 1;
}

int cmd_symbol(const RunConfig& cfg, const std::string& t_expr, const std::string& x_expr) {
  auto ctx = SymbolContext::make(cfg.p, cfg.m, cfg.N);
  const TowerElement t = parse_element(ctx.lo, t_expr);
  const TowerElement x = parse_element(ctx.lo, x_expr);
  const CompareReport rep = compare_all(ctx, t, x);
  if (cfg.json) {
    json j = to_json(rep);
    j["t"] = to_string(t);
    j["x"] = to_string(x);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "t = " << to_string(t) << "  (k = " << rep.k << ")\n";
    std::cout << "x = " << to_string(x) << "\n";
    for (const auto& r : rep.routes) {
      std::cout << "  " << method_name(r.method) << ": ";
      if (r.result)
        std::cout << "gamma = " << r.result->gamma << (r.result->stable ? "" : " (unstable at N+2)");
      else
        std::cout << errc_name(*r.error) << " (" << r.message << ")";
      std::cout << "\n";
    }
    std::cout << "verdict: " << verdict_name(rep.verdict) << "\n";
  }
  return rep.exit_code();
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  int rc = 0;
  const bool all = suite == "all";
  if (all || suite == "lemmas") rc |= print_rows("lemmas", lemma_suite(cfg.p, cfg.N), cfg.json);
  if (all || suite == "basis") rc |= print_rows("basis", basis_suite(cfg.p), cfg.json);
  if (all || suite == "generators")
    rc |= print_rows("generators", generator_suite(make_generators(make_tower(cfg.p, cfg.m, cfg.N))), cfg.json);
  if (all || suite == "symbol")
    rc |= print_rows("symbol", symbol_suite(SymbolContext::make(cfg.p, cfg.m, cfg.N), cfg.seed, cfg.trials), cfg.json);
  if (all || suite == "lubin_tate") rc |= print_rows("lubin_tate", lubin_tate_suite(cfg.p, cfg.D), cfg.json);
  return rc;
}

int cmd_generators(const RunConfig& cfg) {
  const GeneratorSystem g = make_generators(make_tower(cfg.p, cfg.m, cfg.N));
  if (cfg.json) {
    std::cout << to_json(g).dump(2) << "\n";
    return g.all_pass() ? 0 : 1;
  }
  std::cout << "chi   = " << to_string(g.chi) << "\n";
  std::cout << "xi    = " << to_string(g.xi) << "\n";
  std::cout << "omega = " << to_string(g.omega) << "\n";
  for (std::size_t i = 0; i < g.thetas.size(); ++i)
    std::cout << "theta_" << i + 1 << " = " << to_string(g.thetas[i]) << "\n";
  return print_rows("generator checks", generator_suite(g), false);
}

int cmd_lubin_tate(const RunConfig& cfg, u64 q) {
  const AxiomReport rep = lt_check_axioms(lt_make(cfg.p, q, cfg.D));
  if (cfg.json) {
    std::cout << to_json(rep).dump(2) << "\n";
    return rep.all_pass() ? 0 : 1;
  }
  std::vector<CheckRow> rows;
  for (const auto& r : rep.results)
    rows.push_back({r.name, r.pass, (r.pass ? "exact below degree " : "first failure at degree ") + std::to_string(r.first_failure)});
  return print_rows("Lubin-Tate axioms, D = " + std::to_string(rep.D), rows, false);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalised Hilbert symbol for unramified division"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string t_expr = "P", x_expr;
  auto* sym = app.add_subcommand("symbol", "compute gamma by every route and compare");
  add_common(sym, cfg);
  sym->add_option("--t", t_expr, "first argument (tower element)");
  sym->add_option("--x", x_expr, "second argument (tower element)")->required();

  std::string suite = "all";
  auto* ver = app.add_subcommand("verify", "run invariant suites");
  add_common(ver, cfg);
  ver->add_option("--suite", suite, "all|lemmas|basis|generators|symbol|lubin_tate")
      ->check(CLI::IsMember({"all", "lemmas", "basis", "generators", "symbol", "lubin_tate"}));

  auto* gen = app.add_subcommand("generators", "build and dump the generator system");
  add_common(gen, cfg);

  u64 q = 0;
  auto* lt = app.add_subcommand("lubin-tate", "check the Lubin-Tate law axioms");
  add_common(lt, cfg);
  lt->add_option("--q", q, "residue field size of the law (default p)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    finalize(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (sym->parsed()) return cmd_symbol(cfg, t_expr, x_expr);
    if (ver->parsed()) return cmd_verify(cfg, suite);
    if (gen->parsed()) return cmd_generators(cfg);
    if (lt->parsed()) return cmd_lubin_tate(cfg, q ? q : cfg.p);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::ParseError ? kExitUsage : 1;
  }
  return kExitUsage;
}
