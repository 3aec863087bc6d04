// dfield: verification suites, solvers, convergence studies and the Poynting demo.
// Exit status 0 on success, 1 when a check fails or a solver gives up, 2 on usage errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "dfield/approximation.hpp"
#include "dfield/dirac.hpp"
#include "dfield/errors.hpp"
#include "dfield/io.hpp"
#include "dfield/klein_gordon.hpp"
#include "dfield/maxwell.hpp"
#include "dfield/network.hpp"
#include "dfield/variational.hpp"
#include "dfield/verify.hpp"

using namespace dfield;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct RunConfig {
  std::vector<int> grid;  // d N
  std::string theory;
  double mass = 1.0;
  int rank = 1;
  unsigned long long seed = 1;
  std::optional<double> tol;
  std::string out;

  // verify
  int instances = 100;
  std::vector<std::string> suites;
  int threads = 0;
  bool inject_sign_bug = false;
  // solve
  double current_scale = 0.0;
  bool gauged = false;
  // converge
  std::string reference = "smooth";
  std::vector<int> sizes;
  int dim = 0;
  bool initial_grid = false;
};

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ConfigurationError("cannot write " + c.out);
  f << text;
}

int grid_d(const RunConfig& c, int fallback) { return c.grid.empty() ? fallback : c.grid[0]; }
int grid_n(const RunConfig& c, int fallback) { return c.grid.empty() ? fallback : c.grid[1]; }

GridPtr checked_grid(int d, int n) {
  if (d < 1 || d > kMaxDim) throw ConfigurationError("grid dimension must be in 1.." + std::to_string(kMaxDim));
  if (n < 1) throw ConfigurationError("grid size must be positive");
  return make_grid(d, n);
}

int cmd_verify(const RunConfig& c) {
  VerifyConfig v;
  v.seed = c.seed;
  v.instances = c.instances;
  if (c.tol) v.tolerance = *c.tol;
  v.suites = c.suites;
  v.threads = c.threads;
  v.inject_sign_bug = c.inject_sign_bug;
  const VerifyReport report = run_verify(v);
  emit(c, report_jsonl(report));
  for (const std::string& name : report.failures()) std::cerr << "FAILED " << name << "\n";
  std::cerr << report.checks.size() - report.failures().size() << "/" << report.checks.size() << " checks passed\n";
  return report.passed() ? kPass : kFail;
}

Json header(const std::string& theory, const GridPtr& g, const RunConfig& c) {
  return Json{{"theory", theory}, {"grid", {{"d", g->d()}, {"N", g->n()}}}, {"seed", c.seed}};
}

int cmd_solve(const RunConfig& c) {
  Rng rng(c.seed);
  const double tol = c.tol.value_or(1e-8);
  if (c.mass < 0) throw ConfigurationError("mass must be nonnegative");
  if (c.rank < 1 || c.rank > 4) throw ConfigurationError("rank must be in 1..4");
  Json out;
  double worst = 0.0;
  if (c.theory == "network") {
    auto g = checked_grid(grid_d(c, 2), grid_n(c, 8));
    const NetworkSolution sol = solve_network(dipole_source(g));
    const NetworkDefects def = network_defects(sol);
    out = header("network", g, c);
    out["potential"] = to_json(sol.potential);
    out["current"] = to_json(sol.current);
    if (g->d() == 2) out["magnetic"] = to_json(sol.magnetic);
    out["residuals"] = {{"kirchhoff_current", def.kirchhoff_current}, {"kirchhoff_voltage", def.kirchhoff_voltage},
                        {"ampere", def.ampere},       {"energy", def.energy},
                        {"momentum", def.momentum},   {"stress", def.stress},
                        {"tellegen", def.tellegen}};
    worst = def.max();
  } else if (c.theory == "maxwell") {
    auto g = checked_grid(grid_d(c, 3), grid_n(c, 4));
    if (g->d() < 2) throw ConfigurationError("maxwell needs d >= 2");
    const MaxwellSolution sol = maxwell_from_potential(free_maxwell_potential(g, rng));
    const MaxwellDefects def = maxwell_defects(sol);
    out = header("maxwell", g, c);
    out["potential"] = to_json(sol.potential);
    out["field"] = to_json(sol.field);
    const double source = interior_max(sol.current);
    out["residuals"] = {{"bianchi", def.bianchi},         {"source", def.source},
                        {"charge", def.charge},           {"field_momentum", def.field_momentum},
                        {"total_momentum", def.total_momentum}, {"interior_current", source}};
    worst = std::max(def.max(), source);
  } else if (c.theory == "gauge") {
    auto g = checked_grid(grid_d(c, 2), grid_n(c, 2));
    if (g->d() < 2) throw ConfigurationError("gauge needs d >= 2");
    const Cochain j = c.current_scale * random_cochain(g, 1, c.rank, c.rank, rng);
    const GaugeLagrangian l = wilson_lagrangian(g, c.rank, j);
    GaugeSolveOptions options;
    if (c.tol) options.tol = *c.tol;
    const GaugeSolveResult sol = solve_gauge(l, GaugeField::identity(g, c.rank), options);
    out = header("gauge", g, c);
    out["rank"] = c.rank;
    out["current"] = to_json(j);
    out["field"] = to_json(sol.field);
    const double charge = interior_max(charge_defect(sol.field, j));
    out["residuals"] = {{"yang_mills", sol.residual}, {"charge", charge}};
    out["iterations"] = sol.iterations;
    out["restarts"] = sol.restarts;
    worst = std::max(sol.residual, charge);
  } else if (c.theory == "klein_gordon") {
    auto g = checked_grid(grid_d(c, 2), grid_n(c, 4));
    std::optional<GaugeField> u;
    if (c.gauged) u = GaugeField::random(g, c.rank, rng);
    const Cochain data = random_cochain(g, 0, 1, c.rank, rng);
    const KleinGordonSolution sol = klein_gordon(c.mass, data, u ? &*u : nullptr);
    out = header("klein_gordon", g, c);
    out["mass"] = c.mass;
    if (u) out["gauge_field"] = to_json(*u);
    out["field"] = to_json(sol.field);
    const double charge = u ? interior_max(charge_defect(*u, klein_gordon_covariant_current(sol.field, *u)))
                            : interior_max(boundary(klein_gordon_current(sol.field)));
    out["residuals"] = {{"equation", sol.equation_residual}, {"charge", charge}};
    worst = std::max(sol.equation_residual, charge);
  } else if (c.theory == "dirac") {
    auto g = checked_grid(grid_d(c, 4), grid_n(c, 2));
    if (g->d() != 4) throw ConfigurationError("dirac needs d = 4");
    std::optional<GaugeField> u;
    if (c.gauged) u = GaugeField::random(g, c.rank, rng);
    const Cochain data = random_cochain(g, 0, 4, c.rank, rng);
    const DiracSolution sol = dirac(c.mass, data, u ? &*u : nullptr);
    out = header("dirac", g, c);
    out["mass"] = c.mass;
    if (u) out["gauge_field"] = to_json(*u);
    out["field"] = to_json(sol.field);
    const double charge = u ? interior_max(charge_defect(*u, dirac_covariant_current(sol.field)))
                            : interior_max(boundary(dirac_current(sol.field)));
    out["residuals"] = {{"equation", sol.equation_residual}, {"charge", charge}};
    worst = std::max(sol.equation_residual, charge);
  } else {
    throw ConfigurationError("solve needs --theory network|maxwell|gauge|klein_gordon|dirac");
  }
  out["tolerance"] = tol;
  out["passed"] = worst <= tol;
  emit(c, out.dump(1) + "\n");
  return worst <= tol ? kPass : kFail;
}

int cmd_converge(const RunConfig& c) {
  const Theory t = parse_theory(c.theory.empty() ? "network" : c.theory);
  StudyOptions options;
  if (c.dim) options.d = c.dim;
  options.mass = c.mass;
  options.sizes = c.sizes;
  options.initial_grid = c.initial_grid;
  const std::vector<ErrorRow> rows = approximation_study(t, parse_reference(c.reference), options);
  emit(c, error_table_csv(rows));
  return kPass;
}

int cmd_demo_poynting(const RunConfig& c) {
  if (grid_d(c, 3) != 3) throw ConfigurationError("the Poynting demo runs on I^3_N");
  const PoyntingReport r = poynting_demo(grid_n(c, 4), c.seed);
  const double tol = c.tol.value_or(1e-10);
  const bool ok = r.energy_identity <= tol && r.momentum_identity <= tol;
  const Json out{{"demo", "poynting"},
                 {"grid", {{"d", 3}, {"N", r.n}}},
                 {"seed", r.seed},
                 {"cubes", r.cubes},
                 {"field_scale", r.field_scale},
                 {"energy_identity", r.energy_identity},
                 {"momentum_identity", r.momentum_identity},
                 {"off_shell_identity", r.off_shell_identity},
                 {"tolerance", tol},
                 {"passed", ok}};
  emit(c, out.dump(1) + "\n");
  return ok ? kPass : kFail;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_option("--tol", c.tol, "tolerance override");
  sub->add_option("--out", c.out, "output file (default stdout)");
}

void add_grid(CLI::App* sub, RunConfig& c) {
  sub->add_option("--grid", c.grid, "dimension d and size N")->expected(2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete field theory on cubical grids"};
  app.require_subcommand(1);
  RunConfig c;

  auto* verify = app.add_subcommand("verify", "run the identity and conservation suites (JSON lines)");
  add_common(verify, c);
  verify->add_option("--instances", c.instances, "random instances per identity check")->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify->add_option("--suite", c.suites, "restrict to suites (repeatable)");
  verify->add_option("--threads", c.threads, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
  verify->add_flag("--inject-sign-bug", c.inject_sign_bug, "test mode: break the cup Leibniz check");

  auto* solve = app.add_subcommand("solve", "solve one theory and report field and residuals (JSON)");
  add_common(solve, c);
  add_grid(solve, c);
  solve->add_option("--theory", c.theory, "network|maxwell|gauge|klein_gordon|dirac")->required();
  solve->add_option("--mass", c.mass, "mass m")->capture_default_str();
  solve->add_option("--rank", c.rank, "gauge rank n")->capture_default_str();
  solve->add_option("--current-scale", c.current_scale, "gauge: amplitude of the random current")->capture_default_str();
  solve->add_flag("--gauged", c.gauged, "klein_gordon/dirac: couple to a random gauge field");

  auto* converge = app.add_subcommand("converge", "approximation study (CSV)");
  add_common(converge, c);
  converge->add_option("--theory", c.theory, "network|maxwell_tensor|klein_gordon|dirac");
  converge->add_option("--reference", c.reference, "smooth|zero|constant")->capture_default_str();
  converge->add_option("--sizes", c.sizes, "grid sizes N")->delimiter(',');
  converge->add_option("--dim", c.dim, "dimension for maxwell_tensor and klein_gordon");
  converge->add_option("--mass", c.mass, "mass m")->capture_default_str();
  converge->add_flag("--initial-grid", c.initial_grid, "network: compare on the plain grid");

  auto* poynting = app.add_subcommand("demo-poynting", "Poynting identity on a free Maxwell field (JSON)");
  add_common(poynting, c);
  add_grid(poynting, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*verify) return cmd_verify(c);
    if (*solve) return cmd_solve(c);
    if (*converge) return cmd_converge(c);
    return cmd_demo_poynting(c);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const NoSolutionError& e) {
    std::cerr << "no solution: " << e.what() << " (residual " << e.residual << ")\n";
    return kFail;
  } catch (const ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << " (residual " << e.residual << ")\n";
    return kFail;
  }
}
