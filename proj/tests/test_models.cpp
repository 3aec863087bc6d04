#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dfield/approximation.hpp"
#include "dfield/dirac.hpp"
#include "dfield/errors.hpp"
#include "dfield/gamma.hpp"
#include "dfield/io.hpp"
#include "dfield/klein_gordon.hpp"
#include "dfield/maxwell.hpp"
#include "dfield/network.hpp"
#include "dfield/variational.hpp"
#include "support.hpp"

using namespace dfield;
using testing_support::relative_gap;

namespace {

double value(const Cochain& c, const Face& f) { return c.at(f)(0, 0).real(); }

double pair_real(const Cochain& a, const Cochain& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i].adjoint() * b[i]).trace().real();
  return s;
}

}  // namespace

TEST_CASE("network with zero source is zero") {
  auto g = make_grid(2, 4);
  const NetworkSolution sol = solve_network(Cochain(g, 0, 1, 1));
  CHECK(sol.potential.max_abs() == 0.0);
  CHECK(sol.current.max_abs() == 0.0);
  CHECK(sol.magnetic.max_abs() == 0.0);
  CHECK(sol.heat.max_abs() == 0.0);
  CHECK(sol.stress[0].max_abs() == 0.0);
}

TEST_CASE("network on a path carries the source as current") {
  auto g = make_grid(1, 5);
  Cochain s(g, 0, 1, 1);
  s.at(Face{0})(0, 0) = 0.75;
  s.at(Face{10})(0, 0) = -0.75;
  const NetworkSolution sol = solve_network(s);
  for (std::size_t i = 0; i < sol.current.size(); ++i) CHECK(sol.current[i](0, 0).real() == doctest::Approx(0.75));
  CHECK(network_defects(sol).max() < 1e-12);
}

TEST_CASE("dipole network obeys every law, including Tellegen") {
  auto g = make_grid(2, 8);
  const NetworkSolution sol = solve_network(dipole_source(g));
  const NetworkDefects def = network_defects(sol);
  CHECK(def.kirchhoff_current < 1e-10);
  CHECK(def.kirchhoff_voltage < 1e-10);
  CHECK(def.ampere < 1e-10);
  CHECK(def.energy < 1e-10);
  CHECK(def.momentum < 1e-10);
  CHECK(def.stress < 1e-10);
  CHECK(def.tellegen < 1e-10);
  CHECK(std::abs(pair_real(coboundary(sol.potential), sol.current) + pair_real(sol.potential, sol.source)) < 1e-10);
  CHECK(value(sol.potential, Face{8, 8}) == 0.0);
  CHECK(value(sol.potential, Face{0, 8}) > value(sol.potential, Face{16, 8}));
}

TEST_CASE("network rejects bad sources") {
  auto g = make_grid(2, 3);
  Cochain s(g, 0, 1, 1);
  s.at(Face{0, 0})(0, 0) = 1.0;
  CHECK_THROWS_AS(solve_network(s), NoSolutionError);
  Cochain inner(g, 0, 1, 1);
  inner.at(Face{2, 2})(0, 0) = 1.0;
  inner.at(Face{0, 0})(0, 0) = -1.0;
  CHECK_THROWS_AS(solve_network(inner), DomainError);
  CHECK_THROWS_AS(solve_network(Cochain(make_grid(3, 2), 0, 1, 1)), DimensionError);
}

TEST_CASE("Maxwell from a potential") {
  Rng rng(1);
  auto g = make_grid(3, 2);
  const MaxwellSolution zero = maxwell_from_potential(Cochain(g, 1, 1, 1));
  CHECK(zero.field.max_abs() == 0.0);
  CHECK(zero.current.max_abs() == 0.0);
  CHECK(zero.total_tensor.max_abs() == 0.0);

  const Cochain gauge = random_cochain(g, 0, 1, 1, rng, false);
  const MaxwellSolution pure = maxwell_from_potential(coboundary(gauge));
  CHECK(pure.field.max_abs() < 1e-14);
  CHECK(pure.current.max_abs() < 1e-14);

  const Cochain a = random_cochain(g, 1, 1, 1, rng, false);
  const MaxwellSolution sol = maxwell_from_potential(a);
  CHECK(boundary(sol.current).max_abs() < 1e-13);
  CHECK(maxwell_defects(sol).max() < 1e-12);
  const MaxwellSolution shifted = maxwell_from_potential(a + coboundary(gauge));
  CHECK(relative_gap(shifted.current, sol.current) < 1e-13);
}

TEST_CASE("free Maxwell potentials and the Poynting identity") {
  Rng rng(2);
  auto g = make_grid(3, 4);
  const Cochain a = free_maxwell_potential(g, rng);
  CHECK(interior_max(maxwell_from_potential(a).current) < 1e-10);
  CHECK(poynting_identity(Cochain(g, 2, 1, 1)) == 0.0);
  const PoyntingReport r = poynting_demo(4, 7);
  CHECK(r.cubes == 8);
  CHECK(r.energy_identity <= 1e-10);
  CHECK(r.momentum_identity <= 1e-10);
  CHECK(r.off_shell_identity > 1e-4);
  CHECK_THROWS_AS(poynting_demo(2, 7), DomainError);
}

TEST_CASE("Wilson theory") {
  Rng rng(3);
  auto g = make_grid(2, 2);
  const GaugeField one = GaugeField::identity(g, 1);
  CHECK(wilson_holonomy_action(one, Cochain(g, 1, 1, 1)) == 0.0);
  CHECK(gauge_action(wilson_theory(g, 1, Cochain(g, 1, 1, 1)), one) == 0.0);
  const GaugeField u = GaugeField::random(g, 2, rng);
  const Cochain j = random_cochain(g, 1, 2, 2, rng);
  CHECK(relative_gap(gauge_action(wilson_theory(g, 2, j), u), wilson_holonomy_action(u, j)) < 1e-12);

  const Cochain small = 0.3 * random_cochain(g, 1, 1, 1, rng);
  const GaugeSolveResult sol = solve_gauge(wilson_theory(g, 1, small), one);
  CHECK(sol.residual <= 1e-6);
  CHECK(interior_max(charge_defect(sol.field, small)) < 1e-8);
}

TEST_CASE("Klein-Gordon solutions") {
  Rng rng(4);
  auto g = make_grid(2, 3);
  const Cochain constant = Cochain::constant(g, 0, Matrix::Constant(1, 1, Complex(0.4, -0.2)));
  // Constant data is on shell at m = 0. The massless Dirichlet problem on a square
  // grid has a kernel, so the solver may return a different solution.
  CHECK(interior_max(klein_gordon_operator(constant, 0.0)) < 1e-15);
  CHECK(klein_gordon_current(constant).max_abs() < 1e-15);
  CHECK(klein_gordon(0.0, constant).equation_residual < 1e-10);
  const Cochain path_data = Cochain::constant(make_grid(1, 4), 0, Matrix::Constant(1, 1, Complex(0.4, -0.2)));
  CHECK(relative_gap(klein_gordon(0.0, path_data).field, path_data) < 1e-12);

  const KleinGordonSolution sol = klein_gordon(1.0, random_cochain(g, 0, 1, 1, rng));
  CHECK(sol.equation_residual < 1e-10);
  CHECK(interior_max(boundary(klein_gordon_current(sol.field))) < 1e-8);
  CHECK(interior_defect(tensor_boundary(klein_gordon_tensor(sol.field, 1.0))) < 1e-8);

  const Cochain off = random_cochain(g, 0, 1, 1, rng);
  CHECK(interior_max(boundary(klein_gordon_current(off))) > 1e-4);
}

TEST_CASE("Klein-Gordon gauge invariance and covariant charge") {
  Rng rng(5);
  auto g = make_grid(2, 3);
  const GaugeField u = GaugeField::random(g, 2, rng);
  const Cochain t = random_unitary_cochain(g, 0, 2, rng);
  const GaugeField v = gauge_transform(u, t);
  const LocalLagrangian l = klein_gordon_lagrangian(g, 0.8, 2);
  const Cochain phi = random_cochain(g, 0, 1, 2, rng);
  const Cochain moved = gauge_transform_vector(phi, t);
  CHECK(relative_gap(l.density(moved, field_derivative(moved, &v)), l.density(phi, field_derivative(phi, &u))) < 1e-12);

  const KleinGordonSolution sol = klein_gordon(0.8, random_cochain(g, 0, 1, 2, rng), &u);
  CHECK(sol.equation_residual < 1e-10);
  CHECK(interior_max(charge_defect(u, klein_gordon_covariant_current(sol.field, u))) < 1e-8);
}

TEST_CASE("Dirac currents of a constant spinor") {
  auto g = make_grid(4, 1);
  Matrix e0 = Matrix::Zero(4, 1);
  e0(0, 0) = 1.0;
  const Cochain psi = Cochain::constant(g, 0, e0);
  CHECK(interior_max(dirac_operator(psi, 0.0)) == 0.0);
  CHECK(dirac_operator(psi, 0.0).max_abs() < 1e-15);
  const Cochain j = dirac_current(psi);
  for (std::size_t i = 0; i < j.size(); ++i)
    CHECK(j[i](0, 0).real() == doctest::Approx(j.face(i).spans(0) ? 1.0 : 0.0));
  CHECK(dirac_current(Cochain(g, 0, 4, 1)).max_abs() == 0.0);
}

TEST_CASE("Dirac solutions conserve charge and energy-momentum") {
  Rng rng(6);
  auto g = make_grid(4, 2);
  const DiracSolution sol = dirac(0.5, random_cochain(g, 0, 4, 1, rng));
  CHECK(sol.equation_residual < 1e-10);
  CHECK(interior_max(boundary(dirac_current(sol.field))) < 1e-8);
  CHECK(interior_defect(tensor_boundary(dirac_tensor(sol.field, 0.5))) < 1e-8);
  CHECK(interior_max(boundary(dirac_axial_current(sol.field))) > 1e-6);

  const Cochain marched = dirac_march(random_cochain(g, 0, 4, 1, rng), 0.0);
  CHECK(interior_max(dirac_operator(marched, 0.0)) < 1e-12);
  CHECK(interior_max(boundary(dirac_axial_current(marched))) < 1e-8);

  const GaugeField u = GaugeField::random(g, 2, rng);
  const DiracSolution gauged = dirac(0.5, random_cochain(g, 0, 4, 2, rng), &u);
  CHECK(interior_max(charge_defect(u, dirac_covariant_current(gauged.field))) < 1e-8);
  CHECK_THROWS_AS(dirac(0.5, random_cochain(make_grid(3, 2), 0, 4, 1, rng)), DimensionError);
}

TEST_CASE("fermion doubling and the Clifford relation") {
  CHECK(clifford_defect() == 0.0);
  Rng rng(7);
  auto g = make_grid(4, 4);
  const DiracSolution sol = dirac(0.3, random_cochain(g, 0, 4, 1, rng));
  const FermionDoublingReport r = fermion_doubling_check(sol.field, 0.3);
  CHECK(r.vertices == 1);
  CHECK(r.residual <= 1e-9);
  const FermionDoublingReport constant = fermion_doubling_check(Cochain::constant(g, 0, Matrix::Ones(4, 1)), 0.0);
  CHECK(constant.residual == 0.0);
  const FermionDoublingReport off = fermion_doubling_check(random_cochain(g, 0, 4, 1, rng), 0.3);
  CHECK(off.residual > 1e-4);
}

TEST_CASE("approximation study names and defaults") {
  CHECK(parse_theory("network") == Theory::Network);
  CHECK(theory_name(Theory::MaxwellTensor) == "maxwell_tensor");
  CHECK(parse_reference("constant") == Reference::ConstantField);
  CHECK_THROWS_AS(parse_theory("gravity"), DomainError);
  CHECK_THROWS_AS(parse_reference("noise"), DomainError);
  CHECK(default_sizes(Theory::Network) == std::vector<int>{8, 16, 32});
  CHECK(default_sizes(Theory::Dirac) == std::vector<int>{4, 8});
  CHECK_THROWS_AS(approximation_study(Theory::KleinGordon, Reference::ConstantField), DomainError);
}

TEST_CASE("zero reference gives a zero table") {
  for (Theory t : {Theory::Network, Theory::MaxwellTensor, Theory::KleinGordon, Theory::Dirac}) {
    StudyOptions o;
    o.sizes = t == Theory::Dirac ? std::vector<int>{4} : std::vector<int>{8};
    const auto rows = approximation_study(t, Reference::Zero, o);
    CHECK(!rows.empty());
    for (const ErrorRow& r : rows) CHECK(r.sup_error == 0.0);
  }
}

TEST_CASE("constant field reproduces the continuum tensor") {
  StudyOptions o;
  o.sizes = {4, 8};
  const auto rows = approximation_study(Theory::MaxwellTensor, Reference::ConstantField, o);
  CHECK(rows.size() == 2 * 4);
  for (const ErrorRow& r : rows) CHECK(r.sup_error < 1e-12);
}

TEST_CASE("network study errors shrink") {
  StudyOptions o;
  o.sizes = {8, 16};
  const auto rows = approximation_study(Theory::Network, Reference::Smooth, o);
  const auto factors = shrink_factors(rows);
  CHECK(factors.size() == rows.size() / 2);
  for (const ShrinkFactor& f : factors) {
    INFO(f.quantity);
    CHECK(f.factor >= 1.3);
  }
  const std::string csv = error_table_csv(rows);
  CHECK(csv.rfind("theory,quantity,N,sup_error\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(rows.size()) + 1);
}

TEST_CASE("shrink factors") {
  const std::vector<ErrorRow> rows{{"t", "a", 4, 1.0}, {"t", "a", 8, 0.25}, {"t", "b", 4, 0.0}, {"t", "b", 8, 0.0},
                                   {"t", "a", 16, 0.2}};
  const auto f = shrink_factors(rows);
  REQUIRE(f.size() == 3);
  int infinite = 0;
  for (const ShrinkFactor& x : f) {
    if (x.quantity == "a" && x.n == 4) CHECK(x.factor == doctest::Approx(4.0));
    if (x.quantity == "a" && x.n == 8) CHECK(x.factor == doctest::Approx(1.25));
    if (std::isinf(x.factor)) ++infinite;
  }
  CHECK(infinite == 1);
}

TEST_CASE("JSON round trips") {
  Rng rng(8);
  auto g = make_grid(3, 2);
  const Cochain c = random_cochain(g, 2, 2, 1, rng);
  const Json j = to_json(c);
  CHECK(j["degree"] == 2);
  CHECK(j["grid"]["N"] == 2);
  const Cochain back = cochain_from_json(Json::parse(j.dump()));
  CHECK(back.degree() == 2);
  CHECK(back.rows() == 2);
  CHECK((back - c).max_abs() == 0.0);

  const GaugeField u = GaugeField::random(g, 2, rng);
  const Json ju = to_json(u);
  CHECK(ju["unitary"] == true);
  CHECK((gauge_field_from_json(Json::parse(ju.dump())).values() - u.values()).max_abs() == 0.0);

  Json broken = j;
  broken["re"].erase(0);
  CHECK_THROWS(cochain_from_json(broken));

  const Tensor t = cross(random_cochain(g, 1, 1, 1, rng, false), random_cochain(g, 1, 1, 1, rng, false));
  const Json jt = to_json(t);
  CHECK(jt["gap"] == 0);
  CHECK(!jt["entries"].empty());
}
