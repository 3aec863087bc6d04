#include "dfield/maxwell.hpp"

#include <algorithm>
#include <cmath>

#include "dfield/errors.hpp"
#include "dfield/variational.hpp"

namespace dfield {

namespace {

void require_real_edges(const Cochain& a) {
  if (!a.grid_ptr()) throw ConfigurationError("field has no grid");
  if (a.degree() != 1 || a.rows() != 1 || a.cols() != 1) throw ShapeError("vector-potential is a scalar edge field");
  if (a.grid().d() < 2) throw DimensionError("electrodynamics needs d ≥ 2");
}

std::vector<Face> interior_cubes(const Grid& g) {
  std::vector<Face> out;
  for (const Face& c : g.faces(g.d())) {
    bool inside = true;
    for (int m = 0; m < g.d(); ++m)
      if (c[m] == 1 || c[m] == 2 * g.n() - 1) inside = false;
    if (inside) out.push_back(c);
  }
  return out;
}

}  // namespace

MaxwellSolution maxwell_from_potential(const Cochain& a) {
  require_real_edges(a);
  const Cochain f = coboundary(a);
  Cochain j = -boundary(sharp(f));
  const Tensor tf = -1.0 * cross(sharp(f), f);
  return MaxwellSolution{a.grid_ptr(), a, j, f, tf, tf - cross(j, a), cross(j, f, Tensor::kDefaultRadius - 1)};
}

double MaxwellDefects::max() const { return std::max({bianchi, source, charge, field_momentum, total_momentum}); }

MaxwellDefects maxwell_defects(const MaxwellSolution& sol) {
  MaxwellDefects out{};
  if (sol.grid->d() >= 3) out.bianchi = coboundary(sol.field).max_abs();
  out.source = (-boundary(sharp(sol.field)) - sol.current).max_abs();
  out.charge = boundary(sol.current).max_abs();
  out.field_momentum = interior_defect(tensor_boundary(sol.field_tensor) - sol.lorentz);
  out.total_momentum = interior_defect(tensor_boundary(sol.total_tensor));
  return out;
}

LocalLagrangian maxwell_lagrangian(GridPtr grid, const Cochain& current) {
  LocalLagrangian l(std::move(grid), 1, 1, 1, true);
  l.add({TermKind::Kinetic, -0.5});
  l.add({TermKind::Source, -1.0, current});
  return l;
}

Cochain free_maxwell_potential(GridPtr grid, Rng& rng) {
  const Grid& g = *grid;
  const int n = g.n();
  if (g.d() < 2) throw DimensionError("electrodynamics needs d ≥ 2");
  auto on_spatial_boundary = [&](const Face& e) {
    for (int m = 1; m < g.d(); ++m)
      if (!e.spans(m) && (e[m] == 0 || e[m] == 2 * n)) return true;
    return false;
  };
  Cochain a(grid, 1, 1, 1);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Face& e = a.face(i);
    if (!e.spans(0) && (e[0] == 0 || on_spatial_boundary(e))) a[i](0, 0) = unit(rng);
  }
  Cochain faces(grid, 2, 1, 1);
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (!faces.face(i).spans(0) && faces.face(i)[0] == 0) faces[i](0, 0) = unit(rng);
  const Cochain step = boundary(faces);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Face& e = a.face(i);
    if (!e.spans(0) && e[0] == 0 && n > 0) a.at(e.shifted(0, 2)) = a[i] + step[i];
  }
  for (int t = 1; t < n; ++t) {
    std::vector<Face> layer;
    for (const Face& e : g.faces(1))
      if (!e.spans(0) && e[0] == 2 * (t + 1) && !on_spatial_boundary(e)) layer.push_back(e);
    const Cochain r0 = boundary(sharp(coboundary(a)));
    Cochain probe = a;
    for (const Face& e : layer) probe.at(e)(0, 0) = 1.0;
    const Cochain r1 = boundary(sharp(coboundary(probe)));
    for (const Face& e : layer) {
      const Face below = e.shifted(0, -2);
      a.at(e)(0, 0) = -r0.at(below)(0, 0) / (r1.at(below)(0, 0) - r0.at(below)(0, 0));
    }
  }
  return a + coboundary(random_cochain(grid, 0, 1, 1, rng, false));
}

double poynting_identity(const Cochain& field, bool all_components) {
  const Grid& g = field.grid();
  if (g.d() != 3 || field.degree() != 2) throw DimensionError("the identity concerns face fields on a 3-dimensional grid");
  const Tensor t = -1.0 * cross(sharp(field), field);
  double worst = 0.0;
  for (const Face& c : interior_cubes(g)) {
    const auto surface = OrientedHypersurface::boundary_of(g, {c});
    for (int k = 0; k < (all_components ? 3 : 1); ++k)
      worst = std::max(worst, std::abs(flux_hypersurface(t, surface, k)));
  }
  return worst;
}

PoyntingReport poynting_demo(int n, unsigned long long seed) {
  if (n < 3) throw DomainError("I^3_N has nonboundary cubes only for N ≥ 3");
  auto g = make_grid(3, n);
  Rng rng(seed);
  const Cochain f = coboundary(free_maxwell_potential(g, rng));
  PoyntingReport r{};
  r.n = n;
  r.seed = seed;
  r.cubes = static_cast<long>(interior_cubes(*g).size());
  r.field_scale = f.max_abs();
  r.energy_identity = poynting_identity(f);
  r.momentum_identity = poynting_identity(f, true);
  r.off_shell_identity = poynting_identity(coboundary(random_cochain(g, 1, 1, 1, rng, false)));
  return r;
}

GaugeLagrangian wilson_theory(GridPtr grid, int n, const Cochain& current) {
  return wilson_lagrangian(std::move(grid), n, current);
}

double wilson_holonomy_action(const GaugeField& u, const Cochain& current) {
  const Grid& g = u.grid();
  const int n = u.rank();
  double s = 0.0;
  for (const Face& f : g.faces(2)) {
    const double sign = f.spans(0) ? -1.0 : 1.0;
    s += sign * (parallel_transport(u, EdgePath::face_boundary(g, f)).trace().real() - n);
  }
  for (std::size_t i = 0; i < current.size(); ++i) s -= (current[i].adjoint() * u.values()[i]).trace().real();
  return s;
}

}  // namespace dfield
