#include "dfield/dirac.hpp"

#include <algorithm>

#include "dfield/errors.hpp"
#include "dfield/gamma.hpp"
#include "dfield/variational.hpp"

namespace dfield {

namespace {

void require_spinor(const Cochain& psi) {
  if (!psi.grid_ptr() || psi.grid().d() != 4) throw DimensionError("Dirac fields live on I^4_N");
  if (psi.degree() != 0 || psi.rows() != 4) throw ShapeError("Dirac fields are 4×n vertex fields");
}

Cochain re_tr(const Cochain& x) {
  Cochain out(x.grid_ptr(), x.degree(), 1, 1);
  for (std::size_t i = 0; i < x.size(); ++i) out[i](0, 0) = x[i].trace().real();
  return out;
}

Cochain i_gamma(const GridPtr& g) { return Complex(0, 1) * dirac_chain(g); }

}  // namespace

LocalLagrangian dirac_lagrangian(GridPtr grid, double m, int n) {
  LocalLagrangian l(std::move(grid), 0, 4, n);
  l.add({TermKind::DiracKinetic});
  l.add({TermKind::DiracMass, -m});
  return l;
}

Cochain dirac_bar(const Cochain& psi) { return conjugate_transpose(psi).right_multiplied(gamma_matrix(0)); }

Cochain dirac_operator(const Cochain& psi, double m, const GaugeField* u) {
  require_spinor(psi);
  const Cochain ig = i_gamma(psi.grid_ptr());
  Cochain d = coboundary(psi), dbar = d;
  if (u) {
    const Cochain a = u->connection();
    d = covariant_coboundary_vector(psi, a);
    dbar = covariant_coboundary_conjugate(psi, a);
  }
  return cap(ig, d) + cop(ig, dbar) - (2.0 * m) * psi;
}

Cochain dirac_current(const Cochain& psi) {
  require_spinor(psi);
  return re_tr(cup(cup(dirac_bar(psi), dirac_chain(psi.grid_ptr())), psi));
}

Cochain dirac_axial_current(const Cochain& psi) {
  require_spinor(psi);
  return re_tr(cup(cup(dirac_bar(psi), dirac_chain(psi.grid_ptr()).left_multiplied(gamma5())), psi));
}

Cochain dirac_covariant_current(const Cochain& psi) {
  require_spinor(psi);
  return -cup(cup(dirac_bar(psi), i_gamma(psi.grid_ptr())), psi);
}

Tensor dirac_tensor(const Cochain& psi, double m) {
  require_spinor(psi);
  const Cochain ig = i_gamma(psi.grid_ptr());
  const Cochain bar = dirac_bar(psi);
  return cross(cop(bar, ig), coboundary(psi)) - cross(cap(coboundary(bar), ig) + (2.0 * m) * bar, psi);
}

DiracSolution dirac(double m, const Cochain& boundary_values, const GaugeField* u) {
  require_spinor(boundary_values);
  const int n = boundary_values.cols();
  if (u && u->rank() != n) throw ShapeError("gauge rank differs from the field width");
  LocalLagrangian l = dirac_lagrangian(boundary_values.grid_ptr(), m, n);
  Cochain psi = solve_quadratic(l, BoundaryCondition::fixed(boundary_values), u);
  const double residual = interior_max(dirac_operator(psi, m, u));
  return {std::move(l), std::move(psi), residual};
}

Cochain dirac_march(const Cochain& seed, double m) {
  require_spinor(seed);
  const Grid& g = seed.grid();
  const int n = g.n();
  auto spatial_interior = [&](const Face& v) {
    for (int k = 1; k < 4; ++k)
      if (v[k] == 0 || v[k] == 2 * n) return false;
    return true;
  };
  Cochain psi = seed;
  const Matrix step = Complex(0, 1) * gamma_matrix(0);
  for (int t = 1; t < n; ++t) {
    std::vector<Face> layer;
    for (const Face& v : g.faces(0))
      if (v[0] == 2 * t && spatial_interior(v)) layer.push_back(v);
    for (const Face& v : layer) psi.at(v.shifted(0, 2)).setZero();
    const Cochain r = dirac_operator(psi, m);
    for (const Face& v : layer) psi.at(v.shifted(0, 2)) = step * r.at(v);
  }
  return psi;
}

double clifford_defect() {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Matrix expected = Matrix::Zero(4, 4);
      if (a == b) expected = Matrix::Identity(4, 4) * (a == 0 ? 2.0 : -2.0);
      const Matrix ab = gamma_matrix(a) * gamma_matrix(b) + gamma_matrix(b) * gamma_matrix(a);
      worst = std::max(worst, (ab - expected).cwiseAbs().maxCoeff());
    }
  return worst;
}

FermionDoublingReport fermion_doubling_check(const Cochain& psi, double m) {
  require_spinor(psi);
  const Grid& h = psi.grid();
  if (h.n() % 2) throw DomainError("the doubling has an even number of steps per axis");
  auto g = make_grid(4, h.n() / 2);
  Cochain phi(g, 0, 4, psi.cols());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    Face v = phi.face(i);
    for (int k = 0; k < 4; ++k) v[k] *= 2;
    phi[i] = psi.at(v);
  }
  const Cochain kg = boundary(sharp(coboundary(phi))) + (4.0 * m * m) * phi;
  long count = 0;
  for (const Face& v : g->faces(0))
    if (!g->is_boundary(v)) ++count;
  return {interior_max(kg), count};
}

}  // namespace dfield
