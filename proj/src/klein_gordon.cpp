#include "dfield/klein_gordon.hpp"

#include "dfield/errors.hpp"
#include "dfield/variational.hpp"

namespace dfield {

LocalLagrangian klein_gordon_lagrangian(GridPtr grid, double m, int n, bool real_field) {
  LocalLagrangian l(std::move(grid), 0, 1, n, real_field);
  l.add({TermKind::Kinetic, -1.0});
  l.add({TermKind::Mass, -m * m});
  return l;
}

Cochain klein_gordon_operator(const Cochain& phi, double m, const GaugeField* u) {
  if (phi.degree() != 0 || phi.rows() != 1) throw ShapeError("Klein-Gordon fields are row vectors on vertices");
  if (!u) return boundary(sharp(coboundary(phi))) + (m * m) * phi;
  const Cochain a = u->connection();
  return covariant_boundary_vector(sharp(covariant_coboundary_vector(phi, a)), a) + (m * m) * phi;
}

Cochain klein_gordon_current(const Cochain& phi) {
  const Cochain c = cap(sharp(conjugate_transpose(coboundary(phi))), phi);
  Cochain out(phi.grid_ptr(), 1, 1, 1);
  for (std::size_t i = 0; i < c.size(); ++i) out[i](0, 0) = 2.0 * c[i].trace().imag();
  return out;
}

Cochain klein_gordon_covariant_current(const Cochain& phi, const GaugeField& u) {
  return 2.0 * cup(conjugate_transpose(phi), sharp(covariant_coboundary_vector(phi, u.connection())));
}

Tensor klein_gordon_tensor(const Cochain& phi, double m) {
  const Cochain dphi = coboundary(phi);
  return -2.0 * (cross(sharp(conjugate_transpose(dphi)), dphi) + (m * m) * cross(conjugate_transpose(phi), phi));
}

KleinGordonSolution klein_gordon(double m, const Cochain& boundary_values, const GaugeField* u) {
  if (!boundary_values.grid_ptr()) throw ConfigurationError("boundary values have no grid");
  const int n = boundary_values.cols();
  if (u && u->rank() != n) throw ShapeError("gauge rank differs from the field width");
  LocalLagrangian l = klein_gordon_lagrangian(boundary_values.grid_ptr(), m, n);
  l.check_field(boundary_values);
  Cochain phi = solve_quadratic(l, BoundaryCondition::fixed(boundary_values), u);
  const double residual = interior_max(klein_gordon_operator(phi, m, u));
  return {std::move(l), std::move(phi), residual};
}

}  // namespace dfield
