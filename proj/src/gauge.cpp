#include "dfield/gauge.hpp"

#include "dfield/errors.hpp"

namespace dfield {

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

GaugeField::GaugeField(Cochain values, double tol) : u_(std::move(values)) {
  if (u_.degree() != 1) throw DimensionError("a gauge group field lives on edges");
  if (u_.rows() != u_.cols()) throw ShapeError("gauge group field values must be square");
  for (std::size_t i = 0; i < u_.size(); ++i)
    if (!is_unitary(u_[i], tol)) throw DomainError("gauge group field is not unitary at " + u_.face(i).str());
}

GaugeField GaugeField::identity(GridPtr grid, int n) {
  return GaugeField(Cochain::constant(std::move(grid), 1, Matrix::Identity(n, n)));
}

GaugeField GaugeField::random(GridPtr grid, int n, Rng& rng) {
  return GaugeField(random_unitary_cochain(std::move(grid), 1, n, rng));
}

Cochain GaugeField::connection() const {
  Cochain a = u_;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= Matrix::Identity(rank(), rank());
  return a;
}

Cochain curvature(const GaugeField& field) {
  const Grid& g = field.grid();
  const Cochain& u = field.values();
  Cochain f(field.grid_ptr(), 2, field.rank(), field.rank());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Face& face = f.face(i);
    int ax[2], found = 0;
    for (int m = 0; m < g.d(); ++m)
      if (face.spans(m)) ax[found++] = m;
    const Face a = face.min_vertex();
    const Face b = a.shifted(ax[0], 2);
    const Face d = a.shifted(ax[1], 2);
    const auto& ab = u.at(a.shifted(ax[0], 1));
    const auto& bc = u.at(b.shifted(ax[1], 1));
    const auto& ad = u.at(a.shifted(ax[1], 1));
    const auto& dc = u.at(d.shifted(ax[0], 1));
    f[i] = ab * bc - ad * dc;
  }
  return f;
}

Matrix parallel_transport(const GaugeField& u, const EdgePath& path) {
  path.validate(u.grid());
  Matrix out = Matrix::Identity(u.rank(), u.rank());
  for (const auto& step : path.steps) {
    const auto& v = u.values().at(step.face);
    out = step.sign > 0 ? Matrix(out * v) : Matrix(out * v.adjoint());
  }
  return out;
}

namespace {

bool acts_left(Side s) { return static_cast<int>(s) & 1; }
bool acts_right(Side s) { return static_cast<int>(s) & 2; }

void require_connection(const Cochain& x, const Cochain& a, Side side) {
  if (a.degree() != 1 || a.rows() != a.cols()) throw ShapeError("connection must be a square edge field");
  if (acts_left(side) && x.rows() != a.rows()) throw ShapeError("connection does not act on the rows");
  if (acts_right(side) && x.cols() != a.rows()) throw ShapeError("connection does not act on the columns");
}

Side swapped(Side s) {
  if (s == Side::Left) return Side::Right;
  if (s == Side::Right) return Side::Left;
  return s;
}

}  // namespace

Cochain covariant_coboundary(const Cochain& x, const Cochain& a, Side side) {
  require_connection(x, a, side);
  Cochain out = coboundary(x);
  if (acts_left(side)) out += cup(a, x);
  if (acts_right(side)) out -= (x.degree() % 2 ? -1.0 : 1.0) * cup(x, a);
  return out;
}

Cochain covariant_boundary_dual(const Cochain& x, const Cochain& a, Side side) {
  require_connection(x, a, side);
  Cochain out = boundary(x);
  if (acts_left(side)) out += (x.degree() % 2 ? -1.0 : 1.0) * cop(a, x);
  if (acts_right(side)) out += cap(x, a);
  return out;
}

Cochain covariant_boundary(const Cochain& x, const Cochain& a, Side side) {
  return conjugate_transpose(covariant_boundary_dual(conjugate_transpose(x), a, swapped(side)));
}

Cochain covariant_coboundary_matrix(const Cochain& x, const Cochain& a) {
  return covariant_coboundary(x, a, Side::Both);
}

Cochain covariant_boundary_matrix(const Cochain& x, const Cochain& a) { return covariant_boundary(x, a, Side::Both); }

Cochain covariant_coboundary_vector(const Cochain& x, const Cochain& a) {
  return covariant_coboundary(x, a, Side::Right);
}

Cochain covariant_boundary_vector(const Cochain& x, const Cochain& a) { return covariant_boundary(x, a, Side::Right); }

Cochain covariant_coboundary_conjugate(const Cochain& x, const Cochain& a) {
  return conjugate_transpose(covariant_coboundary(conjugate_transpose(x), a, Side::Left));
}

Matrix tangent_project(const Matrix& u, const Matrix& v) {
  const Matrix w = u.adjoint() * v;
  return u * (w - w.adjoint()) * 0.5;
}

Cochain tangent_project(const GaugeField& u, const Cochain& j) {
  if (j.degree() != 1 || j.rows() != u.rank() || j.cols() != u.rank())
    throw ShapeError("projection needs a square edge field of the gauge rank");
  Cochain out = j.zeros_like();
  for (std::size_t i = 0; i < j.size(); ++i) out[i] = tangent_project(Matrix(u.values()[i]), Matrix(j[i]));
  return out;
}

namespace {

void require_transform(const Cochain& g, int n) {
  if (g.degree() != 0 || g.rows() != n || g.cols() != n) throw ShapeError("gauge transformation must be a vertex field of rank n");
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!is_unitary(g[i])) throw DomainError("gauge transformation is not unitary");
}

}  // namespace

Cochain gauge_transform_matrix(const Cochain& phi, const Cochain& g) {
  require_transform(g, phi.rows());
  if (phi.rows() != phi.cols()) throw ShapeError("matrix gauge transformation needs square values");
  return cup(cup(conjugate_transpose(g), phi), g);
}

Cochain gauge_transform_vector(const Cochain& phi, const Cochain& g) {
  require_transform(g, phi.cols());
  return cup(phi, g);
}

GaugeField gauge_transform(const GaugeField& u, const Cochain& g) {
  return GaugeField(gauge_transform_matrix(u.values(), g));
}

GaugeField retract(const Cochain& near) {
  Cochain out = near;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = qr_unitary_factor(Matrix(near[i]));
  return GaugeField(std::move(out));
}

}  // namespace dfield
