#include "dfield/variational.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <Eigen/SparseQR>

#include "dfield/errors.hpp"

namespace dfield {

namespace {

Cochain connection_of(const Cochain& u) {
  Cochain a = u;
  const Matrix one = Matrix::Identity(u.rows(), u.cols());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= one;
  return a;
}

void check_gauge(const LocalLagrangian& l, const GaugeField* u) {
  if (u && (!(u->grid() == *l.grid_ptr()) || u->rank() != l.cols()))
    throw ShapeError("gauge group field does not act on the field's columns");
}

Cochain adjoint_derivative(const Cochain& x, const GaugeField* u) {
  return u ? covariant_boundary(x, u->connection(), Side::Right) : boundary(x);
}

Cochain masked(Cochain r, const BoundaryCondition& bc) {
  if (bc.mode == BoundaryMode::Free) return r;
  const Grid& g = r.grid();
  for (std::size_t i = 0; i < r.size(); ++i)
    if (g.is_boundary(r.face(i))) r[i].setZero();
  return r;
}

}  // namespace

Cochain field_derivative(const Cochain& phi, const GaugeField* u) {
  return u ? covariant_coboundary(phi, u->connection(), Side::Right) : coboundary(phi);
}

double action(const LocalLagrangian& l, const Cochain& phi, const GaugeField* u) {
  l.check_field(phi);
  check_gauge(l, u);
  return epsilon(l.density(phi, field_derivative(phi, u)))(0, 0).real();
}

Cochain el_residual(const LocalLagrangian& l, const Cochain& phi, const GaugeField* u, const BoundaryCondition& bc) {
  l.check_field(phi);
  check_gauge(l, u);
  const Cochain dphi = field_derivative(phi, u);
  Cochain r = l.field_gradient(phi, dphi) + adjoint_derivative(l.derivative_gradient(phi, dphi), u);
  if (l.real_field()) r = r.real_part();
  return masked(std::move(r), bc);
}

double directional_derivative(const LocalLagrangian& l, const Cochain& phi, const Cochain& delta, const GaugeField* u) {
  l.check_field(phi);
  l.check_field(delta);
  check_gauge(l, u);
  const Cochain dphi = field_derivative(phi, u);
  return pairing(l.field_gradient(phi, dphi), delta) +
         pairing(l.derivative_gradient(phi, dphi), field_derivative(delta, u));
}

double directional_derivative_fd(const LocalLagrangian& l, const Cochain& phi, const Cochain& delta,
                                 const GaugeField* u, double step) {
  return (action(l, phi + step * delta, u) - action(l, phi - step * delta, u)) / (2 * step);
}

Cochain invariance_defect(const LocalLagrangian& l, const Cochain& phi, const Cochain& delta, const GaugeField* u) {
  l.check_field(phi);
  l.check_field(delta);
  check_gauge(l, u);
  const Cochain dphi = field_derivative(phi, u);
  return local_pairing(l.field_gradient(phi, dphi), delta) +
         local_pairing(l.derivative_gradient(phi, dphi), field_derivative(delta, u));
}

Cochain random_variation(const LocalLagrangian& l, const BoundaryCondition& bc, Rng& rng) {
  Cochain delta = random_cochain(l.grid_ptr(), l.degree(), l.rows(), l.cols(), rng, !l.real_field());
  const Grid& g = *l.grid_ptr();
  for (std::size_t i = 0; i < delta.size(); ++i)
    if (!bc.varies(delta.face(i), g)) delta[i].setZero();
  return delta;
}

namespace {

// Real coordinates of the free part of a field: real and (for complex fields)
// imaginary parts of every entry on every varying face.
struct FreeCoordinates {
  std::vector<std::size_t> faces;
  int entries;
  int parts;

  std::size_t size() const { return faces.size() * entries * parts; }
  std::size_t index(std::size_t face_slot, int entry, int part) const {
    return (face_slot * entries + entry) * parts + part;
  }
};

// Largest distance in half-steps, along any axis, over which the residual of the
// implemented Lagrangians depends on the field.
constexpr int kReach = 4;

Eigen::VectorXd residual_vector(const Cochain& r, const FreeCoordinates& rows) {
  Eigen::VectorXd out(rows.size());
  const std::size_t block = static_cast<std::size_t>(r.rows()) * r.cols();
  for (std::size_t s = 0; s < rows.faces.size(); ++s)
    for (int e = 0; e < rows.entries; ++e) {
      const Complex z = r.data()[rows.faces[s] * block + e];
      out[rows.index(s, e, 0)] = z.real();
      if (rows.parts == 2) out[rows.index(s, e, 1)] = z.imag();
    }
  return out;
}

// Jacobian of an affine residual map by probing, several far-apart faces at a time.
Eigen::SparseMatrix<double> probe_jacobian(const std::function<Cochain(const Cochain&)>& residual,
                                           const Cochain& base, const FreeCoordinates& coords,
                                           const Eigen::VectorXd& r0, int period) {
  const Grid& g = base.grid();
  const std::size_t block = static_cast<std::size_t>(base.rows()) * base.cols();
  std::map<std::size_t, std::vector<std::size_t>> colors;
  std::vector<long> slot_of_face(base.size(), -1);
  for (std::size_t s = 0; s < coords.faces.size(); ++s) {
    const Face& f = base.face(coords.faces[s]);
    std::size_t color = 0;
    for (int m = 0; m < g.d(); ++m) color = color * period + f[m] % period;
    colors[color].push_back(s);
    slot_of_face[coords.faces[s]] = static_cast<long>(s);
  }
  const double noise = 1e-12 * (1.0 + r0.cwiseAbs().maxCoeff());
  std::vector<Eigen::Triplet<double>> triplets;
  for (const auto& [color, slots] : colors) {
    for (int e = 0; e < coords.entries; ++e)
      for (int p = 0; p < coords.parts; ++p) {
        Cochain probe = base;
        for (std::size_t s : slots) probe.data()[coords.faces[s] * block + e] += p == 0 ? Complex(1, 0) : Complex(0, 1);
        const Eigen::VectorXd diff = residual_vector(residual(probe), coords) - r0;
        for (std::size_t q = 0; q < coords.faces.size(); ++q)
          for (int re = 0; re < coords.entries; ++re)
            for (int rp = 0; rp < coords.parts; ++rp) {
              const double v = diff[coords.index(q, re, rp)];
              if (std::abs(v) <= noise) continue;
              long owner = -1;
              if (slots.size() == 1) {
                owner = static_cast<long>(slots.front());
              } else {
                const Face& row_face = base.face(coords.faces[q]);
                Face f = row_face;
                bool inside = true;
                for (int m = 0; m < g.d() && inside; ++m) {
                  const int residue = base.face(coords.faces[slots.front()])[m] % period;
                  int c = row_face[m] - kReach;
                  c += ((residue - c) % period + period) % period;
                  f[m] = c;
                  inside = c >= 0 && c <= 2 * g.n();
                }
                if (inside && g.contains(f) && f.dim() == base.degree()) {
                  const long s = slot_of_face[g.index(f)];
                  if (s >= 0) owner = s;
                }
                if (owner < 0) throw std::logic_error("residual reaches farther than the probe spacing");
              }
              triplets.emplace_back(coords.index(q, re, rp), coords.index(owner, e, p), v);
            }
      }
  }
  Eigen::SparseMatrix<double> jac(coords.size(), coords.size());
  jac.setFromTriplets(triplets.begin(), triplets.end());
  return jac;
}

constexpr std::size_t kDenseLimit = 2500;

Eigen::VectorXd least_squares(const Eigen::SparseMatrix<double>& jac, const Eigen::VectorXd& rhs) {
  if (jac.cols() <= static_cast<long>(kDenseLimit)) {
    const Eigen::MatrixXd dense(jac);
    return Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(dense).solve(rhs);
  }
  Eigen::SparseMatrix<double> a = jac;
  a.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() == Eigen::Success) return lu.solve(rhs);
  Eigen::SparseQR<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> qr;
  qr.compute(a);
  return qr.solve(rhs);
}

}  // namespace

Cochain solve_quadratic(const LocalLagrangian& l, const BoundaryCondition& bc, const GaugeField* u) {
  check_gauge(l, u);
  Cochain base = l.zero_field();
  const Grid& g = *l.grid_ptr();
  if (bc.mode == BoundaryMode::Fixed && bc.values.grid_ptr()) {
    l.check_field(bc.values);
    for (std::size_t i = 0; i < base.size(); ++i)
      if (g.is_boundary(base.face(i))) base[i] = bc.values[i];
  }
  FreeCoordinates coords{{}, l.rows() * l.cols(), l.real_field() ? 1 : 2};
  for (std::size_t i = 0; i < base.size(); ++i)
    if (bc.varies(base.face(i), g)) coords.faces.push_back(i);
  if (coords.faces.empty()) return base;

  const auto residual = [&](const Cochain& phi) { return el_residual(l, phi, u, bc); };
  const Eigen::VectorXd r0 = residual_vector(residual(base), coords);
  Eigen::SparseMatrix<double> jac;
  try {
    jac = probe_jacobian(residual, base, coords, r0, 2 * kReach + 1);
  } catch (const std::logic_error&) {
    jac = probe_jacobian(residual, base, coords, r0, 2 * g.n() + 1 + 2 * kReach);
  }
  const Eigen::VectorXd x = least_squares(jac, -r0);

  Cochain phi = base;
  const std::size_t block = static_cast<std::size_t>(l.rows()) * l.cols();
  for (std::size_t s = 0; s < coords.faces.size(); ++s)
    for (int e = 0; e < coords.entries; ++e) {
      Complex& z = phi.data()[coords.faces[s] * block + e];
      z += x[coords.index(s, e, 0)];
      if (coords.parts == 2) z += Complex(0, x[coords.index(s, e, 1)]);
    }
  const double res = residual(phi).max_abs();
  if (!(res <= 1e-8 * (1 + base.max_abs() + r0.cwiseAbs().maxCoeff())))
    throw NoSolutionError("Euler–Lagrange system has no solution (residual " + std::to_string(res) + ")", res);
  return phi;
}

Cochain noether_current(const LocalLagrangian& l, const Cochain& phi, const Cochain& delta, const GaugeField* u) {
  l.check_field(phi);
  l.check_field(delta);
  check_gauge(l, u);
  const Cochain dphi = field_derivative(phi, u);
  return conjugate_transpose(cap(conjugate_transpose(l.derivative_gradient(phi, dphi)), delta));
}

Cochain paired_current(const Cochain& j, const GaugeField* u) {
  if (j.degree() != 1 || j.rows() != j.cols()) throw ShapeError("current must be a square edge field");
  if (u && (!(u->grid() == j.grid()) || u->rank() != j.rows())) throw ShapeError("current does not match the gauge field");
  Cochain out(j.grid_ptr(), 1, 1, 1);
  for (std::size_t i = 0; i < j.size(); ++i)
    out[i](0, 0) = u ? (j[i].adjoint() * u->values()[i]).trace().real() : j[i].trace().real();
  return out;
}

Cochain charge_current(const LocalLagrangian& l, const Cochain& phi, const GaugeField* u) {
  return noether_current(l, phi, phi, u);
}

Cochain charge_defect(const GaugeField& u, const Cochain& j) {
  return covariant_boundary_matrix(tangent_project(u, j), u.connection());
}

Tensor energy_momentum_tensor(const LocalLagrangian& l, const Cochain& phi, int radius) {
  l.check_field(phi);
  const Cochain dphi = coboundary(phi);
  return cross(conjugate_transpose(l.derivative_gradient(phi, dphi)), dphi, radius) +
         cross(conjugate_transpose(l.field_gradient(phi, dphi)), phi, radius);
}

double interior_max(const Cochain& c) {
  const Grid& g = c.grid();
  double worst = 0.0;
  const std::size_t block = static_cast<std::size_t>(c.rows()) * c.cols();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (g.is_boundary(c.face(i))) continue;
    for (std::size_t e = 0; e < block; ++e) worst = std::max(worst, std::abs(c.data()[i * block + e]));
  }
  return worst;
}

namespace {

void check_gauge_values(const GaugeLagrangian& l, const Cochain& u) {
  if (!u.grid_ptr() || !(u.grid() == *l.grid_ptr()) || u.degree() != 1 || u.rows() != l.rank() || u.cols() != l.rank())
    throw ShapeError("gauge group field does not match the Lagrangian");
}

Cochain tangent_project_values(const Cochain& u, const Cochain& j) {
  Cochain out = j.zeros_like();
  for (std::size_t i = 0; i < j.size(); ++i) out[i] = tangent_project(Matrix(u[i]), Matrix(j[i]));
  return out;
}

}  // namespace

double gauge_action(const GaugeLagrangian& l, const Cochain& u) {
  check_gauge_values(l, u);
  return epsilon(l.density(u, cup(u, u)))(0, 0).real();
}

double gauge_action(const GaugeLagrangian& l, const GaugeField& u) { return gauge_action(l, u.values()); }

Cochain gauge_gradient(const GaugeLagrangian& l, const Cochain& u) {
  check_gauge_values(l, u);
  const Cochain f = cup(u, u);
  return l.unitary_gradient(u, f) + covariant_boundary_matrix(l.curvature_gradient(u, f), connection_of(u));
}

Cochain el_residual_gauge(const GaugeLagrangian& l, const GaugeField& u) {
  return tangent_project(u, gauge_gradient(l, u.values()));
}

double gauge_directional_derivative(const GaugeLagrangian& l, const GaugeField& u, const Cochain& delta) {
  return pairing(gauge_gradient(l, u.values()), delta);
}

double gauge_directional_derivative_fd(const GaugeLagrangian& l, const GaugeField& u, const Cochain& delta,
                                       double step) {
  return (gauge_action(l, u.values() + step * delta) - gauge_action(l, u.values() - step * delta)) / (2 * step);
}

namespace {

// Basis of the skew-Hermitian n×n matrices.
std::vector<Matrix> skew_basis(int n) {
  std::vector<Matrix> out;
  for (int a = 0; a < n; ++a) {
    Matrix m = Matrix::Zero(n, n);
    m(a, a) = Complex(0, 1);
    out.push_back(m);
    for (int b = a + 1; b < n; ++b) {
      Matrix re = Matrix::Zero(n, n), im = Matrix::Zero(n, n);
      re(a, b) = 1;
      re(b, a) = -1;
      im(a, b) = Complex(0, 1);
      im(b, a) = Complex(0, 1);
      out.push_back(re);
      out.push_back(im);
    }
  }
  return out;
}

Eigen::VectorXd flatten(const Cochain& c) {
  Eigen::VectorXd out(2 * c.data().size());
  for (std::size_t i = 0; i < c.data().size(); ++i) {
    out[2 * i] = c.data()[i].real();
    out[2 * i + 1] = c.data()[i].imag();
  }
  return out;
}

Cochain moved(const Cochain& u, const std::vector<Matrix>& basis, const Eigen::VectorXd& x, double t) {
  Cochain out = u;
  const int n = u.rows();
  const std::size_t dim = basis.size();
  for (std::size_t i = 0; i < u.size(); ++i) {
    Matrix generator = Matrix::Zero(n, n);
    for (std::size_t b = 0; b < dim; ++b) generator += x[i * dim + b] * basis[b];
    out[i] = qr_unitary_factor(Matrix(u[i] * (Matrix::Identity(n, n) + t * generator)));
  }
  return out;
}

}  // namespace

GaugeSolveResult solve_gauge(const GaugeLagrangian& l, const GaugeField& u0, const GaugeSolveOptions& options) {
  check_gauge_values(l, u0.values());
  const auto residual_of = [&](const Cochain& u) { return tangent_project_values(u, gauge_gradient(l, u)); };
  Cochain u = u0.values();
  Cochain r = residual_of(u);
  double res = r.max_abs();
  long iterations = 0;
  int restarts = 0;
  const std::vector<Matrix> basis = skew_basis(l.rank());
  const std::size_t params = u.size() * basis.size();
  while (res > options.tol) {
    if (iterations >= options.budget) throw ConvergenceError("gauge solver ran out of iterations", res);
    ++iterations;
    const Eigen::VectorXd rv = flatten(r);
    Eigen::MatrixXd jac(rv.size(), params);
    for (std::size_t p = 0; p < params; ++p) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(params);
      e[p] = 1.0;
      jac.col(p) = (flatten(residual_of(moved(u, basis, e, options.fd_step))) -
                    flatten(residual_of(moved(u, basis, e, -options.fd_step)))) /
                   (2 * options.fd_step);
    }
    const Eigen::VectorXd step = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(jac).solve(-rv);
    const double merit = rv.squaredNorm();
    bool accepted = false;
    for (double t = 1.0; t > 1e-12; t *= 0.5) {
      Cochain trial = moved(u, basis, step, t);
      Cochain trial_r = residual_of(trial);
      if (flatten(trial_r).squaredNorm() < merit) {
        u = std::move(trial);
        r = std::move(trial_r);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (restarts >= options.restarts) throw ConvergenceError("gauge solver stalled", res);
      ++restarts;
      Rng rng(static_cast<unsigned long long>(restarts));
      u = GaugeField::random(u.grid_ptr(), l.rank(), rng).values();
      r = residual_of(u);
    }
    res = r.max_abs();
  }
  return {GaugeField(u), res, iterations, restarts};
}

}  // namespace dfield
