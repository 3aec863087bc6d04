#include "dfield/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <thread>

#include "dfield/dirac.hpp"
#include "dfield/errors.hpp"
#include "dfield/gamma.hpp"
#include "dfield/gauge.hpp"
#include "dfield/io.hpp"
#include "dfield/klein_gordon.hpp"
#include "dfield/maxwell.hpp"
#include "dfield/network.hpp"
#include "dfield/tensor.hpp"
#include "dfield/variational.hpp"

namespace dfield {

namespace {

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double sgn(int k) { return (k % 2) ? -1.0 : 1.0; }

double rel(const Cochain& a, const Cochain& b) {
  return (a - b).max_abs() / std::max({1.0, a.max_abs(), b.max_abs()});
}
double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

Cochain rnd(const GridPtr& g, int k, int rows, int cols, Rng& rng) { return random_cochain(g, k, rows, cols, rng); }

GridPtr random_grid(Rng& rng, int dmin, int dmax = 4) { return make_grid(pick(rng, dmin, dmax), pick(rng, 1, 3)); }

Cochain re_tr(const Cochain& x) {
  Cochain out(x.grid_ptr(), x.degree(), 1, 1);
  for (std::size_t i = 0; i < x.size(); ++i) out[i](0, 0) = x[i].trace().real();
  return out;
}

Cochain skew_part(const Cochain& x) {
  Cochain out = x;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = 0.5 * (x[i] - Matrix(x[i].adjoint()));
  return out;
}

// Relative worst of a list of gaps.
double worst(std::initializer_list<double> gaps) { return std::max(gaps); }

struct Check {
  std::string suite;
  std::string name;
  int instances;
  double tolerance;
  bool lower;
  std::function<double(Rng&)> run;  // residual (or witness) of one random instance
};

// ---- plain cochain identities ------------------------------------------------

std::vector<Check> cochain_checks(const VerifyConfig& c) {
  const int n = c.instances;
  const double tol = c.tolerance;
  const bool bug = c.inject_sign_bug;
  auto shape = [](Rng& rng) { return pick(rng, 1, 2); };
  std::vector<Check> out;
  auto add = [&](std::string name, std::function<double(Rng&)> fn) {
    out.push_back({"cochain", std::move(name), n, tol, false, std::move(fn)});
  };
  add("coboundary_squared", [=](Rng& rng) {
    auto g = random_grid(rng, 2);
    const Cochain phi = rnd(g, pick(rng, 0, g->d() - 2), shape(rng), shape(rng), rng);
    return coboundary(coboundary(phi)).max_abs() / std::max(1.0, phi.max_abs());
  });
  add("boundary_squared", [=](Rng& rng) {
    auto g = random_grid(rng, 2);
    const Cochain phi = rnd(g, pick(rng, 2, g->d()), shape(rng), shape(rng), rng);
    return boundary(boundary(phi)).max_abs() / std::max(1.0, phi.max_abs());
  });
  add("epsilon_boundary", [=](Rng& rng) {
    auto g = random_grid(rng, 1);
    const Cochain phi = rnd(g, 1, shape(rng), shape(rng), rng);
    return epsilon(boundary(phi)).cwiseAbs().maxCoeff() / std::max(1.0, phi.max_abs());
  });
  add("leibniz_cup", [=](Rng& rng) {
    auto g = random_grid(rng, 1);
    const int k = pick(rng, 0, g->d() - 1), l = pick(rng, 0, g->d() - 1 - k);
    const int p = shape(rng), q = shape(rng), r = shape(rng);
    const Cochain phi = rnd(g, k, p, q, rng), psi = rnd(g, l, q, r, rng);
    const double s = bug ? -sgn(k) : sgn(k);
    return rel(coboundary(cup(phi, psi)), cup(coboundary(phi), psi) + s * cup(phi, coboundary(psi)));
  });
  add("cup_associativity", [=](Rng& rng) {
    auto g = random_grid(rng, 1);
    const int k = pick(rng, 0, g->d()), l = pick(rng, 0, g->d() - k), m = pick(rng, 0, g->d() - k - l);
    const int p = shape(rng), q = shape(rng), r = shape(rng), s = shape(rng);
    const Cochain phi = rnd(g, k, p, q, rng), psi = rnd(g, l, q, r, rng), chi = rnd(g, m, r, s, rng);
    return rel(cup(cup(phi, psi), chi), cup(phi, cup(psi, chi)));
  });
  add("leibniz_cap", [=](Rng& rng) {
    auto g = random_grid(rng, 1);
    const int l = pick(rng, 0, g->d() - 1), k = pick(rng, l + 1, g->d());
    const int p = shape(rng), q = shape(rng), r = shape(rng);
    const Cochain phi = rnd(g, k, p, q, rng), psi = rnd(g, l, q, r, rng);
    return rel(boundary(cap(phi, psi)), sgn(l) * (cap(boundary(phi), psi) - cap(phi, coboundary(psi))));
  });
  add("cap_cup_associativity", [=](Rng& rng) {
    auto g = random_grid(rng, 1);
    const int l = pick(rng, 0, g->d()), m = pick(rng, 0, g->d() - l), k = pick(rng, l + m, g->d());
    const int p = shape(rng), q = shape(rng), r = shape(rng), s = shape(rng);
    const Cochain phi = rnd(g, k, p, q, rng), psi = rnd(g, l, q, r, rng), chi = rnd(g, m, r, s, rng);
    return rel(cap(cap(phi, psi), chi), cap(phi, cup(psi, chi)));
  });
  add("leibniz_cop", [=](Rng& rng) {
    auto g = random_grid(rng, 1);
    const int k = pick(rng, 0, g->d() - 1), l = pick(rng, k + 1, g->d());
    const int p = shape(rng), q = shape(rng), r = shape(rng);
    const Cochain phi = rnd(g, k, p, q, rng), psi = rnd(g, l, q, r, rng);
    return rel(boundary(cop(phi, psi)), cop(phi, boundary(psi)) + sgn(l - k) * cop(coboundary(phi), psi));
  });
  add("cop_cup_associativity", [=](Rng& rng) {
    auto g = random_grid(rng, 1);
    const int k = pick(rng, 0, g->d()), l = pick(rng, 0, g->d() - k), m = pick(rng, k + l, g->d());
    const int p = shape(rng), q = shape(rng), r = shape(rng), s = shape(rng);
    const Cochain phi = rnd(g, k, p, q, rng), psi = rnd(g, l, q, r, rng), chi = rnd(g, m, r, s, rng);
    return rel(cop(phi, cop(psi, chi)), cop(cup(phi, psi), chi));
  });
  add("cop_cap_associativity", [=](Rng& rng) {
    auto g = random_grid(rng, 1);
    const int k = pick(rng, 0, g->d()), m = pick(rng, 0, g->d() - k), l = pick(rng, k + m, g->d());
    const int p = shape(rng), q = shape(rng), r = shape(rng), s = shape(rng);
    const Cochain phi = rnd(g, k, p, q, rng), psi = rnd(g, l, q, r, rng), chi = rnd(g, m, r, s, rng);
    return rel(cap(cop(phi, psi), chi), cop(phi, cap(psi, chi)));
  });
  add("cup_conjugate", [=](Rng& rng) {
    auto g = random_grid(rng, 1);
    const int k = pick(rng, 0, g->d());
    const int p = shape(rng), q = shape(rng), r = shape(rng);
    const Cochain v0 = rnd(g, 0, p, q, rng), psi = rnd(g, k, q, r, rng);
    const Cochain phi = rnd(g, k, p, q, rng), w0 = rnd(g, 0, q, r, rng);
    return worst({rel(conjugate_transpose(cup(v0, psi)), cap(conjugate_transpose(psi), conjugate_transpose(v0))),
                  rel(conjugate_transpose(cup(phi, w0)), cop(conjugate_transpose(w0), conjugate_transpose(phi)))});
  });
  add("adjoint_coboundary", [=](Rng& rng) {
    auto g = random_grid(rng, 1);
    const int k = pick(rng, 0, g->d() - 1), p = shape(rng), q = shape(rng);
    const Cochain phi = rnd(g, k, p, q, rng), chi = rnd(g, k + 1, p, q, rng);
    return rel(pairing(chi, coboundary(phi)), pairing(boundary(chi), phi));
  });
  add("adjoint_left_cup", [=](Rng& rng) {
    auto g = random_grid(rng, 1);
    const int k = pick(rng, 0, g->d()), l = pick(rng, 0, g->d() - k), m = shape(rng), q = shape(rng);
    const Cochain phi = rnd(g, k, m, q, rng), psi = rnd(g, l, m, m, rng), chi = rnd(g, k + l, m, q, rng);
    return rel(pairing(chi, cup(psi, phi)), pairing(conjugate_transpose(cap(conjugate_transpose(chi), psi)), phi));
  });
  add("adjoint_right_cup", [=](Rng& rng) {
    auto g = random_grid(rng, 1);
    const int k = pick(rng, 0, g->d()), l = pick(rng, 0, g->d() - k), m = shape(rng), q = shape(rng);
    const Cochain phi = rnd(g, k, m, q, rng), psi = rnd(g, l, q, q, rng), chi = rnd(g, k + l, m, q, rng);
    return rel(pairing(chi, cup(phi, psi)), pairing(conjugate_transpose(cop(psi, conjugate_transpose(chi))), phi));
  });
  return out;
}

// ---- covariant identities -----------------------------------------------------

struct GaugeInstance {
  GridPtr g;
  int n;
  GaugeField u;
  Cochain a;
};

GaugeInstance random_gauge(Rng& rng, int dmin = 2) {
  auto g = random_grid(rng, dmin);
  const int n = pick(rng, 1, 2);
  GaugeField u = GaugeField::random(g, n, rng);
  Cochain a = u.connection();
  return {g, n, std::move(u), std::move(a)};
}

std::vector<Check> covariant_checks(const VerifyConfig& c) {
  const int count = c.instances;
  const double tol = c.tolerance;
  std::vector<Check> out;
  auto add = [&](std::string name, std::function<double(Rng&)> fn) {
    out.push_back({"covariant", std::move(name), count, tol, false, std::move(fn)});
  };
  add("covariant_coboundary_squared", [](Rng& rng) {
    const GaugeInstance x = random_gauge(rng);
    const Cochain f = curvature(x.u);
    const int k = pick(rng, 0, x.g->d() - 2);
    const Cochain psi = rnd(x.g, k, x.n, x.n, rng), row = rnd(x.g, k, 1, x.n, rng);
    return worst({rel(covariant_coboundary_matrix(covariant_coboundary_matrix(psi, x.a), x.a), cup(f, psi) - cup(psi, f)),
                  rel(covariant_coboundary_vector(covariant_coboundary_vector(row, x.a), x.a), -cup(row, f))});
  });
  add("covariant_boundary_squared", [](Rng& rng) {
    const GaugeInstance x = random_gauge(rng);
    const Cochain f = curvature(x.u);
    const int k = pick(rng, 2, x.g->d());
    const Cochain phi = rnd(x.g, k, x.n, x.n, rng), col = rnd(x.g, k, x.n, 1, rng);
    return worst({rel(covariant_boundary_dual(covariant_boundary_dual(phi, x.a, Side::Both), x.a, Side::Both),
                      cap(phi, f) - cop(f, phi)),
                  rel(covariant_boundary_dual(covariant_boundary_dual(col, x.a, Side::Left), x.a, Side::Left),
                      -cop(f, col))});
  });
  add("covariant_leibniz_cup", [](Rng& rng) {
    const GaugeInstance x = random_gauge(rng);
    const int d = x.g->d(), k = pick(rng, 0, d - 1), l = pick(rng, 0, d - 1 - k);
    const Cochain phi = rnd(x.g, k, x.n, x.n, rng), psi = rnd(x.g, l, x.n, x.n, rng);
    return rel(covariant_coboundary_matrix(cup(phi, psi), x.a),
               cup(covariant_coboundary_matrix(phi, x.a), psi) + sgn(k) * cup(phi, covariant_coboundary_matrix(psi, x.a)));
  });
  add("covariant_leibniz_cap", [](Rng& rng) {
    const GaugeInstance x = random_gauge(rng);
    const int d = x.g->d(), l = pick(rng, 0, d - 1), k = pick(rng, l + 1, d);
    const Cochain phi = rnd(x.g, k, x.n, x.n, rng), psi = rnd(x.g, l, x.n, x.n, rng);
    return rel(covariant_boundary_dual(cap(phi, psi), x.a, Side::Both),
               sgn(l) * (cap(covariant_boundary_dual(phi, x.a, Side::Both), psi) -
                         cap(phi, covariant_coboundary_matrix(psi, x.a))));
  });
  add("covariant_leibniz_cop", [](Rng& rng) {
    const GaugeInstance x = random_gauge(rng);
    const int d = x.g->d(), k = pick(rng, 0, d - 1), l = pick(rng, k + 1, d);
    const Cochain phi = rnd(x.g, k, x.n, x.n, rng), psi = rnd(x.g, l, x.n, x.n, rng);
    return rel(covariant_boundary_dual(cop(phi, psi), x.a, Side::Both),
               cop(phi, covariant_boundary_dual(psi, x.a, Side::Both)) +
                   sgn(l - k) * cop(covariant_coboundary_matrix(phi, x.a), psi));
  });
  add("covariant_epsilon", [](Rng& rng) {
    const GaugeInstance x = random_gauge(rng);
    const Cochain j = rnd(x.g, 1, x.n, x.n, rng);
    return std::abs(epsilon(covariant_boundary_dual(j, x.a, Side::Both)).trace().real()) / std::max(1.0, j.max_abs());
  });
  add("covariant_adjoint", [](Rng& rng) {
    const GaugeInstance x = random_gauge(rng);
    const int k = pick(rng, 0, x.g->d() - 1);
    const Cochain phi = rnd(x.g, k, x.n, x.n, rng), chi = rnd(x.g, k + 1, x.n, x.n, rng);
    const int rows = pick(rng, 0, 1) ? 1 : 4;
    const Cochain row = rnd(x.g, k, rows, x.n, rng), rchi = rnd(x.g, k + 1, rows, x.n, rng);
    return worst({rel(pairing(chi, covariant_coboundary_matrix(phi, x.a)), pairing(covariant_boundary_matrix(chi, x.a), phi)),
                  rel(pairing(rchi, covariant_coboundary_vector(row, x.a)), pairing(covariant_boundary_vector(rchi, x.a), row))});
  });
  add("covariant_trace", [](Rng& rng) {
    const GaugeInstance x = random_gauge(rng);
    const Cochain j = rnd(x.g, 1, x.n, x.n, rng);
    Cochain w = j;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = x.u.values()[i].adjoint() * j[i];
    return rel(re_tr(covariant_boundary_matrix(j, x.a)), boundary(re_tr(w)));
  });
  add("covariant_projection", [](Rng& rng) {
    const GaugeInstance x = random_gauge(rng);
    const Cochain j = rnd(x.g, 1, x.n, x.n, rng);
    return rel(skew_part(covariant_boundary_matrix(j, x.a)), covariant_boundary_matrix(tangent_project(x.u, j), x.a));
  });
  return out;
}

// ---- gauge covariance and Bianchi -------------------------------------------------

std::vector<Check> gauge_checks(const VerifyConfig& c) {
  const int count = c.instances;
  const double tol = c.tolerance;
  std::vector<Check> out;
  auto add = [&](std::string name, std::function<double(Rng&)> fn) {
    out.push_back({"gauge", std::move(name), count, tol, false, std::move(fn)});
  };
  add("gauge_connection", [](Rng& rng) {
    const GaugeInstance x = random_gauge(rng, 1);
    const Cochain t = random_unitary_cochain(x.g, 0, x.n, rng);
    const Cochain expected = gauge_transform_matrix(x.a, t) + cup(conjugate_transpose(t), coboundary(t));
    return rel(gauge_transform(x.u, t).connection(), expected);
  });
  add("gauge_curvature", [](Rng& rng) {
    const GaugeInstance x = random_gauge(rng);
    const Cochain t = random_unitary_cochain(x.g, 0, x.n, rng);
    return rel(curvature(gauge_transform(x.u, t)), gauge_transform_matrix(curvature(x.u), t));
  });
  add("gauge_coboundary", [](Rng& rng) {
    const GaugeInstance x = random_gauge(rng, 1);
    const Cochain t = random_unitary_cochain(x.g, 0, x.n, rng);
    const Cochain b = gauge_transform(x.u, t).connection();
    const int k = pick(rng, 0, x.g->d() - 1);
    const Cochain phi = rnd(x.g, k, x.n, x.n, rng), row = rnd(x.g, k, 1, x.n, rng);
    return worst({rel(covariant_coboundary_matrix(gauge_transform_matrix(phi, t), b),
                      gauge_transform_matrix(covariant_coboundary_matrix(phi, x.a), t)),
                  rel(covariant_coboundary_vector(gauge_transform_vector(row, t), b),
                      gauge_transform_vector(covariant_coboundary_vector(row, x.a), t))});
  });
  add("gauge_boundary", [](Rng& rng) {
    const GaugeInstance x = random_gauge(rng, 1);
    const Cochain t = random_unitary_cochain(x.g, 0, x.n, rng);
    const Cochain b = gauge_transform(x.u, t).connection();
    const int k = pick(rng, 1, x.g->d());
    const Cochain phi = rnd(x.g, k, x.n, x.n, rng), row = rnd(x.g, k, 1, x.n, rng);
    return worst({rel(covariant_boundary_matrix(gauge_transform_matrix(phi, t), b),
                      gauge_transform_matrix(covariant_boundary_matrix(phi, x.a), t)),
                  rel(covariant_boundary_vector(gauge_transform_vector(row, t), b),
                      gauge_transform_vector(covariant_boundary_vector(row, x.a), t))});
  });
  add("gauge_invariant_lagrangians", [](Rng& rng) {
    const GaugeInstance x = random_gauge(rng, 4);
    const Cochain t = random_unitary_cochain(x.g, 0, x.n, rng);
    const GaugeField v = gauge_transform(x.u, t);
    const double m = 0.5 + std::uniform_real_distribution<double>(0, 1)(rng);
    auto density_gap = [&](const LocalLagrangian& l, const Cochain& phi) {
      const Cochain moved = gauge_transform_vector(phi, t);
      return rel(l.density(moved, field_derivative(moved, &v)), l.density(phi, field_derivative(phi, &x.u)));
    };
    const GaugeLagrangian ym = wilson_lagrangian(x.g, x.n, Cochain(x.g, 1, x.n, x.n));
    return worst({density_gap(klein_gordon_lagrangian(x.g, m, x.n), rnd(x.g, 0, 1, x.n, rng)),
                  density_gap(dirac_lagrangian(x.g, m, x.n), rnd(x.g, 0, 4, x.n, rng)),
                  rel(ym.density(v.values(), curvature(v)), ym.density(x.u.values(), curvature(x.u)))});
  });
  add("bianchi", [](Rng& rng) {
    const GaugeInstance x = random_gauge(rng, 3);
    return covariant_coboundary_matrix(curvature(x.u), x.a).max_abs();
  });
  return out;
}

// ---- stationarity ---------------------------------------------------------------

// dS/dt along Δ; exact for the quadratic actions of the field theories.
double slope(const LocalLagrangian& l, const Cochain& phi, const Cochain& delta, const GaugeField* u) {
  return (action(l, phi + delta, u) - action(l, phi - delta, u)) / 2;
}

struct Configuration {
  LocalLagrangian lagrangian;
  Cochain field;
  BoundaryCondition bc;
  std::optional<GaugeField> gauge;
  double mass = 0.0;
};

double on_shell(const Configuration& x, Rng& rng) {
  const GaugeField* u = x.gauge ? &*x.gauge : nullptr;
  double worst_slope = 0.0;
  for (int i = 0; i < 50; ++i)
    worst_slope = std::max(worst_slope, std::abs(slope(x.lagrangian, x.field, random_variation(x.lagrangian, x.bc, rng), u)));
  return worst_slope;
}

double off_shell(const Configuration& x, Rng& rng) {
  const GaugeField* u = x.gauge ? &*x.gauge : nullptr;
  const Cochain off = x.field + random_variation(x.lagrangian, x.bc, rng);
  double best = std::abs(slope(x.lagrangian, off, el_residual(x.lagrangian, off, u, x.bc), u));
  for (int i = 0; i < 50; ++i)
    best = std::max(best, std::abs(slope(x.lagrangian, off, random_variation(x.lagrangian, x.bc, rng), u)));
  return best;
}

Cochain zero_sum_boundary_source(const GridPtr& g, Rng& rng) {
  Cochain s(g, 0, 1, 1);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double total = 0.0;
  Face last;
  for (const Face& v : g->faces(0))
    if (g->is_boundary(v)) {
      const double x = unit(rng);
      s.at(v)(0, 0) = x;
      total += x;
      last = v;
    }
  s.at(last)(0, 0) -= total;
  return s;
}

GridPtr physical_grid(Rng& rng) {
  static const int shapes[3][2] = {{2, 3}, {3, 2}, {4, 2}};
  const int i = pick(rng, 0, 2);
  return make_grid(shapes[i][0], shapes[i][1]);
}

Configuration network_configuration(Rng& rng) {
  auto g = make_grid(2, pick(rng, 2, 5));
  const Cochain s = zero_sum_boundary_source(g, rng);
  LocalLagrangian l(g, 0, 1, 1, true);
  l.add({TermKind::Kinetic, 0.5, {}, false});
  l.add({TermKind::Source, -1.0, s});
  return {l, solve_network(s).potential, BoundaryCondition::free(), std::nullopt, 0.0};
}

Configuration maxwell_configuration(Rng& rng) {
  auto g = physical_grid(rng);
  const Cochain a = random_cochain(g, 1, 1, 1, rng, false);
  const MaxwellSolution sol = maxwell_from_potential(a);
  return {maxwell_lagrangian(g, sol.current), a, BoundaryCondition::fixed(a), std::nullopt, 0.0};
}

Configuration klein_gordon_configuration(Rng& rng, bool gauged) {
  auto g = physical_grid(rng);
  const int n = gauged ? pick(rng, 1, 2) : 1;
  const double m = 0.5 + std::uniform_real_distribution<double>(0, 1)(rng);
  std::optional<GaugeField> u;
  if (gauged) u = GaugeField::random(g, n, rng);
  const Cochain bv = rnd(g, 0, 1, n, rng);
  KleinGordonSolution sol = klein_gordon(m, bv, u ? &*u : nullptr);
  return {sol.lagrangian, sol.field, BoundaryCondition::fixed(bv), u, m};
}

Configuration dirac_configuration(Rng& rng, bool gauged) {
  auto g = make_grid(4, 2);
  const int n = gauged ? pick(rng, 1, 2) : 1;
  const double m = 0.2 + std::uniform_real_distribution<double>(0, 1)(rng);
  std::optional<GaugeField> u;
  if (gauged) u = GaugeField::random(g, n, rng);
  const Cochain bv = rnd(g, 0, 4, n, rng);
  DiracSolution sol = dirac(m, bv, u ? &*u : nullptr);
  return {sol.lagrangian, sol.field, BoundaryCondition::fixed(bv), u, m};
}

struct WilsonConfiguration {
  GaugeLagrangian lagrangian;
  GaugeField field;
};

GaugeField near(const Cochain& center, double spread, Rng& rng) {
  return retract(center + spread * rnd(center.grid_ptr(), 1, center.rows(), center.cols(), rng));
}

// A current for which `target` is stationary: the Yang–Mills term plus a normal
// component, so that the solver has a solution to find.
Cochain wilson_current(const GaugeField& target, Rng& rng) {
  Cochain normal = rnd(target.grid_ptr(), 1, target.rank(), target.rank(), rng);
  for (std::size_t i = 0; i < normal.size(); ++i) normal[i] = target.values()[i] * (normal[i] + Matrix(normal[i].adjoint()));
  return -1.0 * covariant_boundary_matrix(sharp(curvature(target)), target.connection()) + normal;
}

WilsonConfiguration wilson_configuration(Rng& rng) {
  auto g = make_grid(pick(rng, 2, 3), 2);
  const int n = pick(rng, 1, 2);
  const GaugeField target = near(GaugeField::identity(g, n).values(), 0.3, rng);
  GaugeLagrangian l = wilson_lagrangian(g, n, wilson_current(target, rng));
  GaugeSolveResult sol = solve_gauge(l, near(target.values(), 0.05, rng));
  return {std::move(l), std::move(sol.field)};
}

Cochain tangent_variation(const GaugeField& u, Rng& rng) {
  Cochain x = rnd(u.grid_ptr(), 1, u.rank(), u.rank(), rng);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = u.values()[i] * (x[i] - Matrix(x[i].adjoint()));
  return x;
}

std::vector<Check> stationarity_checks(const VerifyConfig& c) {
  const double tol = c.stationarity_tolerance, floor = c.off_shell_threshold;
  std::vector<Check> out;
  auto add_pair = [&](const std::string& name, int count, std::function<Configuration(Rng&)> make) {
    out.push_back({"stationarity", name + "_on_shell", count, tol, false, [make](Rng& rng) { return on_shell(make(rng), rng); }});
    out.push_back({"stationarity", name + "_off_shell", count, floor, true, [make](Rng& rng) { return off_shell(make(rng), rng); }});
  };
  add_pair("network", 5, network_configuration);
  add_pair("maxwell", 6, maxwell_configuration);
  add_pair("klein_gordon", 6, [](Rng& rng) { return klein_gordon_configuration(rng, false); });
  add_pair("klein_gordon_gauge", 6, [](Rng& rng) { return klein_gordon_configuration(rng, true); });
  add_pair("dirac", 3, [](Rng& rng) { return dirac_configuration(rng, false); });
  add_pair("dirac_gauge", 3, [](Rng& rng) { return dirac_configuration(rng, true); });
  out.push_back({"stationarity", "wilson_on_shell", 3, tol, false, [](Rng& rng) {
                   const WilsonConfiguration x = wilson_configuration(rng);
                   double w = 0.0;
                   for (int i = 0; i < 50; ++i)
                     w = std::max(w, std::abs(gauge_directional_derivative(x.lagrangian, x.field, tangent_variation(x.field, rng))));
                   return w;
                 }});
  out.push_back({"stationarity", "wilson_off_shell", 3, floor, true, [](Rng& rng) {
                   const WilsonConfiguration x = wilson_configuration(rng);
                   const GaugeField off = GaugeField::random(x.field.grid_ptr(), x.field.rank(), rng);
                   double w = 0.0;
                   for (int i = 0; i < 50; ++i)
                     w = std::max(w, std::abs(gauge_directional_derivative(x.lagrangian, off, tangent_variation(off, rng))));
                   return w;
                 }});
  return out;
}

// ---- conservation laws -----------------------------------------------------------

std::vector<Check> conservation_checks(const VerifyConfig& c) {
  const double tol = c.conservation_tolerance;
  std::vector<Check> out;
  auto add = [&](std::string name, int count, std::function<double(Rng&)> fn) {
    out.push_back({"conservation", std::move(name), count, tol, false, std::move(fn)});
  };
  add("noether_current", 6, [](Rng& rng) {
    const Configuration x = klein_gordon_configuration(rng, false);
    const Cochain iphi = Complex(0, 1) * x.field;
    return worst({invariance_defect(x.lagrangian, x.field, iphi).max_abs(),
                  interior_max(boundary(paired_current(noether_current(x.lagrangian, x.field, iphi))))});
  });
  add("klein_gordon_charge", 6, [](Rng& rng) {
    const Configuration x = klein_gordon_configuration(rng, false);
    return interior_max(boundary(klein_gordon_current(x.field)));
  });
  add("klein_gordon_gauge_charge", 6, [](Rng& rng) {
    const Configuration x = klein_gordon_configuration(rng, true);
    return worst({interior_max(charge_defect(*x.gauge, klein_gordon_covariant_current(x.field, *x.gauge))),
                  interior_max(charge_defect(*x.gauge, charge_current(x.lagrangian, x.field, &*x.gauge)))});
  });
  add("klein_gordon_energy_momentum", 6, [](Rng& rng) {
    const Configuration x = klein_gordon_configuration(rng, false);
    return interior_defect(tensor_boundary(klein_gordon_tensor(x.field, x.mass)));
  });
  add("dirac_charge", 3, [](Rng& rng) {
    const Configuration x = dirac_configuration(rng, false);
    return interior_max(boundary(dirac_current(x.field)));
  });
  add("dirac_axial_charge", 3, [](Rng& rng) {
    auto g = make_grid(4, pick(rng, 2, 3));
    const Cochain psi = dirac_march(rnd(g, 0, 4, 1, rng), 0.0);
    return worst({interior_max(dirac_operator(psi, 0.0)), interior_max(boundary(dirac_axial_current(psi))),
                  interior_max(boundary(dirac_current(psi)))});
  });
  add("dirac_gauge_charge", 3, [](Rng& rng) {
    const Configuration x = dirac_configuration(rng, true);
    return worst({interior_max(charge_defect(*x.gauge, dirac_covariant_current(x.field))),
                  interior_max(charge_defect(*x.gauge, charge_current(x.lagrangian, x.field, &*x.gauge)))});
  });
  add("dirac_energy_momentum", 3, [](Rng& rng) {
    const Configuration x = dirac_configuration(rng, false);
    return interior_defect(tensor_boundary(dirac_tensor(x.field, x.mass)));
  });
  add("maxwell_laws", 6, [](Rng& rng) {
    auto g = physical_grid(rng);
    return maxwell_defects(maxwell_from_potential(random_cochain(g, 1, 1, 1, rng, false))).max();
  });
  add("network_laws", 6, [](Rng& rng) {
    auto g = make_grid(2, pick(rng, 2, 6));
    return network_defects(solve_network(zero_sum_boundary_source(g, rng))).max();
  });
  add("wilson_charge", 3, [](Rng& rng) {
    auto g = make_grid(pick(rng, 2, 3), 2);
    const int n = pick(rng, 1, 2);
    const GaugeField target = near(GaugeField::identity(g, n).values(), 0.3, rng);
    const Cochain j = wilson_current(target, rng);
    const GaugeSolveResult sol = solve_gauge(wilson_lagrangian(g, n, j), near(target.values(), 0.05, rng));
    return interior_max(charge_defect(sol.field, j));
  });
  return out;
}

// ---- flux ---------------------------------------------------------------------------

std::vector<Face> interior_hyperfaces(const Grid& g) {
  std::vector<Face> out;
  for (const Face& h : g.faces(g.d() - 1))
    if (!g.is_boundary(h)) out.push_back(h);
  return out;
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

double cube_fluxes(const Tensor& t) {
  const Grid& g = t.grid();
  double w = 0.0;
  for (const Face& c : interior_cubes(g)) {
    const auto surface = OrientedHypersurface::boundary_of(g, {c});
    for (int k = 0; k < g.d(); ++k) w = std::max(w, std::abs(flux_hypersurface(t, surface, k)));
  }
  return w;
}

std::vector<Check> flux_checks(const VerifyConfig& c) {
  const int count = c.instances;
  const double tol = c.tolerance;
  std::vector<Check> out;
  auto small_grid = [](Rng& rng) { return make_grid(pick(rng, 2, 3), pick(rng, 2, 3)); };
  out.push_back({"flux", "doubling_decomposition", count, tol, false, [=](Rng& rng) {
                   auto g = small_grid(rng);
                   auto dbl = doubling_of(*g);
                   const Tensor t = random_partially_symmetric(g, rng);
                   double w = 0.0;
                   for (const Face& h : interior_hyperfaces(*g))
                     for (int k = 0; k < g->d(); ++k) {
                       double sum = 0.0;
                       for (const Face& part : doubling_hyperfaces(h)) sum += doubling_flux(t, *dbl, part, k);
                       w = std::max(w, rel(flux_hyperface(t, h, k), sum));
                     }
                   return w;
                 }});
  out.push_back({"flux", "stokes", count, tol, false, [=](Rng& rng) {
                   auto g = small_grid(rng);
                   auto dbl = doubling_of(*g);
                   const int d = g->d();
                   const Tensor t = random_partially_symmetric(g, rng);
                   const Tensor bt = tensor_boundary(t);
                   double w = 0.0;
                   for (const Face& cube : dbl->faces(d)) {
                     std::vector<OrientedFace> parts;
                     bool inner = true;
                     for (int m = 0; m < d; ++m)
                       for (int s : {-1, 1}) {
                         const Face h = cube.shifted(m, s);
                         if (dbl->is_boundary(h)) inner = false;
                         parts.push_back({h, dbl->incidence(h, cube)});
                       }
                     if (!inner) continue;
                     for (int k = 0; k < d; ++k) {
                       double lhs = 0.0;
                       for (const auto& p : parts) lhs += p.sign * doubling_flux(t, *dbl, p.face, k);
                       w = std::max(w, rel(lhs, doubling_flux01(bt, *dbl, cube, k)));
                     }
                   }
                   return w;
                 }});
  out.push_back({"flux", "quadratic_closed_form", count, tol, false, [=](Rng& rng) {
                   auto g = small_grid(rng);
                   std::uniform_real_distribution<double> unit(-1.0, 1.0);
                   LocalLagrangian lag(g, 0, 1, 1, true);
                   lag.add(FieldTerm{TermKind::Kinetic, unit(rng)});
                   lag.add(FieldTerm{TermKind::Mass, unit(rng)});
                   const Cochain phi = random_cochain(g, 0, 1, 1, rng, false);
                   const Cochain dphi = coboundary(phi);
                   const Cochain grad = lag.field_gradient(phi, dphi), dgrad = lag.derivative_gradient(phi, dphi);
                   const Cochain density = lag.density(phi, dphi);
                   const Tensor t = cross(dgrad.real_part(), dphi) + cross(grad.real_part(), phi);
                   auto v0 = [](const Cochain& x, const Face& f) { return x.at(f)(0, 0).real(); };
                   double w = 0.0;
                   for (const Face& h : interior_hyperfaces(*g)) {
                     int l = 0;
                     while (h.spans(l)) ++l;
                     const Face v = h.max_vertex(), up = v.shifted(l, 1);
                     for (int k = 0; k < g->d(); ++k) {
                       double expected = 0.5 * (v0(dgrad, up) + v0(dgrad, up.shifted(k, -2))) * v0(dphi, v.shifted(k, -1));
                       if (k == l) expected -= v0(density, v);
                       w = std::max(w, rel(sgn(l) * flux_hyperface(t, h, k), expected));
                     }
                   }
                   return w;
                 }});
  out.push_back({"flux", "free_klein_gordon_cubes", 3, 1e-10, false, [](Rng& rng) {
                   auto g = make_grid(3, 4);
                   const double m = 0.5 + std::uniform_real_distribution<double>(0, 1)(rng);
                   const KleinGordonSolution sol = klein_gordon(m, rnd(g, 0, 1, 1, rng));
                   return cube_fluxes(klein_gordon_tensor(sol.field, m));
                 }});
  out.push_back({"flux", "free_maxwell_cubes", 3, 1e-10, false, [](Rng& rng) {
                   auto g = make_grid(3, 4);
                   const Cochain f = coboundary(free_maxwell_potential(g, rng));
                   return cube_fluxes(-1.0 * cross(sharp(f), f));
                 }});
  out.push_back({"flux", "poynting", 3, 1e-10, false, [](Rng& rng) {
                   const PoyntingReport r = poynting_demo(4, rng());
                   return std::max(r.energy_identity, r.momentum_identity);
                 }});
  return out;
}

// ---- fermion doubling ------------------------------------------------------------------

std::vector<Check> doubling_checks(const VerifyConfig& c) {
  const double tol = c.tolerance;
  std::vector<Check> out;
  out.push_back({"doubling", "clifford", 1, tol, false, [](Rng&) {
                   double w = clifford_defect();
                   const Matrix& g0 = gamma_matrix(0);
                   for (int k = 1; k < 4; ++k) {
                     const Matrix p = g0 * gamma_matrix(k);
                     w = std::max(w, (p - Matrix(p.adjoint())).cwiseAbs().maxCoeff());
                   }
                   w = std::max(w, (gamma5() - Matrix(gamma5().adjoint())).cwiseAbs().maxCoeff());
                   w = std::max(w, (gamma5() * g0 + g0 * gamma5()).cwiseAbs().maxCoeff());
                   return w;
                 }});
  out.push_back({"doubling", "fermion_doubling", 2, 1e-9, false, [](Rng& rng) {
                   auto g = make_grid(4, 4);
                   const DiracSolution sol = dirac(0.3, rnd(g, 0, 4, 1, rng));
                   return fermion_doubling_check(sol.field, 0.3).residual;
                 }});
  return out;
}

std::vector<Check> all_checks(const VerifyConfig& c) {
  std::vector<Check> out;
  for (auto* make : {cochain_checks, covariant_checks, gauge_checks, stationarity_checks, conservation_checks,
                     flux_checks, doubling_checks})
    for (Check& x : make(c)) out.push_back(std::move(x));
  return out;
}

unsigned long long name_hash(const std::string& s) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char ch : s) h = (h ^ ch) * 1099511628211ull;
  return h;
}

CheckResult run_check(const Check& check, unsigned long long seed) {
  const unsigned long long h = name_hash(check.suite + "/" + check.name);
  std::seed_seq seq{static_cast<unsigned>(seed), static_cast<unsigned>(seed >> 32), static_cast<unsigned>(h),
                    static_cast<unsigned>(h >> 32)};
  Rng rng(seq);
  double value = check.lower ? std::numeric_limits<double>::infinity() : 0.0;
  for (int i = 0; i < check.instances; ++i) {
    const double r = check.run(rng);
    value = check.lower ? std::min(value, r) : std::max(value, std::isnan(r) ? std::numeric_limits<double>::infinity() : r);
  }
  const bool passed = check.lower ? value > check.tolerance : value <= check.tolerance;
  return {check.suite, check.name, check.instances, value, check.tolerance, check.lower, passed};
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> VerifyReport::failures() const {
  std::vector<std::string> out;
  for (const CheckResult& c : checks)
    if (!c.passed) out.push_back(c.suite + "/" + c.name);
  return out;
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"cochain", "covariant", "gauge", "stationarity",
                                               "conservation", "flux", "doubling"};
  return names;
}

VerifyReport run_verify(const VerifyConfig& config) {
  for (const std::string& s : config.suites)
    if (std::find(verify_suites().begin(), verify_suites().end(), s) == verify_suites().end())
      throw ConfigurationError("unknown suite: " + s);
  if (config.instances < 1) throw ConfigurationError("instances must be positive");
  std::vector<Check> checks;
  for (Check& c : all_checks(config))
    if (config.suites.empty() || std::find(config.suites.begin(), config.suites.end(), c.suite) != config.suites.end())
      checks.push_back(std::move(c));

  std::vector<CheckResult> results(checks.size());
  std::vector<std::exception_ptr> errors(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < checks.size();) {
      try {
        results[i] = run_check(checks[i], config.seed);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t threads = std::min<std::size_t>(checks.size(), config.threads > 0 ? config.threads : hw);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return {config, std::move(results)};
}

std::string report_jsonl(const VerifyReport& report) {
  const VerifyConfig& c = report.config;
  Json header{{"type", "header"},
              {"seed", c.seed},
              {"instances", c.instances},
              {"tolerance", c.tolerance},
              {"conservation_tolerance", c.conservation_tolerance},
              {"stationarity_tolerance", c.stationarity_tolerance},
              {"off_shell_threshold", c.off_shell_threshold},
              {"suites", c.suites.empty() ? verify_suites() : c.suites},
              {"inject_sign_bug", c.inject_sign_bug}};
  std::string out = header.dump() + "\n";
  for (const CheckResult& r : report.checks) {
    Json line{{"type", "check"},   {"suite", r.suite}, {"name", r.name},
              {"instances", r.instances}, {r.lower ? "min_witness" : "max_residual", r.value},
              {"tolerance", r.tolerance}, {"passed", r.passed}};
    out += line.dump() + "\n";
  }
  Json summary{{"type", "summary"}, {"checks", report.checks.size()}, {"failed", report.failures()}, {"passed", report.passed()}};
  return out + summary.dump() + "\n";
}

}  // namespace dfield
