#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dfield/errors.hpp"
#include "dfield/lagrangian.hpp"
#include "dfield/tensor.hpp"
#include "support.hpp"

using namespace dfield;

namespace {

Cochain real_field(GridPtr g, int degree, Rng& rng) { return random_cochain(std::move(g), degree, 1, 1, rng, false); }

double value(const Cochain& c, const Face& f) { return c.at(f)(0, 0).real(); }

// Largest difference over the pairs stored in a.
double tensor_gap(const Tensor& a, const Tensor& b) {
  double worst = 0.0;
  a.for_each([&](const Face& e, const Face& f, double v) { worst = std::max(worst, std::abs(v - b(e, f))); });
  return worst;
}

std::vector<Face> interior_hyperfaces(const Grid& g) {
  std::vector<Face> out;
  for (const Face& h : g.faces(g.d() - 1))
    if (!g.is_boundary(h)) out.push_back(h);
  return out;
}

}  // namespace

TEST_CASE("cross product on a path") {
  auto g = make_grid(1, 3);
  Rng rng(1);
  const Cochain psi = real_field(g, 0, rng), phi = real_field(g, 0, rng);
  const Tensor t = cross(psi, phi);
  for (int k = 0; k <= 3; ++k)
    for (int l = 0; l <= 3; ++l)
      if (std::abs(k - l) <= 1) CHECK(t(Face{2 * k}, Face{2 * l}) == doctest::Approx(value(psi, Face{2 * k}) * value(phi, Face{2 * l})));

  const Cochain a = real_field(g, 1, rng), b = real_field(g, 1, rng);
  const Tensor s = cross(a, b);
  CHECK(s(Face{1}, Face{3}) == doctest::Approx(value(a, Face{1}) * value(b, Face{3})));

  CHECK(cross(psi.zeros_like(), phi).max_abs() == 0.0);
  CHECK(cross(psi, phi.zeros_like()).max_abs() == 0.0);
}

TEST_CASE("cross product of matrix fields takes the real trace") {
  auto g = make_grid(2, 2);
  Rng rng(2);
  const Cochain psi = random_cochain(g, 1, 2, 3, rng), phi = random_cochain(g, 1, 3, 2, rng);
  const Tensor t = cross(psi, phi);
  const Face e{1, 2}, f{2, 1};
  CHECK(t(e, f) == doctest::Approx((psi.at(e) * phi.at(f)).trace().real()));
}

TEST_CASE("current times field strength is a type (0,1) tensor") {
  auto g = make_grid(3, 2);
  Rng rng(3);
  const Cochain j = real_field(g, 1, rng), f = real_field(g, 2, rng);
  const Tensor l = cross(j, f);
  CHECK(l.gap() == 1);
  const Face e{1, 2, 2}, face{1, 3, 2};
  CHECK(l(e, face) == doctest::Approx(value(j, e) * value(f, face)));
  CHECK_THROWS_AS(l(e, e), DimensionError);
  CHECK_THROWS_AS(cross(f, j), DimensionError);
  CHECK_THROWS_AS(cross(real_field(g, 0, rng), f), DimensionError);
}

TEST_CASE("tensor access errors") {
  auto g = make_grid(2, 2);
  Tensor t(g, 0);
  CHECK_THROWS_AS(t(Face{0, 0}, Face{6, 0}), IncidenceError);
  CHECK_THROWS_AS(t(Face{0, 0}, Face{4, 0}), DomainError);
  CHECK_THROWS_AS(t(Face{0, 0}, Face{1, 0}), DimensionError);
  CHECK(!t.stored(Face{0, 0}, Face{4, 0}));
  CHECK(t.stored(Face{0, 0}, Face{2, 0}));
  CHECK_THROWS_AS(Tensor(g, 2), DimensionError);
}

TEST_CASE("tensor boundary obeys the product rule") {
  Rng rng(4);
  for (int d : {1, 2, 3}) {
    auto g = make_grid(d, 2);
    for (int k = 0; k <= d; ++k) {
      const Cochain psi = random_cochain(g, k, 2, 2, rng), phi = random_cochain(g, k, 2, 2, rng);
      const Tensor lhs = tensor_boundary(cross(psi, phi));
      Tensor rhs(g, 1, 1);
      if (k > 0) rhs += cross(boundary(psi), phi, 1);
      if (k < d) rhs += cross(psi, coboundary(phi), 1);
      CHECK(tensor_gap(lhs, rhs) < 1e-12);
      CHECK(tensor_gap(rhs, lhs) < 1e-12);
    }
  }
}

TEST_CASE("tensor boundary is linear") {
  auto g = make_grid(2, 3);
  Rng rng(5);
  const Tensor a = random_partially_symmetric(g, rng), b = random_partially_symmetric(g, rng);
  CHECK(tensor_gap(tensor_boundary(a + 2.5 * b), tensor_boundary(a) + 2.5 * tensor_boundary(b)) < 1e-12);
}

TEST_CASE("one-dimensional conservation equation") {
  auto g = make_grid(1, 4);
  Rng rng(6);
  const Tensor t = random_partially_symmetric(g, rng);
  const Tensor bt = tensor_boundary(t);
  for (int k = 1; k < 4; ++k)
    for (int l = 1; l <= 4; ++l) {
      const Face vk{2 * k}, vl{2 * l}, vl1{2 * l - 2}, ek{2 * k - 1}, ek1{2 * k + 1}, el{2 * l - 1};
      if (std::abs(2 * k - (2 * l - 1)) > 1) continue;
      const double expected = t(vk, vl) - t(vk, vl1) + t(ek, el) - t(ek1, el);
      CHECK(bt(vk, el) == doctest::Approx(expected));
    }
}

TEST_CASE("toy model tensor is conserved with flux j²/2") {
  const int n = 3;
  const double s = 2.0;
  auto g = make_grid(1, n);
  Cochain phi(g, 0, 1, 1), source(g, 0, 1, 1);
  for (int k = 0; k <= n; ++k) phi.at(Face{2 * k})(0, 0) = -2.0 * k + 1.0;
  source.at(Face{0})(0, 0) = s;
  source.at(Face{2 * n})(0, 0) = -s;
  const Cochain dphi = coboundary(phi);
  const Tensor t = cross(dphi, dphi) + cross(-1.0 * source, phi);
  for (int k = 1; k <= n; ++k)
    for (int l = 1; l <= n; ++l)
      if (std::abs(k - l) <= 1) CHECK(t(Face{2 * k - 1}, Face{2 * l - 1}) == doctest::Approx(s * s));
  CHECK(interior_defect(tensor_boundary(t)) == 0.0);
  for (int k = 1; k < n; ++k) {
    const double j = value(phi, Face{2 * k - 2}) - value(phi, Face{2 * k});
    CHECK(flux_vertex_1d(t, k) == doctest::Approx(j * j / 2));
  }
  CHECK_THROWS_AS(flux_vertex_1d(t, 0), DomainError);
}

TEST_CASE("partial symmetry") {
  Rng rng(7);
  for (int d : {2, 3}) {
    auto g = make_grid(d, 2);
    const Cochain f = real_field(g, 2, rng);
    CHECK(is_partially_symmetric(cross(-1.0 * sharp(f), f), 1e-14));
    CHECK(is_partially_symmetric(random_partially_symmetric(g, rng)));
    CHECK(is_partially_symmetric(Tensor(g, 0)));
    const Cochain a = real_field(g, 1, rng), b = real_field(g, 1, rng);
    CHECK(!is_partially_symmetric(cross(a, b), 1e-6));
  }
}

TEST_CASE("flux across a boundary hyperface is rejected") {
  auto g = make_grid(2, 2);
  const Tensor t(g, 0);
  CHECK_THROWS_AS(flux_hyperface(t, Face{0, 1}, 0), DomainError);
  CHECK_THROWS_AS(flux_hyperface(t, Face{1, 4}, 1), DomainError);
  CHECK_THROWS_AS(flux_hyperface(t, Face{1, 1}, 0), DimensionError);
  CHECK(flux_hyperface(t, Face{2, 1}, 0) == 0.0);
  CHECK(flux_hypersurface(t, OrientedHypersurface{}, 0) == 0.0);
}

TEST_CASE("grid flux is the sum of doubling fluxes") {
  Rng rng(8);
  for (int d : {2, 3})
    for (int n : {2, 3}) {
      auto g = make_grid(d, n);
      auto dbl = doubling_of(*g);
      const Tensor t = random_partially_symmetric(g, rng);
      for (const Face& h : interior_hyperfaces(*g))
        for (int k = 0; k < d; ++k) {
          double sum = 0.0;
          for (const Face& part : doubling_hyperfaces(h)) sum += doubling_flux(t, *dbl, part, k);
          CHECK(std::abs(flux_hyperface(t, h, k) - sum) < 1e-12);
        }
      const Tensor zero(g, 0);
      CHECK(doubling_flux(zero, *dbl, interior_hyperfaces(*dbl).front(), 0) == 0.0);
    }
}

TEST_CASE("Stokes formula on the doubling") {
  Rng rng(9);
  for (int d : {2, 3})
    for (int n : {2, 3}) {
      auto g = make_grid(d, n);
      auto dbl = doubling_of(*g);
      const Tensor t = random_partially_symmetric(g, rng);
      const Tensor bt = tensor_boundary(t);
      int checked = 0;
      for (const Face& cube : dbl->faces(d)) {
        bool inner = true;
        std::vector<OrientedFace> parts;
        for (int m = 0; m < d; ++m)
          for (int s : {-1, 1}) {
            const Face h = cube.shifted(m, s);
            if (dbl->is_boundary(h)) inner = false;
            parts.push_back({h, dbl->incidence(h, cube)});
          }
        if (!inner) continue;
        ++checked;
        for (int k = 0; k < d; ++k) {
          double lhs = 0.0;
          for (const auto& p : parts) lhs += p.sign * doubling_flux(t, *dbl, p.face, k);
          CHECK(std::abs(lhs - doubling_flux01(bt, *dbl, cube, k)) < 1e-12);
        }
      }
      CHECK(checked > 0);
    }
}

TEST_CASE("quadratic Lagrangian closed form") {
  Rng rng(11);
  for (int d : {2, 3}) {
    auto g = make_grid(d, 3);
    LocalLagrangian lag(g, 0, 1, 1, true);
    lag.add(FieldTerm{TermKind::Kinetic, -1.0});
    lag.add(FieldTerm{TermKind::Mass, 0.7});
    const Cochain phi = real_field(g, 0, rng);
    const Cochain dphi = coboundary(phi);
    const Cochain grad = lag.field_gradient(phi, dphi);
    const Cochain dgrad = lag.derivative_gradient(phi, dphi);
    const Cochain density = lag.density(phi, dphi);
    const Tensor t = cross(dgrad.real_part(), dphi) + cross(grad.real_part(), phi);
    for (const Face& h : interior_hyperfaces(*g)) {
      int l = 0;
      while (h.spans(l)) ++l;
      const Face v = h.max_vertex();
      for (int k = 0; k < d; ++k) {
        const Face up = v.shifted(l, 1);
        double expected = 0.5 * (value(dgrad, up) + value(dgrad, up.shifted(k, -2))) * value(dphi, v.shifted(k, -1));
        if (k == l) expected -= value(density, v);
        const double sign = l % 2 ? -1.0 : 1.0;
        CHECK(std::abs(sign * flux_hyperface(t, h, k) - expected) < 1e-12);
      }
    }
  }
}
