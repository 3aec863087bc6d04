#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dfield/cochain.hpp"
#include "dfield/errors.hpp"
#include "support.hpp"

using namespace dfield;
using testing_support::relative_gap;

namespace {

bool below(const Face& x, const Face& y) {
  for (int m = 0; m < x.d(); ++m)
    if (x[m] > y[m]) return false;
  return true;
}

bool has_face(const Face& x, const Face& y) {
  for (int m = 0; m < x.d(); ++m)
    if (y[m] - x[m] != 0 && y[m] - x[m] != 2) return false;
  return true;
}

// Products straight from their definitions, summing over all vertex triples.
Cochain naive_cup(const Cochain& phi, const Cochain& psi) {
  const Grid& g = phi.grid();
  Cochain out(phi.grid_ptr(), phi.degree() + psi.degree(), phi.rows(), psi.cols());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Face a = out.face(i).min_vertex();
    const Face c = out.face(i).max_vertex();
    for (const Face& b : g.faces(0)) {
      if (!below(a, b) || !below(b, c)) continue;
      const Face ab = face_between(a, b), bc = face_between(b, c);
      if (ab.dim() != phi.degree()) continue;
      out[i] += double(g.triple_sign(a, b, c)) * (phi.at(ab) * psi.at(bc));
    }
  }
  return out;
}

Cochain naive_cap(const Cochain& phi, const Cochain& psi) {
  const Grid& g = phi.grid();
  Cochain out(phi.grid_ptr(), phi.degree() - psi.degree(), phi.rows(), psi.cols());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Face b = out.face(i).min_vertex();
    const Face c = out.face(i).max_vertex();
    for (const Face& a : g.faces(0)) {
      if (!has_face(a, b) || !has_face(a, c)) continue;
      const Face ab = face_between(a, b), ac = face_between(a, c);
      if (ab.dim() != psi.degree()) continue;
      out[i] += double(g.triple_sign(a, b, c)) * (phi.at(ac) * psi.at(ab));
    }
  }
  return out;
}

Cochain naive_cop(const Cochain& phi, const Cochain& psi) {
  const Grid& g = phi.grid();
  Cochain out(phi.grid_ptr(), psi.degree() - phi.degree(), phi.rows(), psi.cols());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Face a = out.face(i).min_vertex();
    const Face b = out.face(i).max_vertex();
    for (const Face& c : g.faces(0)) {
      if (!has_face(b, c) || !has_face(a, c)) continue;
      const Face bc = face_between(b, c), ac = face_between(a, c);
      if (bc.dim() != phi.degree()) continue;
      out[i] += double(g.triple_sign(a, b, c)) * (phi.at(bc) * psi.at(ac));
    }
  }
  return out;
}

// Coboundary from the incidence numbers of the grid.
Cochain naive_coboundary(const Cochain& phi) {
  const Grid& g = phi.grid();
  Cochain out(phi.grid_ptr(), phi.degree() + 1, phi.rows(), phi.cols());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const Face& e : g.faces(phi.degree())) {
      const int s = g.incidence(e, out.face(i));
      if (s) out[i] += double(s) * phi.at(e);
    }
  return out;
}

double scalar(const Cochain& c, const Face& f) { return c.at(f)(0, 0).real(); }

}  // namespace

TEST_CASE("one-dimensional coboundary and boundary") {
  auto g = make_grid(1, 3);
  Cochain phi(g, 0, 1, 1);
  for (int k = 0; k <= 3; ++k) phi.at(Face{2 * k})(0, 0) = k * k + 1.0;
  const Cochain dphi = coboundary(phi);
  for (int k = 1; k <= 3; ++k)
    CHECK(scalar(dphi, Face{2 * k - 1}) == doctest::Approx(scalar(phi, Face{2 * k}) - scalar(phi, Face{2 * k - 2})));
  Cochain j(g, 1, 1, 1);
  for (int k = 1; k <= 3; ++k) j.at(Face{2 * k - 1})(0, 0) = 3.0 * k;
  const Cochain dj = boundary(j);
  // [∂j](k) = j(k) - j(k+1), with the edge k ending at vertex k.
  CHECK(scalar(dj, Face{2}) == doctest::Approx(3.0 - 6.0));
  CHECK(scalar(dj, Face{0}) == doctest::Approx(-3.0));
  CHECK(scalar(dj, Face{6}) == doctest::Approx(9.0));
}

TEST_CASE("plane examples: boundary, coboundary, cap and cup") {
  auto g = make_grid(2, 2);
  Rng rng(1);
  const Cochain j = random_cochain(g, 1, 1, 1, rng, false);
  const Cochain phi = random_cochain(g, 1, 1, 1, rng, false);
  const Cochain psi = random_cochain(g, 1, 1, 1, rng, false);
  const Face e1{3, 2}, e2{2, 3}, e3{1, 2}, e4{2, 1};
  const Face v{2, 2};
  CHECK(scalar(boundary(j), v) ==
        doctest::Approx(-scalar(j, e1) - scalar(j, e2) + scalar(j, e3) + scalar(j, e4)));
  // Square with edges 1 bottom, 2 right, 3 top, 4 left.
  const Face f{1, 1}, b1{1, 0}, b2{2, 1}, b3{1, 2}, b4{0, 1};
  CHECK(scalar(coboundary(j), f) ==
        doctest::Approx(scalar(j, b1) + scalar(j, b2) - scalar(j, b3) - scalar(j, b4)));
  CHECK(scalar(cup(phi, psi), f) ==
        doctest::Approx(scalar(phi, b1) * scalar(psi, b2) - scalar(phi, b4) * scalar(psi, b3)));
  CHECK(scalar(cap(phi, psi), v) ==
        doctest::Approx(scalar(phi, e3) * scalar(psi, e3) + scalar(phi, e4) * scalar(psi, e4)));
}

TEST_CASE("low-degree products") {
  auto g = make_grid(3, 2);
  Rng rng(2);
  const Cochain p1 = random_cochain(g, 1, 2, 2, rng);
  const Cochain q1 = random_cochain(g, 1, 2, 2, rng);
  const Cochain p0 = random_cochain(g, 0, 2, 2, rng);
  const auto cup10 = cup(p1, p0), cap10 = cap(p1, p0), cup01 = cup(p0, p1), cop01 = cop(p0, p1);
  for (const Face& e : g->faces(1)) {
    const Face a = e.min_vertex(), b = e.max_vertex();
    CHECK((cup10.at(e) - p1.at(e) * p0.at(b)).norm() < 1e-14);
    CHECK((cap10.at(e) - p1.at(e) * p0.at(a)).norm() < 1e-14);
    CHECK((cup01.at(e) - p0.at(a) * p1.at(e)).norm() < 1e-14);
    CHECK((cop01.at(e) - p0.at(b) * p1.at(e)).norm() < 1e-14);
  }
  const auto cap11 = cap(p1, q1), cop11 = cop(p1, q1);
  for (const Face& v : g->faces(0)) {
    Matrix in = Matrix::Zero(2, 2), out = Matrix::Zero(2, 2);
    for (const Face& e : g->faces(1)) {
      if (e.max_vertex() == v) in += p1.at(e) * q1.at(e);
      if (e.min_vertex() == v) out += p1.at(e) * q1.at(e);
    }
    CHECK((cap11.at(v) - in).norm() < 1e-14);
    CHECK((cop11.at(v) - out).norm() < 1e-14);
  }
}

TEST_CASE("products agree with their defining sums") {
  for (int d = 1; d <= 3; ++d) {
    auto g = make_grid(d, 2);
    Rng rng(10 + d);
    for (int k = 0; k <= d; ++k)
      for (int l = 0; l <= d; ++l) {
        const Cochain phi = random_cochain(g, k, 1, 2, rng);
        const Cochain psi = random_cochain(g, l, 2, 2, rng);
        if (k + l <= d) CHECK(relative_gap(cup(phi, psi), naive_cup(phi, psi)) < 1e-13);
        if (k >= l) CHECK(relative_gap(cap(phi, psi), naive_cap(phi, psi)) < 1e-13);
        if (l >= k) CHECK(relative_gap(cop(phi, psi), naive_cop(phi, psi)) < 1e-13);
      }
    for (int k = 0; k < d; ++k) {
      const Cochain phi = random_cochain(g, k, 2, 1, rng);
      CHECK(relative_gap(coboundary(phi), naive_coboundary(phi)) < 1e-14);
    }
  }
}

TEST_CASE("coboundary through cup products with the unit") {
  // δφ = 1⌣φ − (−1)^k φ⌣1 on cubical grids.
  auto g = make_grid(3, 2);
  Rng rng(3);
  Cochain one1(g, 1, 1, 1);
  for (std::size_t i = 0; i < one1.size(); ++i) one1[i](0, 0) = 1.0;
  for (int k = 0; k < 3; ++k) {
    const Cochain phi = random_cochain(g, k, 1, 1, rng);
    const double s = (k % 2) ? -1.0 : 1.0;
    CHECK(relative_gap(coboundary(phi), cup(one1, phi) - s * cup(phi, one1)) < 1e-13);
  }
}

TEST_CASE("epsilon, sharp, pairing and conjugate transpose") {
  auto g = make_grid(2, 1);
  Rng rng(4);
  const Cochain phi = random_cochain(g, 0, 2, 3, rng);
  Matrix sum = Matrix::Zero(2, 3);
  for (std::size_t i = 0; i < phi.size(); ++i) sum += phi[i];
  CHECK((epsilon(phi) - sum).norm() < 1e-14);
  const Cochain e = random_cochain(g, 1, 1, 1, rng);
  const Cochain se = sharp(e);
  CHECK(se.at(Face{1, 0})(0, 0) == -e.at(Face{1, 0})(0, 0));
  CHECK(se.at(Face{0, 1})(0, 0) == e.at(Face{0, 1})(0, 0));
  CHECK(pairing(phi, phi) > 0.0);
  CHECK(pairing(phi.zeros_like(), phi.zeros_like()) == 0.0);
  const Cochain t = conjugate_transpose(phi);
  CHECK(t.rows() == 3);
  CHECK(t.cols() == 2);
  CHECK(t[0](1, 0) == std::conj(phi[0](0, 1)));
  CHECK_THROWS_AS(pairing(phi, t), ShapeError);
  CHECK_THROWS_AS(epsilon(e), DimensionError);
  CHECK_THROWS_AS(cup(phi, phi), ShapeError);
}

TEST_CASE("complex identities on random fields") {
  for (int d = 1; d <= 4; ++d) {
    auto g = make_grid(d, d <= 2 ? 3 : 2);
    Rng rng(100 + d);
    for (int k = 0; k <= d; ++k) {
      const Cochain phi = random_cochain(g, k, 2, 2, rng);
      if (k + 2 <= d) CHECK(coboundary(coboundary(phi)).max_abs() < 1e-13);
      if (k >= 2) CHECK(boundary(boundary(phi)).max_abs() < 1e-13);
      if (k == 1) CHECK(epsilon(boundary(phi)).norm() < 1e-13);
    }
    for (int k = 0; k <= d; ++k)
      for (int l = 0; k + l <= d; ++l) {
        const Cochain phi = random_cochain(g, k, 2, 2, rng);
        const Cochain psi = random_cochain(g, l, 2, 2, rng);
        const double s = (k % 2) ? -1.0 : 1.0;
        if (k + l < d)
          CHECK(relative_gap(coboundary(cup(phi, psi)), cup(coboundary(phi), psi) + s * cup(phi, coboundary(psi))) <
                1e-12);
        for (int m = 0; k + l + m <= d; ++m) {
          const Cochain chi = random_cochain(g, m, 2, 2, rng);
          CHECK(relative_gap(cup(cup(phi, psi), chi), cup(phi, cup(psi, chi))) < 1e-12);
        }
      }
  }
}
