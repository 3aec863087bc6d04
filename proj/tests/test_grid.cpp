#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "dfield/errors.hpp"
#include "dfield/grid.hpp"

using namespace dfield;

namespace {

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long long power(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Sign of the permutation sorting `axes`, by brute-force bubble sort.
int permutation_parity(std::vector<int> axes) {
  int sign = 1;
  for (std::size_t i = 0; i < axes.size(); ++i)
    for (std::size_t j = 0; j + 1 < axes.size() - i; ++j)
      if (axes[j] > axes[j + 1]) {
        std::swap(axes[j], axes[j + 1]);
        sign = -sign;
      }
  return sign;
}

std::vector<int> spanned(const Face& f) {
  std::vector<int> out;
  for (int m = 0; m < f.d(); ++m)
    if (f.spans(m)) out.push_back(m);
  return out;
}

// Coorientation straight from the definition: the outer normal of sub in sup,
// followed by the positive basis of sub, compared with the positive basis of sup.
int incidence_from_definition(const Face& sub, const Face& sup) {
  int axis = -1;
  for (int m = 0; m < sup.d(); ++m)
    if (sub[m] != sup[m]) axis = m;
  const int outward = sub[axis] > sup[axis] ? 1 : -1;
  std::vector<int> basis{axis};
  for (int m : spanned(sub)) basis.push_back(m);
  return outward * permutation_parity(basis);
}

}  // namespace

TEST_CASE("face counts follow the binomial formula") {
  for (int d = 1; d <= 4; ++d)
    for (int n = 1; n <= 4; ++n) {
      Grid g(d, n);
      for (int k = 0; k <= d; ++k)
        CHECK(static_cast<long long>(g.count(k)) == binomial(d, k) * power(n, k) * power(n + 1, d - k));
    }
  Grid g22(2, 2);
  CHECK(g22.count(1) == 12);
  CHECK(g22.count(0) == 9);
  CHECK(Grid(1, 3).count(1) == 3);
  CHECK_THROWS_AS(g22.faces(3), DimensionError);
  CHECK_THROWS_AS(g22.faces(-1), DimensionError);
}

TEST_CASE("faces are listed in lexicographic order of centers") {
  Grid g(3, 2);
  for (int k = 0; k <= 3; ++k) {
    const auto& fs = g.faces(k);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      CHECK(fs[i].dim() == k);
      CHECK(g.index(fs[i]) == i);
      if (i > 0) CHECK(fs[i - 1] < fs[i]);
    }
  }
}

TEST_CASE("face geometry") {
  const Face f{3, 2, 1};
  CHECK(f.dim() == 2);
  CHECK(f.min_vertex() == Face{2, 2, 0});
  CHECK(f.max_vertex() == Face{4, 2, 2});
  CHECK(face_between(Face{2, 2, 0}, Face{4, 2, 2}) == f);
  Grid g(3, 2);
  CHECK(g.is_boundary(Face{1, 0, 1}));
  CHECK(g.is_boundary(Face{4, 1, 1}));
  CHECK_FALSE(g.is_boundary(Face{2, 1, 1}));
  CHECK_FALSE(g.is_boundary(Face{1, 1, 1}));
}

TEST_CASE("closed-form incidence agrees with the orientation definition") {
  for (int d = 1; d <= 4; ++d) {
    Grid g(d, 2);
    for (int k = 1; k <= d; ++k)
      for (const Face& sup : g.faces(k))
        for (int m = 0; m < d; ++m) {
          if (!sup.spans(m)) continue;
          for (int delta : {-1, 1}) {
            const Face sub = sup.shifted(m, delta);
            CHECK(g.incidence(sub, sup) == incidence_from_definition(sub, sup));
          }
        }
  }
}

TEST_CASE("incidence vanishes off the boundary relation") {
  Grid g(2, 2);
  CHECK(g.incidence(Face{0, 0}, Face{1, 1}) == 0);
  CHECK(g.incidence(Face{1, 0}, Face{3, 1}) == 0);
  CHECK(g.incidence(Face{1, 0}, Face{1, 0}) == 0);
}

TEST_CASE("signs around a vertex and a square of the plane") {
  Grid g(2, 2);
  const Face v{2, 2};
  // Edges 1,2 start at v; edges 3,4 end at v.
  const Face e1{3, 2}, e2{2, 3}, e3{1, 2}, e4{2, 1};
  CHECK(g.incidence(v, e1) == -1);
  CHECK(g.incidence(v, e2) == -1);
  CHECK(g.incidence(v, e3) == 1);
  CHECK(g.incidence(v, e4) == 1);
  // Square: 1 bottom, 2 right, 3 top, 4 left.
  const Face f{1, 1};
  CHECK(g.incidence(Face{1, 0}, f) == 1);
  CHECK(g.incidence(Face{2, 1}, f) == 1);
  CHECK(g.incidence(Face{1, 2}, f) == -1);
  CHECK(g.incidence(Face{0, 1}, f) == -1);
}

TEST_CASE("coboundary signs of a three-dimensional cube") {
  Grid g(3, 3);
  const Face c{3, 3, 3};
  CHECK(g.incidence(c.shifted(0, -1), c) == -1);
  CHECK(g.incidence(c.shifted(0, 1), c) == 1);
  CHECK(g.incidence(c.shifted(1, -1), c) == 1);
  CHECK(g.incidence(c.shifted(1, 1), c) == -1);
  CHECK(g.incidence(c.shifted(2, -1), c) == -1);
  CHECK(g.incidence(c.shifted(2, 1), c) == 1);
}

TEST_CASE("boundary of boundary vanishes at the sign level") {
  for (int d = 2; d <= 4; ++d) {
    Grid g(d, 2);
    for (int k = 2; k <= d; ++k)
      for (const Face& f : g.faces(k)) {
        std::map<Face, int> twice;
        for (int m = 0; m < d; ++m) {
          if (!f.spans(m)) continue;
          for (int a : {-1, 1}) {
            const Face e = f.shifted(m, a);
            for (int l = 0; l < d; ++l) {
              if (!e.spans(l)) continue;
              for (int b : {-1, 1}) {
                const Face v = e.shifted(l, b);
                twice[v] += g.incidence(e, f) * g.incidence(v, e);
              }
            }
          }
        }
        for (const auto& [v, s] : twice) CHECK(s == 0);
      }
  }
}

TEST_CASE("faces with a given maximal vertex") {
  Grid g2(2, 2);
  const auto interior = g2.faces_with_max_vertex(Face{2, 2}, 1);
  REQUIRE(interior.size() == 2);
  CHECK(interior[0] == Face{1, 2});
  CHECK(interior[1] == Face{2, 1});
  CHECK(g2.faces_with_max_vertex(Face{0, 0}, 1).empty());
  CHECK(g2.faces_with_max_vertex(Face{2, 2}, 2).size() == 1);
  Grid g3(3, 2);
  const auto squares = g3.faces_with_max_vertex(Face{2, 2, 2}, 2);
  CHECK(squares.size() == 3);
  for (const Face& f : squares) CHECK(f.max_vertex() == Face{2, 2, 2});
  CHECK_THROWS_AS(g3.faces_with_max_vertex(Face{1, 2, 2}, 1), DimensionError);
}

TEST_CASE("triple sign") {
  Grid g(2, 1);
  const Face a{0, 0}, b{2, 0}, bp{0, 2}, c{2, 2};
  CHECK(g.triple_sign(a, a, c) == 1);
  CHECK(g.triple_sign(a, b, c) == 1);
  CHECK(g.triple_sign(a, bp, c) == -1);
  CHECK_THROWS_AS(g.triple_sign(c, a, a), IncidenceError);
}

TEST_CASE("triple sign is a cocycle on small cubes") {
  for (int d = 1; d <= 3; ++d) {
    Grid g(d, 1);
    const auto& vs = g.faces(0);
    auto below = [](const Face& x, const Face& y) {
      for (int m = 0; m < x.d(); ++m)
        if (x[m] > y[m]) return false;
      return true;
    };
    int checked = 0;
    for (const Face& a : vs)
      for (const Face& b : vs)
        for (const Face& c : vs)
          for (const Face& e : vs) {
            if (!below(a, b) || !below(b, c) || !below(c, e)) continue;
            const int abc = g.triple_sign(a, b, c);
            CHECK(abc * g.triple_sign(a, c, e) == g.triple_sign(a, b, e) * g.triple_sign(b, c, e));
            ++checked;
          }
    CHECK(checked > 0);
  }
}

TEST_CASE("edge paths") {
  Grid g(2, 2);
  const auto loop = EdgePath::face_boundary(g, Face{1, 1});
  REQUIRE(loop.steps.size() == 4);
  CHECK(loop.steps[0].face == Face{1, 0});
  CHECK(loop.steps[0].sign == 1);
  CHECK(loop.steps[2].face == Face{1, 2});
  CHECK(loop.steps[2].sign == -1);
  CHECK(loop.start() == loop.end());
  CHECK_THROWS_AS(EdgePath::through(g, {Face{0, 0}, Face{2, 2}}), PathError);
  CHECK_THROWS_AS(EdgePath::through(g, {Face{0, 0}, Face{2, 0}, Face{2, 2}, Face{2, 0}}), PathError);
  EdgePath broken{{{Face{1, 0}, 1}, {Face{3, 2}, 1}}};
  CHECK_THROWS_AS(broken.validate(g), PathError);
}

TEST_CASE("boundary of a block of cubes") {
  Grid g(3, 3);
  const auto one = OrientedHypersurface::boundary_of(g, {Face{3, 3, 3}});
  CHECK(one.faces.size() == 6);
  const auto two = OrientedHypersurface::boundary_of(g, {Face{3, 3, 3}, Face{5, 3, 3}});
  CHECK(two.faces.size() == 10);
  for (const auto& h : two.faces) CHECK(h.face != Face{4, 3, 3});
}
