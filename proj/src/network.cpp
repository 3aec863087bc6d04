#include "dfield/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "dfield/errors.hpp"
#include "dfield/tensor.hpp"
#include "dfield/variational.hpp"
#include "quadrature.hpp"

namespace dfield {

namespace {

double value(const Cochain& c, const Face& f) { return c.at(f)(0, 0).real(); }
void set(Cochain& c, const Face& f, double v) { c.at(f)(0, 0) = v; }

bool interior_point(const Face& f, int n) {
  for (int m = 0; m < f.d(); ++m)
    if (f[m] == 0 || f[m] == 2 * n) return false;
  return true;
}

// Face of the grid with center at half the doubling vertex v.
Face grid_face_at(const Face& v) {
  Face f = v;
  for (int m = 0; m < v.d(); ++m) f[m] = v[m] / 2;
  return f;
}

Cochain magnetic_field(const Grid& g, const GridPtr& gp, const Cochain& j) {
  const int n = g.n();
  Cochain f(gp, 2, 1, 1);
  const Face start{2 * ((n - 1) / 2) + 1, 2 * ((n - 1) / 2) + 1};
  std::vector<char> seen(g.count(2), 0);
  std::deque<Face> queue{start};
  seen[g.index(start)] = 1;
  while (!queue.empty()) {
    const Face face = queue.front();
    queue.pop_front();
    for (int m = 0; m < 2; ++m)
      for (int s : {-1, 1}) {
        const Face e = face.shifted(m, s);
        if (g.is_boundary(e)) continue;
        const Face other = e.shifted(m, s);
        const std::size_t k = g.index(other);
        if (seen[k]) continue;
        seen[k] = 1;
        set(f, other, (-value(j, e) - g.incidence(e, face) * value(f, face)) / g.incidence(e, other));
        queue.push_back(other);
      }
  }
  return f;
}

void fill_doubling(NetworkSolution& sol) {
  const Grid& g = *sol.grid;
  const GridPtr dbl = doubling_of(g);
  const Grid& h = *dbl;
  const Cochain dphi = coboundary(sol.potential);
  sol.doubling = dbl;
  sol.heat = Cochain(dbl, 0, 1, 1);
  sol.pressure = Cochain(dbl, 0, 1, 1);
  sol.poynting = Cochain(dbl, 1, 1, 1);
  sol.lorentz = Cochain(dbl, 1, 1, 1);

  for (const Face& v : h.faces(0)) {
    const Face c = grid_face_at(v);
    if (c.dim() == 1) {
      set(sol.heat, v, -value(dphi, c) * value(sol.current, c));
      if (!h.is_boundary(v)) {
        const int m = c.spans(0) ? 1 : 0;
        set(sol.pressure, v, value(sol.magnetic, c.shifted(m, -1)) * value(sol.magnetic, c.shifted(m, 1)) / 2);
      }
    } else if (c.dim() == 2) {
      const double fv = value(sol.magnetic, c);
      set(sol.pressure, v, fv * fv / 2);
    }
  }

  for (const Face& e : h.faces(1)) {
    const int axis = e.spans(0) ? 0 : 1;
    const Face p = grid_face_at(e.shifted(axis, -1)), q = grid_face_at(e.shifted(axis, 1));
    if (p.dim() == 0 || q.dim() == 0) continue;
    const Face& edge = p.dim() == 1 ? p : q;
    const Face& face = p.dim() == 1 ? q : p;
    const double sign = edge.spans(1) ? 1.0 : -1.0;
    const double fv = value(sol.magnetic, face);
    set(sol.poynting, e, sign * value(dphi, edge) * fv);
    set(sol.lorentz, e, -sign * value(sol.current, edge) / 2 * fv);
  }
}

void fill_stress(NetworkSolution& sol) {
  const Grid& g = *sol.grid;
  const int n = g.n();
  const Cochain dphi = coboundary(sol.potential);
  for (int k = 0; k < 2; ++k) sol.stress[k] = Cochain(sol.grid, 1, 1, 1);
  for (const Face& e : g.faces(1)) {
    const int a = e.spans(0) ? 0 : 1, b = 1 - a;
    const Face u = e.shifted(a, -1), v = e.shifted(a, 1);
    if (!interior_point(u, n) || !interior_point(v, n)) continue;
    const double x = value(dphi, e);
    for (int k = 0; k < 2; ++k) {
      const double sign = k == 0 ? -0.5 : 0.5;
      const double s = a == k ? x * (value(dphi, u.shifted(b, 1)) + value(dphi, v.shifted(b, 1)))
                              : x * x - value(dphi, v.shifted(b, 1)) * value(dphi, v.shifted(b, -1));
      set(sol.stress[k], e, sign * s);
    }
  }
}

}  // namespace

NetworkSolution solve_network(const Cochain& source) {
  const GridPtr& gp = source.grid_ptr();
  if (!gp) throw ConfigurationError("source has no grid");
  const Grid& g = *gp;
  if (g.d() != 1 && g.d() != 2) throw DimensionError("networks live on I^1_N or I^2_N");
  if (source.degree() != 0 || source.rows() != 1 || source.cols() != 1 || !source.is_real())
    throw ShapeError("a source is a real function on vertices");
  double total = 0.0, size = 0.0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const double s = source[i](0, 0).real();
    if (s != 0.0 && !g.is_boundary(source.face(i))) throw DomainError("source must vanish at interior vertices");
    total += s;
    size += std::abs(s);
  }
  if (std::abs(total) > 1e-10 * std::max(1.0, size)) throw NoSolutionError("source has nonzero total", std::abs(total));

  LocalLagrangian l(gp, 0, 1, 1, true);
  l.add({TermKind::Kinetic, 0.5, {}, false});
  l.add({TermKind::Source, -1.0, source});

  NetworkSolution sol;
  sol.grid = gp;
  sol.source = source;
  sol.potential = solve_quadratic(l).real_part();
  Face center = g.faces(0).front();
  for (int m = 0; m < g.d(); ++m) center[m] = 2 * (g.n() / 2);
  const double shift = value(sol.potential, center);
  for (std::size_t i = 0; i < sol.potential.size(); ++i) sol.potential[i](0, 0) -= shift;
  sol.current = -coboundary(sol.potential);
  if (g.d() == 1) return sol;

  sol.magnetic = magnetic_field(g, gp, sol.current);
  fill_doubling(sol);
  fill_stress(sol);
  return sol;
}

double NetworkDefects::max() const {
  return std::max({kirchhoff_current, kirchhoff_voltage, ampere, energy, momentum, stress, std::abs(tellegen)});
}

NetworkDefects network_defects(const NetworkSolution& sol) {
  const Grid& g = *sol.grid;
  NetworkDefects out{};
  out.kirchhoff_current = (boundary(sol.current) + sol.source).max_abs();
  out.tellegen = pairing(coboundary(sol.potential), sol.current) + pairing(sol.potential, sol.source);
  if (g.d() == 1) return out;
  out.kirchhoff_voltage = coboundary(sol.current).max_abs();
  out.ampere = interior_max(-boundary(sol.magnetic) - sol.current);
  out.energy = interior_max(boundary(sol.poynting) - sol.heat);

  const Grid& h = *sol.doubling;
  const Cochain dp = coboundary(sol.pressure) + sol.lorentz;
  for (const Face& e : h.faces(1)) {
    const int axis = e.spans(0) ? 0 : 1;
    const Face p = e.shifted(axis, -1), q = e.shifted(axis, 1);
    if (h.is_boundary(p) || h.is_boundary(q)) continue;
    if (grid_face_at(p).dim() != 2 && grid_face_at(q).dim() != 2) continue;
    out.momentum = std::max(out.momentum, std::abs(value(dp, e)));
  }

  for (int k = 0; k < 2; ++k) {
    const Cochain ds = coboundary(sol.stress[k]);
    for (const Face& f : g.faces(2)) {
      bool inside = true;
      for (int m = 0; m < 2; ++m)
        if (f[m] == 1 || f[m] == 2 * g.n() - 1) inside = false;
      if (inside) out.stress = std::max(out.stress, std::abs(value(ds, f)));
    }
  }
  return out;
}

Cochain dipole_source(GridPtr grid) {
  const Grid& g = *grid;
  if (g.d() != 2) throw DimensionError("dipole source needs a plane grid");
  Cochain s(grid, 0, 1, 1);
  const int mid = 2 * (g.n() / 2);
  set(s, Face{0, mid}, 1.0);
  set(s, Face{2 * g.n(), mid}, -1.0);
  return s;
}

Cochain sampled_source(GridPtr grid, const std::function<double(double, double)>& s) {
  const Grid& g = *grid;
  if (g.d() != 2) throw DimensionError("sampled sources live on plane grids");
  const int n = g.n();
  Cochain out(grid, 0, 1, 1);
  const double len = 1.0 / (n + 1);
  // Sides as (fixed axis, fixed value).
  for (int axis = 0; axis < 2; ++axis)
    for (int end = 0; end < 2; ++end)
      for (int i = 0; i <= n; ++i) {
        auto point = [&](double t) { return axis == 0 ? s(end, t) : s(t, end); };
        const double integral = len * detail::segment_mean(point, i * len, (i + 1) * len);
        Face v{0, 0};
        v[axis] = 2 * n * end;
        v[1 - axis] = 2 * i;
        out.at(v)(0, 0) += integral;
      }
  return out;
}

}  // namespace dfield
