#include "dfield/tensor.hpp"

#include <cmath>
#include <algorithm>
#include <cstdlib>
#include <random>

#include "dfield/errors.hpp"

namespace dfield {

namespace {

void enumerate_offsets(int d, int radius, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == d) {
    int l1 = 0;
    for (int x : cur) l1 += std::abs(x);
    if (l1 <= radius) out.push_back(cur);
    return;
  }
  for (int x = -radius; x <= radius; ++x) {
    cur.push_back(x);
    enumerate_offsets(d, radius, cur, out);
    cur.pop_back();
  }
}

long offset_code(const std::vector<int>& o, int radius) {
  long code = 0;
  for (int x : o) code = code * (2 * radius + 1) + (x + radius);
  return code;
}

}  // namespace

Tensor::Tensor(GridPtr grid, int gap, int radius) : grid_(std::move(grid)), gap_(gap), radius_(radius) {
  if (!grid_) throw ConfigurationError("tensor needs a grid");
  if (gap != 0 && gap != 1) throw DimensionError("only type (1,1) and (0,1) tensors are supported");
  if (radius < 0) throw ConfigurationError("tensor radius must be nonnegative");
  std::vector<int> cur;
  enumerate_offsets(grid_->d(), radius, cur, offsets_);
  long codes = 1;
  for (int m = 0; m < grid_->d(); ++m) codes *= 2 * radius + 1;
  offset_code_.assign(codes, -1);
  for (std::size_t o = 0; o < offsets_.size(); ++o) offset_code_[offset_code(offsets_[o], radius)] = static_cast<long>(o);
  values_.assign(grid_->key_count() * offsets_.size(), 0.0);
}

bool Tensor::shift(Face& e, const std::vector<int>& offset) const {
  const int top = 2 * grid_->n();
  for (int m = 0; m < grid_->d(); ++m) {
    e[m] += offset[m];
    if (e[m] < 0 || e[m] > top) return false;
  }
  return true;
}

bool Tensor::stored(const Face& e, const Face& f) const {
  if (!grid_->contains(e) || !grid_->contains(f)) return false;
  int l1 = 0;
  for (int m = 0; m < grid_->d(); ++m) l1 += std::abs(e[m] - f[m]);
  return l1 <= radius_;
}

std::size_t Tensor::slot(const Face& e, const Face& f) const {
  if (!grid_->contains(e) || !grid_->contains(f))
    throw IncidenceError("tensor pair " + e.str() + "×" + f.str() + " is outside the grid");
  if (f.dim() - e.dim() != gap_)
    throw DimensionError("tensor pair " + e.str() + "×" + f.str() + " has the wrong dimension gap");
  std::vector<int> o(grid_->d());
  int l1 = 0;
  for (int m = 0; m < grid_->d(); ++m) {
    o[m] = e[m] - f[m];
    l1 += std::abs(o[m]);
  }
  if (l1 > radius_) throw DomainError("tensor pair " + e.str() + "×" + f.str() + " is beyond the stored radius");
  return grid_->key(f) * offsets_.size() + offset_code_[offset_code(o, radius_)];
}

double Tensor::operator()(const Face& e, const Face& f) const { return values_[slot(e, f)]; }

double& Tensor::at(const Face& e, const Face& f) { return values_[slot(e, f)]; }

Tensor& Tensor::operator+=(const Tensor& other) {
  if (!(other.grid() == *grid_) || other.gap_ != gap_ || other.radius_ != radius_)
    throw ShapeError("tensors have different layouts");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Tensor& Tensor::operator*=(double s) {
  for (double& x : values_) x *= s;
  return *this;
}

double Tensor::max_abs() const {
  double m = 0.0;
  for_each([&](const Face&, const Face&, double v) { m = std::max(m, std::abs(v)); });
  return m;
}

Tensor cross(const Cochain& psi, const Cochain& phi, int radius) {
  if (!(psi.grid() == phi.grid())) throw ShapeError("cross product of fields on different grids");
  if (psi.cols() != phi.rows()) throw ShapeError("cross product values cannot be multiplied");
  const int gap = phi.degree() - psi.degree();
  if (gap != 0 && gap != 1) throw DimensionError("cross product needs dim φ − dim ψ ∈ {0,1}");
  Tensor t(phi.grid_ptr(), gap, radius);
  const Grid& g = phi.grid();
  t.for_each_mutable([&](const Face& e, const Face& f, double& value) {
    if (e.dim() != psi.degree()) return;
    value = (psi[g.index(e)] * phi[g.index(f)]).trace().real();
  });
  return t;
}

Tensor tensor_boundary(const Tensor& t) {
  if (t.gap() != 0) throw DimensionError("tensor boundary acts on type (1,1) tensors");
  if (t.radius() < 1) throw ConfigurationError("tensor boundary needs radius at least 1");
  const Grid& g = t.grid();
  Tensor out(t.grid_ptr(), 1, t.radius() - 1);
  out.for_each_mutable([&](const Face& e, const Face& f, double& value) {
    double sum = 0.0;
    for (int m = 0; m < g.d(); ++m) {
      for (int s : {-1, 1}) {
        if (!e.spans(m)) {
          const Face up = e.shifted(m, s);
          if (g.contains(up)) sum += g.incidence(e, up) * t(up, f);
        }
        if (f.spans(m)) {
          const Face down = f.shifted(m, s);
          sum += g.incidence(down, f) * t(e, down);
        }
      }
    }
    value = sum;
  });
  return out;
}

bool is_partially_symmetric(const Tensor& t, double tol) {
  if (t.gap() != 0) return false;
  bool ok = true;
  t.for_each([&](const Face& e, const Face& f, double v) {
    if (ok && e.mask() == f.mask() && std::abs(v - t(f, e)) > tol) ok = false;
  });
  return ok;
}

double interior_defect(const Tensor& boundary_of_t) {
  const Grid& g = boundary_of_t.grid();
  double worst = 0.0;
  boundary_of_t.for_each([&](const Face& e, const Face& f, double v) {
    if (!g.is_boundary(e) && !g.is_boundary(f)) worst = std::max(worst, std::abs(v));
  });
  return worst;
}

namespace {

int hyperface_normal(const Grid& g, const Face& h) {
  if (h.d() != g.d() || h.dim() != g.d() - 1) throw DimensionError("flux needs a hyperface");
  if (!g.contains(h)) throw IncidenceError("hyperface " + h.str() + " is not in the grid");
  if (g.is_boundary(h)) throw DomainError("flux across the boundary hyperface " + h.str() + " is undefined");
  for (int m = 0; m < g.d(); ++m)
    if (!h.spans(m)) return m;
  return -1;
}

double parity(int x) { return (x % 2 + 2) % 2 ? -1.0 : 1.0; }

}  // namespace

double flux_hyperface(const Tensor& t, const Face& h, int k) {
  if (t.gap() != 0) throw DimensionError("flux needs a type (1,1) tensor");
  const Grid& g = t.grid();
  if (k < 0 || k >= g.d()) throw DimensionError("flux component out of range");
  const int l = hyperface_normal(g, h);
  const Face v = h.max_vertex();
  const int lo = std::min(k, l), hi = std::max(k, l);
  const unsigned spanned = h.mask();
  double sum = 0.0;
  for (unsigned s = spanned;; s = (s - 1) & spanned) {
    Face f = v;
    for (int m = 0; m < g.d(); ++m)
      if (s & (1u << m)) f[m] = h[m];
    const bool along = h.spans(k);
    if (!along || f.spans(k)) {
      int dim_pr = 0;
      for (int m = lo; m <= hi; ++m) dim_pr += f.spans(m) ? 1 : 0;
      const double sign = parity(dim_pr + l + 1);
      const Face up = f.shifted(l, 1);
      if (along)
        sum += sign * (t(up.shifted(k, -1), f) + t(up.shifted(k, 1), f));
      else
        sum += sign * (t(f, f) - t(f.shifted(k, 1), f.shifted(k, -1)));
    }
    if (s == 0) break;
  }
  return 0.5 * sum;
}

double flux_hypersurface(const Tensor& t, const OrientedHypersurface& surface, int k) {
  double sum = 0.0;
  for (const auto& h : surface.faces) sum += h.sign * flux_hyperface(t, h.face, k);
  return sum;
}

double flux_vertex_1d(const Tensor& t, int k) {
  if (t.grid().d() != 1) throw DimensionError("vertex flux is for one-dimensional grids");
  return flux_hyperface(t, Face{2 * k}, 0);
}

GridPtr doubling_of(const Grid& grid) { return make_grid(grid.d(), 2 * grid.n()); }

namespace {

void check_doubling(const Tensor& t, const Grid& doubling) {
  if (doubling.d() != t.grid().d() || doubling.n() != 2 * t.grid().n())
    throw ConfigurationError("grid is not the doubling of the tensor's grid");
}

// Face of the initial grid centered at a vertex of the doubling.
Face initial_face(const Face& doubling_vertex) {
  Face f = doubling_vertex;
  for (int m = 0; m < f.d(); ++m) f[m] /= 2;
  return f;
}

}  // namespace

double doubling_flux(const Tensor& t, const Grid& doubling, const Face& g, int k) {
  if (t.gap() != 0) throw DimensionError("flux needs a type (1,1) tensor");
  check_doubling(t, doubling);
  if (k < 0 || k >= doubling.d()) throw DimensionError("flux component out of range");
  const int l = hyperface_normal(doubling, g);
  const Face f = initial_face(g.max_vertex());
  int exponent = l + 1;
  for (int m = std::min(k, l); m <= std::max(k, l); ++m) exponent += f[m];
  double value;
  if (l == k) {
    value = t(f, f) - t(f.shifted(l, 1), f.shifted(k, -1));
  } else {
    const bool odd_k = f.spans(k), odd_l = f.spans(l);
    if (odd_k && odd_l)
      value = -t(f.shifted(k, -1), f.shifted(l, 1));
    else if (odd_k)
      value = t(f.shifted(l, 1).shifted(k, -1), f);
    else if (odd_l)
      value = t(f, f.shifted(l, 1).shifted(k, -1));
    else
      value = -t(f.shifted(l, 1), f.shifted(k, -1));
  }
  return 0.5 * parity(exponent) * value;
}

double doubling_flux01(const Tensor& t, const Grid& doubling, const Face& g, int k) {
  if (t.gap() != 1) throw DimensionError("this flux needs a type (0,1) tensor");
  check_doubling(t, doubling);
  if (k < 0 || k >= doubling.d()) throw DimensionError("flux component out of range");
  if (g.dim() != doubling.d() || !doubling.contains(g)) throw DimensionError("needs a top-dimensional face of the doubling");
  const Face f = initial_face(g.max_vertex());
  int exponent = 1;
  for (int m = 0; m < k; ++m) exponent += f[m];
  const double value = f.spans(k) ? t(f.shifted(k, -1), f) : t(f, f.shifted(k, -1));
  return 0.5 * parity(exponent) * value;
}

std::vector<Face> doubling_hyperfaces(const Face& h) {
  std::vector<Face> out;
  int l = -1;
  for (int m = 0; m < h.d(); ++m)
    if (!h.spans(m)) l = m;
  if (h.dim() != h.d() - 1) throw DimensionError("needs a hyperface");
  const unsigned spanned = h.mask();
  for (unsigned s = 0; s < (1u << h.d()); ++s) {
    if (s & ~spanned) continue;
    Face g = h;
    for (int m = 0; m < h.d(); ++m) g[m] = m == l ? 2 * h[m] : 2 * h[m] + ((s >> m) & 1 ? 1 : -1);
    out.push_back(g);
  }
  return out;
}

Tensor random_partially_symmetric(GridPtr grid, Rng& rng, int radius) {
  Tensor t(std::move(grid), 0, radius);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  t.for_each_mutable([&](const Face&, const Face&, double& v) { v = u(rng); });
  t.for_each_mutable([&](const Face& e, const Face& f, double& v) {
    if (e.mask() == f.mask() && f < e) v = t(f, e);
  });
  return t;
}

}  // namespace dfield
