#include "dfield/approximation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "dfield/dirac.hpp"
#include "dfield/errors.hpp"
#include "dfield/gamma.hpp"
#include "dfield/klein_gordon.hpp"
#include "dfield/lagrangian.hpp"
#include "dfield/network.hpp"
#include "dfield/tensor.hpp"
#include "quadrature.hpp"

namespace dfield {

namespace {

using Point = std::array<double, 4>;

Point point_of(const Face& v, int n) {
  Point x{};
  for (int m = 0; m < v.d(); ++m) x[m] = v[m] / (2.0 * n);
  return x;
}

bool in_region(const Face& f, int n) {
  const double lo = kRegionDistance - 1e-12, hi = 1.0 - kRegionDistance + 1e-12;
  for (int m = 0; m < f.d(); ++m) {
    const int w = f.spans(m) ? 1 : 0;
    if ((f[m] - w) / (2.0 * n) < lo || (f[m] + w) / (2.0 * n) > hi) return false;
  }
  return true;
}

// Minkowski η with time axis 0, signature (−,+,…,+).
double eta(int m) { return m == 0 ? -1.0 : 1.0; }

// Running maximum per quantity, reported in insertion order.
class ErrorSheet {
 public:
  void note(const std::string& q, double err) {
    auto it = std::find(names_.begin(), names_.end(), q);
    if (it == names_.end()) {
      names_.push_back(q);
      values_.push_back(0.0);
      it = names_.end() - 1;
    }
    double& v = values_[it - names_.begin()];
    v = std::max(v, std::abs(err));
  }
  void flush(const std::string& theory, int n, std::vector<ErrorRow>& out) const {
    for (std::size_t i = 0; i < names_.size(); ++i) out.push_back({theory, names_[i], n, values_[i]});
  }

 private:
  std::vector<std::string> names_;
  std::vector<double> values_;
};

std::string tensor_name(int l, int k) { return "T^" + std::to_string(l) + "_" + std::to_string(k); }
std::string current_name(int l) { return "j^" + std::to_string(l); }

// p(x)·exp(iθ(x)) with p = 1 + a|x|² + b x₀ and θ = c + k·x.
struct Wave {
  double a, b, c;
  Point k;

  Complex value(const Point& x) const { return p(x) * std::polar(1.0, theta(x)); }
  Complex derivative(const Point& x, int m) const {
    const double dp = 2 * a * x[m] + (m == 0 ? b : 0.0);
    return Complex(dp, k[m] * p(x)) * std::polar(1.0, theta(x));
  }

 private:
  double p(const Point& x) const { return 1.0 + a * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]) + b * x[0]; }
  double theta(const Point& x) const { return c + k[0] * x[0] + k[1] * x[1] + k[2] * x[2] + k[3] * x[3]; }
};

constexpr Wave kScalarWave{0.4, -0.3, 0.2, {1.3, -0.7, 0.5, 0.9}};
constexpr std::array<Wave, 4> kSpinorWaves{{
    {0.4, -0.3, 0.2, {1.1, -0.6, 0.5, 0.8}},
    {-0.2, 0.5, 1.0, {0.7, 0.9, -0.4, 0.3}},
    {0.3, 0.2, -0.5, {-0.8, 0.4, 1.2, -0.6}},
    {0.1, -0.4, 2.0, {0.5, -1.0, 0.6, 0.7}},
}};

// ---- network ----------------------------------------------------------------

struct NetworkReference {
  bool zero;
  double phi(double x, double y) const { return zero ? 0.0 : sq(x - 0.5) - sq(y - 0.5); }
  // ∂φ/∂x^m
  double dphi(double x, double y, int m) const {
    if (zero) return 0.0;
    return m == 0 ? 2 * (x - 0.5) : -2 * (y - 0.5);
  }
  double j(double x, double y, int m) const { return -dphi(x, y, m); }
  double f(double x, double y) const { return zero ? 0.0 : 2 * (x - 0.5) * (y - 0.5); }
  // S = L = (−j₂F, j₁F).
  double s(double x, double y, int m) const { return m == 0 ? -j(x, y, 1) * f(x, y) : j(x, y, 0) * f(x, y); }
  double stress(double x, double y, int k, int l) const {
    const double grad2 = sq(dphi(x, y, 0)) + sq(dphi(x, y, 1));
    return -dphi(x, y, k) * dphi(x, y, l) + (k == l ? grad2 / 2 : 0.0);
  }
  static double sq(double v) { return v * v; }
};

// Placement of I^2_N and its doubling in the unit square: either the plain grid of
// step 1/N, or the dual of the grid of (N+1)² squares, of step 1/(N+1).
struct Embedding {
  int n;
  bool dual;

  double step_inverse() const { return dual ? n + 1.0 : n; }
  // Coordinate of a half-unit center c on a grid with `refine`·N steps.
  double coord(int c, int refine) const {
    return dual ? (c / (2.0 * refine) + 0.5) / (n + 1) : c / (2.0 * refine * n);
  }
  Point at(const Face& f, int refine) const {
    Point x{};
    for (int m = 0; m < 2; ++m) x[m] = coord(f[m], refine);
    return x;
  }
  bool inside(const Face& f, int refine) const {
    for (int m = 0; m < 2; ++m) {
      const int w = f.spans(m) ? 1 : 0;
      if (coord(f[m] - w, refine) < kRegionDistance - 1e-12 || coord(f[m] + w, refine) > 1 - kRegionDistance + 1e-12)
        return false;
    }
    return true;
  }
  // Mean of g over the edge e.
  double edge_mean(const Face& e, int refine, const std::function<double(double, double)>& g) const {
    const int axis = e.spans(0) ? 0 : 1;
    const Point a = at(e.shifted(axis, -1), refine), b = at(e.shifted(axis, 1), refine);
    if (axis == 0) return detail::segment_mean([&](double t) { return g(t, a[1]); }, a[0], b[0]);
    return detail::segment_mean([&](double t) { return g(a[0], t); }, a[1], b[1]);
  }
};

double value(const Cochain& c, const Face& f) { return c.at(f)(0, 0).real(); }

// Dimension of the grid face centered at half the doubling face w.
int grid_dim_at(const Face& w) {
  int dim = 0;
  for (int m = 0; m < 2; ++m) dim += (w[m] / 2) & 1;
  return dim;
}

void network_cell(const NetworkReference& ref, const Embedding& emb, std::vector<ErrorRow>& out) {
  const int n = emb.n;
  auto g = make_grid(2, n);
  // Outward normal derivative on each side of the box.
  auto source = [&](double x, double y) {
    const double eps = 1e-12;
    if (x < eps) return -ref.dphi(x, y, 0);
    if (x > 1 - eps) return ref.dphi(x, y, 0);
    if (y < eps) return -ref.dphi(x, y, 1);
    return ref.dphi(x, y, 1);
  };
  const NetworkSolution sol = solve_network(sampled_source(g, source));
  const Cochain dphi = coboundary(sol.potential);
  const double k1 = emb.step_inverse(), k2 = k1 * k1;
  ErrorSheet sheet;

  const Cochain kinetic = local_pairing(dphi, dphi);
  for (const Face& v : g->faces(0)) {
    if (!emb.inside(v, 1)) continue;
    const Point x = emb.at(v, 1);
    sheet.note("potential", value(sol.potential, v) - ref.phi(x[0], x[1]));
    const double grad2 = NetworkReference::sq(ref.dphi(x[0], x[1], 0)) + NetworkReference::sq(ref.dphi(x[0], x[1], 1));
    sheet.note("lagrangian", k2 * value(kinetic, v) / 2 - grad2 / 2);
  }
  for (const Face& e : g->faces(1)) {
    if (!emb.inside(e, 1)) continue;
    const int axis = e.spans(0) ? 0 : 1;
    sheet.note("current", k1 * value(sol.current, e) - emb.edge_mean(e, 1, [&](double x, double y) { return ref.j(x, y, axis); }));
  }
  for (const Face& f : g->faces(2)) {
    if (!emb.inside(f, 1)) continue;
    const Point a = emb.at(f.min_vertex(), 1), b = emb.at(f.max_vertex(), 1);
    const double mean = detail::segment_mean(
        [&](double x) { return detail::segment_mean([&](double y) { return ref.f(x, y); }, a[1], b[1]); }, a[0], b[0]);
    sheet.note("magnetic", value(sol.magnetic, f) - mean);
  }

  const Grid& h = *sol.doubling;
  for (const Face& w : h.faces(0)) {
    if (!emb.inside(w, 2)) continue;
    const int dim = grid_dim_at(w);
    const Point x = emb.at(w, 2);
    if (dim == 1) {
      const int axis = (w[0] / 2) & 1 ? 0 : 1;
      sheet.note("heat", k2 * value(sol.heat, w) - NetworkReference::sq(ref.j(x[0], x[1], axis)));
    }
    if (dim >= 1) sheet.note("pressure", value(sol.pressure, w) - NetworkReference::sq(ref.f(x[0], x[1])) / 2);
  }
  for (const Face& e : h.faces(1)) {
    if (!emb.inside(e, 2)) continue;
    const int axis = e.spans(0) ? 0 : 1;
    if (grid_dim_at(e.shifted(axis, -1)) + grid_dim_at(e.shifted(axis, 1)) != 3) continue;
    const double mean = emb.edge_mean(e, 2, [&](double x, double y) { return ref.s(x, y, axis); });
    sheet.note("poynting", k1 * value(sol.poynting, e) - mean);
    sheet.note("lorentz", k1 * value(sol.lorentz, e) - mean / 2);
  }
  for (int k = 0; k < 2; ++k)
    for (const Face& e : g->faces(1)) {
      if (!emb.inside(e, 1)) continue;
      const int axis = e.spans(0) ? 0 : 1;
      const double sign = axis == 0 ? 1.0 : -1.0;
      const double mean = emb.edge_mean(e, 1, [&](double x, double y) { return sign * ref.stress(x, y, k, 1 - axis); });
      sheet.note("stress" + std::to_string(k + 1), k2 * value(sol.stress[k], e) - mean);
    }
  sheet.flush("network", n, out);
}

// ---- Maxwell tensor -----------------------------------------------------------

struct FieldReference {
  Reference kind;
  int d;
  double f(const Point& x, int m, int n) const {
    if (m == n) return 0.0;
    if (m > n) return -f(x, n, m);
    switch (kind) {
      case Reference::Zero:
        return 0.0;
      case Reference::ConstantField:
        return m == 0 && n == 1 ? 1.0 : 0.0;
      case Reference::Smooth:
        break;
    }
    double v = 0.6 + 0.2 * m - 0.3 * n;
    for (int i = 0; i < d; ++i) v += (0.5 - 0.3 * ((i + m + 2 * n) % 3)) * x[i];
    return v;
  }
  double raised(const Point& x, int m, int n) const { return eta(m) * eta(n) * f(x, m, n); }
  double tensor(const Point& x, int l, int k) const {
    double t = 0.0, inv = 0.0;
    for (int m = 0; m < d; ++m) {
      t -= raised(x, l, m) * f(x, k, m);
      for (int n = 0; n < d; ++n) inv += raised(x, m, n) * f(x, m, n);
    }
    return t + (l == k ? inv / 4 : 0.0);
  }
};

void maxwell_cell(const FieldReference& ref, int n, std::vector<ErrorRow>& out) {
  const int d = ref.d;
  auto g = make_grid(d, n);
  Cochain field(g, 2, 1, 1);
  for (std::size_t i = 0; i < field.size(); ++i) {
    const Face& f = field.face(i);
    int axes[2], c = 0;
    for (int m = 0; m < d; ++m)
      if (f.spans(m)) axes[c++] = m;
    field[i](0, 0) = ref.f(point_of(f.max_vertex(), n), axes[0], axes[1]);
  }
  const Tensor t = -1.0 * cross(sharp(field), field);
  ErrorSheet sheet;
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k) {
      const std::string name = tensor_name(l, k);
      sheet.note(name, 0.0);
      for (const Face& h : g->faces(d - 1)) {
        if (h.spans(l) || !in_region(h, n)) continue;
        const double flux = (l % 2 ? -1.0 : 1.0) * flux_hyperface(t, h, k);
        sheet.note(name, flux - ref.tensor(point_of(h.max_vertex(), n), l, k));
      }
    }
  sheet.flush("maxwell_tensor", n, out);
}

// ---- Klein–Gordon -------------------------------------------------------------

void klein_gordon_cell(bool zero, int d, double mass, int n, std::vector<ErrorRow>& out) {
  auto g = make_grid(d, n);
  const Wave& w = kScalarWave;
  auto phi = [&](const Point& x) { return zero ? Complex(0) : w.value(x); };
  auto dphi = [&](const Point& x, int m) { return zero ? Complex(0) : w.derivative(x, m); };
  Cochain field(g, 0, 1, 1);
  for (std::size_t i = 0; i < field.size(); ++i) field[i](0, 0) = phi(point_of(field.face(i), n));

  const double nn = n;
  ErrorSheet sheet;
  const Cochain j = klein_gordon_current(field);
  for (int l = 0; l < d; ++l) {
    sheet.note(current_name(l), 0.0);
    for (const Face& e : g->faces(1)) {
      if (!e.spans(l) || !in_region(e, n)) continue;
      const Point x = point_of(e.max_vertex(), n);
      const double exact = 2 * (phi(x) * std::conj(eta(l) * dphi(x, l))).imag();
      sheet.note(current_name(l), nn * value(j, e) - exact);
    }
  }
  const Tensor t = klein_gordon_tensor(field, mass / n);
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k) {
      const std::string name = tensor_name(l, k);
      sheet.note(name, 0.0);
      for (const Face& h : g->faces(d - 1)) {
        if (h.spans(l) || !in_region(h, n)) continue;
        const Point x = point_of(h.max_vertex(), n);
        double exact = -2 * (std::conj(eta(l) * dphi(x, l)) * dphi(x, k)).real();
        if (l == k) {
          double kinetic = 0.0;
          for (int m = 0; m < d; ++m) kinetic += eta(m) * std::norm(dphi(x, m));
          exact += kinetic + mass * mass * std::norm(phi(x));
        }
        const double flux = (l % 2 ? -1.0 : 1.0) * nn * nn * flux_hyperface(t, h, k);
        sheet.note(name, flux - exact);
      }
    }
  sheet.flush("klein_gordon", n, out);
}

// ---- Dirac --------------------------------------------------------------------

void dirac_cell(bool zero, double mass, int n, std::vector<ErrorRow>& out) {
  constexpr int d = 4;
  auto g = make_grid(d, n);
  auto psi = [&](const Point& x) {
    Matrix v = Matrix::Zero(4, 1);
    if (!zero)
      for (int a = 0; a < 4; ++a) v(a, 0) = kSpinorWaves[a].value(x);
    return v;
  };
  auto dpsi = [&](const Point& x, int m) {
    Matrix v = Matrix::Zero(4, 1);
    if (!zero)
      for (int a = 0; a < 4; ++a) v(a, 0) = kSpinorWaves[a].derivative(x, m);
    return v;
  };
  auto bar = [&](const Matrix& v) -> Matrix { return v.adjoint() * gamma_matrix(0); };
  Cochain field(g, 0, 4, 1);
  for (std::size_t i = 0; i < field.size(); ++i) field[i] = psi(point_of(field.face(i), n));

  const Complex i1(0, 1);
  ErrorSheet sheet;
  const Cochain j = dirac_current(field);
  for (int l = 0; l < d; ++l) {
    sheet.note(current_name(l), 0.0);
    for (const Face& e : g->faces(1)) {
      if (!e.spans(l) || !in_region(e, n)) continue;
      const Matrix v = psi(point_of(e.max_vertex(), n));
      sheet.note(current_name(l), value(j, e) - (bar(v) * gamma_matrix(l) * v)(0, 0).real());
    }
  }
  const Tensor t = dirac_tensor(field, mass / n);
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k) {
      const std::string name = tensor_name(l, k);
      sheet.note(name, 0.0);
      for (const Face& h : g->faces(d - 1)) {
        if (h.spans(l) || !in_region(h, n)) continue;
        const Point x = point_of(h.max_vertex(), n);
        const Matrix v = psi(x), b = bar(v);
        Complex exact = i1 * (b * gamma_matrix(l) * dpsi(x, k))(0, 0);
        if (l == k) {
          Complex trace = 0.0;
          for (int m = 0; m < d; ++m) trace += i1 * (b * gamma_matrix(m) * dpsi(x, m))(0, 0);
          exact -= trace - mass * (b * v)(0, 0);
        }
        const double flux = (l % 2 ? -1.0 : 1.0) * n * flux_hyperface(t, h, k);
        sheet.note(name, flux - exact.real());
      }
    }
  sheet.flush("dirac", n, out);
}

}  // namespace

Theory parse_theory(const std::string& name) {
  if (name == "network") return Theory::Network;
  if (name == "maxwell_tensor") return Theory::MaxwellTensor;
  if (name == "klein_gordon") return Theory::KleinGordon;
  if (name == "dirac") return Theory::Dirac;
  throw DomainError("unknown theory: " + name);
}

std::string theory_name(Theory t) {
  switch (t) {
    case Theory::Network:
      return "network";
    case Theory::MaxwellTensor:
      return "maxwell_tensor";
    case Theory::KleinGordon:
      return "klein_gordon";
    case Theory::Dirac:
      return "dirac";
  }
  return {};
}

Reference parse_reference(const std::string& name) {
  if (name == "smooth") return Reference::Smooth;
  if (name == "zero") return Reference::Zero;
  if (name == "constant") return Reference::ConstantField;
  throw DomainError("unknown reference: " + name);
}

std::string reference_name(Reference r) {
  switch (r) {
    case Reference::Smooth:
      return "smooth";
    case Reference::Zero:
      return "zero";
    case Reference::ConstantField:
      return "constant";
  }
  return {};
}

std::vector<int> default_sizes(Theory t) {
  switch (t) {
    case Theory::Network:
      return {8, 16, 32};
    case Theory::Dirac:
      return {4, 8};
    default:
      return {4, 8, 16};
  }
}

std::vector<ErrorRow> approximation_study(Theory t, Reference r, const StudyOptions& options) {
  if (r == Reference::ConstantField && t != Theory::MaxwellTensor)
    throw DomainError("the constant reference is a Maxwell field");
  if ((t == Theory::MaxwellTensor || t == Theory::KleinGordon) && (options.d < 2 || options.d > 4))
    throw DimensionError("tensor studies run on I^2_N, I^3_N or I^4_N");
  const std::vector<int> sizes = options.sizes.empty() ? default_sizes(t) : options.sizes;
  const bool zero = r == Reference::Zero;
  std::vector<ErrorRow> out;
  for (int n : sizes) {
    if (n < 1) throw DomainError("grid sizes are positive");
    switch (t) {
      case Theory::Network:
        network_cell({zero}, {n, !options.initial_grid}, out);
        break;
      case Theory::MaxwellTensor:
        maxwell_cell({r, options.d}, n, out);
        break;
      case Theory::KleinGordon:
        klein_gordon_cell(zero, options.d, options.mass, n, out);
        break;
      case Theory::Dirac:
        dirac_cell(zero, options.mass, n, out);
        break;
    }
  }
  return out;
}

std::string error_table_csv(const std::vector<ErrorRow>& rows) {
  std::ostringstream s;
  s.precision(17);
  s << "theory,quantity,N,sup_error\n";
  for (const ErrorRow& r : rows) s << r.theory << ',' << r.quantity << ',' << r.n << ',' << r.sup_error << '\n';
  return s.str();
}

std::vector<ShrinkFactor> shrink_factors(const std::vector<ErrorRow>& rows, double floor) {
  std::map<std::pair<std::string, int>, double> err;
  for (const ErrorRow& r : rows) err[{r.quantity, r.n}] = r.sup_error;
  std::vector<ShrinkFactor> out;
  for (const ErrorRow& r : rows) {
    const auto next = err.find({r.quantity, 2 * r.n});
    if (next == err.end()) continue;
    const double factor =
        next->second <= floor ? std::numeric_limits<double>::infinity() : r.sup_error / next->second;
    out.push_back({r.quantity, r.n, factor});
  }
  return out;
}

}  // namespace dfield
