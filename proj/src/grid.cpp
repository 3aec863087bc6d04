#include "dfield/grid.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "dfield/errors.hpp"

namespace dfield {

Face::Face(std::initializer_list<int> center) : d_(static_cast<int>(center.size())) {
  if (d_ < 1 || d_ > kMaxDim) throw DimensionError("face dimension count out of range");
  std::copy(center.begin(), center.end(), c_.begin());
}

Face::Face(const std::vector<int>& center) : d_(static_cast<int>(center.size())) {
  if (d_ < 1 || d_ > kMaxDim) throw DimensionError("face dimension count out of range");
  std::copy(center.begin(), center.end(), c_.begin());
}

int Face::dim() const {
  int k = 0;
  for (int m = 0; m < d_; ++m) k += c_[m] & 1;
  return k;
}

unsigned Face::mask() const {
  unsigned s = 0;
  for (int m = 0; m < d_; ++m)
    if (c_[m] & 1) s |= 1u << m;
  return s;
}

Face Face::min_vertex() const {
  Face v = *this;
  for (int m = 0; m < d_; ++m) v.c_[m] -= c_[m] & 1;
  return v;
}

Face Face::max_vertex() const {
  Face v = *this;
  for (int m = 0; m < d_; ++m) v.c_[m] += c_[m] & 1;
  return v;
}

Face Face::shifted(int m, int delta) const {
  Face f = *this;
  f.c_[m] += delta;
  return f;
}

std::vector<int> Face::center() const { return {c_.begin(), c_.begin() + d_}; }

std::string Face::str() const {
  std::string s = "[";
  for (int m = 0; m < d_; ++m) {
    if (m) s += ',';
    s += std::to_string(c_[m]);
  }
  return s + "]";
}

Face face_between(const Face& a, const Face& b) {
  if (a.d() != b.d()) throw IncidenceError("vertices from different grids");
  Face f = a;
  for (int m = 0; m < a.d(); ++m) {
    const int diff = b[m] - a[m];
    if ((a[m] & 1) || (b[m] & 1) || (diff != 0 && diff != 2))
      throw IncidenceError("no face between " + a.str() + " and " + b.str());
    f[m] = a[m] + diff / 2;
  }
  return f;
}

int concatenation_sign(unsigned s1, unsigned s2) {
  // Count pairs (i in s1, j in s2) with i > j.
  int inversions = 0;
  for (unsigned rest = s2; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    inversions += std::popcount(s1 >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

Grid::Grid(int d, int n) : d_(d), n_(n) {
  if (d < 1 || d > kMaxDim) throw DimensionError("grid dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  if (n < 1) throw DimensionError("grid subdivision count must be positive");
  const std::size_t base = 2 * static_cast<std::size_t>(n) + 1;
  std::size_t total = 1;
  for (int m = d - 1; m >= 0; --m) {
    strides_[m] = total;
    total *= base;
  }
  faces_.assign(d + 1, {});
  key_to_index_.assign(total, -1);
  for (std::size_t key = 0; key < total; ++key) {
    const Face f = face_from_key(key);
    auto& bucket = faces_[f.dim()];
    key_to_index_[key] = static_cast<long>(bucket.size());
    bucket.push_back(f);
  }
}

void Grid::check_dim(int k) const {
  if (k < 0 || k > d_) throw DimensionError("face dimension " + std::to_string(k) + " out of range");
}

std::size_t Grid::count(int k) const {
  check_dim(k);
  return faces_[k].size();
}

const std::vector<Face>& Grid::faces(int k) const {
  check_dim(k);
  return faces_[k];
}

bool Grid::contains(const Face& f) const {
  if (f.d() != d_) return false;
  for (int m = 0; m < d_; ++m)
    if (f[m] < 0 || f[m] > 2 * n_) return false;
  return true;
}

std::size_t Grid::key(const Face& f) const {
  const std::size_t base = 2 * static_cast<std::size_t>(n_) + 1;
  std::size_t k = 0;
  for (int m = 0; m < d_; ++m) k = k * base + static_cast<std::size_t>(f[m]);
  return k;
}

Face Grid::face_from_key(std::size_t key) const {
  const std::size_t base = 2 * static_cast<std::size_t>(n_) + 1;
  std::vector<int> c(d_);
  for (int m = d_ - 1; m >= 0; --m) {
    c[m] = static_cast<int>(key % base);
    key /= base;
  }
  return Face(c);
}

long Grid::find(const Face& f) const {
  if (!contains(f)) return -1;
  return key_to_index_[key(f)];
}

std::size_t Grid::index(const Face& f) const {
  const long i = find(f);
  if (i < 0) throw IncidenceError("face " + f.str() + " is not in the grid");
  return static_cast<std::size_t>(i);
}

int Grid::incidence(const Face& sub, const Face& sup) const {
  if (!contains(sub) || !contains(sup)) return 0;
  int axis = -1;
  int delta = 0;
  for (int m = 0; m < d_; ++m) {
    const int diff = sub[m] - sup[m];
    if (diff == 0) continue;
    if (axis >= 0 || (diff != 1 && diff != -1)) return 0;
    axis = m;
    delta = diff;
  }
  if (axis < 0 || !sup.spans(axis)) return 0;
  int prefix = 0;
  for (int m = 0; m <= axis; ++m) prefix += sup[m];
  const int sign = (prefix & 1) ? -1 : 1;
  return delta < 0 ? sign : -sign;
}

std::vector<Face> Grid::faces_with_max_vertex(const Face& v, int k) const {
  check_dim(k);
  if (!contains(v) || v.dim() != 0) throw DimensionError("expected a vertex of the grid");
  std::vector<Face> out;
  for (unsigned s = 0; s < (1u << d_); ++s) {
    if (std::popcount(s) != k) continue;
    Face f = v;
    bool ok = true;
    for (int m = 0; m < d_ && ok; ++m) {
      if (!(s >> m & 1u)) continue;
      if (v[m] == 0) ok = false;
      f[m] -= 1;
    }
    if (ok) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int Grid::triple_sign(const Face& a, const Face& b, const Face& c) const {
  for (const Face* v : {&a, &b, &c})
    if (!contains(*v) || v->dim() != 0) throw IncidenceError("triple sign needs grid vertices");
  const unsigned s1 = face_between(a, b).mask();
  const unsigned s2 = face_between(b, c).mask();
  face_between(a, c);
  return concatenation_sign(s1, s2);
}

bool Grid::is_boundary(const Face& f) const {
  for (int m = 0; m < d_; ++m)
    if (!f.spans(m) && (f[m] == 0 || f[m] == 2 * n_)) return true;
  return false;
}

GridPtr make_grid(int d, int n) { return std::make_shared<const Grid>(d, n); }

namespace {

Face step_start(const OrientedFace& s) { return s.sign > 0 ? s.face.min_vertex() : s.face.max_vertex(); }
Face step_end(const OrientedFace& s) { return s.sign > 0 ? s.face.max_vertex() : s.face.min_vertex(); }

}  // namespace

Face EdgePath::start() const {
  if (steps.empty()) throw PathError("empty path has no endpoints");
  return step_start(steps.front());
}

Face EdgePath::end() const {
  if (steps.empty()) throw PathError("empty path has no endpoints");
  return step_end(steps.back());
}

void EdgePath::validate(const Grid& grid) const {
  std::set<Face> visited;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    if (!grid.contains(s.face) || s.face.dim() != 1) throw PathError("path step " + s.face.str() + " is not an edge");
    if (s.sign != 1 && s.sign != -1) throw PathError("path orientation must be +1 or -1");
    if (i > 0 && step_end(steps[i - 1]) != step_start(s))
      throw PathError("path breaks before edge " + s.face.str());
    if (!visited.insert(step_start(s)).second) throw PathError("path intersects itself at " + step_start(s).str());
  }
  if (!steps.empty()) {
    const Face last = end();
    if (last != start() && visited.count(last)) throw PathError("path intersects itself at " + last.str());
  }
}

EdgePath EdgePath::through(const Grid& grid, const std::vector<Face>& vertices) {
  EdgePath path;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const Face& u = vertices[i - 1];
    const Face& v = vertices[i];
    if (u.d() != grid.d() || v.d() != grid.d()) throw PathError("vertex from another grid");
    Face e = u;
    int moves = 0;
    int sign = 0;
    for (int m = 0; m < grid.d(); ++m) {
      const int diff = v[m] - u[m];
      if (diff == 0) continue;
      if (diff != 2 && diff != -2) throw PathError("vertices " + u.str() + " and " + v.str() + " are not adjacent");
      e[m] += diff / 2;
      sign = diff > 0 ? 1 : -1;
      ++moves;
    }
    if (moves != 1) throw PathError("vertices " + u.str() + " and " + v.str() + " are not adjacent");
    path.steps.push_back({e, sign});
  }
  path.validate(grid);
  return path;
}

EdgePath EdgePath::face_boundary(const Grid& grid, const Face& f) {
  if (!grid.contains(f) || f.dim() != 2) throw PathError("face boundary loop needs a 2-face");
  int axes[2];
  int found = 0;
  for (int m = 0; m < grid.d(); ++m)
    if (f.spans(m)) axes[found++] = m;
  const Face a = f.min_vertex();
  const Face b = a.shifted(axes[0], 2);
  const Face c = f.max_vertex();
  const Face d = a.shifted(axes[1], 2);
  return through(grid, {a, b, c, d, a});
}

OrientedHypersurface OrientedHypersurface::boundary_of(const Grid& grid, const std::vector<Face>& cubes) {
  std::map<Face, int> chain;
  for (const Face& c : cubes) {
    if (!grid.contains(c) || c.dim() != grid.d()) throw DimensionError("expected a top-dimensional face");
    for (int m = 0; m < grid.d(); ++m)
      for (int delta : {-1, 1}) {
        const Face h = c.shifted(m, delta);
        chain[h] += grid.incidence(h, c);
      }
  }
  OrientedHypersurface out;
  for (const auto& [h, s] : chain)
    if (s != 0) out.faces.push_back({h, s});
  return out;
}

}  // namespace dfield
