#include "dfield/cochain.hpp"

#include <bit>
#include <cmath>

#include "dfield/errors.hpp"

namespace dfield {

Cochain::Cochain(GridPtr grid, int degree, int rows, int cols)
    : grid_(std::move(grid)), degree_(degree), rows_(rows), cols_(cols) {
  if (!grid_) throw ConfigurationError("cochain needs a grid");
  if (rows < 1 || cols < 1) throw ShapeError("cochain values need a positive shape");
  count_ = grid_->count(degree);
  data_.assign(count_ * block(), Complex(0.0));
}

Cochain Cochain::constant(GridPtr grid, int degree, const Matrix& value) {
  Cochain c(std::move(grid), degree, static_cast<int>(value.rows()), static_cast<int>(value.cols()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = value;
  return c;
}

MatrixMap Cochain::at(const Face& f) {
  if (f.dim() != degree_) throw DimensionError("face " + f.str() + " has the wrong dimension");
  return (*this)[grid_->index(f)];
}

ConstMatrixMap Cochain::at(const Face& f) const {
  if (f.dim() != degree_) throw DimensionError("face " + f.str() + " has the wrong dimension");
  return (*this)[grid_->index(f)];
}

bool Cochain::same_layout(const Cochain& other) const {
  return *grid_ == *other.grid_ && degree_ == other.degree_ && rows_ == other.rows_ && cols_ == other.cols_;
}

namespace {

void require_same(const Cochain& a, const Cochain& b) {
  if (!(a.grid() == b.grid())) throw ShapeError("cochains live on different grids");
  if (a.degree() != b.degree()) throw DimensionError("cochain degrees differ");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("cochain value shapes differ");
}

}  // namespace

Cochain& Cochain::operator+=(const Cochain& other) {
  require_same(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& other) {
  require_same(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Cochain& Cochain::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Cochain Cochain::left_multiplied(const Matrix& m) const {
  if (m.cols() != rows_) throw ShapeError("left factor does not match value shape");
  Cochain out(grid_, degree_, static_cast<int>(m.rows()), cols_);
  for (std::size_t i = 0; i < count_; ++i) out[i].noalias() = m * (*this)[i];
  return out;
}

Cochain Cochain::right_multiplied(const Matrix& m) const {
  if (m.rows() != cols_) throw ShapeError("right factor does not match value shape");
  Cochain out(grid_, degree_, rows_, static_cast<int>(m.cols()));
  for (std::size_t i = 0; i < count_; ++i) out[i].noalias() = (*this)[i] * m;
  return out;
}

Cochain Cochain::real_part() const {
  Cochain out = *this;
  for (auto& x : out.data_) x = x.real();
  return out;
}

double Cochain::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

bool Cochain::is_real(double tol) const {
  for (const auto& x : data_)
    if (std::abs(x.imag()) > tol) return false;
  return true;
}

Cochain coboundary(const Cochain& phi) {
  const Grid& g = phi.grid();
  Cochain out(phi.grid_ptr(), phi.degree() + 1, phi.rows(), phi.cols());
  const auto& faces = out.faces();
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    const std::size_t key = g.key(f);
    int prefix = 0;
    for (int l = 0; l < g.d(); ++l) {
      prefix += f[l];
      if (!f.spans(l)) continue;
      const Complex s = (prefix & 1) ? -1.0 : 1.0;
      out[i] += s * (phi[g.index_at_key(key - g.stride(l))] - phi[g.index_at_key(key + g.stride(l))]);
    }
  }
  return out;
}

Cochain boundary(const Cochain& phi) {
  if (phi.degree() == 0) throw DimensionError("boundary of a 0-cochain is undefined");
  const Grid& g = phi.grid();
  const int top = 2 * g.n();
  Cochain out(phi.grid_ptr(), phi.degree() - 1, phi.rows(), phi.cols());
  const auto& faces = out.faces();
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    const std::size_t key = g.key(f);
    int prefix = 0;
    for (int l = 0; l < g.d(); ++l) {
      prefix += f[l];
      if (f.spans(l)) continue;
      const Complex s = (prefix & 1) ? -1.0 : 1.0;
      if (f[l] > 0) out[i] += s * phi[g.index_at_key(key - g.stride(l))];
      if (f[l] < top) out[i] -= s * phi[g.index_at_key(key + g.stride(l))];
    }
  }
  return out;
}

Matrix epsilon(const Cochain& phi) {
  if (phi.degree() != 0) throw DimensionError("epsilon needs a 0-cochain");
  Matrix sum = Matrix::Zero(phi.rows(), phi.cols());
  for (std::size_t i = 0; i < phi.size(); ++i) sum += phi[i];
  return sum;
}

Cochain sharp(const Cochain& phi) {
  Cochain out = phi;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out.face(i).spans(0)) out[i] *= -1.0;
  return out;
}

namespace {

void require_product(const Cochain& phi, const Cochain& psi) {
  if (!(phi.grid() == psi.grid())) throw ShapeError("cochains live on different grids");
  if (phi.cols() != psi.rows()) throw ShapeError("value shapes do not compose");
}

// Key of the face with minimal vertex `base` (a vertex key) spanning the axes in s.
std::size_t key_with_mask(const Grid& g, std::size_t base, unsigned s) {
  for (; s; s &= s - 1) base += g.stride(std::countr_zero(s));
  return base;
}

std::size_t vertex_shift(const Grid& g, std::size_t base, unsigned s) {
  for (; s; s &= s - 1) base += 2 * g.stride(std::countr_zero(s));
  return base;
}

}  // namespace

Cochain cup(const Cochain& phi, const Cochain& psi) {
  require_product(phi, psi);
  const Grid& g = phi.grid();
  const int k = phi.degree();
  const int l = psi.degree();
  if (k + l > g.d()) throw DimensionError("cup product degree exceeds the grid dimension");
  Cochain out(phi.grid_ptr(), k + l, phi.rows(), psi.cols());
  const auto& faces = out.faces();
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    const unsigned s = f.mask();
    const std::size_t a = g.key(f.min_vertex());
    // Enumerate submasks s1 of s of size k; b is a shifted along s1.
    for (unsigned s1 = s;; s1 = (s1 - 1) & s) {
      if (std::popcount(s1) == k) {
        const unsigned s2 = s & ~s1;
        const std::size_t b = vertex_shift(g, a, s1);
        const auto& x = phi[g.index_at_key(key_with_mask(g, a, s1))];
        const auto& y = psi[g.index_at_key(key_with_mask(g, b, s2))];
        const double sign = concatenation_sign(s1, s2);
        out[i].noalias() += sign * (x * y);
      }
      if (s1 == 0) break;
    }
  }
  return out;
}

Cochain cap(const Cochain& phi, const Cochain& psi) {
  require_product(phi, psi);
  const Grid& g = phi.grid();
  const int k = phi.degree();
  const int l = psi.degree();
  if (k < l) throw DimensionError("cap product needs deg phi >= deg psi");
  Cochain out(phi.grid_ptr(), k - l, phi.rows(), psi.cols());
  const unsigned all = (1u << g.d()) - 1;
  const auto& faces = out.faces();
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    const unsigned s2 = f.mask();
    const Face b = f.min_vertex();
    const std::size_t bk = g.key(b);
    const unsigned free = all & ~s2;
    for (unsigned s1 = free;; s1 = (s1 - 1) & free) {
      bool ok = std::popcount(s1) == l;
      for (unsigned r = s1; ok && r; r &= r - 1)
        if (b[std::countr_zero(r)] == 0) ok = false;
      if (ok) {
        std::size_t a = bk;
        for (unsigned r = s1; r; r &= r - 1) a -= 2 * g.stride(std::countr_zero(r));
        const auto& x = phi[g.index_at_key(key_with_mask(g, a, s1 | s2))];
        const auto& y = psi[g.index_at_key(key_with_mask(g, a, s1))];
        const double sign = concatenation_sign(s1, s2);
        out[i].noalias() += sign * (x * y);
      }
      if (s1 == 0) break;
    }
  }
  return out;
}

Cochain cop(const Cochain& phi, const Cochain& psi) {
  require_product(phi, psi);
  const Grid& g = phi.grid();
  const int k = phi.degree();
  const int l = psi.degree();
  if (l < k) throw DimensionError("cop product needs deg psi >= deg phi");
  Cochain out(phi.grid_ptr(), l - k, phi.rows(), psi.cols());
  const unsigned all = (1u << g.d()) - 1;
  const int top = 2 * g.n();
  const auto& faces = out.faces();
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    const unsigned s1 = f.mask();
    const Face b = f.max_vertex();
    const std::size_t ak = g.key(f.min_vertex());
    const std::size_t bk = g.key(b);
    const unsigned free = all & ~s1;
    for (unsigned s2 = free;; s2 = (s2 - 1) & free) {
      bool ok = std::popcount(s2) == k;
      for (unsigned r = s2; ok && r; r &= r - 1)
        if (b[std::countr_zero(r)] == top) ok = false;
      if (ok) {
        const auto& x = phi[g.index_at_key(key_with_mask(g, bk, s2))];
        const auto& y = psi[g.index_at_key(key_with_mask(g, ak, s1 | s2))];
        const double sign = concatenation_sign(s1, s2);
        out[i].noalias() += sign * (x * y);
      }
      if (s2 == 0) break;
    }
  }
  return out;
}

double pairing(const Cochain& phi, const Cochain& psi) {
  require_same(phi, psi);
  double sum = 0.0;
  for (std::size_t i = 0; i < phi.data().size(); ++i) sum += (phi.data()[i] * std::conj(psi.data()[i])).real();
  return sum;
}

Cochain conjugate_transpose(const Cochain& phi) {
  Cochain out(phi.grid_ptr(), phi.degree(), phi.cols(), phi.rows());
  for (std::size_t i = 0; i < phi.size(); ++i) out[i] = phi[i].adjoint();
  return out;
}

Cochain unit(GridPtr grid, int n) { return Cochain::constant(std::move(grid), 0, Matrix::Identity(n, n)); }

Matrix random_matrix(int rows, int cols, Rng& rng, bool complex) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = u(rng);
      const double im = complex ? u(rng) : 0.0;
      m(i, j) = Complex(re, im);
    }
  return m;
}

Cochain random_cochain(GridPtr grid, int degree, int rows, int cols, Rng& rng, bool complex) {
  Cochain c(std::move(grid), degree, rows, cols);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = random_matrix(rows, cols, rng, complex);
  return c;
}

Matrix qr_unitary_factor(const Matrix& m) {
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Matrix random_unitary(int n, Rng& rng) { return qr_unitary_factor(random_matrix(n, n, rng)); }

Cochain random_unitary_cochain(GridPtr grid, int degree, int n, Rng& rng) {
  Cochain c(std::move(grid), degree, n, n);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = random_unitary(n, rng);
  return c;
}

}  // namespace dfield
