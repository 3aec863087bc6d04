#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "dfield/grid.hpp"

namespace dfield {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using MatrixMap = Eigen::Map<Matrix>;
using ConstMatrixMap = Eigen::Map<const Matrix>;

// One matrix value of a fixed shape on every k-face of a grid, stored densely in
// the order of Grid::faces(k). Chains and cochains share this type.
class Cochain {
 public:
  Cochain() = default;
  Cochain(GridPtr grid, int degree, int rows, int cols);

  static Cochain constant(GridPtr grid, int degree, const Matrix& value);
  Cochain zeros_like() const { return Cochain(grid_, degree_, rows_, cols_); }

  const GridPtr& grid_ptr() const { return grid_; }
  const Grid& grid() const { return *grid_; }
  int degree() const { return degree_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return count_; }
  const Face& face(std::size_t i) const { return grid_->faces(degree_)[i]; }
  const std::vector<Face>& faces() const { return grid_->faces(degree_); }

  MatrixMap operator[](std::size_t i) { return MatrixMap(data_.data() + i * block(), rows_, cols_); }
  ConstMatrixMap operator[](std::size_t i) const {
    return ConstMatrixMap(data_.data() + i * block(), rows_, cols_);
  }
  MatrixMap at(const Face& f);
  ConstMatrixMap at(const Face& f) const;

  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  Cochain& operator+=(const Cochain& other);
  Cochain& operator-=(const Cochain& other);
  Cochain& operator*=(Complex s);

  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator-(Cochain a) { return a *= -1.0; }
  friend Cochain operator*(Complex s, Cochain a) { return a *= s; }
  friend Cochain operator*(double s, Cochain a) { return a *= Complex(s); }

  // Face-wise M·φ(f) and φ(f)·M for a constant matrix M.
  Cochain left_multiplied(const Matrix& m) const;
  Cochain right_multiplied(const Matrix& m) const;
  Cochain real_part() const;

  double max_abs() const;
  bool is_real(double tol = 0.0) const;
  bool same_layout(const Cochain& other) const;

 private:
  std::size_t block() const { return static_cast<std::size_t>(rows_) * cols_; }

  GridPtr grid_;
  int degree_ = 0;
  int rows_ = 0;
  int cols_ = 0;
  std::size_t count_ = 0;
  std::vector<Complex> data_;
};

Cochain coboundary(const Cochain& phi);
Cochain boundary(const Cochain& phi);
Matrix epsilon(const Cochain& phi);
Cochain sharp(const Cochain& phi);
Cochain cup(const Cochain& phi, const Cochain& psi);
Cochain cap(const Cochain& phi, const Cochain& psi);
Cochain cop(const Cochain& phi, const Cochain& psi);
double pairing(const Cochain& phi, const Cochain& psi);
Cochain conjugate_transpose(const Cochain& phi);

// The 0-cochain equal to the identity matrix at every vertex.
Cochain unit(GridPtr grid, int n);

using Rng = std::mt19937_64;

// Entries uniform in [-1,1], plus an independent imaginary part when complex.
Cochain random_cochain(GridPtr grid, int degree, int rows, int cols, Rng& rng, bool complex = true);
Matrix random_matrix(int rows, int cols, Rng& rng, bool complex = true);
Matrix random_unitary(int n, Rng& rng);
Cochain random_unitary_cochain(GridPtr grid, int degree, int n, Rng& rng);

// Unitary factor of the QR decomposition, with the phases fixed so that R has a
// positive diagonal.
Matrix qr_unitary_factor(const Matrix& m);

}  // namespace dfield
