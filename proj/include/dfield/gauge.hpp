#pragma once

#include "dfield/cochain.hpp"

namespace dfield {

inline constexpr double kUnitarityTolerance = 1e-10;

bool is_unitary(const Matrix& u, double tol = kUnitarityTolerance);

// A unitary n×n matrix on every edge.
class GaugeField {
 public:
  explicit GaugeField(Cochain values, double tol = kUnitarityTolerance);

  static GaugeField identity(GridPtr grid, int n);
  static GaugeField random(GridPtr grid, int n, Rng& rng);

  const Cochain& values() const { return u_; }
  const GridPtr& grid_ptr() const { return u_.grid_ptr(); }
  const Grid& grid() const { return u_.grid(); }
  int rank() const { return u_.rows(); }

  // A = U − 1.
  Cochain connection() const;

 private:
  Cochain u_;
};

Cochain curvature(const GaugeField& u);
Matrix parallel_transport(const GaugeField& u, const EdgePath& path);

// Which side of the values the connection acts on: matrix fields get both,
// row vectors (1×n, 4×n) the right, column vectors the left.
enum class Side { Left = 1, Right = 2, Both = 3 };

// D_A X = δX + A⌣X − (−1)^k X⌣A, keeping only the terms of the given side.
Cochain covariant_coboundary(const Cochain& x, const Cochain& a, Side side);
// D*_A X = ∂X + (X*⌢A)* + (−1)^k (A⋆⌢X*)*, same convention.
Cochain covariant_boundary(const Cochain& x, const Cochain& a, Side side);
// The transposed-side form Ď*_A X = ∂X + (−1)^k A⋆⌢X + X⌢A, so that D*_A X = (Ď*_A X*)*
// with the sides exchanged.
Cochain covariant_boundary_dual(const Cochain& x, const Cochain& a, Side side);

Cochain covariant_coboundary_matrix(const Cochain& x, const Cochain& a);
Cochain covariant_boundary_matrix(const Cochain& x, const Cochain& a);
Cochain covariant_coboundary_vector(const Cochain& x, const Cochain& a);
Cochain covariant_boundary_vector(const Cochain& x, const Cochain& a);
// D̄_A ψ = (δψ* + A⌣ψ*)*, the variant acting through the conjugate.
Cochain covariant_coboundary_conjugate(const Cochain& x, const Cochain& a);

// Orthogonal projection of v onto the tangent space of U(n) at u.
Matrix tangent_project(const Matrix& u, const Matrix& v);
Cochain tangent_project(const GaugeField& u, const Cochain& j);

// g*⌣Φ⌣g for matrix fields and φ⌣g for row-vector fields; g is a 0-cochain of unitaries.
Cochain gauge_transform_matrix(const Cochain& phi, const Cochain& g);
Cochain gauge_transform_vector(const Cochain& phi, const Cochain& g);
GaugeField gauge_transform(const GaugeField& u, const Cochain& g);

// Edgewise QR retraction of a nearly unitary field back onto U(n).
GaugeField retract(const Cochain& near);

}  // namespace dfield
