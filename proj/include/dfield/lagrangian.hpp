#pragma once

#include <string>
#include <vector>

#include "dfield/cochain.hpp"

namespace dfield {

// Local building blocks of field Lagrangians. Each term knows its vertex density
// and its two partial derivatives, stored conjugated: G = (∂L/∂φ)* on k-faces and
// G' = (∂L/∂(Dφ))* on (k+1)-faces, with φ and Dφ treated as independent.
enum class TermKind {
  Source,        // Re[j⌢φ*]
  Mass,          // φ⌢φ*
  Kinetic,       // #Dφ⌢(Dφ)*, or Dφ⌢(Dφ)* without the sharp
  DiracMass,     // Re Tr[ψ̄⌢ψ]
  DiracKinetic,  // Re Tr[ψ̄⌢(iγ⌢Dψ)]
};

struct FieldTerm {
  TermKind kind;
  double weight = 1.0;
  Cochain source{};
  bool sharp = true;
};

// Sum of weighted terms acting on degree-k fields with values of shape rows×cols.
// The gauge group acts on the columns. A real Lagrangian only admits real variations.
class LocalLagrangian {
 public:
  LocalLagrangian(GridPtr grid, int degree, int rows, int cols, bool real_field = false);

  LocalLagrangian& add(FieldTerm term);
  LocalLagrangian& add(const LocalLagrangian& other, double weight = 1.0);

  const GridPtr& grid_ptr() const { return grid_; }
  int degree() const { return degree_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool real_field() const { return real_; }
  const std::vector<FieldTerm>& terms() const { return terms_; }

  Cochain zero_field() const { return Cochain(grid_, degree_, rows_, cols_); }
  void check_field(const Cochain& phi) const;

  Cochain density(const Cochain& phi, const Cochain& dphi) const;
  Cochain field_gradient(const Cochain& phi, const Cochain& dphi) const;
  Cochain derivative_gradient(const Cochain& phi, const Cochain& dphi) const;

 private:
  GridPtr grid_;
  int degree_;
  int rows_;
  int cols_;
  bool real_;
  std::vector<FieldTerm> terms_;
  Cochain gamma_;
};

enum class GaugeTermKind {
  Source,     // Re Tr[j*⌢U]
  Plaquette,  // Re Tr[#F*⌢F]
};

struct GaugeTerm {
  GaugeTermKind kind;
  double weight = 1.0;
  Cochain source{};
};

// Lagrangians of a gauge group field U through U and F[U]; gradients
// G_U = (∂L/∂U)* and G_F = (∂L/∂F)*.
class GaugeLagrangian {
 public:
  GaugeLagrangian(GridPtr grid, int rank);

  GaugeLagrangian& add(GaugeTerm term);

  const GridPtr& grid_ptr() const { return grid_; }
  int rank() const { return rank_; }
  const std::vector<GaugeTerm>& terms() const { return terms_; }

  Cochain density(const Cochain& u, const Cochain& f) const;
  Cochain unitary_gradient(const Cochain& u, const Cochain& f) const;
  Cochain curvature_gradient(const Cochain& u, const Cochain& f) const;

 private:
  GridPtr grid_;
  int rank_;
  std::vector<GaugeTerm> terms_;
};

// Re Tr[X*⌢Y] at each vertex: the sum of Re Tr[X(e)*Y(e)] over faces e with max e = v.
Cochain local_pairing(const Cochain& x, const Cochain& y);

// Rows 1–5 of the catalog as single-term Lagrangians on degree-k fields with
// values in C^{1×n} (rows 1–3) or C^{4×n} (rows 4–5, d = 4 only). Rows 1 and 6
// need a source of the field's layout.
LocalLagrangian catalog_field_row(int row, GridPtr grid, int degree, int n, const Cochain& source = {});
GaugeLagrangian catalog_gauge_row(int row, GridPtr grid, int n, const Cochain& source = {});

struct CatalogEntry {
  int row;
  std::string name;
};
// The seven catalog rows with their names.
const std::vector<CatalogEntry>& catalog();

// −½Re Tr[#F*⌢F] − Re Tr[j*⌢U].
GaugeLagrangian wilson_lagrangian(GridPtr grid, int n, const Cochain& current);

}  // namespace dfield
