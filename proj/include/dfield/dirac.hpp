#pragma once

#include "dfield/gauge.hpp"
#include "dfield/lagrangian.hpp"
#include "dfield/tensor.hpp"

namespace dfield {

// Re Tr[ψ̄⌢(iγ⌢D_Aψ − mψ)] on 4×n vertex fields of I^4_N.
LocalLagrangian dirac_lagrangian(GridPtr grid, double m, int n = 1);

// ψ̄ = ψ*γ⁰.
Cochain dirac_bar(const Cochain& psi);

// iγ⌢D_Aψ + iγ⋆⌢D̄_Aψ − 2mψ, or iγ⌢δψ + iγ⋆⌢δψ − 2mψ without gauge field.
Cochain dirac_operator(const Cochain& psi, double m, const GaugeField* u = nullptr);

// Re Tr[ψ̄⌣γ⌣ψ] and Re Tr[ψ̄⌣γ⁵γ⌣ψ].
Cochain dirac_current(const Cochain& psi);
Cochain dirac_axial_current(const Cochain& psi);
// −ψ̄⌣iγ⌣ψ, an n×n edge field.
Cochain dirac_covariant_current(const Cochain& psi);
// Re[(ψ̄⋆⌢iγ)×δψ − (δψ̄⌢iγ + 2mψ̄)×ψ].
Tensor dirac_tensor(const Cochain& psi, double m);

struct DiracSolution {
  LocalLagrangian lagrangian;
  Cochain field;
  double equation_residual;  // interior max of the operator above
};

DiracSolution dirac(double m, const Cochain& boundary_values, const GaugeField* u = nullptr);

// Free Dirac field on shell at interior vertices, axis 0 being time: the seed is kept
// on the first two layers and on the spatial boundary, later layers are marched.
// Works for m = 0 too, where the fixed-boundary problem is degenerate.
Cochain dirac_march(const Cochain& seed, double m);

// Largest |γ^aγ^b + γ^bγ^a − 2η^{ab}| over all pairs, η = diag(1,−1,−1,−1).
double clifford_defect();

struct FermionDoublingReport {
  double residual;  // max |∂#δφ + (2m)²φ| at interior vertices of the initial grid
  long vertices;    // number of such vertices
};

// ψ lives on the doubling of I^4_N; φ is its restriction to the vertices of I^4_N.
FermionDoublingReport fermion_doubling_check(const Cochain& psi, double m);

}  // namespace dfield
