#pragma once

#include "dfield/gauge.hpp"
#include "dfield/lagrangian.hpp"
#include "dfield/tensor.hpp"

namespace dfield {

// −#D_Aφ⌢(D_Aφ)* − m²φ⌢φ* on 1×n vertex fields.
LocalLagrangian klein_gordon_lagrangian(GridPtr grid, double m, int n = 1, bool real_field = false);

// D*_A#D_Aφ + m²φ, or ∂#δφ + m²φ without gauge field.
Cochain klein_gordon_operator(const Cochain& phi, double m, const GaugeField* u = nullptr);

// 2 Im Tr[#δφ*⌢φ].
Cochain klein_gordon_current(const Cochain& phi);
// 2φ*⌣#D_Aφ, an n×n edge field.
Cochain klein_gordon_covariant_current(const Cochain& phi, const GaugeField& u);
// −2Re[#δφ*×δφ + m²φ*×φ].
Tensor klein_gordon_tensor(const Cochain& phi, double m);

struct KleinGordonSolution {
  LocalLagrangian lagrangian;
  Cochain field;
  double equation_residual;  // interior max of the operator above
};

// Field with the given boundary values solving the equation at interior vertices.
KleinGordonSolution klein_gordon(double m, const Cochain& boundary_values, const GaugeField* u = nullptr);

}  // namespace dfield
