#pragma once

#include "dfield/gauge.hpp"
#include "dfield/lagrangian.hpp"
#include "dfield/tensor.hpp"

namespace dfield {

enum class BoundaryMode { Free, Fixed };

// Free: every face varies. Fixed: faces on the grid boundary keep `values`
// (zero when left empty) and residuals are only required off the boundary.
struct BoundaryCondition {
  BoundaryMode mode = BoundaryMode::Free;
  Cochain values{};

  static BoundaryCondition free() { return {}; }
  static BoundaryCondition fixed(Cochain values = {}) { return {BoundaryMode::Fixed, std::move(values)}; }

  bool varies(const Face& f, const Grid& g) const { return mode == BoundaryMode::Free || !g.is_boundary(f); }
};

// D_Aφ with the connection acting on the columns, or δφ when there is no gauge field.
Cochain field_derivative(const Cochain& phi, const GaugeField* u = nullptr);

double action(const LocalLagrangian& l, const Cochain& phi, const GaugeField* u = nullptr);

// (∂L/∂φ)* + D*_A(∂L/∂(D_Aφ))*, real part for real fields, zero on boundary faces under a fixed condition.
Cochain el_residual(const LocalLagrangian& l, const Cochain& phi, const GaugeField* u = nullptr,
                    const BoundaryCondition& bc = {});

// d/dt S[φ + tΔ] at t = 0 from the partial derivatives.
double directional_derivative(const LocalLagrangian& l, const Cochain& phi, const Cochain& delta,
                              const GaugeField* u = nullptr);
// The same by central differences of the action.
double directional_derivative_fd(const LocalLagrangian& l, const Cochain& phi, const Cochain& delta,
                                 const GaugeField* u = nullptr, double step = 1e-5);

// Vertexwise d/dt L[φ + tΔ] at t = 0.
Cochain invariance_defect(const LocalLagrangian& l, const Cochain& phi, const Cochain& delta,
                          const GaugeField* u = nullptr);

// Random variation with the layout of the field, vanishing where bc holds the field fixed.
Cochain random_variation(const LocalLagrangian& l, const BoundaryCondition& bc, Rng& rng);

// Stationary field of a Lagrangian quadratic in (φ, D_Aφ). Throws NoSolutionError
// when the Euler–Lagrange system is inconsistent; returns the minimum-norm solution
// when it is underdetermined.
Cochain solve_quadratic(const LocalLagrangian& l, const BoundaryCondition& bc = {}, const GaugeField* u = nullptr);

// (∂L/∂(D_Aφ) ⌢ Δ)*: an n×n edge field (1×1 without gauge field).
Cochain noether_current(const LocalLagrangian& l, const Cochain& phi, const Cochain& delta,
                        const GaugeField* u = nullptr);
// Re Tr[j*U] on each edge, or Re Tr j without gauge field; its boundary vanishes on shell.
Cochain paired_current(const Cochain& j, const GaugeField* u = nullptr);
// (∂L/∂(D_Aφ) ⌢ φ)*, the covariant current of a gauge invariant Lagrangian.
Cochain charge_current(const LocalLagrangian& l, const Cochain& phi, const GaugeField* u = nullptr);
// D*_A Pr_{T_U} j for a matrix edge field j.
Cochain charge_defect(const GaugeField& u, const Cochain& j);

// Re Tr[(∂L/∂(δφ)) × δφ + (∂L/∂φ) × φ], trivial connection.
Tensor energy_momentum_tensor(const LocalLagrangian& l, const Cochain& phi, int radius = Tensor::kDefaultRadius);

// Largest |value| over faces off the grid boundary.
double interior_max(const Cochain& c);

// Gauge Lagrangians are evaluated on arbitrary matrix edge fields so that they can
// be differentiated in ambient directions; F = U⌣U.
double gauge_action(const GaugeLagrangian& l, const Cochain& u);
double gauge_action(const GaugeLagrangian& l, const GaugeField& u);
// D*_A G_F + G_U before projection to the tangent space.
Cochain gauge_gradient(const GaugeLagrangian& l, const Cochain& u);
// Pr_{T_U}[D*_A(∂L/∂F)* + (∂L/∂U)*].
Cochain el_residual_gauge(const GaugeLagrangian& l, const GaugeField& u);
double gauge_directional_derivative(const GaugeLagrangian& l, const GaugeField& u, const Cochain& delta);
double gauge_directional_derivative_fd(const GaugeLagrangian& l, const GaugeField& u, const Cochain& delta,
                                       double step = 1e-5);

struct GaugeSolveOptions {
  double tol = 1e-10;
  long budget = 100000;
  double fd_step = 1e-6;
  // After a stall, start again from a random unitary field (seeded by the attempt
  // number) this many times before giving up.
  int restarts = 20;
};

struct GaugeSolveResult {
  GaugeField field;
  double residual;
  long iterations;
  int restarts;
};

// Stationary gauge group field near u0, by least-squares steps on the Euler–Lagrange
// residual in tangent coordinates followed by retraction. Throws ConvergenceError
// when the budget or the restarts run out.
GaugeSolveResult solve_gauge(const GaugeLagrangian& l, const GaugeField& u0, const GaugeSolveOptions& options = {});

}  // namespace dfield
