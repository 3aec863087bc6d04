#pragma once

#include "dfield/gauge.hpp"
#include "dfield/lagrangian.hpp"
#include "dfield/tensor.hpp"

namespace dfield {

// Electrodynamics generated by a vector-potential: j := −∂#δA, F := δA.
struct MaxwellSolution {
  GridPtr grid;
  Cochain potential;
  Cochain current;
  Cochain field;
  Tensor field_tensor;  // T′ = −#F×F
  Tensor total_tensor;  // T = −#F×F − j×A
  Tensor lorentz;       // L = j×F, stored with radius one less than the tensors
};

MaxwellSolution maxwell_from_potential(const Cochain& a);

// Largest violations of δF = 0, −∂#F = j, ∂j = 0, ∂T′ = L and ∂T = 0 (the last two off the boundary).
struct MaxwellDefects {
  double bianchi;
  double source;
  double charge;
  double field_momentum;
  double total_momentum;
  double max() const;
};
MaxwellDefects maxwell_defects(const MaxwellSolution& sol);

// −½#δA⌢δA − j⌢A on real edge fields.
LocalLagrangian maxwell_lagrangian(GridPtr grid, const Cochain& current);

// A random vector-potential with −∂#δA = 0 at interior edges, axis 0 being time:
// random data on the first layer and on the spatial boundary, a divergence-free
// first time step, later layers marched from the source equation, plus a random δg.
Cochain free_maxwell_potential(GridPtr grid, Rng& rng);

// Largest |⟨T′, ∂c⟩_k| over nonboundary cubes c of a three-dimensional grid, for the
// time component k = 0 only or for all k.
double poynting_identity(const Cochain& field, bool all_components = false);

struct PoyntingReport {
  int n;
  unsigned long long seed;
  long cubes;
  double field_scale;      // max |F|
  double energy_identity;  // time component, the quick-start identity
  double momentum_identity;
  double off_shell_identity;  // same identity for a random potential
};
// Free Maxwell field on I^3_N from random boundary values.
PoyntingReport poynting_demo(int n, unsigned long long seed);

// −½Re Tr[#F*⌢F] − Re Tr[j*⌢U]; the action equals the holonomy form below.
GaugeLagrangian wilson_theory(GridPtr grid, int n, const Cochain& current);
// Σ_f #(Re Tr U(∂f) − n) − Σ_e Re Tr[j*(e)U(e)].
double wilson_holonomy_action(const GaugeField& u, const Cochain& current);

}  // namespace dfield
