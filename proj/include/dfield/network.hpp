#pragma once

#include <array>
#include <functional>

#include "dfield/cochain.hpp"

namespace dfield {

// Unit-resistor network on I^1_N or I^2_N driven by a boundary source s.
// Doubling fields live on the doubling: W and P on its vertices, S and L on its
// edges. F, the doubling fields and σ are left empty on a path.
struct NetworkSolution {
  GridPtr grid;
  Cochain source;
  Cochain potential;
  Cochain current;
  Cochain magnetic;
  GridPtr doubling;
  Cochain heat;
  Cochain poynting;
  Cochain lorentz;
  Cochain pressure;
  // σ₁, σ₂ on edges disjoint with the boundary, zero elsewhere.
  std::array<Cochain, 2> stress;
};

// φ and F vanish at the vertex and the face closest to the center (lowest in
// lexicographic order among the closest ones). Throws NoSolutionError when εs ≠ 0
// and DomainError when s is nonzero at an interior vertex.
NetworkSolution solve_network(const Cochain& source);

// Largest violations of the network laws, each restricted to where it is claimed.
struct NetworkDefects {
  double kirchhoff_current;  // ∂j + s
  double kirchhoff_voltage;  // δj
  double ampere;             // −∂F − j on interior edges
  double energy;             // ∂S − W at interior doubling vertices
  double momentum;           // δP + L on interior doubling edges through face centers
  double stress;             // δσ₁, δσ₂ on faces disjoint with the boundary
  double tellegen;           // ⟨δφ, j⟩ + ⟨φ, s⟩
  double max() const;
};
NetworkDefects network_defects(const NetworkSolution& sol);

// +1 at the middle vertex of the left side, −1 at the middle vertex of the right side.
Cochain dipole_source(GridPtr grid);

// Discrete source from a continuous one on ∂[0,1]²: each side is cut into N+1
// auxiliary segments, and a vertex collects the integral over the one or two
// segments meeting it. s(x, y) is only evaluated on the boundary.
Cochain sampled_source(GridPtr grid, const std::function<double(double, double)>& s);

}  // namespace dfield
