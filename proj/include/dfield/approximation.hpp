#pragma once

#include <string>
#include <vector>

namespace dfield {

enum class Theory { Network, MaxwellTensor, KleinGordon, Dirac };

// Continuum fields to sample. Smooth is a fixed analytic field per theory (an affine
// F for the Maxwell tensor, waves p(x)e^{iθ(x)} for Klein–Gordon and Dirac; for the
// network the harmonic pair φ = x²−y², F = 2xy in coordinates centered in the box);
// ConstantField is F₀₁ = 1 and exists for the Maxwell tensor only.
enum class Reference { Smooth, Zero, ConstantField };

Theory parse_theory(const std::string& name);
std::string theory_name(Theory t);
Reference parse_reference(const std::string& name);
std::string reference_name(Reference r);

// Errors are taken over faces lying at distance ≥ r from the boundary of [0,1]^d.
constexpr double kRegionDistance = 0.25;

struct StudyOptions {
  int d = 2;  // the network always uses 2 and the Dirac theory 4
  double mass = 1.0;
  std::vector<int> sizes;  // empty means default_sizes
  // Network only: compare on the plain grid of step 1/N instead of the dual of the
  // (N+1)² grid cut out by the auxiliary boundary segments.
  bool initial_grid = false;
};

struct ErrorRow {
  std::string theory;
  std::string quantity;
  int n;
  double sup_error;
};

std::vector<int> default_sizes(Theory t);

// One row per (quantity, N): the largest deviation of the normalized discrete
// quantity from its continuum counterpart.
std::vector<ErrorRow> approximation_study(Theory t, Reference r, const StudyOptions& options = {});

// Header "theory,quantity,N,sup_error" and one line per row.
std::string error_table_csv(const std::vector<ErrorRow>& rows);

// err(N)/err(2N) for every quantity and every N whose double is in the table.
// Pairs where err(2N) is at most the floor count as converged and get +inf.
struct ShrinkFactor {
  std::string quantity;
  int n;
  double factor;
};
std::vector<ShrinkFactor> shrink_factors(const std::vector<ErrorRow>& rows, double floor = 1e-12);

}  // namespace dfield
