#pragma once

#include "dfield/cochain.hpp"

namespace dfield {

// Dirac matrices γ⁰…γ³ in the standard representation, signature (+,−,−,−).
const Matrix& gamma_matrix(int k);
// γ⁵ = iγ⁰γ¹γ²γ³.
const Matrix& gamma5();

// The edge field equal to γ^k on every edge along axis k; needs d = 4.
Cochain dirac_chain(GridPtr grid);

}  // namespace dfield
