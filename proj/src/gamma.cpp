#include "dfield/gamma.hpp"

#include <array>

#include "dfield/errors.hpp"

namespace dfield {

namespace {

std::array<Matrix, 4> build_gammas() {
  const Complex i(0.0, 1.0);
  std::array<Matrix, 4> g;
  for (auto& m : g) m = Matrix::Zero(4, 4);
  g[0].diagonal() << 1.0, 1.0, -1.0, -1.0;
  g[1](0, 3) = 1.0;
  g[1](1, 2) = 1.0;
  g[1](2, 1) = -1.0;
  g[1](3, 0) = -1.0;
  g[2](0, 3) = -i;
  g[2](1, 2) = i;
  g[2](2, 1) = i;
  g[2](3, 0) = -i;
  g[3](0, 2) = 1.0;
  g[3](1, 3) = -1.0;
  g[3](2, 0) = -1.0;
  g[3](3, 1) = 1.0;
  return g;
}

}  // namespace

const Matrix& gamma_matrix(int k) {
  static const std::array<Matrix, 4> gammas = build_gammas();
  if (k < 0 || k > 3) throw DimensionError("gamma index must be 0..3");
  return gammas[k];
}

const Matrix& gamma5() {
  static const Matrix g5 =
      Complex(0.0, 1.0) * gamma_matrix(0) * gamma_matrix(1) * gamma_matrix(2) * gamma_matrix(3);
  return g5;
}

Cochain dirac_chain(GridPtr grid) {
  if (grid->d() != 4) throw ConfigurationError("the Dirac chain lives on a four-dimensional grid");
  Cochain chain(std::move(grid), 1, 4, 4);
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (int k = 0; k < 4; ++k)
      if (chain.face(i).spans(k)) chain[i] = gamma_matrix(k);
  return chain;
}

}  // namespace dfield
