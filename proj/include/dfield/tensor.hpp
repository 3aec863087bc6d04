#pragma once

#include <vector>

#include "dfield/cochain.hpp"

namespace dfield {

// Real function on pairs e×f of faces of the grid with dim f − dim e = gap:
// gap 0 is a type (1,1) tensor, gap 1 a type (0,1) tensor. Only pairs whose
// centers differ by at most `radius` half-steps in total are stored; every
// operation below stays within that neighborhood of the diagonal.
class Tensor {
 public:
  static constexpr int kDefaultRadius = 2;

  Tensor(GridPtr grid, int gap, int radius = kDefaultRadius);

  const GridPtr& grid_ptr() const { return grid_; }
  const Grid& grid() const { return *grid_; }
  int gap() const { return gap_; }
  int radius() const { return radius_; }

  bool stored(const Face& e, const Face& f) const;
  double operator()(const Face& e, const Face& f) const;
  double& at(const Face& e, const Face& f);

  // Calls fn(e, f, value) for every stored pair with the right dimension gap.
  template <class Fn>
  void for_each(Fn&& fn) const {
    visit(*this, fn);
  }
  template <class Fn>
  void for_each_mutable(Fn&& fn) {
    visit(*this, fn);
  }

  Tensor& operator+=(const Tensor& other);
  Tensor& operator*=(double s);
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a += -1.0 * b; }
  friend Tensor operator*(double s, Tensor a) { return a *= s; }

  double max_abs() const;

 private:
  template <class Self, class Fn>
  static void visit(Self& self, Fn& fn) {
    const Grid& g = *self.grid_;
    const std::size_t count = self.offsets_.size();
    for (std::size_t key = 0; key < g.key_count(); ++key) {
      const Face f = g.face_from_key(key);
      for (std::size_t o = 0; o < count; ++o) {
        Face e = f;
        if (!self.shift(e, self.offsets_[o])) continue;
        if (f.dim() - e.dim() != self.gap_) continue;
        fn(e, f, self.values_[key * count + o]);
      }
    }
  }

  bool shift(Face& e, const std::vector<int>& offset) const;
  std::size_t slot(const Face& e, const Face& f) const;

  GridPtr grid_;
  int gap_;
  int radius_;
  std::vector<std::vector<int>> offsets_;
  std::vector<long> offset_code_;
  std::vector<double> values_;
};

// [ψ×φ](e×f) = Re Tr[ψ(e)φ(f)]; dim φ − dim ψ must be 0 or 1.
Tensor cross(const Cochain& psi, const Cochain& phi, int radius = Tensor::kDefaultRadius);

// The linear extension of ∂(ψ×φ) = ∂ψ×φ + ψ×δφ, from type (1,1) to type (0,1).
// The result is stored with radius one less than the input.
Tensor tensor_boundary(const Tensor& t);

bool is_partially_symmetric(const Tensor& t, double tol = 0.0);

// Largest |[∂T](e×f)| over pairs with e and f off the grid boundary.
double interior_defect(const Tensor& boundary_of_t);

// k-th component of the flux across a nonboundary hyperface of the grid.
double flux_hyperface(const Tensor& t, const Face& h, int k);
double flux_hypersurface(const Tensor& t, const OrientedHypersurface& surface, int k);

// The doubling of a grid: the same box with 2N steps per axis. A vertex of the
// doubling has coordinates equal to the half-step center of a face of the grid.
GridPtr doubling_of(const Grid& grid);
// Flux of a type (1,1) tensor across a nonboundary hyperface g of the doubling.
double doubling_flux(const Tensor& t, const Grid& doubling, const Face& g, int k);
// Flux of a type (0,1) tensor across a top-dimensional face g of the doubling.
double doubling_flux01(const Tensor& l, const Grid& doubling, const Face& g, int k);
// Hyperfaces of the doubling contained in the hyperface h of the grid.
std::vector<Face> doubling_hyperfaces(const Face& h);

// 1D flux through vertex k: ½T((k+1)×k) − ½T(k×k), for edges numbered by their max vertex.
double flux_vertex_1d(const Tensor& t, int k);

// Random tensor with T(e×f) = T(f×e) on parallel pairs.
Tensor random_partially_symmetric(GridPtr grid, Rng& rng, int radius = Tensor::kDefaultRadius);

}  // namespace dfield
