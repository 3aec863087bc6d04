#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

namespace dfield {

constexpr int kMaxDim = 6;

// A face of the grid, addressed by its center in half-units: coordinate m is
// odd exactly when the face spans axis m. Vertices have all coordinates even.
class Face {
 public:
  Face() = default;
  Face(std::initializer_list<int> center);
  explicit Face(const std::vector<int>& center);

  int d() const { return d_; }
  int operator[](int m) const { return c_[m]; }
  int& operator[](int m) { return c_[m]; }

  int dim() const;
  bool spans(int m) const { return (c_[m] & 1) != 0; }
  unsigned mask() const;
  Face min_vertex() const;
  Face max_vertex() const;
  Face shifted(int m, int delta) const;
  std::vector<int> center() const;
  std::string str() const;

  friend bool operator==(const Face& a, const Face& b) {
    return a.d_ == b.d_ && a.c_ == b.c_;
  }
  friend std::strong_ordering operator<=>(const Face& a, const Face& b) {
    if (auto c = a.d_ <=> b.d_; c != 0) return c;
    return a.c_ <=> b.c_;
  }

 private:
  std::array<int, kMaxDim> c_{};
  int d_ = 0;
};

// The face with minimal vertex a and maximal vertex b (both given as vertices).
Face face_between(const Face& a, const Face& b);

// Sign of the permutation sorting the concatenation of the axis sets s1 and s2
// (each taken in increasing order). Sets must be disjoint.
int concatenation_sign(unsigned s1, unsigned s2);

// The hypercube [0,N]^d subdivided into N^d unit cubes.
class Grid {
 public:
  Grid(int d, int n);

  int d() const { return d_; }
  int n() const { return n_; }

  std::size_t count(int k) const;
  const std::vector<Face>& faces(int k) const;

  bool contains(const Face& f) const;
  // Position of f in faces(f.dim()); throws IncidenceError if f is not in the grid.
  std::size_t index(const Face& f) const;
  // Same, but -1 for faces outside the grid.
  long find(const Face& f) const;

  int incidence(const Face& sub, const Face& sup) const;
  std::vector<Face> faces_with_max_vertex(const Face& v, int k) const;
  int triple_sign(const Face& a, const Face& b, const Face& c) const;
  bool is_boundary(const Face& f) const;

  // Mixed-radix code of a center, usable as a dense index over all faces.
  std::size_t key(const Face& f) const;
  std::size_t key_count() const { return key_to_index_.size(); }
  Face face_from_key(std::size_t key) const;
  // Change of key when coordinate m grows by one.
  std::size_t stride(int m) const { return strides_[m]; }
  long index_at_key(std::size_t key) const { return key_to_index_[key]; }

  friend bool operator==(const Grid& a, const Grid& b) { return a.d_ == b.d_ && a.n_ == b.n_; }

 private:
  void check_dim(int k) const;

  int d_;
  int n_;
  std::vector<std::vector<Face>> faces_;
  std::vector<long> key_to_index_;
  std::array<std::size_t, kMaxDim> strides_{};
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int d, int n);

struct OrientedFace {
  Face face;
  int sign;
};

struct EdgePath {
  std::vector<OrientedFace> steps;

  Face start() const;
  Face end() const;
  // Throws PathError unless consecutive edges chain and no vertex repeats
  // (a closed loop may return to its start).
  void validate(const Grid& grid) const;
  // Path visiting the given vertices in order; consecutive vertices must be adjacent.
  static EdgePath through(const Grid& grid, const std::vector<Face>& vertices);
  // Boundary loop of a 2-face, counterclockwise from its minimal vertex.
  static EdgePath face_boundary(const Grid& grid, const Face& f);
};

struct OrientedHypersurface {
  std::vector<OrientedFace> faces;

  // Boundary of a union of d-dimensional cubes, with incidence signs.
  static OrientedHypersurface boundary_of(const Grid& grid, const std::vector<Face>& cubes);
};

}  // namespace dfield
