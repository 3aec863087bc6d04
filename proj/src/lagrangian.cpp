#include "dfield/lagrangian.hpp"

#include "dfield/errors.hpp"
#include "dfield/gamma.hpp"

namespace dfield {

Cochain local_pairing(const Cochain& x, const Cochain& y) {
  if (!x.same_layout(y)) throw ShapeError("local pairing needs equal layouts");
  const Cochain p = cap(conjugate_transpose(x), y);
  Cochain out(p.grid_ptr(), 0, 1, 1);
  for (std::size_t i = 0; i < p.size(); ++i) out[i](0, 0) = p[i].trace().real();
  return out;
}

LocalLagrangian::LocalLagrangian(GridPtr grid, int degree, int rows, int cols, bool real_field)
    : grid_(std::move(grid)), degree_(degree), rows_(rows), cols_(cols), real_(real_field) {
  if (!grid_) throw ConfigurationError("Lagrangian needs a grid");
  if (degree < 0 || degree >= grid_->d()) throw DimensionError("field degree must be below the grid dimension");
  if (rows < 1 || cols < 1) throw ShapeError("field values need a positive shape");
}

LocalLagrangian& LocalLagrangian::add(FieldTerm term) {
  switch (term.kind) {
    case TermKind::Source:
      if (!term.source.grid_ptr() || !term.source.same_layout(zero_field()))
        throw ShapeError("source must have the layout of the field");
      break;
    case TermKind::DiracMass:
    case TermKind::DiracKinetic:
      if (grid_->d() != 4) throw ConfigurationError("Dirac terms need a four-dimensional grid");
      if (rows_ != 4 || degree_ != 0) throw ConfigurationError("Dirac terms act on 4×n vertex fields");
      if (gamma_.size() == 0) gamma_ = dirac_chain(grid_);
      break;
    default:
      break;
  }
  terms_.push_back(std::move(term));
  return *this;
}

LocalLagrangian& LocalLagrangian::add(const LocalLagrangian& other, double weight) {
  if (!(*other.grid_ == *grid_) || other.degree_ != degree_ || other.rows_ != rows_ || other.cols_ != cols_)
    throw ShapeError("Lagrangians act on different fields");
  for (FieldTerm t : other.terms_) {
    t.weight *= weight;
    add(std::move(t));
  }
  return *this;
}

void LocalLagrangian::check_field(const Cochain& phi) const {
  if (!phi.same_layout(zero_field())) throw ShapeError("field does not match the Lagrangian");
}

namespace {

Cochain left_gamma0(const Cochain& x, Complex s) { return s * x.left_multiplied(gamma_matrix(0)); }

}  // namespace

Cochain LocalLagrangian::density(const Cochain& phi, const Cochain& dphi) const {
  Cochain out(grid_, 0, 1, 1);
  for (const auto& t : terms_) {
    switch (t.kind) {
      case TermKind::Source:
        out += t.weight * local_pairing(phi, t.source);
        break;
      case TermKind::Mass:
        out += t.weight * local_pairing(phi, phi);
        break;
      case TermKind::Kinetic:
        out += t.weight * local_pairing(dphi, t.sharp ? sharp(dphi) : dphi);
        break;
      case TermKind::DiracMass:
        out += t.weight * local_pairing(phi, left_gamma0(phi, 1.0));
        break;
      case TermKind::DiracKinetic:
        out += t.weight * local_pairing(phi, left_gamma0(cap(gamma_, dphi), Complex(0, 1)));
        break;
    }
  }
  return out;
}

Cochain LocalLagrangian::field_gradient(const Cochain& phi, const Cochain& dphi) const {
  Cochain out = zero_field();
  for (const auto& t : terms_) {
    switch (t.kind) {
      case TermKind::Source:
        out += t.weight * t.source;
        break;
      case TermKind::Mass:
        out += (2.0 * t.weight) * phi;
        break;
      case TermKind::DiracMass:
        out += left_gamma0(phi, 2.0 * t.weight);
        break;
      case TermKind::DiracKinetic:
        out += left_gamma0(cap(gamma_, dphi), Complex(0, t.weight));
        break;
      default:
        break;
    }
  }
  return out;
}

Cochain LocalLagrangian::derivative_gradient(const Cochain& phi, const Cochain& dphi) const {
  Cochain out(grid_, degree_ + 1, rows_, cols_);
  for (const auto& t : terms_) {
    switch (t.kind) {
      case TermKind::Kinetic:
        out += (2.0 * t.weight) * (t.sharp ? sharp(dphi) : dphi);
        break;
      case TermKind::DiracKinetic:
        out += left_gamma0(cup(gamma_, phi), Complex(0, -t.weight));
        break;
      default:
        break;
    }
  }
  return out;
}

GaugeLagrangian::GaugeLagrangian(GridPtr grid, int rank) : grid_(std::move(grid)), rank_(rank) {
  if (!grid_) throw ConfigurationError("Lagrangian needs a grid");
  if (grid_->d() < 2) throw DimensionError("gauge Lagrangians need d ≥ 2");
  if (rank < 1) throw ShapeError("gauge rank must be positive");
}

GaugeLagrangian& GaugeLagrangian::add(GaugeTerm term) {
  if (term.kind == GaugeTermKind::Source) {
    const Cochain& j = term.source;
    if (!j.grid_ptr() || !(j.grid() == *grid_) || j.degree() != 1 || j.rows() != rank_ || j.cols() != rank_)
      throw ShapeError("gauge source must be a square edge field of the gauge rank");
  }
  terms_.push_back(std::move(term));
  return *this;
}

Cochain GaugeLagrangian::density(const Cochain& u, const Cochain& f) const {
  Cochain out(grid_, 0, 1, 1);
  for (const auto& t : terms_) {
    if (t.kind == GaugeTermKind::Source)
      out += t.weight * local_pairing(t.source, u);
    else
      out += t.weight * local_pairing(f, sharp(f));
  }
  return out;
}

Cochain GaugeLagrangian::unitary_gradient(const Cochain& u, const Cochain&) const {
  Cochain out = u.zeros_like();
  for (const auto& t : terms_)
    if (t.kind == GaugeTermKind::Source) out += t.weight * t.source;
  return out;
}

Cochain GaugeLagrangian::curvature_gradient(const Cochain&, const Cochain& f) const {
  Cochain out = f.zeros_like();
  for (const auto& t : terms_)
    if (t.kind == GaugeTermKind::Plaquette) out += (2.0 * t.weight) * sharp(f);
  return out;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> rows{
      {1, "source Re[j⌢φ*]"},
      {2, "mass φ⌢φ*"},
      {3, "kinetic #Dφ⌢(Dφ)*"},
      {4, "Dirac mass Re Tr[ψ̄⌢ψ]"},
      {5, "Dirac kinetic Re Tr[ψ̄⌢(iγ⌢Dψ)]"},
      {6, "gauge source Re Tr[j*⌢U]"},
      {7, "plaquette Re Tr[#F*⌢F]"},
  };
  return rows;
}

LocalLagrangian catalog_field_row(int row, GridPtr grid, int degree, int n, const Cochain& source) {
  const bool dirac = row == 4 || row == 5;
  LocalLagrangian l(std::move(grid), degree, dirac ? 4 : 1, n);
  switch (row) {
    case 1:
      l.add({TermKind::Source, 1.0, source});
      break;
    case 2:
      l.add({TermKind::Mass});
      break;
    case 3:
      l.add({TermKind::Kinetic});
      break;
    case 4:
      l.add({TermKind::DiracMass});
      break;
    case 5:
      l.add({TermKind::DiracKinetic});
      break;
    default:
      throw ConfigurationError("field catalog rows are 1–5");
  }
  return l;
}

GaugeLagrangian catalog_gauge_row(int row, GridPtr grid, int n, const Cochain& source) {
  GaugeLagrangian l(std::move(grid), n);
  if (row == 6)
    l.add({GaugeTermKind::Source, 1.0, source});
  else if (row == 7)
    l.add({GaugeTermKind::Plaquette});
  else
    throw ConfigurationError("gauge catalog rows are 6 and 7");
  return l;
}

GaugeLagrangian wilson_lagrangian(GridPtr grid, int n, const Cochain& current) {
  GaugeLagrangian l(std::move(grid), n);
  l.add({GaugeTermKind::Plaquette, -0.5});
  l.add({GaugeTermKind::Source, -1.0, current});
  return l;
}

}  // namespace dfield
