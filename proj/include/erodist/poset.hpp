#pragma once

// Grid posets, the diagram domain Dgm_P, shift translations, superlinear
// families and sublinear projections.

#include "erodist/error.hpp"
#include "erodist/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace erodist {

using Point = std::vector<Rational>;

enum class GridKind { IntegerLattice, EmbeddedGrid };

/// Either the unbounded lattice Z^n or a finite product of strictly increasing
/// rational axes embedded in R^n.
class GridPoset {
 public:
  static GridPoset lattice(std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("GridPoset: dim must be >= 1");
    GridPoset g;
    g.dim_ = dim;
    g.kind_ = GridKind::IntegerLattice;
    return g;
  }

  static GridPoset embedded(std::vector<std::vector<Rational>> axes) {
    if (axes.empty()) throw std::invalid_argument("GridPoset: dim must be >= 1");
    for (const auto& axis : axes) {
      if (axis.empty()) throw ValidationError("GridPoset: empty axis");
      for (std::size_t i = 1; i < axis.size(); ++i)
        if (!(axis[i - 1] < axis[i])) throw ValidationError("GridPoset: axis not strictly increasing");
    }
    GridPoset g;
    g.dim_ = axes.size();
    g.kind_ = GridKind::EmbeddedGrid;
    g.axes_ = std::move(axes);
    g.strides_.assign(g.dim_, 1);
    for (std::size_t i = g.dim_; i-- > 1;) g.strides_[i - 1] = g.strides_[i] * g.axes_[i].size();
    return g;
  }

  std::size_t dim() const { return dim_; }
  GridKind kind() const { return kind_; }
  bool is_embedded() const { return kind_ == GridKind::EmbeddedGrid; }
  const std::vector<std::vector<Rational>>& axes() const { return axes_; }
  const std::vector<Rational>& axis(std::size_t i) const { return axes_.at(i); }

  std::size_t num_points() const {
    if (!is_embedded()) throw std::logic_error("num_points on an unbounded lattice");
    return strides_[0] * axes_[0].size();
  }

  std::size_t flat_index(std::span<const std::size_t> idx) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < dim_; ++i) f += idx[i] * strides_[i];
    return f;
  }

  std::vector<std::size_t> multi_index(std::size_t flat) const {
    std::vector<std::size_t> idx(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      idx[i] = flat / strides_[i];
      flat %= strides_[i];
    }
    return idx;
  }

  Point coords(std::span<const std::size_t> idx) const {
    Point p(dim_);
    for (std::size_t i = 0; i < dim_; ++i) p[i] = axes_[i].at(idx[i]);
    return p;
  }

  std::size_t stride(std::size_t axis) const { return strides_[axis]; }

  friend bool operator==(const GridPoset&, const GridPoset&) = default;

 private:
  GridPoset() = default;
  std::size_t dim_ = 0;
  GridKind kind_ = GridKind::IntegerLattice;
  std::vector<std::vector<Rational>> axes_;
  std::vector<std::size_t> strides_;
};

/// Componentwise order on R^n.
inline bool leq_points(const Point& p, const Point& q) {
  require_same_dim(p.size(), q.size(), "leq_points");
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > q[i]) return false;
  return true;
}

/// A pair a < b (a <= b, a != b).
struct DgmPoint {
  Point a;
  Point b;
  friend bool operator==(const DgmPoint&, const DgmPoint&) = default;
};

inline bool is_dgm_point(const DgmPoint& d) { return leq_points(d.a, d.b) && d.a != d.b; }

/// Membership in Dgm': a_i < b_i on every axis.
inline bool is_restricted_dgm_point(const DgmPoint& d) {
  require_same_dim(d.a.size(), d.b.size(), "is_restricted_dgm_point");
  for (std::size_t i = 0; i < d.a.size(); ++i)
    if (!(d.a[i] < d.b[i])) return false;
  return true;
}

/// Order on Dgm_P inherited from P^op x P.
inline bool dgm_leq(const DgmPoint& x, const DgmPoint& y) {
  return leq_points(y.a, x.a) && leq_points(x.b, y.b);
}

/// Translation by a non-negative shift vector.
class Translation {
 public:
  explicit Translation(std::vector<Rational> shift) : shift_(std::move(shift)) {
    for (const auto& s : shift_)
      if (s < 0) throw std::invalid_argument("Translation: negative shift component");
  }
  static Translation identity(std::size_t dim) { return Translation(std::vector<Rational>(dim)); }
  static Translation uniform(std::size_t dim, const Rational& s) {
    return Translation(std::vector<Rational>(dim, s));
  }

  const std::vector<Rational>& shift() const { return shift_; }
  std::size_t dim() const { return shift_.size(); }

  Point apply(const Point& p) const {
    require_same_dim(dim(), p.size(), "translate");
    Point q(p);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += shift_[i];
    return q;
  }
  Point apply_inverse(const Point& p) const {
    require_same_dim(dim(), p.size(), "translate_inverse");
    Point q(p);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= shift_[i];
    return q;
  }

  friend bool operator==(const Translation&, const Translation&) = default;

 private:
  std::vector<Rational> shift_;
};

inline Point translate(const Translation& t, const Point& p) { return t.apply(p); }
inline Point translate_inverse(const Translation& t, const Point& p) { return t.apply_inverse(p); }

inline Translation compose_translations(const Translation& g, const Translation& k) {
  require_same_dim(g.dim(), k.dim(), "compose_translations");
  std::vector<Rational> s(g.shift());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] += k.shift()[i];
  return Translation(std::move(s));
}

/// Pointwise order of translations: G <= K iff G(p) <= K(p) for every p.
inline bool translation_leq(const Translation& g, const Translation& k) {
  return leq_points(g.shift(), k.shift());
}

enum class FamilyKind { Linear, FloorShift };

/// eps -> Omega_eps. Linear shifts by (eps,...,eps) on R^n; FloorShift shifts
/// by floor(eps) on Z^n.
class SuperlinearFamily {
 public:
  SuperlinearFamily(FamilyKind kind, std::size_t dim) : kind_(kind), dim_(dim) {
    if (dim == 0) throw std::invalid_argument("SuperlinearFamily: dim must be >= 1");
  }
  static SuperlinearFamily linear(std::size_t dim) { return {FamilyKind::Linear, dim}; }
  static SuperlinearFamily floor_shift(std::size_t dim) { return {FamilyKind::FloorShift, dim}; }

  FamilyKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  bool acts_on_lattice() const { return kind_ == FamilyKind::FloorShift; }

  Translation at(const Rational& eps) const {
    if (eps < 0) throw std::invalid_argument("family_at: negative epsilon");
    if (kind_ == FamilyKind::Linear) return Translation::uniform(dim_, eps);
    return Translation::uniform(dim_, Rational(floor_of(eps)));
  }

  friend bool operator==(const SuperlinearFamily&, const SuperlinearFamily&) = default;

 private:
  FamilyKind kind_;
  std::size_t dim_;
};

inline Translation family_at(const SuperlinearFamily& family, const Rational& eps) {
  return family.at(eps);
}

enum class ProjectionKind { MaxShift, AdjointOf };

/// Gamma -> omega_Gamma in [0, inf].
///
/// MaxShift evaluates scale * max_i shift_i (scale 1 unless a scaled variant is
/// requested). AdjointOf(Omega) evaluates min{eps : Gamma <= Omega_eps}, which
/// exists for both supported family kinds.
class SublinearProjection {
 public:
  static SublinearProjection max_shift(Rational scale = 1) {
    if (scale <= 0) throw std::invalid_argument("SublinearProjection: scale must be positive");
    SublinearProjection p;
    p.kind_ = ProjectionKind::MaxShift;
    p.scale_ = std::move(scale);
    return p;
  }
  static SublinearProjection adjoint_of(const SuperlinearFamily& family) {
    SublinearProjection p;
    p.kind_ = ProjectionKind::AdjointOf;
    p.family_ = family;
    return p;
  }

  ProjectionKind kind() const { return kind_; }
  const std::optional<SuperlinearFamily>& family() const { return family_; }
  const Rational& scale() const { return scale_; }

  /// True when the projection is tied to the integer lattice.
  bool acts_on_lattice() const { return family_ && family_->acts_on_lattice(); }

  Extended value(const Translation& t) const {
    Rational m = 0;
    for (const auto& s : t.shift()) m = std::max(m, s);
    if (kind_ == ProjectionKind::MaxShift) return Extended(scale_ * m);
    if (family_->dim() != t.dim())
      throw std::invalid_argument("projection_value: dimension mismatch");
    switch (family_->kind()) {
      case FamilyKind::Linear:
        return Extended(m);  // shift <= (eps,...,eps) iff max <= eps
      case FamilyKind::FloorShift:
        return Extended(Rational(ceil_of(m)));  // max <= floor(eps) iff ceil(max) <= eps
    }
    return Extended::infinity();
  }

 private:
  SublinearProjection() = default;
  ProjectionKind kind_ = ProjectionKind::MaxShift;
  Rational scale_ = 1;
  std::optional<SuperlinearFamily> family_;
};

inline Extended projection_value(const SublinearProjection& w, const Translation& t) {
  return w.value(t);
}

/// The unique projection adjoint to `family`; MaxShift for the linear family.
inline SublinearProjection derive_adjoint_projection(const SuperlinearFamily& family) {
  if (family.kind() == FamilyKind::Linear) return SublinearProjection::max_shift();
  return SublinearProjection::adjoint_of(family);
}

struct AdjunctionSample {
  Translation translation;
  Rational epsilon;
};

/// First sample violating omega_G <= eps <=> G <= Omega_eps, if any.
inline std::optional<AdjunctionSample> find_adjunction_violation(
    const SublinearProjection& w, const SuperlinearFamily& family,
    std::span<const AdjunctionSample> samples) {
  for (const auto& s : samples) {
    bool lhs = w.value(s.translation) <= Extended(s.epsilon);
    bool rhs = translation_leq(s.translation, family.at(s.epsilon));
    if (lhs != rhs) return s;
  }
  return std::nullopt;
}

inline bool check_adjunction(const SublinearProjection& w, const SuperlinearFamily& family,
                             std::span<const AdjunctionSample> samples) {
  return !find_adjunction_violation(w, family, samples).has_value();
}

}  // namespace erodist
