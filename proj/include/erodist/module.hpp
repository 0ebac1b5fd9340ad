#pragma once

// Functors from a finite embedded grid into Vect_p or Ab, stored as objects on
// grid points and matrices on cover edges, together with the step extension
// that lets them be evaluated anywhere in R^n.

#include "erodist/category.hpp"
#include "erodist/error.hpp"
#include "erodist/int_matrix.hpp"
#include "erodist/poset.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace erodist {

using GridIndex = std::vector<std::size_t>;

/// A cover edge p -> p + e_axis, addressed by the flat index of p.
struct Edge {
  std::size_t source = 0;
  std::size_t axis = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class PersistenceModule {
 public:
  /// `edges` is indexed by source * dim + axis; entries for edges that leave
  /// the grid are ignored. Shapes and torsion compatibility are checked here,
  /// functoriality is checked by validate_functoriality().
  PersistenceModule(GridPoset grid, Coefficients coeff, std::vector<CatObject> objects,
                    std::vector<IntMatrix> edges)
      : grid_(std::move(grid)), coeff_(coeff), objects_(std::move(objects)), edges_(std::move(edges)) {
    if (!grid_.is_embedded()) throw ValidationError("PersistenceModule: grid must be a finite embedded grid");
    const std::size_t n = grid_.num_points(), d = grid_.dim();
    if (objects_.size() != n) throw ValidationError("PersistenceModule: wrong number of objects");
    edges_.resize(n * d);
    for (std::size_t p = 0; p < n; ++p) {
      const CatObject& obj = objects_[p];
      bool ok = coeff_.is_field() ? std::holds_alternative<VectObj>(obj) &&
                                        std::get<VectObj>(obj).field == coeff_.p
                                  : std::holds_alternative<AbObj>(obj);
      if (!ok) throw ValidationError("PersistenceModule: object at " + point_name(p) + " does not match coefficients");
    }
    for (std::size_t p = 0; p < n; ++p) {
      GridIndex idx = grid_.multi_index(p);
      for (std::size_t axis = 0; axis < d; ++axis) {
        IntMatrix& m = edges_[p * d + axis];
        if (idx[axis] + 1 >= grid_.axis(axis).size()) {
          m = IntMatrix();
          continue;
        }
        const std::size_t q = p + grid_.stride(axis);
        const std::size_t rows = num_generators(objects_[q]), cols = num_generators(objects_[p]);
        if (m.rows() == 0 && m.cols() == 0 && (rows == 0 || cols == 0)) m = IntMatrix(rows, cols);
        try {
          validate_morphism(m, objects_[p], objects_[q]);
        } catch (const ValidationError& e) {
          throw ValidationError("edge " + point_name(p) + " -> " + point_name(q) + ": " + e.what());
        }
        m = normalize(m, objects_[q]);
      }
    }
  }

  const GridPoset& grid() const { return grid_; }
  const Coefficients& coefficients() const { return coeff_; }
  std::size_t dim() const { return grid_.dim(); }
  std::size_t num_points() const { return objects_.size(); }
  const CatObject& object(std::size_t flat) const { return objects_.at(flat); }
  const std::vector<CatObject>& objects() const { return objects_; }

  bool has_edge(std::size_t source, std::size_t axis) const {
    return grid_.multi_index(source)[axis] + 1 < grid_.axis(axis).size();
  }
  const IntMatrix& edge(std::size_t source, std::size_t axis) const {
    if (!has_edge(source, axis)) throw std::out_of_range("edge leaves the grid");
    return edges_[source * dim() + axis];
  }

  std::string point_name(std::size_t flat) const {
    GridIndex idx = grid_.multi_index(flat);
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << format_rational(grid_.axis(i)[idx[i]]);
    os << ')';
    return os.str();
  }

  /// Reduces entries modulo p (fields) or modulo the torsion orders of the
  /// target rows (abelian groups); morphisms are equal iff their normal forms are.
  IntMatrix normalize(IntMatrix m, const CatObject& target) const {
    if (coeff_.is_field()) return m.mod(coeff_.p);
    const auto& b = std::get<AbObj>(target);
    for (std::size_t i = b.free_rank; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const Integer& t = b.torsion[i - b.free_rank];
        m(i, j) %= t;
        if (m(i, j) < 0) m(i, j) += t;
      }
    return m;
  }

  /// F(p <= q) for flat indices, composed along the staircase path that
  /// exhausts axis 0 first.
  IntMatrix transition_matrix(std::size_t p, std::size_t q) const {
    GridIndex from = grid_.multi_index(p), to = grid_.multi_index(q);
    for (std::size_t i = 0; i < from.size(); ++i)
      if (from[i] > to[i]) throw std::invalid_argument("transition_matrix: source is not below target");
    IntMatrix acc = IntMatrix::identity(num_generators(objects_[p]));
    std::size_t cur = p;
    for (std::size_t axis = 0; axis < dim(); ++axis)
      for (std::size_t k = from[axis]; k < to[axis]; ++k) {
        std::size_t next = cur + grid_.stride(axis);
        acc = normalize(edge(cur, axis) * acc, objects_[next]);
        cur = next;
      }
    return acc;
  }

 private:
  GridPoset grid_;
  Coefficients coeff_;
  std::vector<CatObject> objects_;
  std::vector<IntMatrix> edges_;
};

/// Largest grid index <= x on every axis, saturating above; nullopt is the
/// Bottom sentinel for points below the grid on some axis.
inline std::optional<GridIndex> step_lookup(const GridPoset& grid, const Point& x) {
  require_same_dim(grid.dim(), x.size(), "step_lookup");
  GridIndex idx(grid.dim());
  for (std::size_t i = 0; i < grid.dim(); ++i) {
    const auto& axis = grid.axis(i);
    auto it = std::upper_bound(axis.begin(), axis.end(), x[i]);
    if (it == axis.begin()) return std::nullopt;
    idx[i] = static_cast<std::size_t>(it - axis.begin()) - 1;
  }
  return idx;
}

inline std::optional<GridIndex> step_lookup(const PersistenceModule& m, const Point& x) {
  return step_lookup(m.grid(), x);
}

struct SquareViolation {
  std::size_t corner = 0;  // flat index of the lower corner
  std::size_t axis_i = 0;
  std::size_t axis_j = 0;
  std::string message;
};

/// Checks that every elementary square of cover edges commutes.
inline std::optional<SquareViolation> validate_functoriality(const PersistenceModule& m) {
  const auto& grid = m.grid();
  for (std::size_t p = 0; p < m.num_points(); ++p) {
    GridIndex idx = grid.multi_index(p);
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = i + 1; j < m.dim(); ++j) {
        if (!m.has_edge(p, i) || !m.has_edge(p, j)) continue;
        const std::size_t pi = p + grid.stride(i), pj = p + grid.stride(j);
        const std::size_t top = pi + grid.stride(j);
        IntMatrix via_i = m.normalize(m.edge(pi, j) * m.edge(p, i), m.object(top));
        IntMatrix via_j = m.normalize(m.edge(pj, i) * m.edge(p, j), m.object(top));
        if (via_i != via_j)
          return SquareViolation{p, i, j,
                                 "square at " + m.point_name(p) + " along axes " + std::to_string(i) +
                                     "," + std::to_string(j) + " does not commute"};
      }
  }
  return std::nullopt;
}

inline void require_functorial(const PersistenceModule& m) {
  if (auto v = validate_functoriality(m)) throw ValidationError(v->message);
}

/// F(a <= b) evaluated through the step extension. A Bottom source yields the
/// 0 x k zero map.
inline IntMatrix transition_map(const PersistenceModule& m, const Point& a, const Point& b) {
  if (!leq_points(a, b)) throw std::invalid_argument("transition_map: a is not <= b");
  auto ia = step_lookup(m, a);
  auto ib = step_lookup(m, b);
  if (!ib) return IntMatrix(0, 0);
  const std::size_t q = m.grid().flat_index(*ib);
  if (!ia) return IntMatrix(num_generators(m.object(q)), 0);
  return m.transition_matrix(m.grid().flat_index(*ia), q);
}

/// im F(a < b), with the zero object when a falls below the grid.
inline CatObject rank_invariant_at(const PersistenceModule& m, const DgmPoint& d) {
  if (!is_dgm_point(d)) throw std::invalid_argument("rank_invariant_at: need a < b");
  auto ia = step_lookup(m, d.a);
  if (!ia) return m.coefficients().zero_object();
  auto ib = step_lookup(m, d.b);
  const std::size_t p = m.grid().flat_index(*ia), q = m.grid().flat_index(*ib);
  return image_object(m.transition_matrix(p, q), m.object(p), m.object(q));
}

}  // namespace erodist
