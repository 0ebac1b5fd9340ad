#pragma once

// Simplicial complexes, their homology over Z and F_p, sublevel-set modules of
// R^n-valued vertex functions, the level-set invariant of a real function on a
// finite set, and the brute-force natural pseudo-distance on discrete spaces.

#include "erodist/category.hpp"
#include "erodist/erosion.hpp"
#include "erodist/error.hpp"
#include "erodist/int_matrix.hpp"
#include "erodist/module.hpp"
#include "erodist/poset.hpp"
#include "erodist/quotient.hpp"
#include "erodist/smith.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace erodist {

/// Sorted vertex ids.
using Simplex = std::vector<std::size_t>;

class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// `simplices` must be closed under taking faces.
  explicit SimplicialComplex(std::vector<Simplex> simplices) {
    for (auto& s : simplices) {
      if (s.empty()) throw ValidationError("SimplicialComplex: empty simplex");
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw ValidationError("SimplicialComplex: repeated vertex in simplex");
      const std::size_t k = s.size() - 1;
      if (by_dim_.size() <= k) by_dim_.resize(k + 1);
      by_dim_[k].push_back(std::move(s));
    }
    for (auto& level : by_dim_) {
      std::sort(level.begin(), level.end());
      level.erase(std::unique(level.begin(), level.end()), level.end());
    }
    for (std::size_t k = 1; k < by_dim_.size(); ++k)
      for (const auto& s : by_dim_[k])
        for (std::size_t drop = 0; drop < s.size(); ++drop)
          if (!contains(face(s, drop)))
            throw ValidationError("SimplicialComplex: face of " + name(s) + " missing");
  }

  /// Smallest complex containing the given simplices.
  static SimplicialComplex closure(const std::vector<Simplex>& generators) {
    std::vector<Simplex> all;
    for (Simplex s : generators) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      const std::size_t n = s.size();
      if (n == 0 || n > 20) throw ValidationError("SimplicialComplex: simplex size out of range");
      for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        Simplex f;
        for (std::size_t i = 0; i < n; ++i)
          if (mask & (std::size_t{1} << i)) f.push_back(s[i]);
        all.push_back(std::move(f));
      }
    }
    return SimplicialComplex(std::move(all));
  }

  static SimplicialComplex discrete(std::size_t n) {
    std::vector<Simplex> pts;
    for (std::size_t v = 0; v < n; ++v) pts.push_back({v});
    return SimplicialComplex(std::move(pts));
  }

  /// Highest simplex dimension, or -1 for the empty complex.
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t count(std::size_t k) const { return k < by_dim_.size() ? by_dim_[k].size() : 0; }
  const std::vector<Simplex>& simplices(std::size_t k) const {
    static const std::vector<Simplex> none;
    return k < by_dim_.size() ? by_dim_[k] : none;
  }
  std::vector<std::size_t> vertices() const {
    std::vector<std::size_t> v;
    for (const auto& s : simplices(0)) v.push_back(s[0]);
    return v;
  }
  bool is_discrete() const { return dimension() <= 0; }

  std::optional<std::size_t> index_of(const Simplex& s) const {
    if (s.empty() || s.size() > by_dim_.size()) return std::nullopt;
    const auto& level = by_dim_[s.size() - 1];
    auto it = std::lower_bound(level.begin(), level.end(), s);
    if (it == level.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - level.begin());
  }
  bool contains(const Simplex& s) const { return index_of(s).has_value(); }

  bool is_subcomplex_of(const SimplicialComplex& other) const {
    for (const auto& level : by_dim_)
      for (const auto& s : level)
        if (!other.contains(s)) return false;
    return true;
  }

  /// d_k : C_k -> C_{k-1} with the alternating-sign convention. d_0 is 0 x n_0.
  IntMatrix boundary(std::size_t k) const {
    if (k == 0) return IntMatrix(0, count(0));
    IntMatrix d(count(k - 1), count(k));
    const auto& level = simplices(k);
    for (std::size_t j = 0; j < level.size(); ++j)
      for (std::size_t drop = 0; drop <= k; ++drop)
        d(*index_of(face(level[j], drop)), j) = drop % 2 == 0 ? 1 : -1;
    return d;
  }

  /// The full subcomplex on the vertices accepted by `keep`.
  template <class Pred>
  SimplicialComplex full_subcomplex(Pred keep) const {
    SimplicialComplex sub;
    for (std::size_t k = 0; k < by_dim_.size(); ++k)
      for (const auto& s : by_dim_[k])
        if (std::all_of(s.begin(), s.end(), keep)) {
          if (sub.by_dim_.size() <= k) sub.by_dim_.resize(k + 1);
          sub.by_dim_[k].push_back(s);
        }
    return sub;
  }

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

 private:
  static Simplex face(const Simplex& s, std::size_t drop) {
    Simplex f;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (i != drop) f.push_back(s[i]);
    return f;
  }
  static std::string name(const Simplex& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
  }

  std::vector<std::vector<Simplex>> by_dim_;
};

/// A finite space with an R^n-valued function given on its vertices.
struct SizePair {
  SimplicialComplex space;
  std::vector<Point> values;  // values[v] for every vertex id v

  std::size_t dim() const { return values.empty() ? 0 : values.front().size(); }
  void validate() const {
    for (const auto& v : values)
      if (v.size() != dim()) throw ValidationError("SizePair: values have mixed dimensions");
    for (auto v : space.vertices())
      if (v >= values.size()) throw ValidationError("SizePair: vertex " + std::to_string(v) + " has no value");
  }
};

/// Full subcomplex on vertices with phi(v) <= a, i.e. the lower-star sublevel set.
inline SimplicialComplex sublevel_complex(const SimplicialComplex& k, std::span<const Point> phi, const Point& a) {
  return k.full_subcomplex([&](std::size_t v) {
    if (v >= phi.size()) throw ValidationError("sublevel_complex: vertex " + std::to_string(v) + " has no value");
    return leq_points(phi[v], a);
  });
}

namespace detail {

// Basis of ker(A) over F_p: one vector per free column of the reduced row
// echelon form, with a 1 at that column and 0 at the other free columns.
struct ModPKernel {
  std::vector<std::size_t> free_cols;
  std::vector<std::vector<Integer>> basis;
};

inline ModPKernel kernel_mod_p(const IntMatrix& a, std::int64_t p) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix r = a.mod(p);
  auto inv = [p](Integer x) {
    Integer res = 1, e = p - 2;
    x %= p;
    while (e > 0) {
      if ((e & 1) != 0) res = (res * x) % p;
      x = (x * x) % p;
      e >>= 1;
    }
    return res;
  };
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = row;
    while (piv < m && r(piv, col) == 0) ++piv;
    if (piv == m) continue;
    r.swap_rows(piv, row);
    Integer s = inv(r(row, col));
    for (std::size_t j = 0; j < n; ++j) r(row, j) = (r(row, j) * s) % p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || r(i, col) == 0) continue;
      Integer c = r(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        r(i, j) = (r(i, j) - c * r(row, j)) % p;
        if (r(i, j) < 0) r(i, j) += p;
      }
    }
    pivot_cols.push_back(col);
    ++row;
  }
  ModPKernel k;
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Integer> v(n);
    v[c] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
      Integer x = (-r(i, c)) % p;
      if (x < 0) x += p;
      v[pivot_cols[i]] = x;
    }
    k.free_cols.push_back(c);
    k.basis.push_back(std::move(v));
  }
  return k;
}

}  // namespace detail

/// H_k of a complex with the chosen coefficients, as a canonical object plus
/// one integer cycle representative per canonical generator.
class Homology {
 public:
  Homology(const SimplicialComplex& complex, std::size_t k, Coefficients coeff)
      : coeff_(coeff), chain_dim_(complex.count(k)) {
    const IntMatrix dk = complex.boundary(k);
    const IntMatrix dk1 = complex.boundary(k + 1);
    if (coeff.is_field()) {
      auto ker = detail::kernel_mod_p(dk, coeff.p);
      free_cols_ = ker.free_cols;
      cycles_ = IntMatrix::from_columns(chain_dim_, ker.basis);
    } else {
      cycles_ = integer_kernel_basis(dk);
      cycle_snf_ = snf(cycles_);
    }
    IntMatrix rel(cycles_.cols(), dk1.cols());
    for (std::size_t j = 0; j < dk1.cols(); ++j) {
      std::vector<Integer> y = cycle_coordinates(dk1.column(j));
      for (std::size_t i = 0; i < y.size(); ++i) rel(i, j) = y[i];
    }
    quotient_.emplace(rel, coeff);
  }

  const CatObject& object() const { return quotient_->object(); }
  std::size_t num_generators() const { return quotient_->num_generators(); }
  std::size_t chain_dim() const { return chain_dim_; }

  /// Integer cycle representing canonical generator g.
  std::vector<Integer> representative(std::size_t g) const { return cycles_ * quotient_->section(g); }

  /// Canonical coordinates of the class of cycle z.
  std::vector<Integer> coordinates(const std::vector<Integer>& z) const {
    return quotient_->coordinates(cycle_coordinates(z));
  }

 private:
  std::vector<Integer> cycle_coordinates(const std::vector<Integer>& z) const {
    if (coeff_.is_field()) {
      std::vector<Integer> y(free_cols_.size());
      for (std::size_t i = 0; i < free_cols_.size(); ++i) {
        y[i] = z[free_cols_[i]] % coeff_.p;
        if (y[i] < 0) y[i] += coeff_.p;
      }
      return y;
    }
    auto y = solve_integer(cycle_snf_, z);
    if (!y) throw std::logic_error("Homology: chain is not a cycle");
    return *y;
  }

  Coefficients coeff_;
  std::size_t chain_dim_;
  IntMatrix cycles_;
  std::vector<std::size_t> free_cols_;
  SmithForm cycle_snf_;
  std::optional<Quotient> quotient_;
};

inline CatObject homology(const SimplicialComplex& complex, std::size_t k, Coefficients coeff) {
  return Homology(complex, k, coeff).object();
}

/// Matrix of H_k(sub) -> H_k(super) induced by inclusion, given both homologies.
inline IntMatrix induced_homology_map(const SimplicialComplex& sub, const Homology& hsub,
                                      const SimplicialComplex& super, const Homology& hsuper, std::size_t k) {
  IntMatrix m(hsuper.num_generators(), hsub.num_generators());
  const auto& simplices = sub.simplices(k);
  for (std::size_t g = 0; g < hsub.num_generators(); ++g) {
    std::vector<Integer> z = hsub.representative(g);
    std::vector<Integer> w(super.count(k));
    for (std::size_t j = 0; j < simplices.size(); ++j) {
      auto idx = super.index_of(simplices[j]);
      if (!idx) throw std::invalid_argument("induced_homology_map: not a subcomplex");
      w[*idx] = z[j];
    }
    std::vector<Integer> c = hsuper.coordinates(w);
    for (std::size_t i = 0; i < c.size(); ++i) m(i, g) = c[i];
  }
  return m;
}

inline IntMatrix induced_homology_map(const SimplicialComplex& sub, const SimplicialComplex& super, std::size_t k,
                                      Coefficients coeff) {
  if (!sub.is_subcomplex_of(super)) throw std::invalid_argument("induced_homology_map: not a subcomplex");
  return induced_homology_map(sub, Homology(sub, k, coeff), super, Homology(super, k, coeff), k);
}

/// Axes made of the distinct values of phi on each coordinate.
inline GridPoset critical_grid(const SizePair& s) {
  s.validate();
  const std::size_t n = std::max<std::size_t>(s.dim(), 1);
  std::vector<std::vector<Rational>> axes(n);
  for (auto v : s.space.vertices())
    for (std::size_t i = 0; i < n; ++i) axes[i].push_back(s.values[v][i]);
  for (auto& axis : axes) {
    axis = sorted_unique(std::move(axis));
    if (axis.empty()) axis.push_back(0);
  }
  return GridPoset::embedded(std::move(axes));
}

/// H_k of the sublevel filtration sampled on `grid`. Every grid axis must start
/// at or below the smallest value of phi on that coordinate, so that the step
/// extension is zero exactly where the sublevel sets are empty.
inline PersistenceModule module_from_size_pair(const SizePair& s, const GridPoset& grid, std::size_t k,
                                               Coefficients coeff) {
  s.validate();
  if (!grid.is_embedded()) throw ValidationError("module_from_size_pair: grid must be embedded");
  require_same_dim(grid.dim(), s.dim(), "module_from_size_pair");
  for (auto v : s.space.vertices())
    for (std::size_t i = 0; i < grid.dim(); ++i)
      if (s.values[v][i] < grid.axis(i).front())
        throw ValidationError("module_from_size_pair: grid does not cover the value range");

  const std::size_t n = grid.num_points();
  std::vector<SimplicialComplex> levels;
  std::vector<Homology> groups;
  std::vector<CatObject> objects;
  levels.reserve(n);
  groups.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    levels.push_back(sublevel_complex(s.space, s.values, grid.coords(grid.multi_index(p))));
    groups.emplace_back(levels.back(), k, coeff);
    objects.push_back(groups.back().object());
  }
  std::vector<IntMatrix> edges(n * grid.dim());
  for (std::size_t p = 0; p < n; ++p) {
    GridIndex idx = grid.multi_index(p);
    for (std::size_t axis = 0; axis < grid.dim(); ++axis) {
      if (idx[axis] + 1 >= grid.axis(axis).size()) continue;
      const std::size_t q = p + grid.stride(axis);
      edges[p * grid.dim() + axis] = induced_homology_map(levels[p], groups[p], levels[q], groups[q], k);
    }
  }
  PersistenceModule m(grid, coeff, std::move(objects), std::move(edges));
  require_functorial(m);
  return m;
}

inline PersistenceModule module_from_size_pair(const SizePair& s, std::size_t k, Coefficients coeff) {
  return module_from_size_pair(s, critical_grid(s), k, coeff);
}

/// (a, b) -> f^{-1}([a, b]) for f : X -> R on a finite set, valued in sets
/// ordered by reverse inclusion.
class LevelSetInvariant {
 public:
  explicit LevelSetInvariant(std::vector<Rational> values) : values_(std::move(values)) {
    levels_ = sorted_unique(values_);
    const std::size_t m = levels_.size();
    classes_.reserve((m + 1) * (m + 1));
    for (std::size_t lo = 0; lo <= m; ++lo)
      for (std::size_t hi = 0; hi <= m; ++hi) {
        std::vector<std::size_t> members;
        for (std::size_t x = 0; x < values_.size(); ++x) {
          auto lvl = static_cast<std::size_t>(std::lower_bound(levels_.begin(), levels_.end(), values_[x]) -
                                              levels_.begin());
          if (lvl >= lo && lvl < hi) members.push_back(x);
        }
        classes_.push_back(make_set(std::move(members)));
      }
  }

  std::size_t size() const { return values_.size(); }
  const std::vector<Rational>& values() const { return values_; }
  std::size_t dim() const { return 1; }
  const std::vector<Rational>& breakpoints(std::size_t) const { return levels_; }
  /// Number of levels strictly below a.
  int lower_cell(std::size_t, const Rational& a) const {
    return static_cast<int>(std::lower_bound(levels_.begin(), levels_.end(), a) - levels_.begin());
  }
  /// Number of levels at or below b.
  int upper_cell(std::size_t, const Rational& b) const {
    return static_cast<int>(std::upper_bound(levels_.begin(), levels_.end(), b) - levels_.begin());
  }
  int value_class(std::span<const int> lo, std::span<const int> hi) const {
    return lo[0] * static_cast<int>(levels_.size() + 1) + hi[0];
  }
  std::size_t num_classes() const { return classes_.size(); }
  const CatObject& class_object(int id) const { return classes_.at(static_cast<std::size_t>(id)); }
  /// All of X, the least element under reverse inclusion.
  int least_class() const { return static_cast<int>(levels_.size()); }

  CatObject evaluate(const Rational& a, const Rational& b) const {
    return class_object(value_class(std::vector<int>{lower_cell(0, a)}, std::vector<int>{upper_cell(0, b)}));
  }

 private:
  std::vector<Rational> values_;
  std::vector<Rational> levels_;
  std::vector<CatObject> classes_;
};

inline ErosionReport levelset_erosion(const LevelSetInvariant& f, const LevelSetInvariant& g) {
  if (f.size() != g.size()) throw std::invalid_argument("levelset_invariant_distance: domain mismatch");
  return erosion_distance_family(f, g, SuperlinearFamily::linear(1));
}

/// Erosion distance of the two level-set invariants under the linear family.
inline Extended levelset_invariant_distance(const LevelSetInvariant& f, const LevelSetInvariant& g) {
  return levelset_erosion(f, g).distance;
}

inline Rational linf_distance(std::span<const Rational> f, std::span<const Rational> g) {
  if (f.size() != g.size()) throw std::invalid_argument("linf_distance: domain mismatch");
  Rational best = 0;
  for (std::size_t i = 0; i < f.size(); ++i) best = std::max(best, f[i] > g[i] ? f[i] - g[i] : g[i] - f[i]);
  return best;
}

inline constexpr std::size_t npd_size_cap = 8;

/// min over bijections h of max_x |phi(x) - psi(h(x))|_inf for size pairs on
/// finite discrete spaces; +inf when the spaces have different sizes.
inline Extended npd_bruteforce(const SizePair& s1, const SizePair& s2) {
  s1.validate();
  s2.validate();
  if (!s1.space.is_discrete() || !s2.space.is_discrete())
    throw std::invalid_argument("npd_bruteforce: only finite discrete spaces are supported");
  const auto xs = s1.space.vertices(), ys = s2.space.vertices();
  if (xs.size() > npd_size_cap || ys.size() > npd_size_cap)
    throw std::length_error("npd_bruteforce: more than " + std::to_string(npd_size_cap) + " points");
  if (xs.size() != ys.size()) return Extended::infinity();
  if (!xs.empty() && !ys.empty()) require_same_dim(s1.dim(), s2.dim(), "npd_bruteforce");
  std::vector<std::size_t> perm(ys.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<Rational> best;
  do {
    Rational cost = 0;
    for (std::size_t i = 0; i < xs.size() && (!best || cost < *best); ++i)
      cost = std::max(cost, linf_distance(s1.values[xs[i]], s2.values[ys[perm[i]]]));
    if (!best || cost < *best) best = cost;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Extended(*best);
}

}  // namespace erodist
