#pragma once

// One-parameter constructible modules over a field: the rank function
// evaluated just left of b, its Moebius inversion (the type-B diagram),
// erosion between diagrams, and barcodes with the bottleneck distance.

#include "erodist/category.hpp"
#include "erodist/erosion.hpp"
#include "erodist/error.hpp"
#include "erodist/module.hpp"
#include "erodist/rank_invariant.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace erodist {

/// A module R -> Vect_p constant on [s_k, s_{k+1}), zero before s_1, held as a
/// grid module on its critical values.
class ConstructibleModule {
 public:
  explicit ConstructibleModule(PersistenceModule m) : module_(std::move(m)) {
    if (module_.dim() != 1) throw ValidationError("ConstructibleModule: module must be one-dimensional");
    if (!module_.coefficients().is_field())
      throw ValidationError("ConstructibleModule: field coefficients required");
    const std::size_t n = module_.num_points();
    ranks_.assign(n * n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix t = IntMatrix::identity(num_generators(module_.object(j)));
      ranks_[j * n + j] = static_cast<long long>(num_generators(module_.object(j)));
      for (std::size_t l = j + 1; l < n; ++l) {
        t = module_.normalize(module_.edge(l - 1, 0) * t, module_.object(l));
        ranks_[j * n + l] = static_cast<long long>(rank_mod_p(t, module_.coefficients().p));
      }
    }
  }

  const PersistenceModule& module() const { return module_; }
  const std::vector<Rational>& critical_values() const { return module_.grid().axis(0); }
  std::size_t size() const { return module_.num_points(); }

  /// rank F(s_j <= s_l) for 1-based j <= l; 0 when j == 0 or l > m.
  long long rank(std::size_t j, std::size_t l) const {
    const std::size_t n = size();
    if (j == 0 || l > n || j > l) return 0;
    return ranks_[(j - 1) * n + (l - 1)];
  }

 private:
  PersistenceModule module_;
  std::vector<long long> ranks_;
};

/// dim im F(a < b - delta) for small delta > 0.
inline long long dgm_b_value(const ConstructibleModule& f, const DgmPoint& d) {
  if (d.a.size() != 1 || d.b.size() != 1) throw std::invalid_argument("dgm_b_value: one-dimensional points only");
  if (!(d.a[0] < d.b[0])) throw std::invalid_argument("dgm_b_value: need a < b");
  const auto& s = f.critical_values();
  const auto j = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), d.a[0]) - s.begin());
  const auto l = static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), d.b[0]) - s.begin());
  return f.rank(j, l);
}

/// Class in B(Vect) = Z.
struct GrothendieckClass {
  Integer value;
  friend bool operator==(const GrothendieckClass&, const GrothendieckClass&) = default;
};

inline bool preorder_leq(const GrothendieckClass& x, const GrothendieckClass& y) { return x.value <= y.value; }

struct DiagramPoint {
  Rational birth;
  Extended death;
  Integer multiplicity;
  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

/// Finitely supported Z-valued map on {(birth, death) : birth < death <= inf}.
///
/// Also a step-constant invariant: its value at (a, b) is the upper-set sum
/// over points with birth <= a and death >= b.
class TypeBDiagram {
 public:
  TypeBDiagram() { rebuild(); }
  explicit TypeBDiagram(std::vector<DiagramPoint> points) {
    std::map<std::pair<Rational, Extended>, Integer> merged;
    for (auto& p : points) {
      if (!(Extended(p.birth) < p.death)) throw ValidationError("TypeBDiagram: birth must be below death");
      merged[{p.birth, p.death}] += p.multiplicity;
    }
    for (auto& [key, mult] : merged)
      if (mult != 0) points_.push_back({key.first, key.second, mult});
    rebuild();
  }

  const std::vector<DiagramPoint>& points() const { return points_; }
  bool empty() const { return points_.empty(); }

  Integer upper_sum(const Rational& a, const Extended& b) const {
    Integer s = 0;
    for (const auto& p : points_)
      if (p.birth <= a && p.death >= b) s += p.multiplicity;
    return s;
  }

  std::size_t dim() const { return 1; }
  const std::vector<Rational>& breakpoints(std::size_t) const { return breaks_; }
  /// Number of distinct births <= a.
  int lower_cell(std::size_t, const Rational& a) const {
    return static_cast<int>(std::upper_bound(births_.begin(), births_.end(), a) - births_.begin());
  }
  /// Number of distinct finite deaths < b.
  int upper_cell(std::size_t, const Rational& b) const {
    return static_cast<int>(std::lower_bound(deaths_.begin(), deaths_.end(), b) - deaths_.begin());
  }
  int value_class(std::span<const int> lo, std::span<const int> hi) const {
    return lo[0] * static_cast<int>(deaths_.size() + 1) + hi[0];
  }
  std::size_t num_classes() const { return classes_.size(); }
  const GrothendieckClass& class_object(int id) const { return classes_.at(static_cast<std::size_t>(id)); }
  int least_class() const { return least_; }

  friend bool operator==(const TypeBDiagram& x, const TypeBDiagram& y) { return x.points_ == y.points_; }

 private:
  void rebuild() {
    births_.clear();
    deaths_.clear();
    for (const auto& p : points_) {
      births_.push_back(p.birth);
      if (p.death.is_finite()) deaths_.push_back(p.death.value());
    }
    births_ = sorted_unique(std::move(births_));
    deaths_ = sorted_unique(std::move(deaths_));
    std::vector<Rational> all(births_);
    all.insert(all.end(), deaths_.begin(), deaths_.end());
    breaks_ = sorted_unique(std::move(all));
    classes_.clear();
    for (std::size_t lo = 0; lo <= births_.size(); ++lo)
      for (std::size_t hi = 0; hi <= deaths_.size(); ++hi) {
        Integer s = 0;
        for (const auto& p : points_) {
          const auto bi = static_cast<std::size_t>(
              std::lower_bound(births_.begin(), births_.end(), p.birth) - births_.begin());
          const std::size_t di =
              p.death.is_infinite()
                  ? deaths_.size()
                  : static_cast<std::size_t>(std::lower_bound(deaths_.begin(), deaths_.end(), p.death.value()) -
                                             deaths_.begin());
          if (bi < lo && di >= hi) s += p.multiplicity;
        }
        classes_.push_back({s});
      }
    least_ = 0;
    for (std::size_t i = 1; i < classes_.size(); ++i)
      if (classes_[i].value < classes_[static_cast<std::size_t>(least_)].value) least_ = static_cast<int>(i);
  }

  std::vector<DiagramPoint> points_;
  std::vector<Rational> births_, deaths_, breaks_;
  std::vector<GrothendieckClass> classes_;
  int least_ = 0;
};

/// Moebius inversion on the critical grid s_1 < ... < s_m of a rank table
/// r(j, l), 1 <= j <= l <= m, where r(j, l) is the value on a in [s_j, s_{j+1}),
/// b in (s_l, s_{l+1}]. Mass at (s_j, s_{l+1}) (death +inf when l == m) is
/// r(j,l) - r(j-1,l) - r(j,l+1) + r(j-1,l+1).
inline TypeBDiagram mobius_invert(std::span<const Rational> critical,
                                  const std::function<Integer(std::size_t, std::size_t)>& rank_table) {
  const std::size_t m = critical.size();
  for (std::size_t i = 1; i < m; ++i)
    if (!(critical[i - 1] < critical[i])) throw ValidationError("mobius_invert: critical values must increase");
  auto r = [&](std::size_t j, std::size_t l) -> Integer {
    if (j == 0 || l > m) return 0;
    if (j > l) throw ValidationError("mobius_invert: rank table queried below the diagonal");
    return rank_table(j, l);
  };
  std::vector<DiagramPoint> pts;
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t l = j; l <= m; ++l) {
      Integer mass = r(j, l) - r(j - 1, l) - r(j, l + 1) + r(j - 1, l + 1);
      if (mass == 0) continue;
      Extended death = l == m ? Extended::infinity() : Extended(critical[l]);
      pts.push_back({critical[j - 1], death, mass});
    }
  return TypeBDiagram(std::move(pts));
}

inline TypeBDiagram mobius_invert(const ConstructibleModule& f) {
  return mobius_invert(f.critical_values(), [&](std::size_t j, std::size_t l) { return Integer(f.rank(j, l)); });
}

/// F <= G iff every upper-set sum of F is at most that of G.
inline bool diagram_leq(const TypeBDiagram& f, const TypeBDiagram& g) {
  return dominates(f, g, Translation::identity(1), Translation::identity(1)).holds;
}

inline ErosionReport diagram_erosion(const TypeBDiagram& f, const TypeBDiagram& g) {
  return erosion_distance_family(f, g, SuperlinearFamily::linear(1));
}

inline Extended diagram_erosion_distance(const TypeBDiagram& f, const TypeBDiagram& g) {
  return diagram_erosion(f, g).distance;
}

struct Bar {
  Rational birth;
  Extended death;
  friend bool operator==(const Bar&, const Bar&) = default;
  friend auto operator<=>(const Bar& x, const Bar& y) {
    if (x.birth != y.birth) return x.birth < y.birth ? std::strong_ordering::less : std::strong_ordering::greater;
    return x.death <=> y.death;
  }
};

/// Multiset of half-open intervals [birth, death), kept sorted.
using Barcode = std::vector<Bar>;

/// Interval multiplicities by inclusion-exclusion on ranks.
inline Barcode barcode_from_ranks(const ConstructibleModule& f) {
  const auto& s = f.critical_values();
  const std::size_t m = s.size();
  Barcode bars;
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t l = j; l <= m; ++l) {
      long long mult = f.rank(j, l) - f.rank(j - 1, l) - f.rank(j, l + 1) + f.rank(j - 1, l + 1);
      if (mult < 0) throw ValidationError("barcode_from_ranks: negative interval multiplicity");
      for (long long c = 0; c < mult; ++c) bars.push_back({s[j - 1], l == m ? Extended::infinity() : Extended(s[l])});
    }
  std::sort(bars.begin(), bars.end());
  return bars;
}

namespace detail {

inline Extended bar_cost(const Bar& x, const Bar& y) {
  Rational db = x.birth < y.birth ? Rational(y.birth - x.birth) : Rational(x.birth - y.birth);
  if (x.death.is_infinite() || y.death.is_infinite()) {
    if (x.death.is_infinite() && y.death.is_infinite()) return db;
    return Extended::infinity();
  }
  const Rational& dx = x.death.value();
  const Rational& dy = y.death.value();
  return std::max(db, dx < dy ? Rational(dy - dx) : Rational(dx - dy));
}

inline Extended diagonal_cost(const Bar& x) {
  if (x.death.is_infinite()) return Extended::infinity();
  return Extended((x.death.value() - x.birth) / 2);
}

inline bool has_perfect_matching(const std::vector<std::vector<int>>& adj, std::size_t right) {
  std::vector<int> match(right, -1);
  std::function<bool(int, std::vector<char>&)> augment = [&](int u, std::vector<char>& seen) {
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = 1;
      int& w = match[static_cast<std::size_t>(v)];
      if (w < 0 || augment(w, seen)) {
        w = u;
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < adj.size(); ++u) {
    std::vector<char> seen(right, 0);
    if (!augment(static_cast<int>(u), seen)) return false;
  }
  return true;
}

}  // namespace detail

/// Bottleneck distance: the least candidate cost t at which the bars (plus
/// diagonal copies) admit a perfect matching with every edge of cost <= t.
inline Extended bottleneck(const Barcode& x, const Barcode& y) {
  const std::size_t n = x.size(), m = y.size();
  std::vector<Rational> costs{Rational(0)};
  auto note = [&](const Extended& e) {
    if (e.is_finite()) costs.push_back(e.value());
  };
  for (const auto& a : x) {
    note(detail::diagonal_cost(a));
    for (const auto& b : y) note(detail::bar_cost(a, b));
  }
  for (const auto& b : y) note(detail::diagonal_cost(b));
  costs = sorted_unique(std::move(costs));

  // Left: bars of x, then diagonal slots for bars of y. Right: bars of y, then
  // diagonal slots for bars of x.
  auto feasible = [&](const Rational& t) {
    std::vector<std::vector<int>> adj(n + m);
    const Extended et(t);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j)
        if (detail::bar_cost(x[i], y[j]) <= et) adj[i].push_back(static_cast<int>(j));
      if (detail::diagonal_cost(x[i]) <= et) adj[i].push_back(static_cast<int>(m + i));
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (detail::diagonal_cost(y[j]) <= et) adj[n + j].push_back(static_cast<int>(j));
      for (std::size_t i = 0; i < n; ++i) adj[n + j].push_back(static_cast<int>(m + i));
    }
    return detail::has_perfect_matching(adj, n + m);
  };
  std::size_t lo = 0, hi = costs.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (feasible(costs[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  if (lo == costs.size()) return Extended::infinity();
  return costs[lo];
}

/// Interleaving distance of two constructible modules via their barcodes.
inline Extended interleaving_distance_1d(const ConstructibleModule& f, const ConstructibleModule& g) {
  return bottleneck(barcode_from_ranks(f), barcode_from_ranks(g));
}

}  // namespace erodist
