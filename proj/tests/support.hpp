#pragma once

// Builders and hand-rolled generators shared by the test binaries.

#include "erodist/erodist.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace erodist::testing {

inline Rational q(long long num, long long den = 1) { return Rational(num, den); }

inline Point pt(std::initializer_list<long long> xs) {
  Point p;
  for (long long x : xs) p.emplace_back(x);
  return p;
}

inline DgmPoint dp(std::initializer_list<long long> a, std::initializer_list<long long> b) {
  return DgmPoint{pt(a), pt(b)};
}

/// k[s, t) over F_p on the grid {s, t}.
inline PersistenceModule interval_module(long long s, long long t, std::int64_t p = 2, std::size_t mult = 1) {
  auto grid = GridPoset::embedded({{q(s), q(t)}});
  return PersistenceModule(grid, Coefficients::field(p), {VectObj{mult, p}, VectObj{0, p}}, {});
}

/// k[s, inf) over F_p on the single-point grid {s}.
inline PersistenceModule ray_module(long long s, std::int64_t p = 2) {
  return PersistenceModule(GridPoset::embedded({{q(s)}}), Coefficients::field(p), {VectObj{1, p}}, {});
}

/// One-dimensional field module from dimensions and consecutive edge matrices.
inline PersistenceModule line_module(std::vector<long long> coords, std::vector<std::size_t> dims,
                                     std::vector<IntMatrix> edges, std::int64_t p = 2) {
  std::vector<Rational> axis;
  for (long long c : coords) axis.emplace_back(c);
  std::vector<CatObject> objs;
  for (auto d : dims) objs.push_back(VectObj{d, p});
  edges.resize(coords.size());
  return PersistenceModule(GridPoset::embedded({axis}), Coefficients::field(p), objs, edges);
}

inline ModuleShape shape(std::size_t dim, Coefficients coeff, std::size_t axis_len = 4, long long hi = 10,
                         std::size_t gens = 3) {
  ModuleShape s;
  s.dim = dim;
  s.max_axis_len = axis_len;
  s.coord_lo = 0;
  s.coord_hi = hi;
  s.max_generators = gens;
  s.max_relations = gens;
  s.coefficients = coeff;
  return s;
}

inline AbObj random_ab(Rng& rng, std::size_t max_free = 2, std::size_t max_torsion = 2) {
  AbObj a;
  a.free_rank = static_cast<std::size_t>(rng.range(0, static_cast<long long>(max_free)));
  const std::size_t k = static_cast<std::size_t>(rng.range(0, static_cast<long long>(max_torsion)));
  static const long long starts[] = {2, 3, 4, 6};
  Integer t = starts[rng.range(0, 3)];
  for (std::size_t i = 0; i < k; ++i) {
    a.torsion.push_back(t);
    t *= rng.range(1, 3);
  }
  return a;
}

/// A random valid homomorphism between canonical presentations.
inline IntMatrix random_ab_morphism(Rng& rng, const AbObj& a, const AbObj& b, long long max_entry = 3) {
  const std::size_t rows = b.free_rank + b.torsion.size(), cols = a.free_rank + a.torsion.size();
  IntMatrix f(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) {
      Integer v = rng.range(-max_entry, max_entry);
      if (j >= a.free_rank) {
        const Integer& t = a.torsion[j - a.free_rank];
        if (i < b.free_rank) {
          v = 0;
        } else {
          const Integer& u = b.torsion[i - b.free_rank];
          v *= u / boost::multiprecision::gcd(u, t);
        }
      }
      f(i, j) = v;
    }
  return f;
}

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long long lo, long long hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.range(lo, hi);
  return m;
}

/// Random rational values with denominator up to 4 in [lo, hi].
inline std::vector<Rational> random_values(Rng& rng, std::size_t n, long long lo, long long hi) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < n; ++i) {
    long long den = rng.range(1, 4);
    v.emplace_back(rng.range(lo * den, hi * den), den);
  }
  return v;
}

inline std::string data_path(const std::string& name) { return std::string(ERODIST_DATA_DIR) + "/" + name; }

}  // namespace erodist::testing
