#pragma once

// Brute-force reference implementations used to cross-check the fast paths,
// and a seeded generator of small random modules.

#include "erodist/category.hpp"
#include "erodist/error.hpp"
#include "erodist/module.hpp"
#include "erodist/poset.hpp"
#include "erodist/quotient.hpp"
#include "erodist/rank_invariant.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace erodist {

// ---------------------------------------------------------------------------
// Subquotients of small finite abelian groups by enumeration.

namespace detail {

/// Z/t_1 x ... x Z/t_k with elements numbered in mixed radix.
class ConcreteGroup {
 public:
  explicit ConcreteGroup(const AbObj& g) {
    if (g.free_rank != 0) throw std::invalid_argument("brute_subquotient: groups must be finite");
    std::size_t order = 1;
    for (const auto& t : g.torsion) {
      if (t > 64) throw std::length_error("brute_subquotient: group order exceeds 64");
      moduli_.push_back(static_cast<std::size_t>(t));
      order *= moduli_.back();
      if (order > 64) throw std::length_error("brute_subquotient: group order exceeds 64");
    }
    order_ = order;
    add_.assign(order_ * order_, 0);
    for (std::size_t x = 0; x < order_; ++x)
      for (std::size_t y = 0; y < order_; ++y) add_[x * order_ + y] = encode_sum(x, y);
  }

  std::size_t order() const { return order_; }
  std::size_t add(std::size_t x, std::size_t y) const { return add_[x * order_ + y]; }

 private:
  std::size_t encode_sum(std::size_t x, std::size_t y) const {
    std::size_t out = 0, scale = 1;
    for (std::size_t m : moduli_) {
      out += ((x % m + y % m) % m) * scale;
      x /= m;
      y /= m;
      scale *= m;
    }
    return out;
  }

  std::vector<std::size_t> moduli_;
  std::size_t order_ = 1;
  std::vector<std::size_t> add_;
};

using Subset = std::uint64_t;

inline Subset generated_subgroup(const ConcreteGroup& g, Subset base, std::size_t extra) {
  Subset s = base | (Subset{1} << extra) | Subset{1};
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (!(s >> x & 1)) continue;
      for (std::size_t y = 0; y < g.order(); ++y) {
        if (!(s >> y & 1)) continue;
        std::size_t z = g.add(x, y);
        if (!(s >> z & 1)) {
          s |= Subset{1} << z;
          grew = true;
        }
      }
    }
  }
  return s;
}

inline std::vector<Subset> all_subgroups(const ConcreteGroup& g) {
  std::set<Subset> seen{Subset{1}};
  std::vector<Subset> frontier{Subset{1}};
  while (!frontier.empty()) {
    std::vector<Subset> next;
    for (Subset s : frontier)
      for (std::size_t x = 0; x < g.order(); ++x) {
        if (s >> x & 1) continue;
        Subset t = generated_subgroup(g, s, x);
        if (seen.insert(t).second) next.push_back(t);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

/// order -> number of elements of H/K with that order. For finite abelian
/// groups this profile determines the isomorphism type.
using OrderProfile = std::map<std::size_t, std::size_t>;

inline OrderProfile quotient_profile(const ConcreteGroup& g, Subset h, Subset k) {
  std::size_t ksize = static_cast<std::size_t>(__builtin_popcountll(k));
  OrderProfile prof;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (!(h >> x & 1)) continue;
    std::size_t n = 1, y = x;
    while (!(k >> y & 1)) {
      y = g.add(y, x);
      ++n;
    }
    prof[n] += 1;
  }
  for (auto& [ord, c] : prof) c /= ksize;
  return prof;
}

}  // namespace detail

/// Isomorphism types (as order profiles) of every subquotient H/K of B.
inline std::set<detail::OrderProfile> subquotient_profiles(const AbObj& b) {
  detail::ConcreteGroup g(b);
  auto subs = detail::all_subgroups(g);
  std::set<detail::OrderProfile> out;
  for (auto h : subs)
    for (auto k : subs)
      if ((k & h) == k) out.insert(detail::quotient_profile(g, h, k));
  return out;
}

inline detail::OrderProfile order_profile(const AbObj& a) {
  detail::ConcreteGroup g(a);
  detail::Subset all = g.order() == 64 ? ~detail::Subset{0} : ((detail::Subset{1} << g.order()) - 1);
  return detail::quotient_profile(g, all, detail::Subset{1});
}

/// Whether A is a quotient of a subgroup of B, by exhaustive enumeration of
/// subgroup pairs K <= H <= B. Both groups finite, |B| <= 64.
inline bool brute_subquotient(const AbObj& a, const AbObj& b) {
  return subquotient_profiles(b).count(order_profile(a)) > 0;
}

/// Every finite abelian group of order <= max_order, as invariant factor chains.
inline std::vector<AbObj> abelian_groups_up_to(std::size_t max_order) {
  std::vector<AbObj> out;
  std::vector<Integer> chain;
  // Factors are chosen from the largest down: each must divide the previous one.
  auto rec = [&](auto&& self, std::size_t remaining, std::size_t bound) -> void {
    if (remaining == 1) {
      out.push_back(AbObj{0, std::vector<Integer>(chain.rbegin(), chain.rend())});
    }
    for (std::size_t t = 2; t <= remaining; ++t) {
      if (remaining % t != 0 || (bound && bound % t != 0)) continue;
      chain.emplace_back(t);
      self(self, remaining / t, t);
      chain.pop_back();
    }
  };
  for (std::size_t n = 1; n <= max_order; ++n) rec(rec, n, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Dense-sampling erosion distance.

/// Erosion distance for the linear family found by scanning eps over multiples
/// of `resolution` and testing dominance on every Dgm point whose coordinates
/// step by resolution / 4 through [min - resolution, max + max_eps + resolution]
/// of both grids, so that a - eps still reaches the saturated region. Values are
/// computed straight from the transition maps, without the tabulated
/// invariant.
inline Extended naive_erosion_distance(const PersistenceModule& f, const PersistenceModule& g,
                                       const Rational& resolution) {
  if (resolution <= 0) throw std::invalid_argument("naive_erosion_distance: resolution must be positive");
  require_same_dim(f.dim(), g.dim(), "naive_erosion_distance");
  const std::size_t n = f.dim();
  Rational lo, hi;
  bool seen = false;
  for (const auto* m : {&f, &g})
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& x : m->grid().axis(i)) {
        if (!seen || x < lo) lo = x;
        if (!seen || x > hi) hi = x;
        seen = true;
      }
  const Rational step = resolution / 4;
  const Rational max_eps = hi - lo + resolution;
  std::vector<Rational> samples;
  for (Rational x = lo - resolution; x <= hi + max_eps + resolution; x += step) samples.push_back(x);
  const std::size_t s = samples.size();

  // Per module: the value at a pair of grid cells (cell -1 is below the grid),
  // evaluated once through rank_invariant_at and interned in a dense table.
  struct Table {
    const PersistenceModule* m;
    std::vector<int> ids;
    std::vector<CatObject> objects;
  };
  auto make_table = [&](const PersistenceModule& m) {
    std::size_t size = 1;
    for (std::size_t i = 0; i < n; ++i) size *= (m.grid().axis(i).size() + 1) * (m.grid().axis(i).size() + 1);
    return Table{&m, std::vector<int>(size, -1), {}};
  };
  Table tf = make_table(f), tg = make_table(g);
  auto value_id = [&](Table& t, const std::vector<int>& key) {
    std::size_t slot = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t w = t.m->grid().axis(i).size() + 1;
      slot = (slot * w + static_cast<std::size_t>(key[i] + 1)) * w + static_cast<std::size_t>(key[n + i] + 1);
    }
    if (t.ids[slot] >= 0) return t.ids[slot];
    CatObject v = t.m->coefficients().zero_object();
    if (std::all_of(key.begin(), key.begin() + static_cast<long>(n), [](int c) { return c >= 0; })) {
      Point a(n), b(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = t.m->grid().axis(i)[static_cast<std::size_t>(key[i])];
        b[i] = t.m->grid().axis(i)[static_cast<std::size_t>(key[n + i])];
      }
      v = a == b ? t.m->object(t.m->grid().flat_index(step_lookup(*t.m, a).value()))
                 : rank_invariant_at(*t.m, DgmPoint{a, b});
    }
    int id = -1;
    for (std::size_t k = 0; k < t.objects.size(); ++k)
      if (t.objects[k] == v) id = static_cast<int>(k);
    if (id < 0) {
      t.objects.push_back(std::move(v));
      id = static_cast<int>(t.objects.size() - 1);
    }
    t.ids[slot] = id;
    return id;
  };
  auto cells = [&](const PersistenceModule& m, std::size_t axis, const Rational& shift) {
    std::vector<int> out(s);
    const auto& ax = m.grid().axis(axis);
    for (std::size_t k = 0; k < s; ++k)
      out[k] = static_cast<int>(std::upper_bound(ax.begin(), ax.end(), samples[k] + shift) - ax.begin()) - 1;
    return out;
  };

  // Enumerate all (a, b) with a <= b, a != b over the sample lattice.
  auto holds = [&](Table& x, Table& y, const Rational& eps) {
    std::vector<std::vector<int>> xa(n), xb(n), ya(n);
    for (std::size_t i = 0; i < n; ++i) {
      xa[i] = cells(*x.m, i, -eps);
      xb[i] = cells(*x.m, i, eps);
      ya[i] = cells(*y.m, i, Rational(0));
    }
    std::map<std::pair<int, int>, bool> leq;  // preorder_leq by interned ids
    std::vector<std::size_t> ai(n, 0), bi(n, 0);
    std::vector<int> kx(2 * n), ky(2 * n);
    for (;;) {
      bool strict = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (ai[i] < bi[i]) strict = true;
        kx[i] = xa[i][ai[i]];
        kx[n + i] = xb[i][bi[i]];
        ky[i] = ya[i][ai[i]];
        ky[n + i] = ya[i][bi[i]];
      }
      if (strict) {
        const int vx = value_id(x, kx), vy = value_id(y, ky);
        auto it = leq.find({vx, vy});
        if (it == leq.end())
          it = leq.emplace(std::make_pair(vx, vy), preorder_leq(x.objects[static_cast<std::size_t>(vx)],
                                                                  y.objects[static_cast<std::size_t>(vy)]))
                   .first;
        if (!it->second) return false;
      }
      // b runs over [a, s) per axis, then a advances and b restarts at a.
      std::size_t i = 0;
      for (; i < n; ++i) {
        if (++bi[i] < s) break;
        bi[i] = ai[i];
      }
      if (i < n) continue;
      for (i = 0; i < n; ++i) {
        if (++ai[i] < s) break;
        ai[i] = 0;
      }
      if (i == n) return true;
      for (std::size_t k = 0; k < n; ++k) bi[k] = ai[k];
    }
  };

  for (Rational eps = 0; eps <= max_eps; eps += resolution)
    if (holds(tf, tg, eps) && holds(tg, tf, eps)) return eps;
  return Extended::infinity();
}

// ---------------------------------------------------------------------------
// Random modules.

/// Seeded source of small integers built from raw mt19937_64 draws, so the
/// stream is identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform-ish integer in [lo, hi].
  long long range(long long lo, long long hi) {
    if (hi < lo) throw std::invalid_argument("Rng::range: empty range");
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(unsigned percent) { return next() % 100 < percent; }

 private:
  std::mt19937_64 engine_;
};

struct ModuleShape {
  std::size_t dim = 1;
  std::size_t max_axis_len = 4;
  long long coord_lo = 0;
  long long coord_hi = 10;
  std::size_t max_generators = 3;
  std::size_t max_relations = 3;
  long long max_entry = 2;
  Coefficients coefficients = Coefficients::field(2);
};

namespace detail {

inline std::vector<Rational> random_axis(Rng& rng, const ModuleShape& shape) {
  const auto span = static_cast<std::size_t>(shape.coord_hi - shape.coord_lo + 1);
  std::size_t len = static_cast<std::size_t>(rng.range(1, static_cast<long long>(std::min(shape.max_axis_len, span))));
  std::set<long long> picked;
  while (picked.size() < len) picked.insert(rng.range(shape.coord_lo, shape.coord_hi));
  std::vector<Rational> axis;
  for (long long v : picked) axis.emplace_back(v);
  return axis;
}

}  // namespace detail

/// A random finitely presented module on a random grid: generators and
/// relations are born at random grid points, relations only involve
/// generators born no later, and each structure map is induced by inclusion
/// of presentations, so all squares commute by construction.
inline PersistenceModule enumerate_small_modules(std::uint64_t seed, const ModuleShape& shape) {
  if (shape.dim == 0 || shape.max_axis_len == 0) throw std::invalid_argument("enumerate_small_modules: empty shape");
  Rng rng(seed);
  std::vector<std::vector<Rational>> axes;
  for (std::size_t i = 0; i < shape.dim; ++i) axes.push_back(detail::random_axis(rng, shape));
  GridPoset grid = GridPoset::embedded(axes);

  auto random_point = [&]() {
    GridIndex idx(shape.dim);
    for (std::size_t i = 0; i < shape.dim; ++i)
      idx[i] = static_cast<std::size_t>(rng.range(0, static_cast<long long>(axes[i].size()) - 1));
    return idx;
  };
  auto below = [](const GridIndex& x, const GridIndex& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] > y[i]) return false;
    return true;
  };

  const std::size_t ngens = static_cast<std::size_t>(rng.range(0, static_cast<long long>(shape.max_generators)));
  std::vector<GridIndex> gen_at;
  for (std::size_t k = 0; k < ngens; ++k) gen_at.push_back(random_point());
  struct Relation {
    GridIndex at;
    std::vector<Integer> coeffs;
  };
  std::vector<Relation> rels;
  if (ngens > 0) {
    const std::size_t nrels = static_cast<std::size_t>(rng.range(0, static_cast<long long>(shape.max_relations)));
    for (std::size_t k = 0; k < nrels; ++k) {
      Relation r{random_point(), std::vector<Integer>(ngens)};
      for (std::size_t j = 0; j < ngens; ++j)
        if (below(gen_at[j], r.at) && rng.chance(60)) r.coeffs[j] = rng.range(-shape.max_entry, shape.max_entry);
      rels.push_back(std::move(r));
    }
  }

  const std::size_t n = grid.num_points();
  std::vector<Quotient> quotients;
  std::vector<std::vector<std::size_t>> alive(n);
  quotients.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    GridIndex ip = grid.multi_index(p);
    for (std::size_t j = 0; j < ngens; ++j)
      if (below(gen_at[j], ip)) alive[p].push_back(j);
    std::vector<std::vector<Integer>> cols;
    for (const auto& r : rels) {
      if (!below(r.at, ip)) continue;
      std::vector<Integer> c;
      for (auto j : alive[p]) c.push_back(r.coeffs[j]);
      cols.push_back(std::move(c));
    }
    quotients.emplace_back(IntMatrix::from_columns(alive[p].size(), cols), shape.coefficients);
  }
  std::vector<CatObject> objects;
  for (const auto& q : quotients) objects.push_back(q.object());
  std::vector<IntMatrix> edges(n * shape.dim);
  for (std::size_t p = 0; p < n; ++p) {
    GridIndex ip = grid.multi_index(p);
    for (std::size_t axis = 0; axis < shape.dim; ++axis) {
      if (ip[axis] + 1 >= axes[axis].size()) continue;
      const std::size_t q = p + grid.stride(axis);
      IntMatrix incl(alive[q].size(), alive[p].size());
      for (std::size_t c = 0; c < alive[p].size(); ++c) {
        auto it = std::find(alive[q].begin(), alive[q].end(), alive[p][c]);
        incl(static_cast<std::size_t>(it - alive[q].begin()), c) = 1;
      }
      edges[p * shape.dim + axis] = induced_matrix(quotients[p], quotients[q], incl);
    }
  }
  return PersistenceModule(std::move(grid), shape.coefficients, std::move(objects), std::move(edges));
}

}  // namespace erodist
