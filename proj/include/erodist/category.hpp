#pragma once

// Objects of the preordered target categories: finite-dimensional vector
// spaces (ordered by dimension), finitely generated abelian groups (ordered by
// "is a quotient of a subgroup of"), and finite sets (ordered by reverse
// inclusion).

#include "erodist/error.hpp"
#include "erodist/int_matrix.hpp"
#include "erodist/smith.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace erodist {

/// A vector space over F_p (p prime) or over Q (p == 0), up to isomorphism.
struct VectObj {
  std::size_t dim = 0;
  std::int64_t field = 2;
  friend bool operator==(const VectObj&, const VectObj&) = default;
};

/// Z^free_rank + Z/t_1 + ... + Z/t_k with t_1 | t_2 | ... and t_i >= 2.
///
/// Morphisms between AbObj values are integer matrices on the canonical
/// generators: free generators first, then one generator per torsion factor.
struct AbObj {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  friend bool operator==(const AbObj&, const AbObj&) = default;
};

/// A finite set of opaque element ids, kept sorted and unique.
struct SetObj {
  std::vector<std::size_t> elements;
  friend bool operator==(const SetObj&, const SetObj&) = default;
};

using CatObject = std::variant<VectObj, AbObj, SetObj>;

inline CatObject make_vect(std::size_t dim, std::int64_t field) {
  if (field != 0 && !is_prime(field)) throw std::invalid_argument("VectObj: field characteristic must be prime or 0");
  return VectObj{dim, field};
}

inline CatObject make_ab(std::size_t free_rank, std::vector<Integer> torsion) {
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) throw ValidationError("AbObj: invariant factors must be >= 2");
    if (i && torsion[i] % torsion[i - 1] != 0)
      throw ValidationError("AbObj: invariant factors must form a divisibility chain");
  }
  return AbObj{free_rank, std::move(torsion)};
}

inline CatObject make_set(std::vector<std::size_t> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return SetObj{std::move(elements)};
}

inline std::string describe(const CatObject& obj) {
  std::ostringstream os;
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, VectObj>) {
          os << "Vect_" << (o.field ? "F" + std::to_string(o.field) : std::string("Q")) << "(" << o.dim << ")";
        } else if constexpr (std::is_same_v<T, AbObj>) {
          bool first = true;
          if (o.free_rank || o.torsion.empty()) {
            os << "Z^" << o.free_rank;
            first = false;
          }
          for (const auto& t : o.torsion) {
            os << (first ? "" : "+") << "Z/" << t;
            first = false;
          }
        } else {
          os << '{';
          for (std::size_t i = 0; i < o.elements.size(); ++i) os << (i ? "," : "") << o.elements[i];
          os << '}';
        }
      },
      obj);
  return os.str();
}

/// Coefficient choice for modules and homology: Z or F_p.
struct Coefficients {
  enum class Kind { Integers, Field };
  Kind kind = Kind::Field;
  std::int64_t p = 2;

  static Coefficients integers() { return {Kind::Integers, 0}; }
  static Coefficients field(std::int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("Coefficients: field characteristic must be prime");
    return {Kind::Field, p};
  }
  bool is_field() const { return kind == Kind::Field; }

  CatObject zero_object() const {
    if (is_field()) return VectObj{0, p};
    return AbObj{};
  }
  /// Object with `free` free generators (a vector space of that dimension for fields).
  CatObject free_object(std::size_t free) const {
    if (is_field()) return VectObj{free, p};
    return AbObj{free, {}};
  }

  std::string name() const { return is_field() ? "F" + std::to_string(p) : std::string("Z"); }
  friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

/// Number of canonical generators (the matrix dimension morphisms use).
inline std::size_t num_generators(const CatObject& obj) {
  if (auto v = std::get_if<VectObj>(&obj)) return v->dim;
  if (auto a = std::get_if<AbObj>(&obj)) return a->free_rank + a->torsion.size();
  throw std::invalid_argument("num_generators: set objects carry no generators");
}

/// Canonical relation matrix of an abelian group: column i is t_i e_{free+i}.
inline IntMatrix canonical_relations(const AbObj& a) {
  IntMatrix r(a.free_rank + a.torsion.size(), a.torsion.size());
  for (std::size_t i = 0; i < a.torsion.size(); ++i) r(a.free_rank + i, i) = a.torsion[i];
  return r;
}

inline bool is_zero_object(const CatObject& obj) {
  if (auto v = std::get_if<VectObj>(&obj)) return v->dim == 0;
  if (auto a = std::get_if<AbObj>(&obj)) return a->free_rank == 0 && a->torsion.empty();
  return std::get<SetObj>(obj).elements.empty();
}

namespace detail {

/// Prime factorisation by trial division; inputs here are small torsion orders.
inline std::vector<std::pair<Integer, unsigned>> factorize(Integer n) {
  std::vector<std::pair<Integer, unsigned>> out;
  for (Integer d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// prime -> exponents of the p-primary cyclic summands, descending.
inline std::map<Integer, std::vector<unsigned>> primary_parts(const std::vector<Integer>& torsion) {
  std::map<Integer, std::vector<unsigned>> parts;
  for (const auto& t : torsion)
    for (const auto& [p, e] : factorize(t)) parts[p].push_back(e);
  for (auto& [p, exps] : parts) std::sort(exps.rbegin(), exps.rend());
  return parts;
}

// A = Z^r + T_A is a subquotient of B = Z^s + T_B iff r <= s and, prime by
// prime, T_A's exponent partition fits inside B's once the s - r spare free
// generators are allowed to cover the largest parts of T_A.
inline bool ab_subquotient(const AbObj& a, const AbObj& b) {
  if (a.free_rank > b.free_rank) return false;
  const std::size_t spare = b.free_rank - a.free_rank;
  auto pa = primary_parts(a.torsion);
  auto pb = primary_parts(b.torsion);
  for (const auto& [p, lambda] : pa) {
    auto it = pb.find(p);
    static const std::vector<unsigned> none;
    const auto& mu = it == pb.end() ? none : it->second;
    for (std::size_t i = spare; i < lambda.size(); ++i) {
      std::size_t j = i - spare;
      unsigned bound = j < mu.size() ? mu[j] : 0;
      if (lambda[i] > bound) return false;
    }
  }
  return true;
}

// Number of cyclic summands of order divisible by p^k (the F_p-dimension of
// p^{k-1}G / p^k G), with free summands counted once per level.
inline std::size_t layer_count(const AbObj& g, const Integer& p, unsigned k) {
  std::size_t c = g.free_rank;
  for (const auto& t : g.torsion) {
    Integer q = t;
    unsigned e = 0;
    while (q % p == 0) {
      q /= p;
      ++e;
    }
    if (e >= k) ++c;
  }
  return c;
}

}  // namespace detail

/// The preorder of the target category.
inline bool preorder_leq(const CatObject& lhs, const CatObject& rhs) {
  if (lhs.index() != rhs.index()) throw std::invalid_argument("preorder_leq: objects from different categories");
  if (auto v = std::get_if<VectObj>(&lhs)) {
    const auto& w = std::get<VectObj>(rhs);
    if (v->field != w.field) throw std::invalid_argument("preorder_leq: coefficient field mismatch");
    return v->dim <= w.dim;
  }
  if (auto s = std::get_if<SetObj>(&lhs)) {
    const auto& t = std::get<SetObj>(rhs);
    return std::includes(s->elements.begin(), s->elements.end(), t.elements.begin(), t.elements.end());
  }
  return detail::ab_subquotient(std::get<AbObj>(lhs), std::get<AbObj>(rhs));
}

/// The relation "A is the target of an epimorphism from a subobject of B",
/// decided by comparing p-layer ranks rather than exponent partitions.
inline bool minimal_relation_R(const CatObject& lhs, const CatObject& rhs) {
  if (lhs.index() != rhs.index()) throw std::invalid_argument("minimal_relation_R: objects from different categories");
  if (std::holds_alternative<SetObj>(lhs)) throw std::invalid_argument("minimal_relation_R: undefined for sets");
  if (auto v = std::get_if<VectObj>(&lhs)) {
    const auto& w = std::get<VectObj>(rhs);
    if (v->field != w.field) throw std::invalid_argument("minimal_relation_R: coefficient field mismatch");
    return v->dim <= w.dim;
  }
  const auto& a = std::get<AbObj>(lhs);
  const auto& b = std::get<AbObj>(rhs);
  if (a.free_rank > b.free_rank) return false;
  for (const auto& [p, exps] : detail::primary_parts(a.torsion))
    for (unsigned k = 1; k <= exps.front(); ++k)
      if (detail::layer_count(a, p, k) > detail::layer_count(b, p, k)) return false;
  return true;
}

/// Checks that `f` is a morphism source -> target on canonical generators.
inline void validate_morphism(const IntMatrix& f, const CatObject& source, const CatObject& target) {
  if (source.index() != target.index() || std::holds_alternative<SetObj>(source))
    throw std::invalid_argument("morphism between incompatible objects");
  if (f.rows() != num_generators(target) || f.cols() != num_generators(source))
    throw ValidationError("morphism matrix has shape " + f.shape() + ", expected " +
                          std::to_string(num_generators(target)) + "x" +
                          std::to_string(num_generators(source)));
  if (auto a = std::get_if<AbObj>(&source)) {
    const auto& b = std::get<AbObj>(target);
    // Each torsion relation of the source must land in the target's relations.
    for (std::size_t j = 0; j < a->torsion.size(); ++j) {
      const std::size_t col = a->free_rank + j;
      for (std::size_t i = 0; i < f.rows(); ++i) {
        Integer v = f(i, col) * a->torsion[j];
        bool ok = i < b.free_rank ? v == 0 : v % b.torsion[i - b.free_rank] == 0;
        if (!ok) throw ValidationError("morphism does not respect torsion relations");
      }
    }
  }
}

/// Image of f: A -> B as an object of the category.
inline CatObject image_object(const IntMatrix& f, const CatObject& source, const CatObject& target) {
  if (std::holds_alternative<SetObj>(source) || std::holds_alternative<SetObj>(target))
    throw std::invalid_argument("image_object: set objects carry no morphism data");
  if (source.index() != target.index()) throw std::invalid_argument("image_object: category mismatch");
  if (f.rows() != num_generators(target) || f.cols() != num_generators(source))
    throw std::invalid_argument("image_object: matrix shape " + f.shape() + " does not match objects");
  if (auto v = std::get_if<VectObj>(&target)) {
    std::size_t r = v->field ? rank_mod_p(f, v->field) : rank_over_q(f);
    return VectObj{r, v->field};
  }
  IntMatrix rel = canonical_relations(std::get<AbObj>(target));
  auto q = lattice_quotient_invariants(f.hstack(rel), rel);
  return AbObj{q.free_rank, std::move(q.invariant_factors)};
}

inline CatObject cokernel_object(const IntMatrix& f, const CatObject& source, const CatObject& target) {
  validate_morphism(f, source, target);
  if (auto v = std::get_if<VectObj>(&target)) {
    std::size_t r = v->field ? rank_mod_p(f, v->field) : rank_over_q(f);
    return VectObj{v->dim - r, v->field};
  }
  auto q = cokernel_invariants(f.hstack(canonical_relations(std::get<AbObj>(target))));
  return AbObj{q.free_rank, std::move(q.invariant_factors)};
}

inline CatObject kernel_object(const IntMatrix& f, const CatObject& source, const CatObject& target) {
  validate_morphism(f, source, target);
  if (auto v = std::get_if<VectObj>(&source)) {
    std::size_t r = v->field ? rank_mod_p(f, v->field) : rank_over_q(f);
    return VectObj{v->dim - r, v->field};
  }
  const auto& a = std::get<AbObj>(source);
  const std::size_t n = num_generators(source);
  // x is in the kernel iff f x lies in the target's relation lattice.
  IntMatrix k = integer_kernel_basis(f.hstack(canonical_relations(std::get<AbObj>(target))));
  IntMatrix xs(n, k.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k.cols(); ++j) xs(i, j) = k(i, j);
  IntMatrix rel = canonical_relations(a);
  auto q = lattice_quotient_invariants(xs.hstack(rel), rel);
  return AbObj{q.free_rank, std::move(q.invariant_factors)};
}

}  // namespace erodist
