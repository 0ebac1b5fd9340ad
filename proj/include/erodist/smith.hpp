#pragma once

// Smith normal form over Z and the lattice computations built on it.

#include "erodist/error.hpp"
#include "erodist/int_matrix.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace erodist {

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
/// The inverses of U and V are carried along so callers can move between
/// coordinate systems without a second elimination.
struct SmithForm {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  IntMatrix U_inv;
  IntMatrix V_inv;

  /// Number of non-zero diagonal entries.
  std::size_t rank() const {
    std::size_t r = 0;
    while (r < D.rows() && r < D.cols() && D(r, r) != 0) ++r;
    return r;
  }
  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < D.rows() && i < D.cols(); ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

inline Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Quotient rounded toward zero; remainders then shrink strictly in absolute value.
inline Integer trunc_div(const Integer& a, const Integer& b) { return a / b; }

class SmithReducer {
 public:
  explicit SmithReducer(const IntMatrix& a)
      : f_{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols()),
           IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())} {}

  SmithForm run() {
    const std::size_t m = f_.D.rows(), n = f_.D.cols();
    for (std::size_t t = 0; t < m && t < n; ++t) {
      if (!bring_smallest_to(t, m, n)) break;
      for (;;) {
        clear_pivot_cross(t, m, n);
        auto bad = find_non_divisible(t, m, n);
        if (!bad) break;
        row_add(t, *bad, 1);  // pulls a non-multiple into the pivot row
      }
      if (f_.D(t, t) < 0) row_negate(t);
    }
    return std::move(f_);
  }

 private:
  // Smallest non-zero |entry| of the trailing block moved to (t, t).
  bool bring_smallest_to(std::size_t t, std::size_t m, std::size_t n) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const Integer& v = f_.D(i, j);
        if (v == 0) continue;
        Integer av = abs_int(v);
        if (!best || av < best_abs) {
          best = {i, j};
          best_abs = av;
        }
      }
    if (!best) return false;
    row_swap(t, best->first);
    col_swap(t, best->second);
    return true;
  }

  // Zero out row t and column t beyond the pivot, re-pivoting on remainders.
  void clear_pivot_cross(std::size_t t, std::size_t m, std::size_t n) {
    for (;;) {
      const Integer pivot = f_.D(t, t);
      for (std::size_t i = t + 1; i < m; ++i)
        if (f_.D(i, t) != 0) row_add(i, t, -trunc_div(f_.D(i, t), pivot));
      for (std::size_t j = t + 1; j < n; ++j)
        if (f_.D(t, j) != 0) col_add(j, t, -trunc_div(f_.D(t, j), pivot));

      std::optional<std::size_t> row_hit, col_hit;
      Integer best = abs_int(pivot);
      for (std::size_t i = t + 1; i < m; ++i)
        if (f_.D(i, t) != 0 && abs_int(f_.D(i, t)) < best) {
          best = abs_int(f_.D(i, t));
          row_hit = i;
          col_hit.reset();
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (f_.D(t, j) != 0 && abs_int(f_.D(t, j)) < best) {
          best = abs_int(f_.D(t, j));
          col_hit = j;
          row_hit.reset();
        }
      if (row_hit) {
        row_swap(t, *row_hit);
      } else if (col_hit) {
        col_swap(t, *col_hit);
      } else {
        return;
      }
    }
  }

  std::optional<std::size_t> find_non_divisible(std::size_t t, std::size_t m, std::size_t n) const {
    const Integer& pivot = f_.D(t, t);
    for (std::size_t i = t + 1; i < m; ++i)
      for (std::size_t j = t + 1; j < n; ++j)
        if (f_.D(i, j) % pivot != 0) return i;
    return std::nullopt;
  }

  void row_swap(std::size_t i, std::size_t k) {
    f_.D.swap_rows(i, k);
    f_.U.swap_rows(i, k);
    f_.U_inv.swap_cols(i, k);
  }
  void col_swap(std::size_t j, std::size_t k) {
    f_.D.swap_cols(j, k);
    f_.V.swap_cols(j, k);
    f_.V_inv.swap_rows(j, k);
  }
  void row_add(std::size_t i, std::size_t k, const Integer& c) {
    f_.D.add_row(i, k, c);
    f_.U.add_row(i, k, c);
    f_.U_inv.add_col(k, i, -c);
  }
  void col_add(std::size_t j, std::size_t k, const Integer& c) {
    f_.D.add_col(j, k, c);
    f_.V.add_col(j, k, c);
    f_.V_inv.add_row(k, j, -c);
  }
  void row_negate(std::size_t i) {
    f_.D.negate_row(i);
    f_.U.negate_row(i);
    for (std::size_t r = 0; r < f_.U_inv.rows(); ++r) f_.U_inv(r, i) = -f_.U_inv(r, i);
  }

  SmithForm f_;
};

}  // namespace detail

inline SmithForm snf(const IntMatrix& a) { return detail::SmithReducer(a).run(); }

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Rank over F_p.
inline std::size_t rank_mod_p(const IntMatrix& a, std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("rank_mod_p: " + std::to_string(p) + " is not prime");
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::int64_t> w(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Integer v = a(i, j) % p;
      if (v < 0) v += p;
      w[i * n + j] = static_cast<std::int64_t>(v);
    }
  auto inv = [p](std::int64_t x) {
    std::int64_t r = 1, e = p - 2;
    __int128 b = x;
    while (e) {
      if (e & 1) r = static_cast<std::int64_t>((static_cast<__int128>(r) * b) % p);
      b = (b * b) % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t piv = rank;
    while (piv < m && w[piv * n + col] == 0) ++piv;
    if (piv == m) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < n; ++j) std::swap(w[piv * n + j], w[rank * n + j]);
    std::int64_t s = inv(w[rank * n + col]);
    for (std::size_t i = rank + 1; i < m; ++i) {
      std::int64_t f = w[i * n + col];
      if (f == 0) continue;
      f = static_cast<std::int64_t>((static_cast<__int128>(f) * s) % p);
      for (std::size_t j = col; j < n; ++j) {
        __int128 v = w[i * n + j] - static_cast<__int128>(f) * w[rank * n + j];
        v %= p;
        if (v < 0) v += p;
        w[i * n + j] = static_cast<std::int64_t>(v);
      }
    }
    ++rank;
  }
  return rank;
}

/// Rank over Q.
inline std::size_t rank_over_q(const IntMatrix& a) { return snf(a).rank(); }

/// Isomorphism type Z^free_rank + Z/f_1 + ... + Z/f_k, f_i >= 2, f_i | f_{i+1}.
struct QuotientInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> invariant_factors;
  friend bool operator==(const QuotientInvariants&, const QuotientInvariants&) = default;
};

/// Invariants of the abelian group with presentation Z^rows / span(columns).
inline QuotientInvariants cokernel_invariants(const IntMatrix& relations) {
  SmithForm f = snf(relations);
  QuotientInvariants q;
  std::size_t r = f.rank();
  q.free_rank = relations.rows() - r;
  for (std::size_t i = 0; i < r; ++i)
    if (f.D(i, i) != 1) q.invariant_factors.push_back(f.D(i, i));
  return q;
}

/// L1 / L2 for lattices given by generating columns in Z^n, with L2 inside L1.
inline QuotientInvariants lattice_quotient_invariants(const IntMatrix& l1, const IntMatrix& l2) {
  if (l1.rows() != l2.rows())
    throw std::invalid_argument("lattice_quotient_invariants: ambient dimension mismatch");
  SmithForm f = snf(l1);
  const std::size_t r = f.rank();
  // Coordinates of L2's generators in the basis d_i * U^{-1} e_i of L1.
  IntMatrix coords(r, l2.cols());
  for (std::size_t j = 0; j < l2.cols(); ++j) {
    std::vector<Integer> w = f.U * l2.column(j);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i < r) {
        if (w[i] % f.D(i, i) != 0)
          throw ValidationError("lattice_quotient_invariants: L2 is not contained in L1");
        coords(i, j) = w[i] / f.D(i, i);
      } else if (w[i] != 0) {
        throw ValidationError("lattice_quotient_invariants: L2 is not contained in L1");
      }
    }
  }
  return cokernel_invariants(coords);
}

/// Columns form a Z-basis of {x : A x = 0}.
inline IntMatrix integer_kernel_basis(const IntMatrix& a) {
  SmithForm f = snf(a);
  const std::size_t r = f.rank(), n = a.cols();
  IntMatrix k(n, n - r);
  for (std::size_t j = r; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) k(i, j - r) = f.V(i, j);
  return k;
}

/// Some integer x with A x = b, if one exists.
inline std::optional<std::vector<Integer>> solve_integer(const SmithForm& f,
                                                         const std::vector<Integer>& b) {
  std::vector<Integer> w = f.U * b;
  const std::size_t r = f.rank();
  std::vector<Integer> z(f.V.rows());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < r) {
      if (w[i] % f.D(i, i) != 0) return std::nullopt;
      z[i] = w[i] / f.D(i, i);
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  return f.V * z;
}

inline std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a,
                                                         const std::vector<Integer>& b) {
  return solve_integer(snf(a), b);
}

}  // namespace erodist
