#pragma once

#include "erodist/category.hpp"
#include "erodist/int_matrix.hpp"
#include "erodist/smith.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace erodist {

/// R^n / span(relations) for R = Z or F_p, put in canonical form: a CatObject
/// together with a coordinate map onto its canonical generators and a section
/// choosing a representative vector for each generator.
class Quotient {
 public:
  Quotient(const IntMatrix& relations, Coefficients coeff) : coeff_(coeff), n_(relations.rows()) {
    if (coeff.is_field())
      build_field(relations);
    else
      build_integers(relations);
  }

  const CatObject& object() const { return object_; }
  std::size_t ambient_dim() const { return n_; }
  std::size_t num_generators() const { return gen_rows_.size(); }

  /// Canonical coordinates of the class of x; torsion entries reduced into [0, t).
  std::vector<Integer> coordinates(const std::vector<Integer>& x) const {
    if (x.size() != n_) throw std::invalid_argument("Quotient::coordinates: length mismatch");
    std::vector<Integer> out(gen_rows_.size());
    if (coeff_.is_field()) {
      std::vector<Integer> r = reduce_mod_span(x);
      for (std::size_t g = 0; g < gen_rows_.size(); ++g) out[g] = r[gen_rows_[g]];
      return out;
    }
    std::vector<Integer> y = smith_.U * x;
    for (std::size_t g = 0; g < gen_rows_.size(); ++g) {
      Integer v = y[gen_rows_[g]];
      if (orders_[g] != 0) {
        v %= orders_[g];
        if (v < 0) v += orders_[g];
      }
      out[g] = v;
    }
    return out;
  }

  /// Vector in R^n representing canonical generator g.
  std::vector<Integer> section(std::size_t g) const {
    if (coeff_.is_field()) {
      std::vector<Integer> e(n_);
      e[gen_rows_.at(g)] = 1;
      return e;
    }
    return smith_.U_inv.column(gen_rows_.at(g));
  }

 private:
  void build_integers(const IntMatrix& relations) {
    smith_ = snf(relations);
    const std::size_t r = smith_.rank();
    std::vector<Integer> torsion;
    for (std::size_t i = r; i < n_; ++i) {
      gen_rows_.push_back(i);
      orders_.push_back(0);
    }
    for (std::size_t i = 0; i < r; ++i)
      if (smith_.D(i, i) != 1) {
        gen_rows_.push_back(i);
        orders_.push_back(smith_.D(i, i));
        torsion.push_back(smith_.D(i, i));
      }
    object_ = AbObj{n_ - r, std::move(torsion)};
  }

  void build_field(const IntMatrix& relations) {
    const Integer p = coeff_.p;
    for (std::size_t j = 0; j < relations.cols(); ++j) {
      std::vector<Integer> v = reduce_mod_span(relations.column(j));
      std::size_t piv = 0;
      while (piv < n_ && v[piv] == 0) ++piv;
      if (piv == n_) continue;
      Integer s = inverse_mod(v[piv]);
      for (auto& e : v) e = (e * s) % p;
      for (auto& b : basis_) {
        Integer c = b[piv];
        if (c == 0) continue;
        for (std::size_t i = 0; i < n_; ++i) b[i] = mod_p(b[i] - c * v[i]);
      }
      basis_.push_back(std::move(v));
      pivots_.push_back(piv);
    }
    std::vector<bool> is_pivot(n_, false);
    for (auto p_row : pivots_) is_pivot[p_row] = true;
    for (std::size_t i = 0; i < n_; ++i)
      if (!is_pivot[i]) gen_rows_.push_back(i);
    orders_.assign(gen_rows_.size(), coeff_.p);
    object_ = VectObj{gen_rows_.size(), coeff_.p};
  }

  Integer mod_p(Integer v) const {
    v %= coeff_.p;
    if (v < 0) v += coeff_.p;
    return v;
  }

  Integer inverse_mod(const Integer& a) const {
    Integer r = 1, b = mod_p(a), e = coeff_.p - 2;
    while (e > 0) {
      if ((e & 1) != 0) r = (r * b) % coeff_.p;
      b = (b * b) % coeff_.p;
      e >>= 1;
    }
    return r;
  }

  std::vector<Integer> reduce_mod_span(std::vector<Integer> x) const {
    for (auto& e : x) e = mod_p(e);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      Integer c = x[pivots_[k]];
      if (c == 0) continue;
      for (std::size_t i = 0; i < n_; ++i) x[i] = mod_p(x[i] - c * basis_[k][i]);
    }
    return x;
  }

  Coefficients coeff_;
  std::size_t n_;
  CatObject object_;
  std::vector<std::size_t> gen_rows_;
  std::vector<Integer> orders_;
  SmithForm smith_;
  std::vector<std::vector<Integer>> basis_;
  std::vector<std::size_t> pivots_;
};

/// Matrix of the map source -> target induced by the ambient linear map `ambient`.
inline IntMatrix induced_matrix(const Quotient& source, const Quotient& target, const IntMatrix& ambient) {
  if (ambient.cols() != source.ambient_dim() || ambient.rows() != target.ambient_dim())
    throw std::invalid_argument("induced_matrix: ambient map has shape " + ambient.shape());
  IntMatrix m(target.num_generators(), source.num_generators());
  for (std::size_t j = 0; j < source.num_generators(); ++j) {
    std::vector<Integer> c = target.coordinates(ambient * source.section(j));
    for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
  }
  return m;
}

}  // namespace erodist
