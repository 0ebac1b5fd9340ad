#pragma once

#include "erodist/category.hpp"
#include "erodist/module.hpp"
#include "erodist/poset.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace erodist {

/// The rank invariant (a, b) -> im F(a < b) of a grid module, tabulated for
/// every pair of grid points p <= q when constructed. Values are interned as
/// class ids so that erosion checks compare small integers.
///
/// Both a and b are resolved by the step extension: cell k on an axis is the
/// half-open interval [g_k, g_{k+1}), and cell -1 (below the grid) is zero.
class RankInvariant {
 public:
  explicit RankInvariant(PersistenceModule module) : module_(std::move(module)) {
    require_functorial(module_);
    build();
  }

  const PersistenceModule& module() const { return module_; }
  std::size_t dim() const { return module_.dim(); }
  const std::vector<Rational>& breakpoints(std::size_t axis) const { return module_.grid().axis(axis); }

  int lower_cell(std::size_t axis, const Rational& x) const { return cell(axis, x); }
  int upper_cell(std::size_t axis, const Rational& x) const { return cell(axis, x); }

  int value_class(std::span<const int> lo, std::span<const int> hi) const {
    std::size_t p = 0, q = 0;
    const auto& grid = module_.grid();
    for (std::size_t i = 0; i < dim(); ++i) {
      if (lo[i] < 0) return 0;
      if (lo[i] > hi[i]) throw std::logic_error("RankInvariant: cells out of order");
      p += static_cast<std::size_t>(lo[i]) * grid.stride(i);
      q += static_cast<std::size_t>(hi[i]) * grid.stride(i);
    }
    return table_[p * n_ + q];
  }

  std::size_t num_classes() const { return classes_.size(); }
  const CatObject& class_object(int id) const { return classes_.at(static_cast<std::size_t>(id)); }
  /// The zero object: least in the preorder.
  int least_class() const { return 0; }

  CatObject evaluate(const DgmPoint& d) const {
    if (!is_dgm_point(d)) throw std::invalid_argument("RankInvariant: need a < b");
    std::vector<int> lo(dim()), hi(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      lo[i] = lower_cell(i, d.a[i]);
      hi[i] = upper_cell(i, d.b[i]);
    }
    return class_object(value_class(lo, hi));
  }

 private:
  int cell(std::size_t axis, const Rational& x) const {
    const auto& ax = breakpoints(axis);
    return static_cast<int>(std::upper_bound(ax.begin(), ax.end(), x) - ax.begin()) - 1;
  }

  int intern(CatObject obj) {
    for (std::size_t i = 0; i < classes_.size(); ++i)
      if (classes_[i] == obj) return static_cast<int>(i);
    classes_.push_back(std::move(obj));
    return static_cast<int>(classes_.size() - 1);
  }

  void build() {
    const auto& grid = module_.grid();
    n_ = module_.num_points();
    classes_.push_back(module_.coefficients().zero_object());
    table_.assign(n_ * n_, 0);
    std::vector<IntMatrix> t(n_);
    for (std::size_t p = 0; p < n_; ++p) {
      const GridIndex ip = grid.multi_index(p);
      for (std::size_t q = p; q < n_; ++q) {
        const GridIndex iq = grid.multi_index(q);
        std::size_t step_axis = dim();
        bool above = true;
        for (std::size_t i = 0; i < dim(); ++i) {
          if (iq[i] < ip[i]) above = false;
          if (iq[i] > ip[i]) step_axis = i;
        }
        if (!above) continue;
        if (step_axis == dim()) {
          t[q] = IntMatrix::identity(num_generators(module_.object(p)));
        } else {
          const std::size_t prev = q - grid.stride(step_axis);
          t[q] = module_.normalize(module_.edge(prev, step_axis) * t[prev], module_.object(q));
        }
        table_[p * n_ + q] = intern(image_object(t[q], module_.object(p), module_.object(q)));
      }
    }
  }

  PersistenceModule module_;
  std::size_t n_ = 0;
  std::vector<CatObject> classes_;
  std::vector<int> table_;
};

}  // namespace erodist
