#pragma once

// Erosion of step-constant invariants and the erosion distances built on it.
//
// An invariant is "step-constant" when, on every axis, its dependence on a
// (resp. b) factors through a cell index that only changes at finitely many
// breakpoints. Dominance of an eroded invariant then only has to be checked on
// finitely many points: per axis, the breakpoints of g together with those of
// f shifted by +Gamma_i (seen from a) and -K_i (seen from b) cut the line into
// singletons and open gaps, and the outcome is constant on each piece.

#include "erodist/poset.hpp"
#include "erodist/rational.hpp"

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace erodist {

template <class T>
concept StepInvariant = requires(const T& f, std::size_t axis, const Rational& x, std::span<const int> cells, int id) {
  { f.dim() } -> std::convertible_to<std::size_t>;
  { f.breakpoints(axis) } -> std::convertible_to<const std::vector<Rational>&>;
  { f.lower_cell(axis, x) } -> std::convertible_to<int>;
  { f.upper_cell(axis, x) } -> std::convertible_to<int>;
  { f.value_class(cells, cells) } -> std::convertible_to<int>;
  { f.num_classes() } -> std::convertible_to<std::size_t>;
  { f.least_class() } -> std::convertible_to<int>;
  f.class_object(id);
};

/// Real: the invariant lives on R^n. Lattice: on Z^n, so only integer points
/// count and gaps between breakpoints may hold too few integers.
enum class Domain { Real, Lattice };

/// Class id of f at (a, b).
template <StepInvariant F>
int class_at(const F& f, const Point& a, const Point& b) {
  require_same_dim(f.dim(), a.size(), "class_at");
  require_same_dim(f.dim(), b.size(), "class_at");
  std::vector<int> lo(f.dim()), hi(f.dim());
  for (std::size_t i = 0; i < f.dim(); ++i) {
    lo[i] = f.lower_cell(i, a[i]);
    hi[i] = f.upper_cell(i, b[i]);
  }
  return f.value_class(lo, hi);
}

/// f(Gamma^{-1} a, K b); points pushed off Dgm evaluate to the least class.
template <StepInvariant F>
auto erode_at(const F& f, const Translation& gamma, const Translation& kappa, const DgmPoint& d) {
  Point a = gamma.apply_inverse(d.a), b = kappa.apply(d.b);
  if (!is_dgm_point(DgmPoint{a, b})) return f.class_object(f.least_class());
  return f.class_object(class_at(f, a, b));
}

struct DominanceResult {
  bool holds = true;
  std::optional<DgmPoint> witness;
  explicit operator bool() const { return holds; }
};

namespace detail {

struct Atom {
  Rational low;   // representative used as an a-coordinate
  Rational high;  // representative used as a b-coordinate
  bool room_for_strict = false;
};

inline std::vector<Atom> make_atoms(const std::vector<Rational>& bp, Domain domain) {
  std::vector<Atom> atoms;
  if (bp.empty()) {
    atoms.push_back({Rational(0), Rational(1), true});
    return atoms;
  }
  atoms.push_back({bp.front() - 2, bp.front() - 1, true});
  for (std::size_t k = 0; k < bp.size(); ++k) {
    atoms.push_back({bp[k], bp[k], false});
    if (k + 1 == bp.size()) break;
    const Rational& p = bp[k];
    const Rational& q = bp[k + 1];
    if (domain == Domain::Real) {
      atoms.push_back({p + (q - p) / 4, p + 3 * (q - p) / 4, true});
    } else if (q - p == 2) {
      atoms.push_back({p + 1, p + 1, false});
    } else if (q - p > 2) {
      atoms.push_back({p + 1, q - 1, true});
    }
  }
  atoms.push_back({bp.back() + 1, bp.back() + 2, true});
  return atoms;
}

// Per-axis data: the distinct (f-cell, g-cell) signatures seen from a and
// from b, each with its extreme atom, and the feasible (a, b) group pairs.
struct AxisPlan {
  std::vector<Atom> atoms;
  std::vector<int> a_atom, a_f, a_g;
  std::vector<int> b_atom, b_f, b_g;
  std::vector<std::tuple<int, int, bool>> pairs;  // (a group, b group, strict possible)
};

template <StepInvariant F, StepInvariant G>
AxisPlan plan_axis(const F& f, const G& g, std::size_t axis, const Rational& gamma, const Rational& kappa,
                   Domain domain) {
  std::vector<Rational> bp;
  auto add = [&](const Rational& x) {
    if (domain == Domain::Real) {
      bp.push_back(x);
    } else {
      bp.emplace_back(ceil_of(x));
      bp.emplace_back(floor_of(x) + 1);
    }
  };
  for (const auto& x : g.breakpoints(axis)) add(x);
  for (const auto& x : f.breakpoints(axis)) {
    add(x + gamma);
    add(x - kappa);
  }
  bp = sorted_unique(std::move(bp));

  AxisPlan plan;
  plan.atoms = make_atoms(bp, domain);
  const int n = static_cast<int>(plan.atoms.size());
  for (int k = 0; k < n; ++k) {
    const Rational& x = plan.atoms[k].low;
    int fc = f.lower_cell(axis, x - gamma), gc = g.lower_cell(axis, x);
    if (plan.a_atom.empty() || plan.a_f.back() != fc || plan.a_g.back() != gc) {
      plan.a_atom.push_back(k);
      plan.a_f.push_back(fc);
      plan.a_g.push_back(gc);
    }
  }
  for (int k = n - 1; k >= 0; --k) {
    const Rational& x = plan.atoms[k].high;
    int fc = f.upper_cell(axis, x + kappa), gc = g.upper_cell(axis, x);
    if (plan.b_atom.empty() || plan.b_f.back() != fc || plan.b_g.back() != gc) {
      plan.b_atom.push_back(k);
      plan.b_f.push_back(fc);
      plan.b_g.push_back(gc);
    }
  }
  for (int u = 0; u < static_cast<int>(plan.a_atom.size()); ++u)
    for (int v = 0; v < static_cast<int>(plan.b_atom.size()); ++v) {
      const int alpha = plan.a_atom[u], beta = plan.b_atom[v];
      if (alpha < beta) {
        plan.pairs.emplace_back(u, v, true);
      } else if (alpha == beta) {
        plan.pairs.emplace_back(u, v, plan.atoms[alpha].room_for_strict);
      }
    }
  return plan;
}

}  // namespace detail

/// Decides nabla_{Gamma,K} f <= g pointwise on Dgm (or on Dgm' when
/// `restricted`), returning a point where it fails.
template <StepInvariant F, StepInvariant G>
DominanceResult dominates(const F& f, const G& g, const Translation& gamma, const Translation& kappa,
                          Domain domain = Domain::Real, bool restricted = false) {
  const std::size_t n = f.dim();
  require_same_dim(n, g.dim(), "dominates");
  require_same_dim(n, gamma.dim(), "dominates");
  require_same_dim(n, kappa.dim(), "dominates");
  if (domain == Domain::Lattice)
    for (std::size_t i = 0; i < n; ++i)
      if (!is_integral(gamma.shift()[i]) || !is_integral(kappa.shift()[i]))
        throw std::invalid_argument("dominates: lattice translations must be integral");

  std::vector<detail::AxisPlan> plans;
  plans.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    plans.push_back(detail::plan_axis(f, g, i, gamma.shift()[i], kappa.shift()[i], domain));
    if (plans.back().pairs.empty()) return {};
  }

  const std::size_t nf = f.num_classes(), ng = g.num_classes();
  std::vector<std::int8_t> cmp(nf * ng, -1);
  auto leq = [&](int fc, int gc) {
    std::int8_t& c = cmp[static_cast<std::size_t>(fc) * ng + static_cast<std::size_t>(gc)];
    if (c < 0) c = preorder_leq(f.class_object(fc), g.class_object(gc)) ? 1 : 0;
    return c == 1;
  };

  std::vector<std::size_t> choice(n, 0);
  std::vector<int> flo(n), fhi(n), glo(n), ghi(n);
  for (;;) {
    bool any_strict = false, all_strict = true;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& [u, v, strict] = plans[i].pairs[choice[i]];
      any_strict = any_strict || strict;
      all_strict = all_strict && strict;
      flo[i] = plans[i].a_f[u];
      glo[i] = plans[i].a_g[u];
      fhi[i] = plans[i].b_f[v];
      ghi[i] = plans[i].b_g[v];
    }
    if (restricted ? all_strict : any_strict) {
      const int fc = f.value_class(flo, fhi);
      const int gc = g.value_class(glo, ghi);
      if (!leq(fc, gc)) {
        DgmPoint w{Point(n), Point(n)};
        for (std::size_t i = 0; i < n; ++i) {
          const auto& [u, v, strict] = plans[i].pairs[choice[i]];
          w.a[i] = plans[i].atoms[plans[i].a_atom[u]].low;
          w.b[i] = plans[i].atoms[plans[i].b_atom[v]].high;
        }
        return {false, std::move(w)};
      }
    }
    std::size_t i = 0;
    while (i < n && ++choice[i] == plans[i].pairs.size()) choice[i++] = 0;
    if (i == n) break;
  }
  return {};
}

struct Rejection {
  Rational epsilon;
  DgmPoint witness;
  bool forward = true;  // true: nabla f <= g failed; false: nabla g <= f failed
};

struct ErosionReport {
  Extended distance;
  std::vector<Rational> candidates;
  std::vector<Rejection> rejections;
};

namespace detail {

inline Domain domain_of(const SuperlinearFamily& family) {
  return family.acts_on_lattice() ? Domain::Lattice : Domain::Real;
}

template <StepInvariant F>
Rational breakpoint_span(const F& f, std::size_t axis, Rational& lo, Rational& hi, bool& seen) {
  for (const auto& x : f.breakpoints(axis)) {
    if (!seen || x < lo) lo = x;
    if (!seen || x > hi) hi = x;
    seen = true;
  }
  return seen ? hi - lo : Rational(0);
}

}  // namespace detail

/// Values of eps at which the dominance pair can change. For the real domain:
/// 0, |x - y| for x a breakpoint of f and y one of g on the same axis, and
/// (y - x) / 2 for x < y breakpoints of the same invariant. For the lattice
/// domain: every integer from 0 past the breakpoint diameter.
template <StepInvariant F, StepInvariant G>
std::vector<Rational> candidate_epsilons(const F& f, const G& g, Domain domain = Domain::Real) {
  require_same_dim(f.dim(), g.dim(), "candidate_epsilons");
  std::vector<Rational> out{Rational(0)};
  if (domain == Domain::Lattice) {
    Rational diameter = 0;
    for (std::size_t i = 0; i < f.dim(); ++i) {
      Rational lo, hi;
      bool seen = false;
      detail::breakpoint_span(f, i, lo, hi, seen);
      diameter = std::max(diameter, detail::breakpoint_span(g, i, lo, hi, seen));
    }
    // Integer-gap capacities keep changing up to two steps past the diameter.
    const Integer top = ceil_of(diameter) + 3;
    for (Integer k = 1; k <= top; ++k) out.emplace_back(k);
    return out;
  }
  for (std::size_t i = 0; i < f.dim(); ++i) {
    const auto& xs = f.breakpoints(i);
    const auto& ys = g.breakpoints(i);
    for (const auto& x : xs)
      for (const auto& y : ys) out.push_back(x < y ? Rational(y - x) : Rational(x - y));
    for (const auto* zs : {&xs, &ys})
      for (std::size_t j = 0; j < zs->size(); ++j)
        for (std::size_t k = j + 1; k < zs->size(); ++k) out.push_back(((*zs)[k] - (*zs)[j]) / 2);
  }
  return sorted_unique(std::move(out));
}

template <StepInvariant F, StepInvariant G>
std::vector<Rational> candidate_epsilons(const F& f, const G& g, const SuperlinearFamily& family) {
  return candidate_epsilons(f, g, detail::domain_of(family));
}

namespace detail {

template <StepInvariant F, StepInvariant G>
bool both_dominate(const F& f, const G& g, const Translation& gamma, const Translation& kappa, Domain domain,
                   bool restricted, const Rational& eps, std::vector<Rejection>* log) {
  DominanceResult fwd = dominates(f, g, gamma, kappa, domain, restricted);
  if (!fwd) {
    if (log) log->push_back({eps, *fwd.witness, true});
    return false;
  }
  DominanceResult bwd = dominates(g, f, gamma, kappa, domain, restricted);
  if (!bwd) {
    if (log) log->push_back({eps, *bwd.witness, false});
    return false;
  }
  return true;
}

template <StepInvariant F, StepInvariant G>
ErosionReport family_distance(const F& f, const G& g, const SuperlinearFamily& family, bool restricted) {
  require_same_dim(f.dim(), g.dim(), "erosion distance");
  require_same_dim(f.dim(), family.dim(), "erosion distance");
  const Domain domain = domain_of(family);
  ErosionReport report;
  report.candidates = candidate_epsilons(f, g, domain);
  const auto& c = report.candidates;
  // Dominance only gets easier as eps grows, so bisect for the first candidate
  // that passes either at c[i] or strictly between c[i] and c[i+1]; in the
  // latter case the infimum is c[i] without being attained.
  auto passes = [&](std::size_t i) {
    const Translation t = family.at(c[i]);
    if (both_dominate(f, g, t, t, domain, restricted, c[i], &report.rejections)) return true;
    if (domain == Domain::Lattice) return false;
    const Rational probe = i + 1 < c.size() ? (c[i] + c[i + 1]) / 2 : c[i] + 1;
    const Translation tp = family.at(probe);
    return both_dominate(f, g, tp, tp, domain, restricted, probe, nullptr);
  };
  std::size_t lo = 0, hi = c.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (passes(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  if (lo < c.size()) {
    report.distance = c[lo];
    std::sort(report.rejections.begin(), report.rejections.end(),
              [](const Rejection& x, const Rejection& y) { return x.epsilon < y.epsilon; });
    return report;
  }
  report.distance = Extended::infinity();
  return report;
}

}  // namespace detail

/// d_E with respect to a superlinear family.
template <StepInvariant F, StepInvariant G>
ErosionReport erosion_distance_family(const F& f, const G& g, const SuperlinearFamily& family) {
  return detail::family_distance(f, g, family, false);
}

/// d_T: as erosion_distance_family, with dominance only required on Dgm'.
template <StepInvariant F, StepInvariant G>
ErosionReport erosion_distance_restricted(const F& f, const G& g, const SuperlinearFamily& family) {
  return detail::family_distance(f, g, family, true);
}

using TranslationPair = std::pair<Translation, Translation>;

/// d_E with respect to a sublinear projection, minimised over the given
/// (Gamma, K) pairs.
template <StepInvariant F, StepInvariant G>
ErosionReport erosion_distance_projection(const F& f, const G& g, const SublinearProjection& omega,
                                          const std::vector<TranslationPair>& pairs) {
  require_same_dim(f.dim(), g.dim(), "erosion distance");
  const Domain domain = omega.acts_on_lattice() ? Domain::Lattice : Domain::Real;
  std::vector<std::pair<Extended, std::size_t>> order;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    Extended e = std::max(omega.value(pairs[k].first), omega.value(pairs[k].second));
    if (e.is_finite()) order.emplace_back(std::move(e), k);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  ErosionReport report;
  for (const auto& [e, k] : order)
    if (report.candidates.empty() || report.candidates.back() != e.value()) report.candidates.push_back(e.value());
  for (const auto& [e, k] : order) {
    const auto& [gamma, kappa] = pairs[k];
    if (detail::both_dominate(f, g, gamma, kappa, domain, false, e.value(), &report.rejections)) {
      report.distance = e;
      return report;
    }
  }
  report.distance = Extended::infinity();
  return report;
}

/// All pairs of shift translations whose components are candidate epsilons.
template <StepInvariant F, StepInvariant G>
std::vector<TranslationPair> default_translation_pairs(const F& f, const G& g, const SublinearProjection& omega) {
  const std::size_t n = f.dim();
  const auto comps = candidate_epsilons(f, g, omega.acts_on_lattice() ? Domain::Lattice : Domain::Real);
  std::vector<Translation> shifts;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    std::vector<Rational> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = comps[idx[i]];
    shifts.emplace_back(std::move(s));
    std::size_t i = 0;
    while (i < n && ++idx[i] == comps.size()) idx[i++] = 0;
    if (i == n) break;
  }
  std::vector<TranslationPair> pairs;
  pairs.reserve(shifts.size() * shifts.size());
  for (const auto& a : shifts)
    for (const auto& b : shifts) pairs.emplace_back(a, b);
  return pairs;
}

template <StepInvariant F, StepInvariant G>
ErosionReport erosion_distance_projection(const F& f, const G& g, const SublinearProjection& omega) {
  return erosion_distance_projection(f, g, omega, default_translation_pairs(f, g, omega));
}

}  // namespace erodist
