#include "support.hpp"

#include <gtest/gtest.h>

using namespace erodist;
using namespace erodist::testing;

namespace {

RankInvariant random_invariant(std::uint64_t seed, std::size_t dim, Coefficients coeff) {
  return RankInvariant(enumerate_small_modules(seed, shape(dim, coeff, dim == 1 ? 4 : 3, 6, 2)));
}

Coefficients coeff_for(std::uint64_t seed) {
  return seed % 2 ? Coefficients::integers() : Coefficients::field(2);
}

}  // namespace

TEST(ErosionProperties, PseudoMetricOnRandomTriples) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t dim = seed % 3 == 2 ? 2 : 1;
    auto coeff = coeff_for(seed);
    auto fam = SuperlinearFamily::linear(dim);
    auto f = random_invariant(3 * seed, dim, coeff), g = random_invariant(3 * seed + 1, dim, coeff),
         h = random_invariant(3 * seed + 2, dim, coeff);
    Extended fg = erosion_distance_family(f, g, fam).distance;
    Extended gh = erosion_distance_family(g, h, fam).distance;
    Extended fh = erosion_distance_family(f, h, fam).distance;
    ASSERT_EQ(erosion_distance_family(f, f, fam).distance, Extended(q(0)));
    ASSERT_EQ(erosion_distance_family(g, f, fam).distance, fg) << "seed " << seed;
    ASSERT_LE(fh, fg + gh) << "seed " << seed;
  }
}

TEST(ErosionProperties, DominanceIsMonotoneInTheShifts) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto f = random_invariant(seed, 1, coeff_for(seed)), g = random_invariant(seed + 500, 1, coeff_for(seed));
    Rng rng(seed);
    for (int k = 0; k < 10; ++k) {
      Rational a(rng.range(0, 8), 2), b(rng.range(0, 8), 2);
      if (b < a) std::swap(a, b);
      Translation small(Point{a}), big(Point{b});
      if (dominates(f, g, small, small)) {
        ASSERT_TRUE(dominates(f, g, big, big).holds);
      }
    }
  }
}

TEST(ErosionProperties, AdjointProjectionMatchesFamily) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto coeff = coeff_for(seed);
    auto f = random_invariant(seed, 1, coeff), g = random_invariant(seed + 900, 1, coeff);
    for (auto fam : {SuperlinearFamily::linear(1), SuperlinearFamily::floor_shift(1)}) {
      Extended d_family = erosion_distance_family(f, g, fam).distance;
      Extended d_proj = erosion_distance_projection(f, g, derive_adjoint_projection(fam)).distance;
      ASSERT_EQ(d_proj, d_family) << "seed " << seed;
    }
  }
}

TEST(ErosionProperties, FloorFamilyDistancesAreIntegral) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto f = random_invariant(seed, 1, Coefficients::field(2)), g = random_invariant(seed + 40, 1, Coefficients::field(2));
    Extended d = erosion_distance_family(f, g, SuperlinearFamily::floor_shift(1)).distance;
    if (d.is_finite()) {
      ASSERT_TRUE(is_integral(d.value())) << d;
    }
  }
}

TEST(ErosionProperties, SublevelStabilityOnAFixedComplex) {
  Rng rng(61);
  auto k = SimplicialComplex::closure({{0, 1, 2}, {2, 3}, {3, 4}, {4, 0}});
  for (int trial = 0; trial < 25; ++trial) {
    auto phi = random_values(rng, 5, 0, 5), psi = random_values(rng, 5, 0, 5);
    std::vector<Point> p1, p2;
    for (std::size_t v = 0; v < 5; ++v) {
      p1.push_back(Point{phi[v]});
      p2.push_back(Point{psi[v]});
    }
    Rational sup = linf_distance(phi, psi);
    for (std::size_t deg = 0; deg <= 1; ++deg) {
      RankInvariant f(module_from_size_pair({k, p1}, deg, Coefficients::integers()));
      RankInvariant g(module_from_size_pair({k, p2}, deg, Coefficients::integers()));
      ASSERT_LE(erosion_distance_family(f, g, SuperlinearFamily::linear(1)).distance, Extended(sup));
    }
  }
}

TEST(ErosionProperties, MobiusRoundTripPreservesDistances) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto m1 = enumerate_small_modules(seed, shape(1, Coefficients::field(3), 4, 8));
    auto m2 = enumerate_small_modules(seed + 77, shape(1, Coefficients::field(3), 4, 8));
    TypeBDiagram d1 = mobius_invert(ConstructibleModule(m1)), d2 = mobius_invert(ConstructibleModule(m2));
    ASSERT_EQ(diagram_erosion_distance(d1, d2), erosion_distance_family(RankInvariant(m1), RankInvariant(m2),
                                                                        SuperlinearFamily::linear(1))
                                                    .distance);
    ASSERT_LE(diagram_erosion_distance(d1, d2),
              interleaving_distance_1d(ConstructibleModule(m1), ConstructibleModule(m2)));
  }
}
