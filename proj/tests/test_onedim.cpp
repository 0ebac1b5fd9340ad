#include "support.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace erodist;
using namespace erodist::testing;

namespace {

ConstructibleModule interval(long long s, long long t, std::size_t mult = 1) {
  return ConstructibleModule(interval_module(s, t, 2, mult));
}

TypeBDiagram mass(long long b, long long d, long long m = 1) {
  return TypeBDiagram({{q(b), Extended(q(d)), Integer(m)}});
}

ModuleShape line_shape(std::uint64_t seed) {
  auto s = shape(1, Coefficients::field(2), 4 + seed % 3, 8, 3);
  return s;
}

// dim im F(a <= b - delta) computed from a transition matrix.
long long image_rank_oracle(const PersistenceModule& m, const Rational& a, const Rational& b) {
  IntMatrix t = transition_map(m, Point{a}, Point{b - q(1, 64)});
  return static_cast<long long>(rank_mod_p(t, m.coefficients().p));
}

// Bottleneck by trying every bijection between bars padded with diagonal slots.
Extended bottleneck_oracle(const Barcode& x, const Barcode& y) {
  const std::size_t n = x.size(), m = y.size();
  std::vector<std::size_t> perm(n + m);
  std::iota(perm.begin(), perm.end(), 0);
  Extended best = Extended::infinity();
  do {
    Extended worst(q(0));
    for (std::size_t i = 0; i < n + m; ++i) {
      const std::size_t j = perm[i];
      Extended c(q(0));
      if (i < n && j < m)
        c = detail::bar_cost(x[i], y[j]);
      else if (i < n)
        c = detail::diagonal_cost(x[i]);
      else if (j < m)
        c = detail::diagonal_cost(y[j]);
      worst = std::max(worst, c);
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Barcode random_barcode(Rng& rng) {
  Barcode out;
  const auto n = rng.range(0, 3);
  for (long long i = 0; i < n; ++i) {
    Rational b(rng.range(0, 8), 2);
    if (rng.chance(20))
      out.push_back({b, Extended::infinity()});
    else
      out.push_back({b, Extended(b + Rational(rng.range(1, 8), 2))});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(ConstructibleModule, RequiresOneDimensionalFieldModules) {
  auto z = PersistenceModule(GridPoset::embedded({{q(0)}}), Coefficients::integers(), {AbObj{1, {}}}, {});
  EXPECT_THROW(ConstructibleModule{z}, ValidationError);
  auto two = PersistenceModule(GridPoset::embedded({{q(0)}, {q(0)}}), Coefficients::field(2), {VectObj{1, 2}}, {});
  EXPECT_THROW(ConstructibleModule{two}, ValidationError);
}

TEST(ConstructibleModule, RanksAreOneBased) {
  auto f = ConstructibleModule(line_module({0, 1, 2}, {1, 2, 1}, {IntMatrix{{1}, {0}}, IntMatrix{{0, 1}}}));
  EXPECT_EQ(f.rank(1, 1), 1);
  EXPECT_EQ(f.rank(2, 2), 2);
  EXPECT_EQ(f.rank(1, 2), 1);
  EXPECT_EQ(f.rank(1, 3), 0);
  EXPECT_EQ(f.rank(0, 2), 0);
  EXPECT_EQ(f.rank(2, 4), 0);
}

TEST(DgmBValue, Examples) {
  auto f = interval(1, 3);
  EXPECT_EQ(dgm_b_value(f, dp({1}, {3})), 1);
  EXPECT_EQ(dgm_b_value(f, dp({0}, {2})), 0);
  EXPECT_EQ(dgm_b_value(f, dp({2}, {3})), 1);
  EXPECT_EQ(dgm_b_value(f, dp({1}, {4})), 0);
  EXPECT_EQ(dgm_b_value(interval(1, 3, 0), dp({1}, {3})), 0);
  EXPECT_THROW(dgm_b_value(f, dp({2}, {2})), std::invalid_argument);
}

TEST(TypeBDiagram, MergesDropsAndValidates) {
  TypeBDiagram d({{q(1), Extended(q(3)), 2}, {q(1), Extended(q(3)), -2}, {q(0), Extended::infinity(), 1}});
  ASSERT_EQ(d.points().size(), 1u);
  EXPECT_EQ(d.points()[0].death, Extended::infinity());
  EXPECT_THROW(TypeBDiagram({{q(2), Extended(q(2)), 1}}), ValidationError);
  EXPECT_TRUE(TypeBDiagram().empty());
  EXPECT_EQ(mass(1, 3).upper_sum(q(1), Extended(q(3))), 1);
  EXPECT_EQ(mass(1, 3).upper_sum(q(1), Extended(q(4))), 0);
}

TEST(MobiusInvert, Examples) {
  EXPECT_EQ(mobius_invert(interval(1, 3)), mass(1, 3));
  EXPECT_EQ(mobius_invert(interval(1, 3, 2)), mass(1, 3, 2));
  EXPECT_TRUE(mobius_invert(interval(1, 3, 0)).empty());
  EXPECT_EQ(mobius_invert(ConstructibleModule(ray_module(4))),
            TypeBDiagram({{q(4), Extended::infinity(), 1}}));
}

TEST(MobiusInvert, AllowsSignedMass) {
  std::vector<Rational> crit{q(0), q(1)};
  auto table = [](std::size_t j, std::size_t) -> Integer { return j == 1 ? 1 : 0; };
  TypeBDiagram d = mobius_invert(crit, table);
  EXPECT_EQ(d, TypeBDiagram({{q(0), Extended::infinity(), 1}, {q(1), Extended::infinity(), -1}}));
  std::vector<Rational> bad{q(1), q(1)};
  EXPECT_THROW(mobius_invert(bad, table), ValidationError);
}

TEST(MobiusInvert, UpperSumsRecoverTheRankFunction) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto m = enumerate_small_modules(seed, line_shape(seed));
    ConstructibleModule f(m);
    TypeBDiagram d = mobius_invert(f);
    for (long long a2 = -2; a2 <= 18; ++a2)
      for (long long b2 = a2 + 1; b2 <= 20; ++b2) {
        Rational a(a2, 2), b(b2, 2);
        const long long expect = image_rank_oracle(m, a, b);
        ASSERT_EQ(dgm_b_value(f, DgmPoint{Point{a}, Point{b}}), expect);
        ASSERT_EQ(d.upper_sum(a, Extended(b)), expect) << "seed " << seed << " at " << a << "," << b;
      }
  }
}

TEST(DiagramLeq, Examples) {
  EXPECT_TRUE(diagram_leq(mass(1, 3), mass(0, 4)));
  EXPECT_FALSE(diagram_leq(mass(0, 4), mass(1, 3)));
  EXPECT_TRUE(diagram_leq(TypeBDiagram(), mass(1, 3)));
  EXPECT_FALSE(diagram_leq(mass(1, 3), TypeBDiagram()));
}

TEST(DiagramErosionDistance, Examples) {
  EXPECT_EQ(diagram_erosion_distance(mass(0, 10), mass(0, 8)), Extended(q(2)));
  EXPECT_EQ(diagram_erosion_distance(mass(1, 3), TypeBDiagram()), Extended(q(1)));
  EXPECT_EQ(diagram_erosion_distance(mass(1, 3), mass(1, 3)), Extended(q(0)));
  TypeBDiagram ray({{q(0), Extended::infinity(), 1}});
  EXPECT_EQ(diagram_erosion_distance(ray, TypeBDiagram()), Extended::infinity());
}

TEST(DiagramErosionDistance, AgreesWithRankInvariantErosion) {
  auto lin = SuperlinearFamily::linear(1);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto m1 = enumerate_small_modules(seed, line_shape(seed));
    auto m2 = enumerate_small_modules(seed + 1000, line_shape(seed + 1));
    Extended via_diagrams = diagram_erosion_distance(mobius_invert(ConstructibleModule(m1)),
                                                     mobius_invert(ConstructibleModule(m2)));
    ASSERT_EQ(via_diagrams, erosion_distance_family(RankInvariant(m1), RankInvariant(m2), lin).distance)
        << "seed " << seed;
  }
}

TEST(Barcode, FromRanks) {
  EXPECT_EQ(barcode_from_ranks(interval(1, 3)), (Barcode{{q(1), Extended(q(3))}}));
  EXPECT_EQ(barcode_from_ranks(interval(1, 3, 2)).size(), 2u);
  auto f = ConstructibleModule(line_module({0, 1, 2}, {1, 2, 1}, {IntMatrix{{1}, {0}}, IntMatrix{{0, 1}}}));
  EXPECT_EQ(barcode_from_ranks(f), (Barcode{{q(0), Extended(q(2))}, {q(1), Extended::infinity()}}));
}

TEST(Barcode, AgreesWithMobiusInversion) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    ConstructibleModule f(enumerate_small_modules(seed, line_shape(seed)));
    Barcode bars = barcode_from_ranks(f);
    std::vector<DiagramPoint> pts;
    for (const auto& b : bars) pts.push_back({b.birth, b.death, 1});
    ASSERT_EQ(TypeBDiagram(pts), mobius_invert(f));
  }
}

TEST(Bottleneck, Examples) {
  Barcode a{{q(0), Extended(q(10))}}, b{{q(0), Extended(q(8))}};
  EXPECT_EQ(bottleneck(a, b), Extended(q(2)));
  EXPECT_EQ(bottleneck(a, a), Extended(q(0)));
  EXPECT_EQ(bottleneck(Barcode{{q(0), Extended(q(2))}}, {}), Extended(q(1)));
  EXPECT_EQ(bottleneck(Barcode{{q(0), Extended::infinity()}}, {}), Extended::infinity());
  EXPECT_EQ(bottleneck(Barcode{{q(0), Extended::infinity()}}, Barcode{{q(1), Extended::infinity()}}), Extended(q(1)));
  EXPECT_EQ(bottleneck({}, {}), Extended(q(0)));
}

TEST(Bottleneck, MatchesPermutationSearch) {
  Rng rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    Barcode x = random_barcode(rng), y = random_barcode(rng);
    ASSERT_EQ(bottleneck(x, y), bottleneck_oracle(x, y));
  }
}

TEST(InterleavingDistance1d, BoundsErosionFromAbove) {
  auto lin = SuperlinearFamily::linear(1);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto m1 = enumerate_small_modules(seed + 7, line_shape(seed));
    auto m2 = enumerate_small_modules(seed + 2000, line_shape(seed + 2));
    Extended di = interleaving_distance_1d(ConstructibleModule(m1), ConstructibleModule(m2));
    Extended de = erosion_distance_family(RankInvariant(m1), RankInvariant(m2), lin).distance;
    ASSERT_LE(de, di) << "seed " << seed;
  }
}
