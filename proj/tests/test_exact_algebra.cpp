#include "support.hpp"

#include <gtest/gtest.h>

using namespace erodist;
using namespace erodist::testing;

namespace {

// Determinant by fraction-exact Gaussian elimination, independent of the SNF code.
Rational det_gauss(const IntMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a(i, j));
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

bool is_identity(const IntMatrix& m) { return m == IntMatrix::identity(m.rows()); }

}  // namespace

TEST(Rational, ParsesFractionsDecimalsAndIntegers) {
  EXPECT_EQ(parse_rational("3/2"), q(3, 2));
  EXPECT_EQ(parse_rational("-1.25"), q(-5, 4));
  EXPECT_EQ(parse_rational("7"), q(7));
  EXPECT_EQ(parse_rational("+4/6"), q(2, 3));
  EXPECT_EQ(parse_rational("-.5"), q(-1, 2));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "a", "1/", "/2", "1.2.3", "1.", "--1", "1/-"})
    EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
}

TEST(Rational, FormatsCanonically) {
  EXPECT_EQ(format_fraction(q(2)), "2/1");
  EXPECT_EQ(format_fraction(q(-6, 4)), "-3/2");
  EXPECT_EQ(format_rational(q(4, 2)), "2");
  EXPECT_EQ(format_decimal(q(1, 3)), "0.333333");
  EXPECT_EQ(floor_of(q(-3, 2)), -2);
  EXPECT_EQ(ceil_of(q(-3, 2)), -1);
  EXPECT_EQ(ceil_of(q(4)), 4);
}

TEST(Extended, OrdersInfinityLast) {
  EXPECT_LT(Extended(q(5)), Extended::infinity());
  EXPECT_EQ(Extended::infinity(), Extended::infinity());
  EXPECT_EQ(Extended(q(1)) + Extended::infinity(), Extended::infinity());
  EXPECT_EQ(Extended::infinity().fraction(), "inf");
  EXPECT_THROW(Extended::infinity().value(), std::logic_error);
}

TEST(IntMatrix, ProductAndShapeChecks) {
  IntMatrix a{{0, 1}};
  IntMatrix b{{1}, {0}};
  EXPECT_EQ(a * b, IntMatrix{{0}});
  EXPECT_THROW(a * a, std::invalid_argument);
  EXPECT_EQ(IntMatrix(2, 3).transpose().rows(), 3u);
}

TEST(Smith, ExampleTwoByTwo) {
  IntMatrix a{{2, 4}, {6, 8}};
  SmithForm f = snf(a);
  EXPECT_EQ(f.diagonal(), (std::vector<Integer>{2, 4}));
  EXPECT_EQ(f.U * a * f.V, f.D);
}

TEST(Smith, IdentityAndZero) {
  EXPECT_EQ(snf(IntMatrix::identity(3)).D, IntMatrix::identity(3));
  SmithForm z = snf(IntMatrix(2, 3));
  EXPECT_TRUE(z.D.is_zero());
  EXPECT_EQ(z.rank(), 0u);
  SmithForm e = snf(IntMatrix(0, 2));
  EXPECT_EQ(e.rank(), 0u);
  EXPECT_EQ(e.V.rows(), 2u);
}

TEST(Smith, RoundTripOnRandomMatrices) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = static_cast<std::size_t>(rng.range(1, 6)), n = static_cast<std::size_t>(rng.range(1, 6));
    IntMatrix a = random_matrix(rng, m, n, -9, 9);
    SmithForm f = snf(a);
    ASSERT_EQ(f.U * a * f.V, f.D) << a;
    ASSERT_TRUE(is_identity(f.U * f.U_inv));
    ASSERT_TRUE(is_identity(f.V * f.V_inv));
    Rational du = det_gauss(f.U), dv = det_gauss(f.V);
    ASSERT_TRUE(du == 1 || du == -1);
    ASSERT_TRUE(dv == 1 || dv == -1);
    auto d = f.diagonal();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) {
          ASSERT_EQ(f.D(i, j), 0);
        }
    for (std::size_t i = 0; i < d.size(); ++i) {
      ASSERT_GE(d[i], 0);
      if (i + 1 < d.size() && d[i] != 0) {
        ASSERT_EQ(d[i + 1] % d[i], 0);
      }
      if (d[i] == 0 && i + 1 < d.size()) {
        ASSERT_EQ(d[i + 1], 0);
      }
    }
    if (m == n) {
      Integer prod = 1;
      for (const auto& x : d) prod *= x;
      Rational det = det_gauss(a);
      ASSERT_EQ(Rational(prod), det < 0 ? Rational(-det) : det);
    }
  }
}

TEST(RankModP, Examples) {
  EXPECT_EQ(rank_mod_p(IntMatrix{{2}}, 2), 0u);
  EXPECT_EQ(rank_mod_p(IntMatrix::identity(4), 5), 4u);
  EXPECT_EQ(rank_mod_p(IntMatrix{{1, 1}, {1, 1}}, 3), 1u);
  EXPECT_EQ(rank_mod_p(IntMatrix{{-1, 2}, {4, 1}}, 3), 1u);
}

TEST(RankModP, RejectsNonPrime) {
  EXPECT_THROW(rank_mod_p(IntMatrix{{1}}, 4), std::invalid_argument);
  EXPECT_THROW(rank_mod_p(IntMatrix{{1}}, 1), std::invalid_argument);
}

TEST(RankModP, MatchesSmithDiagonal) {
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    IntMatrix a = random_matrix(rng, static_cast<std::size_t>(rng.range(1, 5)),
                                static_cast<std::size_t>(rng.range(1, 5)), -6, 6);
    auto d = snf(a).diagonal();
    for (std::int64_t p : {2, 3, 5, 7}) {
      std::size_t expect = 0;
      for (const auto& x : d)
        if (x % p != 0) ++expect;
      ASSERT_EQ(rank_mod_p(a, p), expect) << a << " p=" << p;
    }
  }
}

TEST(LatticeQuotient, Examples) {
  auto a = lattice_quotient_invariants(IntMatrix::identity(2), IntMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(a.free_rank, 0u);
  EXPECT_EQ(a.invariant_factors, (std::vector<Integer>{6}));
  auto b = lattice_quotient_invariants(IntMatrix{{2, 0}, {1, 3}}, IntMatrix{{2, 0}, {1, 3}});
  EXPECT_EQ(b.free_rank, 0u);
  EXPECT_TRUE(b.invariant_factors.empty());
  auto c = lattice_quotient_invariants(IntMatrix::identity(2), IntMatrix{{2}, {0}});
  EXPECT_EQ(c.free_rank, 1u);
  EXPECT_EQ(c.invariant_factors, (std::vector<Integer>{2}));
}

TEST(LatticeQuotient, RejectsNonNestedLattices) {
  EXPECT_THROW(lattice_quotient_invariants(IntMatrix{{2}, {0}}, IntMatrix{{1}, {0}}), ValidationError);
  EXPECT_THROW(lattice_quotient_invariants(IntMatrix{{1}, {0}}, IntMatrix{{0}, {1}}), ValidationError);
  EXPECT_THROW(lattice_quotient_invariants(IntMatrix::identity(2), IntMatrix::identity(3)), std::invalid_argument);
}

TEST(LatticeQuotient, OrderMatchesDeterminantRatio) {
  Rng rng(13);
  int checked = 0;
  while (checked < 200) {
    const auto n = static_cast<std::size_t>(rng.range(1, 4));
    IntMatrix l1 = random_matrix(rng, n, n, -4, 4);
    IntMatrix t = random_matrix(rng, n, n, -3, 3);
    Rational d1 = det_gauss(l1), dt = det_gauss(t);
    if (d1 == 0 || dt == 0) continue;
    auto qi = lattice_quotient_invariants(l1, l1 * t);
    ASSERT_EQ(qi.free_rank, 0u);
    Integer order = 1;
    for (const auto& x : qi.invariant_factors) {
      ASSERT_GE(x, 2);
      order *= x;
    }
    ASSERT_EQ(Rational(order), dt < 0 ? Rational(-dt) : dt);
    ++checked;
  }
}

TEST(KernelBasis, Examples) {
  IntMatrix k = integer_kernel_basis(IntMatrix{{1, 1}});
  ASSERT_EQ(k.rows(), 2u);
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_TRUE((k(0, 0) == 1 && k(1, 0) == -1) || (k(0, 0) == -1 && k(1, 0) == 1));
  EXPECT_EQ(integer_kernel_basis(IntMatrix::identity(3)).cols(), 0u);
  IntMatrix z = integer_kernel_basis(IntMatrix(1, 2));
  EXPECT_EQ(z.cols(), 2u);
  EXPECT_EQ(snf(z).rank(), 2u);
}

TEST(KernelBasis, SpansEveryIntegerSolutionInABox) {
  Rng rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = static_cast<std::size_t>(rng.range(1, 3)), n = static_cast<std::size_t>(rng.range(1, 3));
    IntMatrix a = random_matrix(rng, m, n, -3, 3);
    IntMatrix k = integer_kernel_basis(a);
    ASSERT_TRUE((a * k).is_zero());
    ASSERT_EQ(snf(k).rank(), k.cols());
    SmithForm fk = snf(k);
    std::vector<long long> x(n, -4);
    for (;;) {
      std::vector<Integer> v(x.begin(), x.end());
      bool zero = true;
      for (const auto& y : a * v) zero = zero && y == 0;
      if (zero) {
        ASSERT_TRUE(solve_integer(fk, v).has_value()) << a;
      }
      std::size_t i = 0;
      while (i < n && ++x[i] > 4) x[i++] = -4;
      if (i == n) break;
    }
  }
}

TEST(SolveInteger, FindsSolutionsOrReportsNone) {
  IntMatrix a{{2, 0}, {0, 3}};
  auto s = solve_integer(a, {4, 9});
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(a * *s, (std::vector<Integer>{4, 9}));
  EXPECT_FALSE(solve_integer(a, {1, 0}).has_value());
}

TEST(Quotient, IntegerPresentationOfZ4) {
  Quotient qz(IntMatrix{{4}}, Coefficients::integers());
  EXPECT_EQ(qz.object(), CatObject(AbObj{0, {4}}));
  EXPECT_EQ(qz.coordinates({7}), (std::vector<Integer>{3}));
  EXPECT_EQ(qz.coordinates({-1}), (std::vector<Integer>{3}));
}

TEST(Quotient, MixedPresentationCanonicalForm) {
  // Z^3 / <(2,0,0), (0,3,0)> = Z + Z/6
  Quotient qz(IntMatrix{{2, 0}, {0, 3}, {0, 0}}, Coefficients::integers());
  EXPECT_EQ(qz.object(), CatObject(AbObj{1, {6}}));
  for (std::size_t g = 0; g < qz.num_generators(); ++g) {
    auto c = qz.coordinates(qz.section(g));
    for (std::size_t h = 0; h < c.size(); ++h) EXPECT_EQ(c[h], g == h ? 1 : 0);
  }
}

TEST(Quotient, FieldPresentation) {
  Quotient qf(IntMatrix{{1}, {1}}, Coefficients::field(2));
  EXPECT_EQ(qf.object(), CatObject(VectObj{1, 2}));
  EXPECT_EQ(qf.coordinates({1, 0}), qf.coordinates({0, 1}));
  EXPECT_THROW(qf.coordinates({1}), std::invalid_argument);
}
