#include <gtest/gtest.h>

#include <set>

#include "brnr/extalg.hpp"
#include "brnr/random.hpp"

using namespace brnr;

namespace {

MultiVector P(const PrimeField& f, int n, const char* text) { return parse_multivector(text, f, n, Side::primal); }

MultiVector random_mv(const PrimeField& f, int n, int d, Rng& rng) {
  return {f, n, d, Side::primal, random_vector(f, binomial(n, d), rng)};
}

}  // namespace

TEST(Tuples, RankUnrankRoundTrip) {
  for (int n = 0; n <= 8; ++n) {
    for (int d = 0; d <= n; ++d) {
      const auto all = all_tuples(n, d);
      ASSERT_EQ(all.size(), binomial(n, d));
      for (std::size_t r = 0; r < all.size(); ++r) {
        EXPECT_EQ(rank_tuple(n, all[r]), r);
        EXPECT_EQ(unrank_tuple(n, d, r), all[r]);
      }
    }
  }
  EXPECT_EQ(all_tuples(4, 2).front(), (IndexTuple{0, 1}));
  EXPECT_EQ(all_tuples(4, 2).back(), (IndexTuple{2, 3}));
}

TEST(Wedge, SpecExamples) {
  const PrimeField f(5);
  EXPECT_TRUE(wedge(P(f, 3, "(1)"), P(f, 3, "(1)")).is_zero());
  EXPECT_EQ(wedge(P(f, 3, "(2,1)"), P(f, 3, "(3)")), P(f, 3, "-(1,2,3)"));
  EXPECT_EQ(wedge(P(f, 3, "(1,2)"), P(f, 3, "(3)")).degree(), 3);
}

TEST(Wedge, GoldenExpansion) {
  for (const std::int64_t p : {3, 5, 7}) {
    const PrimeField f(p);
    const MultiVector lhs = wedge(P(f, 4, "(1)+(4)"), P(f, 4, "(2)+(3)"));
    EXPECT_EQ(lhs, P(f, 4, "(1,2)-(3,4)+(1,3)-(2,4)"));
    EXPECT_EQ(to_string(lhs), "(1,2)+(1,3)-(2,4)-(3,4)");
  }
}

TEST(Wedge, DegreeOverflowIsZero) {
  const PrimeField f(3);
  const MultiVector a = P(f, 3, "(1,2)");
  const MultiVector b = P(f, 3, "(2,3)");
  EXPECT_TRUE(wedge(a, b).is_zero());
  EXPECT_EQ(wedge(a, b).degree(), 4);
}

TEST(Wedge, AnticommutativeAndAssociative) {
  Rng rng(5);
  for (const std::int64_t p : {3, 5}) {
    const PrimeField f(p);
    for (int n = 1; n <= 7; ++n) {
      for (int trial = 0; trial < 10; ++trial) {
        const int d1 = static_cast<int>(rng() % (n + 1));
        const int d2 = static_cast<int>(rng() % (n - d1 + 1));
        const int d3 = static_cast<int>(rng() % (n - d1 - d2 + 1));
        const MultiVector a = random_mv(f, n, d1, rng);
        const MultiVector b = random_mv(f, n, d2, rng);
        const MultiVector c = random_mv(f, n, d3, rng);
        const MultiVector ab = wedge(a, b);
        const MultiVector ba = wedge(b, a);
        EXPECT_EQ(ab, (d1 * d2) % 2 == 0 ? ba : ba.scaled(p - 1));
        EXPECT_EQ(wedge(ab, c), wedge(a, wedge(b, c)));
      }
    }
  }
}

TEST(Wedge, OddDegreeSquaresVanish) {
  Rng rng(9);
  const PrimeField f(7);
  for (int n = 3; n <= 7; ++n) {
    for (int d = 1; d <= n; d += 2) {
      const MultiVector a = random_mv(f, n, d, rng);
      EXPECT_TRUE(wedge(a, a).is_zero());
    }
  }
}

TEST(Wedge, PluckerCriterionForBivectors) {
  // A bivector in four variables is decomposable iff w ^ w = 0.
  const PrimeField f(3);
  std::set<Vec> products;
  for (std::uint64_t x = 0; x < 81; ++x) {
    for (std::uint64_t y = 0; y < 81; ++y) {
      Vec a(4);
      Vec b(4);
      std::uint64_t cx = x;
      std::uint64_t cy = y;
      for (int i = 0; i < 4; ++i) {
        a[i] = static_cast<Scalar>(cx % 3);
        b[i] = static_cast<Scalar>(cy % 3);
        cx /= 3;
        cy /= 3;
      }
      products.insert(wedge(MultiVector::vector(f, Side::primal, a), MultiVector::vector(f, Side::primal, b)).coords());
    }
  }
  std::uint64_t total = 1;
  for (int i = 0; i < 6; ++i) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    Vec c(6);
    std::uint64_t x = code;
    for (Scalar& v : c) {
      v = static_cast<Scalar>(x % 3);
      x /= 3;
    }
    const MultiVector w(f, 4, 2, Side::primal, c);
    EXPECT_EQ(wedge(w, w).is_zero(), products.count(c) == 1) << to_string(w);
  }
}

TEST(Pairing, SpecExamples) {
  const PrimeField f(5);
  const auto D = [&](const char* t) { return parse_multivector(t, f, 3, Side::dual); };
  EXPECT_EQ(pairing(P(f, 3, "(1,2)"), D("[1,2]")), 1U);
  EXPECT_EQ(pairing(P(f, 3, "(1,2)"), D("[1,3]")), 0U);
  EXPECT_THROW(pairing(D("[1,2]"), P(f, 3, "(1,2)")), DimensionError);
}

TEST(Pairing, GramIsIdentity) {
  for (const std::int64_t p : {3, 5}) {
    const PrimeField f(p);
    for (int n = 1; n <= 6; ++n)
      for (int d = 0; d <= n; ++d) EXPECT_EQ(pairing_gram(f, n, d), Matrix::identity(f, binomial(n, d)));
  }
}

TEST(Pairing, DeterminantFormula) {
  const PrimeField f(7);
  // <<u1 ^ u2, (u1* + u2*) ^ u2*>> = det [[1,0],[1,1]] = 1.
  const MultiVector fv = wedge(parse_multivector("[1]+[2]", f, 3, Side::dual), parse_multivector("[2]", f, 3, Side::dual));
  EXPECT_EQ(pairing(P(f, 3, "(1,2)"), fv), 1U);
}

TEST(Decomposability, WedgeVectorMap) {
  const PrimeField f(5);
  const Matrix zero = wedge_vector_map(MultiVector(f, 4, 2, Side::primal));
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.rows(), 4U);
  EXPECT_EQ(zero.cols(), 4U);
  const Subspace k = kernel(wedge_vector_map(P(f, 3, "(1,2)")));
  EXPECT_EQ(k, span(f, std::vector<Vec>{{1, 0, 0}, {0, 1, 0}}, 3));
  EXPECT_TRUE(kernel(wedge_vector_map(P(f, 6, "(1,3,5)-(1,4,6)+(2,5,6)"))).is_zero());
}

TEST(Decomposability, Witness) {
  for (const std::int64_t p : {3, 5, 7}) {
    const PrimeField f(p);
    const auto u0 = partial_decomposability_witness(P(f, 6, "(1,5,6)"));
    ASSERT_TRUE(u0.has_value());
    EXPECT_TRUE(wedge(P(f, 6, "(1,5,6)"), MultiVector::vector(f, Side::primal, *u0)).is_zero());
    const auto c = cofactor(P(f, 6, "(1,5,6)"), *u0);
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(wedge(*c, MultiVector::vector(f, Side::primal, *u0)), P(f, 6, "(1,5,6)"));
    EXPECT_FALSE(partial_decomposability_witness(P(f, 6, "(1,2,3)+(3,4,5)+(5,6,1)")).has_value());
    EXPECT_FALSE(partial_decomposability_witness(P(f, 6, "(1,3,5)-(1,4,6)+(2,5,6)")).has_value());
    EXPECT_THROW(partial_decomposability_witness(MultiVector(f, 6, 3, Side::primal)), DomainError);
  }
}

TEST(Text, RoundTrip) {
  Rng rng(13);
  for (const std::int64_t p : {3, 5, 7}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 6);
      const int d = 1 + static_cast<int>(rng() % n);
      const MultiVector v = random_mv(f, n, d, rng);
      if (v.is_zero()) continue;
      EXPECT_EQ(parse_multivector(to_string(v), f, n), v);
      const MultiVector dual(f, n, d, Side::dual, v.coords());
      EXPECT_EQ(parse_multivector(to_string(dual), f, n), dual);
    }
  }
}

TEST(Text, Notation) {
  const PrimeField f(5);
  EXPECT_EQ(to_string(P(f, 6, "(1,2)-(3,4)+2(1,5)")), "(1,2)+2(1,5)-(3,4)");
  EXPECT_EQ(to_string(parse_multivector("[3,4]+[1,6]", f, 6)), "[1,6]+[3,4]");
  EXPECT_EQ(to_string(P(f, 4, "(2,1)")), "-(1,2)");
  EXPECT_TRUE(P(f, 4, "(1,1)").is_zero());
  EXPECT_EQ(P(f, 4, "3*(1,2)"), P(f, 4, "-2(1,2)"));
  EXPECT_THROW(P(f, 4, "(1,5)"), ParseError);
  EXPECT_THROW(P(f, 4, "(1,2)+(1,2,3)"), ParseError);
  EXPECT_THROW(P(f, 4, "(1,2)+[3,4]"), ParseError);
  EXPECT_THROW(P(f, 4, "(1,2"), ParseError);
  EXPECT_THROW(parse_multivector("[1,2]", f, 4, Side::primal), ParseError);
}
