#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "brnr/fflin.hpp"
#include "brnr/random.hpp"

using namespace brnr;

TEST(PrimeField, RejectsBadModuli) {
  EXPECT_THROW(PrimeField(2), DomainError);
  EXPECT_THROW(PrimeField(9), DomainError);
  EXPECT_THROW(PrimeField(1), DomainError);
  EXPECT_THROW(PrimeField(0), DomainError);
  EXPECT_THROW(PrimeField(-7), DomainError);
  EXPECT_THROW(PrimeField(std::int64_t{1} << 31), DomainError);
  EXPECT_NO_THROW(PrimeField(2147483647));
}

TEST(PrimeField, Arithmetic) {
  const PrimeField f(7);
  EXPECT_EQ(f.reduce(-1), 6U);
  EXPECT_EQ(f.reduce(15), 1U);
  EXPECT_EQ(f.mul(3, 5), 1U);
  EXPECT_EQ(f.inv(3), 5U);
  EXPECT_THROW(f.inv(0), DomainError);
  EXPECT_EQ(f.signed_rep(6), -1);
  EXPECT_EQ(f.signed_rep(3), 3);
  for (Scalar a = 1; a < 7; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1U);
}

TEST(PrimeField, LargeModulusHasNoOverflow) {
  const PrimeField f(2147483647);
  const Scalar a = 2147483646;
  EXPECT_EQ(f.mul(a, a), 1U);
  EXPECT_EQ(f.add(a, a), 2147483645U);
  EXPECT_EQ(f.mul(a, f.inv(a)), 1U);
}

TEST(PrimeField, SquaresModSeven) {
  const PrimeField f(7);
  std::vector<Scalar> squares;
  for (Scalar t = 1; t < 7; ++t)
    if (f.is_square(t)) squares.push_back(t);
  EXPECT_EQ(squares, (std::vector<Scalar>{1, 2, 4}));
  EXPECT_FALSE(f.is_square(0));
}

TEST(Rref, SmallExample) {
  const PrimeField f(5);
  const std::vector<Vec> rows{{1, 0, 2}, {0, 1, 3}, {1, 1, 1}};
  const Echelon e = rref(Matrix::from_rows(f, 3, rows));
  EXPECT_EQ(e.rank(), 3U);
  EXPECT_EQ(e.form, Matrix::identity(f, 3));
}

TEST(Rref, IdempotentAndRankNullity) {
  Rng rng(7);
  for (const std::int64_t p : {3, 5, 7, 101}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t r = 1 + rng() % 7;
      const std::size_t c = 1 + rng() % 7;
      const Matrix m = random_matrix(f, r, c, rng);
      const Echelon once = rref(m);
      const Echelon twice = rref(once.form);
      EXPECT_EQ(once.form, twice.form);
      EXPECT_EQ(once.pivots, twice.pivots);
      const Subspace k = kernel(m);
      EXPECT_EQ(once.rank() + k.dim(), c);
      for (const Vec& v : k.basis()) {
        const Vec image = m.apply(v);
        EXPECT_TRUE(std::all_of(image.begin(), image.end(), [](Scalar x) { return x == 0; }));
      }
      EXPECT_EQ(rank(m), rank(m.transpose()));
    }
  }
}

TEST(Subspace, CanonicalFormIsBasisIndependent) {
  const PrimeField f(7);
  const std::vector<Vec> a{{1, 2, 0, 3}, {0, 1, 1, 1}};
  const std::vector<Vec> b{{1, 3, 1, 4}, {2, 4, 0, 6}, {1, 3, 1, 4}};
  EXPECT_EQ(span(f, a, 4), span(f, b, 4));
  EXPECT_EQ(span(f, a, 4).basis(), span(f, b, 4).basis());
}

TEST(Subspace, SumIntersectDimensionFormula) {
  Rng rng(11);
  const PrimeField f(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const Subspace a = random_subspace(f, n, rng() % (n + 1), rng);
    const Subspace b = random_subspace(f, n, rng() % (n + 1), rng);
    const Subspace s = subspace_sum(a, b);
    const Subspace i = intersect(a, b);
    EXPECT_EQ(s.dim() + i.dim(), a.dim() + b.dim());
    EXPECT_TRUE(s.contains(a));
    EXPECT_TRUE(a.contains(i));
    EXPECT_TRUE(b.contains(i));
  }
}

TEST(Subspace, ZeroAndFull) {
  const PrimeField f(5);
  EXPECT_TRUE(Subspace::zero(f, 4).is_zero());
  EXPECT_TRUE(Subspace::full(f, 4).is_full());
  EXPECT_EQ(kernel(Matrix(f, 2, 4)), Subspace::full(f, 4));
  EXPECT_EQ(kernel(Matrix::identity(f, 4)), Subspace::zero(f, 4));
}

TEST(Subspace, MismatchedFieldsOrLengths) {
  const PrimeField f3(3);
  const PrimeField f5(5);
  EXPECT_THROW(subspace_sum(Subspace::full(f3, 2), Subspace::full(f5, 2)), DimensionError);
  EXPECT_THROW(subspace_sum(Subspace::full(f3, 2), Subspace::full(f3, 3)), DimensionError);
  EXPECT_THROW(Subspace::full(f3, 2).contains(Vec{1, 2, 3}), DimensionError);
}

TEST(Annihilator, DoubleAnnihilator) {
  Rng rng(3);
  for (const std::int64_t p : {3, 5, 7}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 1 + rng() % 9;
      const Subspace s = random_subspace(f, n, rng() % (n + 1), rng);
      const Matrix g = random_invertible(f, n, rng);
      const Subspace a = annihilator(s, g);
      EXPECT_EQ(a.dim() + s.dim(), n);
      EXPECT_EQ(annihilator(a, g.transpose()), s);
    }
  }
}

TEST(Annihilator, SingularGramRejected) {
  const PrimeField f(5);
  EXPECT_THROW(annihilator(Subspace::full(f, 2), Matrix(f, 2, 2)), DomainError);
}

TEST(Solve, ConsistentAndInconsistent) {
  const PrimeField f(7);
  const std::vector<Vec> rows{{1, 1}, {2, 2}};
  const Matrix a = Matrix::from_rows(f, 2, rows);
  const auto x = solve(a, Vec{3, 6});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(a.apply(*x), (Vec{3, 6}));
  EXPECT_FALSE(solve(a, Vec{3, 5}).has_value());
}
