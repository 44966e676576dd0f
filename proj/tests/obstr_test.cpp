#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "brnr/obstr.hpp"
#include "brnr/random.hpp"

using namespace brnr;

namespace {

BuiltinParams at(std::int64_t p) {
  BuiltinParams bp;
  bp.p = p;
  return bp;
}

Subspace primal_span(const PrimeField& f, int n, int d, std::initializer_list<const char*> texts) {
  std::vector<Vec> vs;
  for (const char* t : texts) vs.push_back(parse_multivector(t, f, n, Side::primal).coords());
  return span(f, vs, binomial(n, d));
}

Subspace dual_span(const PrimeField& f, int n, int d, std::initializer_list<const char*> texts) {
  std::vector<Vec> vs;
  for (const char* t : texts) vs.push_back(parse_multivector(t, f, n, Side::dual).coords());
  return span(f, vs, binomial(n, d));
}

std::vector<std::size_t> dims(const ObstructionReport& r) {
  return {r.k2.dim(), r.s2.dim(), r.s2dec.dim(), r.k2max.dim(), r.k3.dim(), r.s3.dim(), r.s3dec.dim(), r.k3max.dim()};
}

}  // namespace

TEST(Projective, PointCountAndOrder) {
  for (const std::int64_t p : {3, 5}) {
    const PrimeField f(p);
    for (int k = 1; k <= 4; ++k) {
      std::uint64_t seen = 0;
      std::set<Vec> points;
      for_each_projective_point(f, k, [&](const Vec& v) {
        ++seen;
        points.insert(v);
        const auto lead = std::find_if(v.begin(), v.end(), [](Scalar x) { return x != 0; });
        EXPECT_NE(lead, v.end());
        EXPECT_EQ(*lead, 1U);
        return true;
      });
      EXPECT_EQ(seen, projective_point_count(f.p(), k));
      EXPECT_EQ(points.size(), seen);
    }
  }
}

TEST(Pipeline, Thm24Steps) {
  const PrimeField f(5);
  const ObstructionReport r = report(builtin("thm2.4", at(5)));
  EXPECT_EQ(r.k2, dual_span(f, 6, 2, {"[1,2]+[3,4]", "[1,4]+[2,5]+[3,6]", "[3,5]+[4,6]"}));
  EXPECT_EQ(r.s2, primal_span(f, 6, 2,
                              {"(1,2)-(3,4)", "(1,3)", "(1,4)-(2,5)", "(1,4)-(3,6)", "(1,5)", "(1,6)", "(2,3)",
                               "(2,4)", "(2,6)", "(3,5)-(4,6)", "(4,5)", "(5,6)"}));
  EXPECT_EQ(r.k3.dim(), 18U);
  EXPECT_EQ(r.k2max, r.k2);
  EXPECT_EQ(r.s3dec, primal_span(f, 6, 3, {"(1,5,6)"}));
  EXPECT_TRUE(r.s3.contains(parse_multivector("(1,5,6)", f, 6).coords()));
  EXPECT_TRUE(r.s3.contains(parse_multivector("(1,3,5)-(1,4,6)+(2,5,6)", f, 6).coords()));
  EXPECT_EQ(r.brnr_dim(), 0);
  EXPECT_EQ(r.h3_lower_dim(), 1);
}

TEST(Pipeline, Thm26Branches) {
  for (const std::int64_t p : {3, 5, 7}) {
    const PrimeField f(p);
    for (std::int64_t t = 1; t < p; ++t) {
      BuiltinParams bp = at(p);
      bp.t = t;
      const ObstructionReport r = report(builtin("thm2.6", bp));
      EXPECT_EQ(r.k3.dim(), 18U);
      EXPECT_EQ(r.s3.dim(), 2U);
      if (f.is_square(static_cast<Scalar>(t))) {
        EXPECT_EQ(r.s3dec, r.s3) << "p=" << p << " t=" << t;
      } else {
        EXPECT_TRUE(r.s3dec.is_zero()) << "p=" << p << " t=" << t;
        EXPECT_EQ(r.h3_lower_dim(), 2);
      }
    }
  }
}

TEST(Pipeline, Thm27S3) {
  const PrimeField f(7);
  const ObstructionReport r = report(builtin("thm2.7", at(7)));
  EXPECT_EQ(r.s3, primal_span(f, 6, 3, {"(1,2,3)+(3,4,5)+(5,6,1)", "(1,3,5)"}));
  EXPECT_EQ(r.s3dec, primal_span(f, 6, 3, {"(1,3,5)"}));
  EXPECT_EQ(r.k3max.dim() - r.k3.dim(), 1U);
}

TEST(Pipeline, Prop32) {
  const PrimeField f(3);
  const ObstructionReport r = report(builtin("prop3.2", at(3)));
  EXPECT_TRUE(r.k3.is_full());
  EXPECT_EQ(r.s2dec, primal_span(f, 4, 2, {"(2,3)", "(3,4)"}));
  EXPECT_EQ(plucker_oracle_s2(r.s2, 4, 1'000'000), r.s2dec);
  EXPECT_EQ(sdec_oracle(r.s2, 4, 2, 1'000'000), r.s2dec);
}

TEST(Pipeline, Prop33) {
  for (const std::int64_t p : {3, 5, 7}) {
    const PrimeField f(p);
    for (std::int64_t a = 0; a < p; ++a) {
      for (std::int64_t b = 0; b < p; ++b) {
        if (!quadratic_is_irreducible(f, a, b)) continue;
        BuiltinParams bp = at(p);
        bp.a = a;
        bp.b = b;
        const ObstructionReport r = report(builtin("prop3.3", bp));
        EXPECT_EQ(r.brnr_dim(), 2) << "p=" << p << " a=" << a << " b=" << b;
        EXPECT_EQ(r.h3_lower_dim(), 0) << "p=" << p << " a=" << a << " b=" << b;
      }
    }
  }
}

TEST(Pipeline, TrivialInputs) {
  const PrimeField f(5);
  EXPECT_TRUE(compute_s(Subspace::zero(f, 10), 5, 2).is_full());
  EXPECT_TRUE(compute_kmax(Subspace::full(f, 10), 5, 2).is_zero());
  EXPECT_TRUE(compute_s_dec(Subspace::zero(f, 10), 5, 3).is_zero());
  EXPECT_TRUE(compute_s_dec(Subspace::full(f, 10), 5, 2).is_full());
  EXPECT_TRUE(plucker_oracle_s2(Subspace::zero(f, 10), 5, 10).is_zero());
}

TEST(Pipeline, Extraspecial) {
  for (const std::int64_t p : {3, 5}) {
    for (int n = 1; n <= 5; ++n) {
      const ObstructionReport r = report(extraspecial(p, n));
      EXPECT_EQ(r.h3_lower_dim(), 0);
      EXPECT_EQ(r.brnr_dim(), 0);
      EXPECT_EQ(r.k3.dim(), n == 1 ? 0U : static_cast<std::size_t>(2 * n));
    }
  }
}

TEST(Oracles, AgreeOnRandomSubspaces) {
  Rng rng(23);
  const PrimeField f(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 2);
    const Subspace s = random_subspace(f, binomial(n, 2), rng() % (binomial(n, 2) + 1), rng);
    const Subspace fast = compute_s_dec(s, n, 2);
    EXPECT_TRUE(s.contains(fast));
    EXPECT_EQ(sdec_oracle(s, n, 2, 10'000'000), fast);
    EXPECT_EQ(plucker_oracle_s2(s, n, 10'000'000), fast);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const Subspace s = random_subspace(f, 4, rng() % 5, rng);
    EXPECT_EQ(sdec_oracle(s, 4, 3, 10'000'000), compute_s_dec(s, 4, 3));
  }
}

TEST(Oracles, ElementwisePlanAgrees) {
  Rng rng(41);
  const PrimeField f(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Subspace s = random_subspace(f, 20, 1 + rng() % 3, rng);
    EXPECT_EQ(detail::sdec_by_elements(s, 6, 3), compute_s_dec(s, 6, 3));
  }
  const ObstructionReport r = report(builtin("thm2.7", at(3)));
  EXPECT_EQ(detail::sdec_by_elements(r.s3, 6, 3), r.s3dec);
  EXPECT_EQ(sdec_oracle(r.s3, 6, 3, 10'000), r.s3dec);
}

TEST(Oracles, SpecExamples) {
  const PrimeField f(3);
  EXPECT_TRUE(sdec_oracle(Subspace::full(f, 6), 4, 2, 1'000'000).is_full());
  const Subspace w2 = primal_span(f, 6, 3, {"(1,3,5)-(1,4,6)+(2,5,6)"});
  EXPECT_TRUE(sdec_oracle(w2, 6, 3, 10'000).is_zero());
  const ObstructionReport r = report(builtin("thm2.4", at(3)));
  EXPECT_EQ(plucker_oracle_s2(r.s2, 6, 1'000'000), r.s2);
}

TEST(Oracles, BudgetRefusal) {
  const ObstructionReport r = report(builtin("thm2.4", at(13)));
  EXPECT_THROW(sdec_oracle(r.s2, 6, 2, 100), BudgetExceeded);
  EXPECT_THROW(plucker_oracle_s2(r.s2, 6, 100), BudgetExceeded);
}

TEST(Properties, DualityAndContainment) {
  Rng rng(29);
  for (const std::int64_t p : {3, 5, 7}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 15; ++trial) {
      const int n = 3 + static_cast<int>(rng() % 4);
      const int m = 1 + static_cast<int>(rng() % std::min<std::uint64_t>(binomial(n, 2), 5));
      const ObstructionReport r = report(random_spec(f, m, n, rng));
      EXPECT_TRUE(r.s2.contains(r.s2dec));
      EXPECT_TRUE(r.s3.contains(r.s3dec));
      EXPECT_TRUE(r.k2max.contains(r.k2));
      EXPECT_TRUE(r.k3max.contains(r.k3));
      EXPECT_EQ(r.k2max.dim() - r.k2.dim(), r.s2.dim() - r.s2dec.dim());
      EXPECT_EQ(r.k3max.dim() - r.k3.dim(), r.s3.dim() - r.s3dec.dim());
      EXPECT_EQ(r.s2.dim() + r.k2.dim(), binomial(n, 2));
    }
  }
}

TEST(Properties, BasisChangeEquivariance) {
  Rng rng(31);
  for (const std::int64_t p : {3, 5}) {
    const PrimeField f(p);
    for (const char* name : {"thm2.4", "thm2.7", "prop3.2", "peyre-p12"}) {
      const CentralExtensionSpec spec = builtin(name, at(p));
      const auto expected = dims(report(spec));
      for (int trial = 0; trial < 5; ++trial) {
        const Matrix g = random_invertible(f, static_cast<std::size_t>(spec.dim_u()), rng);
        EXPECT_EQ(dims(report(change_generator_basis(spec, g))), expected) << name;
      }
    }
  }
}

TEST(Properties, CenterReparametrization) {
  Rng rng(37);
  for (const std::int64_t p : {3, 7}) {
    const PrimeField f(p);
    for (const char* name : {"thm2.4", "thm2.7", "thm3.4"}) {
      const CentralExtensionSpec spec = builtin(name, at(p));
      const ObstructionReport base = report(spec);
      for (int trial = 0; trial < 5; ++trial) {
        // Rescaling a single v_k.
        Matrix diag = Matrix::identity(f, static_cast<std::size_t>(spec.dim_v()));
        const auto k = rng() % static_cast<std::size_t>(spec.dim_v());
        diag(k, k) = 1 + static_cast<Scalar>(rng() % (p - 1));
        EXPECT_EQ(dims(report(change_center_basis(spec, diag))), dims(base));
        // A change of basis of V never moves K2.
        const ObstructionReport moved =
            report(change_center_basis(spec, random_invertible(f, static_cast<std::size_t>(spec.dim_v()), rng)));
        EXPECT_EQ(moved.k2, base.k2);
        EXPECT_EQ(dims(moved), dims(base));
      }
    }
  }
}
