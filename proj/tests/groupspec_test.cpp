#include <gtest/gtest.h>

#include "brnr/groupspec.hpp"
#include "brnr/random.hpp"

using namespace brnr;

namespace {

BuiltinParams at(std::int64_t p) {
  BuiltinParams bp;
  bp.p = p;
  return bp;
}

MultiVector D(const PrimeField& f, int n, const char* text) { return parse_multivector(text, f, n, Side::dual); }

}  // namespace

TEST(Gamma, Thm24DualImage) {
  for (const std::int64_t p : {3, 5, 7}) {
    const PrimeField f(p);
    const CentralExtensionSpec spec = builtin("thm2.4", at(p));
    EXPECT_EQ(spec.relations().size(), 7U);
    const GammaMap g = build_gamma(spec);
    EXPECT_EQ(g.dual_image(0), D(f, 6, "[1,2]+[3,4]"));
    EXPECT_EQ(g.dual_image(1), D(f, 6, "[1,4]+[2,5]+[3,6]"));
    EXPECT_EQ(g.dual_image(2), D(f, 6, "[3,5]+[4,6]"));
    EXPECT_TRUE(check_commutator_full(g));
    EXPECT_TRUE(check_center_minimal(g));
  }
}

TEST(Gamma, Thm26DualImage) {
  const PrimeField f(7);
  BuiltinParams bp = at(7);
  bp.t = 3;
  const GammaMap g = build_gamma(builtin("thm2.6", bp));
  EXPECT_EQ(g.dual_image(2), D(f, 6, "[3,6]-3[1,5]-[2,4]"));
}

TEST(Gamma, EmptyRelationsGiveZeroMap) {
  const PrimeField f(5);
  const CentralExtensionSpec spec(f, 1, 3, {});
  const GammaMap g = build_gamma(spec);
  EXPECT_TRUE(g.gamma.is_zero());
  EXPECT_FALSE(check_commutator_full(g));
  EXPECT_THROW(validate_for_report(spec), DomainError);
}

TEST(Gamma, CenterMinimality) {
  const PrimeField f(3);
  for (int n = 1; n <= 4; ++n) {
    const GammaMap g = build_gamma(extraspecial(3, n));
    EXPECT_TRUE(check_commutator_full(g));
    EXPECT_TRUE(check_center_minimal(g));
  }
  const CentralExtensionSpec unused(f, 1, 3, {{1, 2, {1}}});
  EXPECT_FALSE(check_center_minimal(build_gamma(unused)));
  EXPECT_TRUE(check_center_minimal(build_gamma(builtin("thm2.7", at(3)))));
}

TEST(Builtins, Extraspecial) {
  for (int n = 1; n <= 5; ++n) {
    const CentralExtensionSpec s = extraspecial(5, n);
    ASSERT_EQ(s.relations().size(), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(s.relations()[i].i, 2 * i + 1);
      EXPECT_EQ(s.relations()[i].j, 2 * i + 2);
      EXPECT_EQ(s.relations()[i].exponents, (std::vector<std::int64_t>{1}));
    }
  }
  EXPECT_THROW(extraspecial(3, 0), DomainError);
}

TEST(Builtins, PeyreK2) {
  const PrimeField f(5);
  const CentralExtensionSpec s = builtin("peyre-p12", at(5));
  EXPECT_EQ(s.dim_v(), 6);
  EXPECT_EQ(s.dim_u(), 6);
  std::vector<Vec> expected;
  for (const char* t : {"[1,2]-[4,5]", "[2,3]-[5,6]", "[1,4]", "[2,5]", "[3,6]", "[4,6]"})
    expected.push_back(D(f, 6, t).coords());
  EXPECT_EQ(row_space(build_gamma(s).gamma), span(f, expected, 15));
}

TEST(Builtins, Prop33CombinedEntry) {
  const PrimeField f(7);
  BuiltinParams bp = at(7);
  bp.a = 2;
  bp.b = 3;
  ASSERT_TRUE(quadratic_is_irreducible(f, 2, 3));
  const CentralExtensionSpec s = builtin("prop3.3", bp);
  const Vec e24 = s.exponent(2, 4);
  EXPECT_EQ(e24[1], 1U);
  EXPECT_EQ(e24[2], f.reduce(-2));
}

TEST(Builtins, ParameterDomains) {
  BuiltinParams bp = at(7);
  bp.t = 7;
  EXPECT_THROW(builtin("thm2.6", bp), DomainError);
  bp.t = -4;
  EXPECT_NO_THROW(builtin("thm2.6", bp));
  bp = at(5);
  bp.a = 0;
  bp.b = 1;  // X^2 + 1 = (X-2)(X+2) mod 5
  EXPECT_THROW(builtin("prop3.3", bp), DomainError);
  bp.a = 1;
  EXPECT_NO_THROW(builtin("prop3.3", bp));
  EXPECT_THROW(builtin("nope", at(3)), DomainError);
  EXPECT_THROW(builtin("thm2.4", at(9)), DomainError);
}

TEST(Builtins, Thm34Variants) {
  const PrimeField f(3);
  BuiltinParams bp = at(3);
  const GammaMap sec3 = build_gamma(builtin("thm3.4", bp));
  bp.variant = Thm34Sign::printed;
  const GammaMap printed = build_gamma(builtin("thm3.4", bp));
  EXPECT_EQ(sec3.m, 9);
  EXPECT_EQ(sec3.dual_image(6), D(f, 6, "[3,4]+[1,6]"));
  EXPECT_EQ(printed.dual_image(6), D(f, 6, "[3,4]-[1,6]"));
}

TEST(Presentation, ParseThm24) {
  const char* text =
      "# order 5^9\n"
      "p = 5\ncenter = 3\ngenerators = 6\n"
      "rel [u1, u2] = v1\nrel [u3, u4] = v1\nrel [u1, u4] = v2\nrel [u2, u5] = v2\n"
      "rel [u3, u6] = v2\nrel [u3, u5] = v3\nrel [u4, u6] = v3\n";
  const CentralExtensionSpec s = parse_presentation(text);
  EXPECT_EQ(build_gamma(s).gamma, build_gamma(builtin("thm2.4", at(5))).gamma);
}

TEST(Presentation, ExponentsAndIdentity) {
  const CentralExtensionSpec s = parse_presentation(
      "p = 7\ncenter = 2\ngenerators = 3\nrel [u1,u2] = v1^-1 v2^{3}\nrel [u1,u3] = 1\nrel [u1,u2] = v1\n");
  EXPECT_EQ(s.exponent(1, 2), (Vec{0, 3}));
  EXPECT_EQ(s.exponent(1, 3), (Vec{0, 0}));
}

TEST(Presentation, Errors) {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_presentation(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("p = 3\ncenter = 1\ngenerators = 2\nrel [u2, u1] = v1\n"), 4U);
  EXPECT_EQ(line_of("p = 3\ncenter = 1\ngenerators = 2\nrel [u1, u3] = v1\n"), 4U);
  EXPECT_EQ(line_of("p = 3\ncenter = 1\ngenerators = 2\nrel [u1, u2] = v2\n"), 4U);
  EXPECT_EQ(line_of("p = 3\ngenerators = 2\n"), 2U);
  EXPECT_EQ(line_of("p = 3\ncenter = 1\ngenerators = 2\nfoo\n"), 4U);
  EXPECT_GT(line_of("p = 3\ncenter = 1\n"), 0U);
  EXPECT_THROW(parse_presentation("p = 9\ncenter = 1\ngenerators = 2\n"), DomainError);
}

TEST(Presentation, RoundTrip) {
  Rng rng(17);
  for (const std::int64_t p : {3, 5, 7}) {
    for (const std::string& name : builtin_names()) {
      BuiltinParams bp = at(p);
      if (name == "prop3.3") {
        const PrimeField f(p);
        for (bp.a = 0; bp.a < p; ++bp.a) {
          bool found = false;
          for (bp.b = 0; bp.b < p && !(found = quadratic_is_irreducible(f, bp.a, bp.b)); ++bp.b) {
          }
          if (found) break;
        }
      }
      const CentralExtensionSpec s = builtin(name, bp);
      const CentralExtensionSpec back = parse_presentation(format_presentation(s));
      EXPECT_EQ(build_gamma(back).gamma, build_gamma(s).gamma) << name;
      EXPECT_EQ(back.relations().size(), s.relations().size()) << name;
      const CentralExtensionSpec via_gamma = spec_from_gamma(build_gamma(s).gamma, s.dim_u());
      EXPECT_EQ(build_gamma(via_gamma).gamma, build_gamma(s).gamma) << name;
    }
    const CentralExtensionSpec r = random_spec(PrimeField(p), 3, 5, rng);
    EXPECT_EQ(build_gamma(parse_presentation(format_presentation(r))).gamma, build_gamma(r).gamma);
  }
}
