#include <gtest/gtest.h>

#include "oracles.hpp"
#include "skelpot/error.hpp"
#include "skelpot/generators.hpp"
#include "skelpot/superform.hpp"
#include "test_util.hpp"

using namespace skelpot;
using testutil::q;

namespace skelpot {
void PrintTo(const SuperForm& a, std::ostream* os) {
  *os << "(" << a.p() << "," << a.q() << ") " << to_string(a);
}
}  // namespace skelpot

namespace {

SuperForm form(const std::string& text, std::size_t r) { return parse_form(text, r); }

AffineMap map(std::vector<std::vector<Rational>> rows, std::vector<Rational> translation) {
  AffineMap f{RationalMatrix(rows.size(), rows.empty() ? 0 : rows[0].size()), std::move(translation)};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) f.linear(i, j) = rows[i][j];
  }
  return f;
}

}  // namespace

TEST(Poly, ArithmeticAndPrinting) {
  const Poly x = Poly::variable(2, 0);
  const Poly y = Poly::variable(2, 1);
  const Poly p = x * x * Rational(2) + y - Poly::constant(2, q("3/4"));
  EXPECT_EQ(to_string(p), "2*x1^2 + x2 - 3/4");
  EXPECT_EQ(parse_poly("2*x1^2 + x2 - 3/4", 2), p);
  EXPECT_EQ(parse_poly("(x1 + x2)^2", 2), x * x + x * y * Rational(2) + y * y);
  EXPECT_EQ(to_string(Poly(2)), "0");
  EXPECT_EQ(p.degree(), 2u);
  EXPECT_EQ(p.derivative(0), x * Rational(4));
  EXPECT_EQ(p.eval({1, 2}), q("13/4"));
  EXPECT_THROW(parse_poly("x3", 2), InputError);
  EXPECT_THROW(parse_poly("x1 +", 2), ParseError);
}

TEST(Superform, HessianOfSquare) {
  const SuperForm psi = SuperForm::function(parse_poly("x1^2", 1));
  const SuperForm expected = form("2 d'x1 ^ d''x1", 1);
  EXPECT_EQ(d_prime(d_second(psi)), expected);
  EXPECT_EQ(d_second(d_prime(psi)), expected * Rational(-1));
  EXPECT_EQ(hessian_form(parse_poly("x1^2", 1)), expected);
  EXPECT_TRUE(d_prime(SuperForm::function(Poly::constant(1, 5))).is_zero());
}

TEST(Superform, WedgeSignsFromGenerators) {
  const SuperForm a = form("d'x1 ^ d''x1", 2);
  const SuperForm b = form("d'x2 ^ d''x2", 2);
  EXPECT_EQ(wedge(a, b), form("-1 d'x1 ^ d'x2 ^ d''x1 ^ d''x2", 2));
  EXPECT_EQ(wedge(a, SuperForm::function(Poly::constant(2, 1))), a);
  const oracle::GenForm brute = oracle::gen_wedge(oracle::from_superform(a), oracle::from_superform(b));
  EXPECT_EQ(oracle::to_superform(brute, 2, 2), wedge(a, b));
}

TEST(Superform, GradedCommutativityAndJ) {
  Rng rng(37);
  for (int n = 0; n < 200; ++n) {
    const auto r = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto p = static_cast<std::size_t>(rng.uniform(0, std::min<std::int64_t>(2, static_cast<std::int64_t>(r))));
    const auto q = static_cast<std::size_t>(rng.uniform(0, std::min<std::int64_t>(2, static_cast<std::int64_t>(r))));
    const SuperForm a = gen::form(rng, r, p, q);
    const SuperForm b = gen::form(rng, r, static_cast<std::size_t>(rng.uniform(0, 1)),
                                  static_cast<std::size_t>(rng.uniform(0, 1)));
    const std::size_t ab = (p + q) * (b.p() + b.q());
    EXPECT_EQ(wedge(a, b), wedge(b, a) * Rational(ab % 2 ? -1 : 1));
    EXPECT_EQ(J(wedge(a, b)), wedge(J(a), J(b)));
    EXPECT_EQ(J(J(a)), a);
  }
}

TEST(Superform, JExamples) {
  EXPECT_EQ(J(form("d'x1 ^ d''x2", 2)), form("-1 d'x2 ^ d''x1", 2));
  const SuperForm f = SuperForm::function(parse_poly("x1*x2 + 1", 2));
  EXPECT_EQ(J(f), f);
}

TEST(Superform, IdentitiesOnRandomForms) {
  Rng rng(41);
  for (int n = 0; n < 300; ++n) {
    const auto r = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto p = static_cast<std::size_t>(rng.uniform(0, std::min<std::int64_t>(2, static_cast<std::int64_t>(r))));
    const auto q = static_cast<std::size_t>(rng.uniform(0, std::min<std::int64_t>(2, static_cast<std::int64_t>(r))));
    const SuperForm a = gen::form(rng, r, p, q);
    EXPECT_TRUE(d_prime(d_prime(a)).is_zero());
    EXPECT_TRUE(d_second(d_second(a)).is_zero());
    EXPECT_TRUE((d_prime(d_second(a)) + d_second(d_prime(a))).is_zero());
    const oracle::GenForm g = oracle::from_superform(a);
    EXPECT_EQ(d_prime(a), oracle::to_superform(oracle::gen_d(g, false), p + 1, q));
    EXPECT_EQ(d_second(a), oracle::to_superform(oracle::gen_d(g, true), p, q + 1));
    EXPECT_EQ(J(a), oracle::to_superform(oracle::gen_J(g), q, p));
  }
}

TEST(Superform, PullbackExamples) {
  const AffineMap diagonal = map({{1}, {1}}, {0, 0});
  EXPECT_EQ(pullback(diagonal, form("d'x1 ^ d''x2", 2)), form("d'x1 ^ d''x1", 1));
  const AffineMap id = map({{1, 0}, {0, 1}}, {0, 0});
  const SuperForm a = form("(x1^2 + x2) d'x1 ^ d''x2", 2);
  EXPECT_EQ(pullback(id, a), a);
  const AffineMap shift = map({{2}}, {1});
  EXPECT_EQ(pullback(shift, SuperForm::function(parse_poly("x1^2", 1))),
            SuperForm::function(parse_poly("4*x1^2 + 4*x1 + 1", 1)));
}

TEST(Superform, HessianChainRule) {
  Rng rng(43);
  for (int n = 0; n < 50; ++n) {
    const auto r = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto s = static_cast<std::size_t>(rng.uniform(1, 3));
    const Poly psi = gen::poly(rng, r, 3, 4);
    const AffineMap f = gen::affine_map(rng, s, r);
    std::vector<Poly> subs;
    for (std::size_t i = 0; i < r; ++i) {
      Poly c = Poly::constant(s, f.translation[i]);
      for (std::size_t j = 0; j < s; ++j) c += Poly::variable(s, j) * f.linear(i, j);
      subs.push_back(c);
    }
    EXPECT_EQ(hessian_form(psi.compose(subs)), pullback(f, hessian_form(psi)));
  }
}

TEST(Positivity, QuadraticExamples) {
  const std::vector<std::vector<Rational>> points{{0, 0}, {1, -1}, {q("1/2"), 3}};
  EXPECT_TRUE(is_positive_11(hessian_form(parse_poly("x1^2 + x2^2", 2)), points).positive());
  const PositivityVerdict saddle = is_positive_11(hessian_form(parse_poly("x1^2 - x2^2", 2)), points);
  EXPECT_EQ(saddle.status, PositivityStatus::NotPositive);
  ASSERT_TRUE(saddle.witness.has_value());
  EXPECT_EQ(*saddle.witness, points[0]);
  EXPECT_TRUE(is_positive_11(hessian_form(parse_poly("(x1 + x2)^2", 2)), points).positive());
  EXPECT_EQ(is_positive_11(form("d'x1 ^ d''x2", 2), points).status, PositivityStatus::NonSymmetric);
  EXPECT_THROW(is_positive_11(form("d'x1", 2), points), InputError);
}

TEST(Positivity, RankOneIsAlphaWedgeJAlpha) {
  // alpha = d'x1 + d'x2; alpha ^ J(alpha) has the all-ones coefficient matrix.
  const SuperForm alpha = form("d'x1 + d'x2", 2);
  const SuperForm aja = wedge(alpha, J(alpha));
  EXPECT_EQ(aja * Rational(2), hessian_form(parse_poly("(x1 + x2)^2", 2)));
  EXPECT_TRUE(is_positive_11(aja, {{0, 0}}).positive());
}

TEST(Positivity, OtherBidegrees) {
  EXPECT_TRUE(positivity(SuperForm::function(parse_poly("x1^2", 1)), {{-1}, {2}}).positive());
  EXPECT_FALSE(positivity(SuperForm::function(parse_poly("x1", 1)), {{-1}}).positive());
  const SuperForm top = wedge(form("d'x1 ^ d''x1", 2), form("d'x2 ^ d''x2", 2));
  // top = -d'x12 ^ d''x12, which is the positive orientation for r = 2
  EXPECT_TRUE(positivity(top, {{0, 0}}).positive());
  EXPECT_FALSE(positivity(top * Rational(-1), {{0, 0}}).positive());
  EXPECT_THROW(positivity(form("d'x1", 2), {{0, 0}}), InputError);
}

TEST(Positivity, HessianMatchesMinorsOracle) {
  Rng rng(47);
  for (int n = 0; n < 200; ++n) {
    const auto r = static_cast<std::size_t>(rng.uniform(1, 4));
    const Poly psi = gen::convexity_sample(rng, r, n % 2 == 1);
    const std::vector<Rational> x = gen::point(rng, r);
    const RationalMatrix m = matrix_11(hessian_form(psi), x);
    oracle::Matrix copy(r, std::vector<Rational>(r));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) copy[i][j] = m(i, j);
    }
    EXPECT_EQ(is_psd(m), oracle::psd_by_minors(copy));
  }
}

TEST(Convexity, RestrictedExamples) {
  const std::vector<std::vector<Rational>> samples{{0}, {1}};
  EXPECT_TRUE(restrict_convexity_check(parse_poly("x1^2", 2), {0, 0}, {{0, 1}}, samples).positive());
  EXPECT_FALSE(restrict_convexity_check(parse_poly("-x1^2", 2), {0, 0}, {{1, 0}}, samples).positive());
  EXPECT_TRUE(restrict_convexity_check(parse_poly("x1*x2", 2), {0, 0}, {{1, 1}}, samples).positive());
  EXPECT_FALSE(restrict_convexity_check(parse_poly("x1*x2", 2), {0, 0}, {{1, -1}}, samples).positive());
  EXPECT_THROW(restrict_convexity_check(parse_poly("x1*x2", 2), {0, 0}, {{1, 1}, {2, 2}}, {{0, 0}}), InputError);
}

TEST(Integration, BoxExamples) {
  EXPECT_EQ(integrate_box(wedge(form("d'x1 ^ d''x1", 2), form("d'x2 ^ d''x2", 2)) * Rational(-1),
                          {{0, 1}, {0, 1}}),
            1);
  EXPECT_EQ(integrate_box(form("(x1) d'x1 ^ d''x1", 1), {{0, 2}}), 2);
  Rng rng(53);
  for (int n = 0; n < 20; ++n) {
    const Poly psi = gen::poly(rng, 1, 4, 4);
    const Rational a = rng.rational(-2, 0, 4);
    const Rational b = rng.rational(0, 2, 4);
    const Poly d = psi.derivative(0);
    EXPECT_EQ(integrate_box(d_prime(d_second(SuperForm::function(psi))), {{a, b}}), d.eval({b}) - d.eval({a}));
  }
  EXPECT_THROW(integrate_box(form("d'x1", 1), {{0, 1}}), InputError);
}

TEST(FormText, RoundTrip) {
  Rng rng(59);
  for (int n = 0; n < 200; ++n) {
    const auto r = static_cast<std::size_t>(rng.uniform(1, 3));
    const SuperForm a = gen::form(rng, r, static_cast<std::size_t>(rng.uniform(0, 1)),
                                  static_cast<std::size_t>(rng.uniform(0, 1)));
    // "0" carries no bidegree, so only nonzero forms round-trip
    if (a.is_zero()) continue;
    EXPECT_EQ(parse_form(to_string(a), r), a) << to_string(a);
  }
  const SuperForm a = parse_form("(2*x1^2 + x2) d'x1 ^ d''x2");
  EXPECT_EQ(a.dim(), 2u);
  EXPECT_EQ(to_string(a), "(2*x1^2 + x2) d'x1 ^ d''x2");
}

TEST(FormText, ReorderingAndErrors) {
  EXPECT_EQ(parse_form("d''x1 ^ d'x1", 1), form("-1 d'x1 ^ d''x1", 1));
  EXPECT_TRUE(parse_form("d'x1 ^ d'x1", 1).is_zero());
  EXPECT_THROW(parse_form("d'x1 + d''x1", 1), InputError);
  EXPECT_THROW(parse_form("d'y1", 1), ParseError);
  EXPECT_THROW(parse_form("(x1 d'x1", 1), ParseError);
}
