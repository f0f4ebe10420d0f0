#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "skelpot/error.hpp"
#include "skelpot/generators.hpp"
#include "skelpot/potential.hpp"
#include "skelpot/regularize.hpp"
#include "test_util.hpp"

using namespace skelpot;
using testutil::q;

TEST(SmoothMax, ThetaShape) {
  EXPECT_EQ(theta(1, 2), 2);
  EXPECT_EQ(theta(1, -1), 1);
  EXPECT_DOUBLE_EQ(theta(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(theta(2, 1), 0.25 + 1);
}

TEST(SmoothMax, TwoArguments) {
  EXPECT_EQ(smooth_max(1, 3, 1), 3);
  EXPECT_EQ(smooth_max(1, 1, 2), 2);
  EXPECT_DOUBLE_EQ(smooth_max(1, 0, 0), 0.25);
  EXPECT_DOUBLE_EQ(smooth_max(1, 0.5, 0), 0.5 + 0.0625);
}

TEST(SmoothMax, ManyArgumentsAgainstQuadrature) {
  Rng rng(17);
  for (int n = 0; n < 500; ++n) {
    std::vector<double> t(static_cast<std::size_t>(rng.uniform(1, 7)));
    for (auto& x : t) x = 2 * rng.unit() - 1;
    const double delta = 0.05 + rng.unit();
    EXPECT_NEAR(smooth_max_n(delta, t), oracle::smooth_max_quadrature(delta, t), 1e-12);
  }
}

TEST(SmoothMax, SingleAndSeparatedArguments) {
  const std::vector<double> one{0.3};
  EXPECT_EQ(smooth_max_n(1, one), 0.3);
  const std::vector<double> far{0, 5};
  EXPECT_EQ(smooth_max_n(1, far), 5);
  const std::vector<double> tied{0, 0};
  // E max of two independent uniforms on [-1/2, 1/2] is 1/6.
  EXPECT_NEAR(smooth_max_n(1, tied), 1.0 / 6, 1e-15);
}

TEST(Regularization, RejectsNonSubharmonic) {
  const PAFunction tent(testutil::path(1), {{"e1", {{0, 0}, {q("1/2"), 1}, {1, 0}}}});
  EXPECT_THROW(build_regularization(tent), PreconditionError);
}

TEST(Regularization, EpsilonScheduleQuarters) {
  const GreenFunction g = green(testutil::star(3), GraphPoint::vertex("c"));
  const RegularizationSequence seq = build_regularization(linear_combine({{-1, g.result}}));
  ASSERT_EQ(seq.patches().size(), 1u);
  EXPECT_EQ(seq.patches()[0].peak, GraphPoint::vertex("c"));
  EXPECT_EQ(seq.patches()[0].mass, 1);
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(seq.epsilon_exact(k + 1) * 4, seq.epsilon_exact(k));
    EXPECT_DOUBLE_EQ(seq.epsilon(k), to_double(seq.epsilon_exact(k)));
  }
  EXPECT_GT(seq.epsilon_exact(0), 0);
}

TEST(Regularization, TermsAreMonotoneCloseAndConvex) {
  Rng rng(19);
  for (int n = 0; n < 5; ++n) {
    const MetricGraph g = gen::graph(rng, {3, 6, 8, 10, Rational(1, 2), Rational(3), false});
    const PAFunction f = gen::subharmonic(rng, g);
    const RegularizationSequence seq = build_regularization(f);
    const MetricGraph& wg = seq.refinement().fine();
    for (const auto& e : wg.edges()) {
      for (int j = 1; j < 8; ++j) {
        const Rational o = e.length * j / 8;
        const GraphPoint x = GraphPoint::on_edge(e.id, o);
        double previous = INFINITY;
        for (std::size_t k = 0; k < 6; ++k) {
          const SmoothedFunction fk = seq.term(k);
          const double v = fk(x);
          EXPECT_LE(v, previous + 1e-12);
          EXPECT_LE(std::abs(v - to_double(eval(seq.working_function(), x))), 1.25 * seq.epsilon(k));
          const Rational h = std::min(o, Rational(e.length - o));
          EXPECT_GE(arc_second_difference(fk, e.id, o, h), -1e-9);
          previous = v;
        }
      }
    }
  }
}

TEST(Regularization, AwayFromPeaksTermsEqualF) {
  const GreenFunction g = green(testutil::path(4), GraphPoint::on_edge("e1", 2));
  const PAFunction f = linear_combine({{-1, g.result}});
  const RegularizationSequence seq = build_regularization(f);
  const SmoothedFunction f3 = seq.term(3);
  EXPECT_EQ(f3(GraphPoint::vertex("a")), 0);
  EXPECT_EQ(f3(GraphPoint::vertex("b")), 0);
}

TEST(SmoothedFunction, ExpressionNodes) {
  const MetricGraph g = testutil::path(2);
  const PAFunction f(g, {{"e1", {{0, 0}, {2, 2}}}});
  const SmoothedFunction leaf = SmoothedFunction::leaf(f);
  const SmoothedFunction shifted = SmoothedFunction::shift(0.5, leaf);
  const GraphPoint mid = GraphPoint::on_edge("e1", 1);
  EXPECT_EQ(leaf(mid), 1);
  EXPECT_EQ(shifted(mid), 1.5);
  const SmoothedFunction flat = SmoothedFunction::leaf(PAFunction::constant(g, 1));
  EXPECT_DOUBLE_EQ(SmoothedFunction::smooth_max(1, leaf, flat)(mid), 1.25);
  EXPECT_EQ(SmoothedFunction::smooth_max(1, leaf, flat)(GraphPoint::vertex("b")), 2);
  EXPECT_EQ(eval_smoothed(leaf, mid), 1);
}
