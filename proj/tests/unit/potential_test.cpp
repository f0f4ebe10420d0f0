#include <gtest/gtest.h>

#include "oracles.hpp"
#include "skelpot/error.hpp"
#include "skelpot/generators.hpp"
#include "skelpot/potential.hpp"
#include "test_util.hpp"

using namespace skelpot;
using testutil::q;

TEST(Green, PathMidpoint) {
  const GreenFunction g = green(testutil::path(2), GraphPoint::on_edge("e1", 1));
  EXPECT_EQ(eval(g.result, g.pole), q("1/2"));
  EXPECT_EQ(g.boundary_masses.mass_at(GraphPoint::vertex("a")), q("1/2"));
  EXPECT_EQ(g.boundary_masses.mass_at(GraphPoint::vertex("b")), q("1/2"));
  EXPECT_EQ(ddc(g.result).mass_at(g.pole), -1);
}

TEST(Green, ThreeStarAndOffsetPole) {
  const GreenFunction s = green(testutil::star(3), GraphPoint::vertex("c"));
  EXPECT_EQ(eval(s.result, s.pole), q("1/3"));
  for (const char* y : {"y1", "y2", "y3"}) EXPECT_EQ(s.boundary_masses.mass_at(GraphPoint::vertex(y)), q("1/3"));
  const GreenFunction o = green(testutil::path(1), GraphPoint::on_edge("e1", q("1/4")));
  EXPECT_EQ(eval(o.result, o.pole), q("3/16"));
  EXPECT_EQ(o.boundary_masses.mass_at(GraphPoint::vertex("a")), q("3/4"));
  EXPECT_EQ(o.boundary_masses.mass_at(GraphPoint::vertex("b")), q("1/4"));
}

TEST(Green, RandomGraphsAgainstNetworkOracle) {
  Rng rng(3);
  for (int n = 0; n < 20; ++n) {
    const MetricGraph g = gen::graph(rng);
    std::vector<GraphPoint> poles;
    for (const auto& v : g.vertices()) {
      if (!g.is_boundary(v)) poles.push_back(GraphPoint::vertex(v));
    }
    const Edge& e = g.edges()[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(g.edges().size()) - 1))];
    poles.push_back(GraphPoint::on_edge(e.id, e.length / 3));
    for (const auto& x : poles) {
      const GreenFunction gf = green(g, x);
      const oracle::Network net = oracle::green_network(g, x);
      EXPECT_EQ(eval(gf.result, x), net.pole_value);
      for (const auto& v : g.vertices()) EXPECT_EQ(gf.result.vertex_value(v), net.vertex_values.at(v));
      EXPECT_EQ(gf.boundary_masses.total_mass(), 1);
      const DiscreteMeasure mu = ddc(gf.result);
      EXPECT_EQ(mu.mass_at(x), -1);
    }
  }
}

TEST(Green, RejectsBoundaryPoleAndBadGraphs) {
  EXPECT_THROW(green(testutil::path(1), GraphPoint::vertex("a")), InputError);
  EXPECT_THROW(green(testutil::path(1), GraphPoint::on_edge("e1", 1)), InputError);
  const MetricGraph no_boundary({"a", "b"}, {{"e1", "a", "b", 1}}, {});
  EXPECT_THROW(green(no_boundary, GraphPoint::vertex("a")), InputError);
}

TEST(Dirichlet, HarmonicExtensionMatchesOracle) {
  Rng rng(5);
  for (int n = 0; n < 20; ++n) {
    const MetricGraph g = gen::graph(rng);
    std::map<std::string, Rational> values;
    for (const auto& b : g.boundary()) values[b] = rng.rational(-2, 2, 5);
    const HarmonicExtension h = dirichlet_solve(g, values);
    const auto expected = oracle::harmonic_values(g, values);
    for (const auto& v : g.vertices()) EXPECT_EQ(h.result.vertex_value(v), expected.at(v));
    const DiscreteMeasure mu = ddc(h.result);
    for (const auto& [x, m] : mu.atoms()) EXPECT_TRUE(x.is_vertex() && g.is_boundary(x.id()));
  }
}

TEST(Dirichlet, RejectsIncompleteOrUnknownValues) {
  const MetricGraph g = testutil::path(1);
  EXPECT_THROW(dirichlet_solve(g, {{"a", 1}}), InputError);
  EXPECT_THROW(dirichlet_solve(g, {{"a", 1}, {"b", 0}, {"z", 0}}), InputError);
}

TEST(Potential, PairingWithGreenIsMinusValue) {
  Rng rng(9);
  for (int n = 0; n < 10; ++n) {
    const MetricGraph g = gen::graph(rng);
    const PAFunction f = gen::harmonic(rng, g);
    for (const auto& v : g.vertices()) {
      if (g.is_boundary(v)) continue;
      const GraphPoint x = GraphPoint::vertex(v);
      const GreenFunction gf = green(g, x);
      // dd^c g = -delta_x + boundary masses
      EXPECT_EQ(green_pairing(f, x), -eval(f, x) + integrate(f, gf.boundary_masses));
    }
  }
}

TEST(Potential, EvaluationFormulaNeedsHarmonic) {
  const MetricGraph g = testutil::path(1);
  const PAFunction tent(g, {{"e1", {{0, 0}, {q("1/2"), 1}, {1, 0}}}});
  EXPECT_THROW(evaluation_formula_check(g, GraphPoint::on_edge("e1", q("1/3")), tent), PreconditionError);
}

TEST(Subharmonic, GreenTestAgreesWithSlopeTest) {
  Rng rng(13);
  for (int n = 0; n < 50; ++n) {
    const MetricGraph g = gen::graph(rng);
    const PAFunction f = gen::of_class(rng, g, static_cast<gen::FunctionClass>(n % 5));
    const auto slope = is_subharmonic_slope(f);
    const auto local = is_subharmonic_green(f);
    EXPECT_EQ(slope.subharmonic, local.subharmonic);
    for (const auto& w : slope.witnesses) {
      bool found = false;
      for (const auto& u : local.witnesses) found = found || u.first == w.first;
      EXPECT_TRUE(found) << describe(w.first);
    }
  }
}

TEST(Subharmonic, ConvexGreenIsSubharmonic) {
  const GreenFunction g = green(testutil::star(3), GraphPoint::vertex("c"));
  const PAFunction minus = linear_combine({{-1, g.result}});
  EXPECT_TRUE(is_subharmonic_slope(minus).subharmonic);
  EXPECT_TRUE(is_subharmonic_green(minus).subharmonic);
  EXPECT_FALSE(is_subharmonic_slope(g.result).subharmonic);
  EXPECT_FALSE(is_subharmonic_green(g.result).subharmonic);
  EXPECT_TRUE(maximum_principle_check(minus));
}
