#include <gtest/gtest.h>

#include "skelpot/error.hpp"
#include "test_util.hpp"

using namespace skelpot;
using testutil::q;

TEST(MetricGraph, VerticesSortedEdgesInOrder) {
  const MetricGraph g({"b", "a", "c"}, {{"x", "b", "c", 1}, {"y", "a", "b", 2}}, {"c"});
  EXPECT_EQ(g.vertices(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(g.edges()[0].id, "x");
  EXPECT_EQ(g.degree("b"), 2u);
  EXPECT_TRUE(g.is_boundary("c"));
  EXPECT_FALSE(g.is_boundary("a"));
  EXPECT_EQ(g.total_length(), 3);
  EXPECT_TRUE(g.is_connected());
}

TEST(MetricGraph, ValidationReportsEveryViolation) {
  const MetricGraph g({"a", "a", "b"},
                      {{"e", "a", "b", 0}, {"e", "a", "z", 1}, {"f", "b", "b", 1}, {"g", "b", "a", 1}}, {"q"});
  std::set<Violation::Kind> kinds;
  for (const auto& v : validate(g)) kinds.insert(v.kind);
  using K = Violation::Kind;
  for (K k : {K::DuplicateVertex, K::NonPositiveLength, K::DuplicateEdgeId, K::UnknownEndpoint, K::SelfLoop,
              K::ParallelEdge, K::BoundaryNotSubset}) {
    EXPECT_TRUE(kinds.count(k)) << to_string(k);
  }
  EXPECT_THROW(require_valid(g), InputError);
}

TEST(MetricGraph, LoopsAndMultiEdgesWhenAllowed) {
  const MetricGraph g({"a", "b"}, {{"e1", "a", "b", 1}, {"e2", "a", "b", 2}, {"e3", "b", "b", 1}}, {"a"},
                      {true, true});
  EXPECT_TRUE(validate(g).empty());
  EXPECT_EQ(g.degree("b"), 4u);
}

TEST(MetricGraph, PotentialReadiness) {
  const MetricGraph split({"a", "b", "c", "d"}, {{"e1", "a", "b", 1}, {"e2", "c", "d", 1}}, {"a"});
  EXPECT_THROW(require_potential_ready(split), InputError);
  const MetricGraph no_boundary({"a", "b"}, {{"e1", "a", "b", 1}}, {});
  EXPECT_THROW(require_potential_ready(no_boundary), InputError);
  EXPECT_NO_THROW(require_potential_ready(testutil::path(1)));
}

TEST(MetricGraph, PointsAndContainment) {
  const MetricGraph g = testutil::path(2);
  EXPECT_EQ(g.point_at("e1", 0), GraphPoint::vertex("a"));
  EXPECT_EQ(g.point_at("e1", 2), GraphPoint::vertex("b"));
  EXPECT_EQ(g.point_at("e1", 1), GraphPoint::on_edge("e1", 1));
  EXPECT_THROW(g.point_at("e1", 3), InputError);
  EXPECT_TRUE(g.contains(GraphPoint::on_edge("e1", q("1/2"))));
  EXPECT_FALSE(g.contains(GraphPoint::on_edge("e1", 2)));
  EXPECT_FALSE(g.contains(GraphPoint::vertex("z")));
  EXPECT_EQ(GraphPoint::on_edge("e1", Rational(2, 4)), GraphPoint::on_edge("e1", q("1/2")));
  EXPECT_LT(GraphPoint::vertex("z"), GraphPoint::on_edge("a", 1));
}

TEST(MetricGraph, StarAndDistance) {
  const MetricGraph g = testutil::star(3);
  EXPECT_EQ(star(g, GraphPoint::vertex("c")).size(), 3u);
  EXPECT_EQ(star(g, GraphPoint::on_edge("e1", q("1/2"))).size(), 2u);
  EXPECT_EQ(distance(g, GraphPoint::vertex("y1"), GraphPoint::vertex("y2")), 2);
  EXPECT_EQ(distance(g, GraphPoint::on_edge("e1", q("1/4")), GraphPoint::on_edge("e2", q("1/2"))), q("3/4"));
  EXPECT_EQ(distance(g, GraphPoint::on_edge("e1", q("1/4")), GraphPoint::on_edge("e1", q("3/4"))), q("1/2"));
}

TEST(MetricGraph, RefinementMapsBothWays) {
  const MetricGraph g = testutil::path(2);
  const GraphPoint p = GraphPoint::on_edge("e1", q("1/2"));
  const GraphPoint p2 = GraphPoint::on_edge("e1", q("3/2"));
  const Refinement r(g, {p, p2});
  EXPECT_EQ(r.fine().vertices().size(), 4u);
  EXPECT_EQ(r.fine().edges().size(), 3u);
  EXPECT_EQ(r.fine().total_length(), 2);
  EXPECT_TRUE(r.to_fine(p).is_vertex());
  EXPECT_EQ(r.to_coarse(r.to_fine(p)), p);
  const GraphPoint inside = GraphPoint::on_edge("e1", 1);
  EXPECT_EQ(r.to_coarse(r.to_fine(inside)), inside);
  EXPECT_EQ(r.pieces("e1").size(), 3u);
  EXPECT_EQ(r.pieces("e1")[1].start, q("1/2"));
}
