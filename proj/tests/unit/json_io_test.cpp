#include <gtest/gtest.h>

#include "skelpot/error.hpp"
#include "skelpot/generators.hpp"
#include "skelpot/json_io.hpp"
#include "skelpot/potential.hpp"
#include "test_util.hpp"

using namespace skelpot;
using testutil::q;

TEST(Json, GraphRoundTrip) {
  Rng rng(61);
  for (int n = 0; n < 20; ++n) {
    const MetricGraph g = gen::graph(rng);
    EXPECT_EQ(io::graph_from_json(io::to_json(g)), g);
  }
  const MetricGraph loops({"a"}, {{"e1", "a", "a", 1}}, {"a"}, {true, false});
  const io::json j = io::to_json(loops);
  EXPECT_TRUE(j["allow_loops"].get<bool>());
  EXPECT_FALSE(j.contains("allow_multi"));
  EXPECT_EQ(io::graph_from_json(j), loops);
}

TEST(Json, FunctionRoundTrip) {
  Rng rng(67);
  for (int n = 0; n < 20; ++n) {
    const MetricGraph g = gen::graph(rng);
    const PAFunction f = gen::pa_function(rng, g);
    EXPECT_EQ(io::function_from_json(io::to_json(f)), f);
  }
}

TEST(Json, DefaultsAndAlternateForms) {
  const io::json graph = io::parse_json(R"({"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "length": 2}],
                                            "boundary": ["a"]})");
  const MetricGraph g = io::graph_from_json(graph);
  EXPECT_EQ(g.edges()[0].id, "e1");
  EXPECT_EQ(g.edges()[0].length, 2);
  const io::json values = {{"graph", graph}, {"vertex_values", {{"a", "0"}, {"b", "1/2"}}}};
  const PAFunction f = io::function_from_json(values);
  EXPECT_EQ(eval(f, GraphPoint::on_edge("e1", 1)), q("1/4"));
  EXPECT_EQ(io::rational_from_json(io::json("0.25"), "x"), q("1/4"));
  EXPECT_EQ(io::rational_from_json(io::json(3), "x"), 3);
  EXPECT_THROW(io::rational_from_json(io::json(0.5), "x"), InputError);
}

TEST(Json, GraphByRelativePath) {
  testutil::TempDir dir;
  dir.write("g.json", io::to_json(testutil::path(1)).dump());
  const std::string file = dir.write("f.json", R"({"graph": "g.json", "vertex_values": {"a": 0, "b": 1}})");
  const PAFunction f = io::function_from_json(io::load_json(file), std::filesystem::path(file).parent_path());
  EXPECT_EQ(f.vertex_value("b"), 1);
}

TEST(Json, PointsAndMeasures) {
  const GraphPoint p = GraphPoint::on_edge("e1", q("1/3"));
  EXPECT_EQ(io::point_from_json(io::to_json(p)), p);
  EXPECT_EQ(io::point_from_json(io::to_json(GraphPoint::vertex("v"))), GraphPoint::vertex("v"));
  EXPECT_THROW(io::point_from_json(io::parse_json(R"({"vertex": "a", "edge": "e1"})")), InputError);
  const DiscreteMeasure mu({{p, q("-1/2")}, {GraphPoint::vertex("a"), 2}});
  EXPECT_EQ(io::measure_from_json(io::to_json(mu)), mu);
}

TEST(Json, SyntaxErrorsCarryPosition) {
  try {
    io::parse_json("{\n  \"a\": [1, 2,,]\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(Json, InvalidGraphRejected) {
  EXPECT_THROW(io::graph_from_json(io::parse_json(R"({"vertices": ["a"], "edges": [{"u": "a", "v": "z", "length": 1}],
                                                     "boundary": []})")),
               InputError);
  EXPECT_THROW(io::graph_from_json(io::parse_json(R"({"vertices": ["a"]})")), InputError);
}

TEST(Json, GreenOutputShape) {
  const io::json j = io::to_json(green(testutil::path(2), GraphPoint::on_edge("e1", 1)));
  EXPECT_EQ(j["value_at_pole"], "1/2");
  EXPECT_EQ(j["boundary_masses"].size(), 2u);
  EXPECT_EQ(j["pole"]["edge"], "e1");
}
