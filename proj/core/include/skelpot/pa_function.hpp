#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "skelpot/metric_graph.hpp"
#include "skelpot/rational.hpp"

namespace skelpot {

struct Breakpoint {
  Rational offset;
  Rational value;

  bool operator==(const Breakpoint&) const = default;
};

using Profile = std::vector<Breakpoint>;

// Continuous piecewise-affine function on a metric graph. Each edge carries
// a profile of breakpoints from offset 0 (the u end) to the edge length; the
// function is affine between consecutive breakpoints.
class PAFunction {
 public:
  // Throws InputError on a missing/extra profile, offsets that do not start
  // at 0, end at the length and increase strictly, or a continuity failure.
  PAFunction(MetricGraph graph, std::map<std::string, Profile> profiles);

  // Affine on every edge, interpolating the given vertex values.
  static PAFunction from_vertex_values(MetricGraph graph,
                                       const std::map<std::string, Rational>& values);
  static PAFunction constant(MetricGraph graph, const Rational& c);

  const MetricGraph& graph() const { return graph_; }
  const Profile& profile(const std::string& edge_id) const;
  const Profile& profile(std::size_t edge_index) const { return profiles_.at(edge_index); }
  const Rational& vertex_value(const std::string& vertex_id) const;

  // Breakpoints strictly inside edges, as graph points.
  std::vector<GraphPoint> interior_breakpoints() const;

  bool operator==(const PAFunction& other) const;

 private:
  PAFunction() = default;
  void check_and_index();

  MetricGraph graph_;
  std::vector<Profile> profiles_;
  std::vector<Rational> vertex_values_;
};

// Finitely supported signed measure with rational masses. Points are kept in
// GraphPoint order, distinct, and never with zero mass.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  // Merges repeated points and drops zero masses.
  explicit DiscreteMeasure(std::vector<std::pair<GraphPoint, Rational>> atoms);

  static DiscreteMeasure dirac(const GraphPoint& x, const Rational& mass = 1);

  const std::vector<std::pair<GraphPoint, Rational>>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  Rational mass_at(const GraphPoint& x) const;
  Rational total_mass() const;
  Rational total_variation() const;

  DiscreteMeasure restricted_to(const std::set<GraphPoint>& points) const;

  DiscreteMeasure operator+(const DiscreteMeasure& other) const;
  DiscreteMeasure operator-(const DiscreteMeasure& other) const;
  DiscreteMeasure operator*(const Rational& c) const;
  bool operator==(const DiscreteMeasure&) const = default;

 private:
  std::vector<std::pair<GraphPoint, Rational>> atoms_;
};

Rational eval(const PAFunction& f, const GraphPoint& x);

Rational outgoing_slope(const PAFunction& f, const TangentDirection& d);

// dd^c f: at each point, the sum of outgoing slopes over all tangent directions.
DiscreteMeasure ddc(const PAFunction& f);

Rational integrate(const PAFunction& f, const DiscreteMeasure& mu);

struct SubharmonicVerdict {
  bool subharmonic = true;
  // Offending points with the quantity that failed (a negative mass or a
  // negative Green pairing, depending on the test).
  std::vector<std::pair<GraphPoint, Rational>> witnesses;
};

// Nonnegative dd^c mass at every point off the boundary.
SubharmonicVerdict is_subharmonic_slope(const PAFunction& f);

bool is_harmonic_on(const PAFunction& f, const std::set<GraphPoint>& excluded);

// Pointwise linear combination; all functions must live on the same graph.
PAFunction linear_combine(const std::vector<std::pair<Rational, PAFunction>>& terms);

// The same function re-expressed on a refined graph.
PAFunction push_forward(const PAFunction& f, const Refinement& r);
// The coarse-graph function agreeing with a fine-graph one.
PAFunction pull_back(const PAFunction& f, const Refinement& r);
DiscreteMeasure pull_back(const DiscreteMeasure& mu, const Refinement& r);

// Refinement of f's graph at every interior breakpoint (and any extra points),
// so the pushed-forward function is affine on every edge.
Refinement refine_at_breakpoints(const PAFunction& f, const std::vector<GraphPoint>& extra = {});

// max |slope| over all segments.
Rational lipschitz_constant(const PAFunction& f);

}  // namespace skelpot
