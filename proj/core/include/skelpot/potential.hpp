#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skelpot/metric_graph.hpp"
#include "skelpot/pa_function.hpp"

namespace skelpot {

struct HarmonicExtension {
  PAFunction result;
  std::map<std::string, Rational> boundary_values;
};

// Harmonic off the boundary (affine on edges, Kirchhoff balance at interior
// vertices) with the prescribed boundary values. Requires a connected graph,
// a nonempty boundary and exactly one value per boundary vertex.
HarmonicExtension dirichlet_solve(const MetricGraph& g,
                                  const std::map<std::string, Rational>& boundary_values);

struct GreenFunction {
  GraphPoint pole;
  PAFunction result;
  DiscreteMeasure boundary_masses;
};

// Green's function with pole x: zero on the boundary, dd^c = -delta_x plus a
// probability measure on the boundary. An edge-interior pole is solved on
// the subdivided graph and mapped back, so the result lives on g with the
// pole as a breakpoint.
GreenFunction green(const MetricGraph& g, const GraphPoint& x);

// (h(x), integral of h against the boundary masses of green(g, x)). The two
// agree for every h harmonic off the boundary.
std::pair<Rational, Rational> evaluation_formula_check(const MetricGraph& g, const GraphPoint& x,
                                                       const PAFunction& h);

// Integral of f against dd^c of the Green function of the whole graph with
// pole x; equals h_f(x) - f(x) for h_f the harmonic extension of f's
// boundary values.
Rational green_pairing(const PAFunction& f, const GraphPoint& x);

// Local Green test. For every sampled interior point x, pairs f with dd^c
// of the Green function of a small star around x (half of each adjacent arc
// of the breakpoint refinement). Default samples: interior vertices,
// interior breakpoints of f and edge midpoints.
SubharmonicVerdict is_subharmonic_green(const PAFunction& f,
                                        std::optional<std::vector<GraphPoint>> sample = std::nullopt);

// f <= harmonic extension of f's boundary values at every vertex and
// breakpoint. Throws PreconditionError unless f passes the slope test.
bool maximum_principle_check(const PAFunction& f);

}  // namespace skelpot
