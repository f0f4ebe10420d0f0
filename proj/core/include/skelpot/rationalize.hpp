#pragma once

#include <map>
#include <string>
#include <vector>

#include "skelpot/metric_graph.hpp"
#include "skelpot/pa_function.hpp"

namespace skelpot {

// A piecewise-affine function whose offsets and values came in as
// high-precision decimals. They are held exactly, but are not taken to lie
// on any grid; rationalize() moves them onto the 1/N grid.
struct ApproxPAFunction {
  PAFunction exact;
};

// Profiles given as decimal (or p/q) strings, parsed exactly.
ApproxPAFunction approx_from_strings(
    const MetricGraph& graph,
    const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& profiles);

struct RationalizationCheck {
  std::string name;
  bool passed = true;
  std::vector<std::string> witnesses;
};

struct RationalizationCertificate {
  Rational tol;
  Integer grid;  // N = ceil(1 / tol)
  PAFunction after_offsets;  // Step 1
  PAFunction after_values;   // Step 2
  PAFunction output;         // Step 3
  // (a) kinks on the 1/N grid, (b) vertex and kink values on the 1/N grid,
  // (c) every non-constant segment spans grid points, positive interior,
  // zero boundary.
  std::vector<RationalizationCheck> checks;
  Rational input_pairing;
  Rational pairing;
  Rational max_deviation;   // sup |output - input|
  Rational mass_bound;      // |dd^c f| total variation
  Rational deviation_bound; // mass_bound * max_deviation
  bool bound_holds = true;  // |pairing - input_pairing| <= deviation_bound

  bool checks_pass() const;
  bool certified() const { return checks_pass() && bound_holds && pairing < 0; }
};

// Moves kinks, then values, onto the 1/N grid (N = ceil(1/tol)), then adds
// flat collars where a sloped segment ends at an off-grid vertex; recomputes
// the pairing integral of f against dd^c of the result exactly.
// Requires f and g on the same graph, no edge with both ends on the boundary,
// g zero on the boundary.
RationalizationCertificate rationalize(const PAFunction& f, const ApproxPAFunction& g,
                                       const Rational& tol);

// Replaces a sloped segment [y1, y2] that ends off the 1/den grid by a
// function that is constant near the off-grid ends and affine between grid
// points y1' and y2'. Returns the breakpoints from y1 to y2 inclusive, or an
// empty profile when no two grid points fit.
Profile collar(const Breakpoint& left, const Breakpoint& right, const Integer& den);

// sup |f - g| over the graph, exact.
Rational max_deviation(const PAFunction& f, const PAFunction& g);

struct Tent {
  std::string edge;
  Rational coefficient;  // |lambda_i|
  PAFunction function;   // F_i
};

struct TentDecomposition {
  std::string center;
  std::vector<Tent> tents;  // one per edge end with nonzero slope
  Rational constant;        // f(center)
};

// f near an interior vertex x as f(x) + sum |lambda_i| F_i on the half-star,
// where F_i starts at 0 with slope sgn(lambda_i), turns at the midpoint of
// its edge and is back to 0 at the far end.
TentDecomposition tent_decompose(const PAFunction& f, const std::string& x);

// f(x) + sum |lambda_i| F_i as a function on the graph.
PAFunction tent_sum(const TentDecomposition& d, const MetricGraph& g);

}  // namespace skelpot
