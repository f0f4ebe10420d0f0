#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "skelpot/metric_graph.hpp"
#include "skelpot/pa_function.hpp"
#include "skelpot/poly.hpp"
#include "skelpot/random.hpp"
#include "skelpot/rationalize.hpp"
#include "skelpot/superform.hpp"

namespace skelpot::gen {

struct GraphShape {
  std::size_t min_vertices = 3;
  std::size_t max_vertices = 12;
  std::size_t max_edges = 18;
  std::int64_t max_den = 10;
  Rational min_length{1, 2};
  Rational max_length{3};
  // No edge with both endpoints on the boundary.
  bool separated_boundary = false;
};

// Connected, simple, at least one boundary and one interior vertex.
// Vertices are v0, v1, ...; edges e1, e2, ...
MetricGraph graph(Rng& rng, const GraphShape& shape = {});

// Random vertex values in [-3, 3] plus up to `max_kinks` interior kinks per
// edge at offsets k L / m (m <= 6).
PAFunction pa_function(Rng& rng, const MetricGraph& g, std::size_t max_kinks = 2);

// Harmonic extension of random boundary values in [-2, 2].
PAFunction harmonic(Rng& rng, const MetricGraph& g);

// Harmonic part plus sum of c_i times minus the Green function of poles at
// interior vertices or at L/4, L/2, 3L/4 of edges.
PAFunction subharmonic(Rng& rng, const MetricGraph& g, std::size_t max_poles = 3);

enum class FunctionClass { Subharmonic, Superharmonic, Harmonic, Random, Mixed };
const char* class_name(FunctionClass c);

// Cycles through the classes by index so every class is represented.
PAFunction of_class(Rng& rng, const MetricGraph& g, FunctionClass c);

// Star with center "c", leaves y1..yd (the boundary), edge i joining c to yi;
// f affine on each edge, some slopes zero.
PAFunction star_function(Rng& rng, std::size_t degree);

struct PerturbedGreen {
  PAFunction f;
  ApproxPAFunction g;
  GraphPoint pole;
  Rational tol;
  Rational mass_bound;  // |dd^c f| (1 + Lip G)
};

// f = Green function plus a harmonic function, so the pairing with the Green
// function at the pole is -g(pole) < 0; G is that Green function with kinks
// and interior values moved by about 1e-7 and written as 12-digit decimals.
// Redraws until the pairing margin is at least 10 tol mass_bound.
PerturbedGreen perturbed_green(Rng& rng, const Rational& tol);

// Text of q rounded to `digits` decimals.
std::string decimal_string(const Rational& q, int digits);

Poly poly(Rng& rng, std::size_t r, unsigned max_degree, std::size_t max_terms);
SuperForm form(Rng& rng, std::size_t r, std::size_t p, std::size_t q, unsigned max_degree = 3);
AffineMap affine_map(Rng& rng, std::size_t source, std::size_t target);
std::vector<Rational> point(Rng& rng, std::size_t r);

// Quadratic or quartic polynomial in r variables; convex about half the time.
Poly convexity_sample(Rng& rng, std::size_t r, bool quartic);

}  // namespace skelpot::gen
