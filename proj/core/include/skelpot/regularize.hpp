#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "skelpot/metric_graph.hpp"
#include "skelpot/pa_function.hpp"

namespace skelpot {

// Symmetric convex 1-Lipschitz positive function equal to |t| for
// |t| >= eps; t^2/(2 eps) + eps/2 inside the band.
double theta(double eps, double t);

// (a + b + theta_eps(a - b)) / 2. Returns max(a, b) exactly once
// |a - b| >= eps. Overshoots max(a, b) by at most eps/4.
double smooth_max(double eps, double a, double b);

// Smooth maximum of t_0..t_n with budget delta:
//   max <= M <= max + delta/2, M(t + c) = M(t) + c, nondecreasing, and any
//   t_l with t_l + delta <= max_{j != l} t_j is ignored bit-exactly.
// Realized as E[max_i (t_i + delta (U_i - 1/2))] for independent uniform U_i,
// integrated exactly on the piecewise-polynomial distribution function.
double smooth_max_n(double delta, std::span<const double> t);

// Real-valued expression tree over a metric graph.
class SmoothedFunction {
 public:
  struct Node;

  static SmoothedFunction leaf(PAFunction f);
  // Defined on the open star of `center`: value + slope * (distance from the
  // center) along each incident edge end. `slopes` is keyed by edge id and
  // end (U or V) of the edge attached to the center.
  static SmoothedFunction star_affine(MetricGraph graph, std::string center, Rational value,
                                      std::map<std::pair<std::string, End>, Rational> slopes);
  static SmoothedFunction shift(double c, SmoothedFunction child);
  static SmoothedFunction smooth_max(double eps, SmoothedFunction a, SmoothedFunction b);
  // `inside` on the open star of `center`, `outside` elsewhere.
  static SmoothedFunction local(std::string center, SmoothedFunction inside, SmoothedFunction outside);

  const MetricGraph& graph() const;
  double operator()(const GraphPoint& x) const;

 private:
  explicit SmoothedFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

double eval_smoothed(const SmoothedFunction& s, const GraphPoint& x);

// (s(o - h) - 2 s(o) + s(o + h)) / h^2 along an edge; requires
// 0 <= o - h and o + h <= length.
double arc_second_difference(const SmoothedFunction& s, const std::string& edge,
                             const Rational& offset, const Rational& h);

// Sum over edge ends at a vertex of (s(point at distance h) - s(v)) / h.
double vertex_derivative_sum(const SmoothedFunction& s, const std::string& vertex, const Rational& h);

struct PatchArc {
  std::string edge;   // working-graph edge attached to the peak
  End end;            // which end of that edge is the peak
  Rational length;
  Rational f_slope;   // outgoing slope of f at the peak
  Rational g_slope;   // slope of the dominated affine cone
  Rational gap;       // f - G at the far end
  Rational eps;       // gap / 3
};

struct Patch {
  GraphPoint peak;        // in the input graph's coordinates
  std::string center;     // the peak's vertex in the working graph
  Rational value;         // f(peak) = G(peak)
  Rational mass;          // dd^c f at the peak
  std::vector<PatchArc> arcs;
};

// Decreasing sequence f_k -> f of functions that are convex along edges and
// balanced at peaks: on the open star V_x of each peak,
//   f_k = m_{eps_k / 2}(G_x + eps_k, f),  and f_k = f elsewhere,
// with eps_{k+1} = eps_k / 4.
class RegularizationSequence {
 public:
  RegularizationSequence(PAFunction base, Refinement working, std::vector<Patch> patches,
                         Rational epsilon0);

  // The input function and graph.
  const PAFunction& base() const { return base_; }
  // f on the working graph (peaks are vertices, stars pairwise disjoint).
  const PAFunction& working_function() const { return working_function_; }
  const Refinement& refinement() const { return working_; }
  const std::vector<Patch>& patches() const { return patches_; }

  Rational epsilon_exact(std::size_t k) const;
  double epsilon(std::size_t k) const;
  // f_k over the working graph.
  SmoothedFunction term(std::size_t k) const;

 private:
  PAFunction base_;
  Refinement working_;
  PAFunction working_function_;
  std::vector<Patch> patches_;
  Rational epsilon0_;
};

// Throws PreconditionError unless f is subharmonic off the boundary.
RegularizationSequence build_regularization(const PAFunction& f);

}  // namespace skelpot
