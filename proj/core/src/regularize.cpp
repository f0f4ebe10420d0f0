#include "skelpot/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <variant>

#include "skelpot/error.hpp"

namespace skelpot {
namespace {

void require_positive(double eps, const char* name) {
  if (!(eps > 0) || !std::isfinite(eps)) {
    throw InputError(std::string(name) + " must be a positive finite number");
  }
}

}  // namespace

double theta(double eps, double t) {
  require_positive(eps, "epsilon");
  const double a = std::abs(t);
  if (a >= eps) return a;
  return t * t / (2 * eps) + eps / 2;
}

double smooth_max(double eps, double a, double b) {
  require_positive(eps, "epsilon");
  if (std::abs(a - b) >= eps) return std::max(a, b);
  return (a + b + theta(eps, a - b)) / 2;
}

double smooth_max_n(double delta, std::span<const double> t) {
  require_positive(delta, "delta");
  if (t.empty()) throw InputError("smooth_max_n needs at least one argument");
  for (double x : t) {
    if (!std::isfinite(x)) throw InputError("smooth_max_n arguments must be finite");
  }
  const double top = *std::max_element(t.begin(), t.end());
  const double cutoff = top - delta;
  std::vector<double> active;
  for (double x : t) {
    if (x > cutoff) active.push_back(x);
  }
  if (active.size() == 1) return top;
  std::sort(active.begin(), active.end());

  // In z = (s - top + delta/2) / delta, argument j is uniform on
  // [c_j, c_j + 1] with c_j = (t_j - top) / delta in (-1, 0], and its
  // distribution function on [0, 1] is min(z - c_j, 1), saturating at
  // b_j = 1 + c_j. Integrate 1 - prod_j F_j(z) over [0, 1].
  std::vector<double> c(active.size());
  for (std::size_t j = 0; j < active.size(); ++j) c[j] = (active[j] - top) / delta;
  std::vector<double> cuts{0.0, 1.0};
  for (double cj : c) {
    const double b = 1 + cj;
    if (b > 0 && b < 1) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double integral = 0;
  std::vector<double> poly;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double width = cuts[k + 1] - lo;
    // Product of the unsaturated factors (u + (lo - c_j)), u in [0, width].
    poly.assign(1, 1.0);
    for (double cj : c) {
      if (1 + cj <= lo) continue;
      const double shift = lo - cj;
      poly.push_back(0.0);
      for (std::size_t m = poly.size() - 1; m > 0; --m) poly[m] = poly[m] * shift + poly[m - 1];
      poly[0] *= shift;
    }
    double area = 0;
    double power = width;
    for (std::size_t m = 0; m < poly.size(); ++m) {
      area += poly[m] * power / static_cast<double>(m + 1);
      power *= width;
    }
    integral += width - area;
  }
  return top - delta / 2 + delta * integral;
}

struct SmoothedFunction::Node {
  struct Leaf {
    PAFunction f;
  };
  struct StarAffine {
    MetricGraph graph;
    std::string center;
    Rational value;
    std::map<std::pair<std::string, End>, Rational> slopes;
  };
  struct Shift {
    double c;
    SmoothedFunction child;
  };
  struct Max {
    double eps;
    SmoothedFunction a;
    SmoothedFunction b;
  };
  struct Local {
    std::string center;
    SmoothedFunction inside;
    SmoothedFunction outside;
  };
  std::variant<Leaf, StarAffine, Shift, Max, Local> kind;
};

namespace {

bool in_open_star(const MetricGraph& g, const std::string& center, const GraphPoint& x) {
  if (x.is_vertex()) return x.id() == center;
  const Edge& e = g.edge(x.id());
  return e.u == center || e.v == center;
}

}  // namespace

SmoothedFunction SmoothedFunction::leaf(PAFunction f) {
  return SmoothedFunction(std::make_shared<const Node>(Node{Node::Leaf{std::move(f)}}));
}

SmoothedFunction SmoothedFunction::star_affine(MetricGraph graph, std::string center, Rational value,
                                               std::map<std::pair<std::string, End>, Rational> slopes) {
  const std::size_t c = graph.vertex_index(center);
  for (const auto& end : graph.incident(c)) {
    const Edge& e = graph.edges()[end.edge];
    if (e.u == e.v) throw InputError("star of '" + center + "' contains a loop; subdivide it first");
    if (!slopes.count({e.id, end.end})) {
      throw InputError("missing slope for edge '" + e.id + "' at '" + center + "'");
    }
  }
  return SmoothedFunction(std::make_shared<const Node>(
      Node{Node::StarAffine{std::move(graph), std::move(center), std::move(value), std::move(slopes)}}));
}

SmoothedFunction SmoothedFunction::shift(double c, SmoothedFunction child) {
  return SmoothedFunction(std::make_shared<const Node>(Node{Node::Shift{c, std::move(child)}}));
}

SmoothedFunction SmoothedFunction::smooth_max(double eps, SmoothedFunction a, SmoothedFunction b) {
  require_positive(eps, "epsilon");
  if (!(a.graph() == b.graph())) throw InputError("smooth_max of functions on different graphs");
  return SmoothedFunction(std::make_shared<const Node>(Node{Node::Max{eps, std::move(a), std::move(b)}}));
}

SmoothedFunction SmoothedFunction::local(std::string center, SmoothedFunction inside,
                                         SmoothedFunction outside) {
  if (!(inside.graph() == outside.graph())) throw InputError("local patch on a different graph");
  inside.graph().vertex_index(center);
  return SmoothedFunction(std::make_shared<const Node>(
      Node{Node::Local{std::move(center), std::move(inside), std::move(outside)}}));
}

const MetricGraph& SmoothedFunction::graph() const {
  struct Visitor {
    const MetricGraph& operator()(const Node::Leaf& n) const { return n.f.graph(); }
    const MetricGraph& operator()(const Node::StarAffine& n) const { return n.graph; }
    const MetricGraph& operator()(const Node::Shift& n) const { return n.child.graph(); }
    const MetricGraph& operator()(const Node::Max& n) const { return n.a.graph(); }
    const MetricGraph& operator()(const Node::Local& n) const { return n.outside.graph(); }
  };
  return std::visit(Visitor{}, node_->kind);
}

double SmoothedFunction::operator()(const GraphPoint& x) const {
  struct Visitor {
    const GraphPoint& x;
    double operator()(const Node::Leaf& n) const { return to_double(eval(n.f, x)); }
    double operator()(const Node::StarAffine& n) const {
      if (!in_open_star(n.graph, n.center, x)) {
        throw InputError(describe(x) + " is outside the star of '" + n.center + "'");
      }
      if (x.is_vertex()) return to_double(n.value);
      const Edge& e = n.graph.edge(x.id());
      const bool from_u = e.u == n.center;
      const Rational t = from_u ? x.offset() : Rational(e.length - x.offset());
      const Rational& slope = n.slopes.at({e.id, from_u ? End::U : End::V});
      return to_double(Rational(n.value + slope * t));
    }
    double operator()(const Node::Shift& n) const { return n.child(x) + n.c; }
    double operator()(const Node::Max& n) const { return skelpot::smooth_max(n.eps, n.a(x), n.b(x)); }
    double operator()(const Node::Local& n) const {
      return in_open_star(n.outside.graph(), n.center, x) ? n.inside(x) : n.outside(x);
    }
  };
  if (!graph().contains(x)) throw InputError(describe(x) + " is not on the graph");
  return std::visit(Visitor{x}, node_->kind);
}

double eval_smoothed(const SmoothedFunction& s, const GraphPoint& x) { return s(x); }

double arc_second_difference(const SmoothedFunction& s, const std::string& edge,
                             const Rational& offset, const Rational& h) {
  const MetricGraph& g = s.graph();
  const Edge& e = g.edge(edge);
  if (h <= 0 || offset - h < 0 || offset + h > e.length) {
    throw InputError("second difference window leaves edge '" + edge + "'");
  }
  const double left = s(g.point_at(edge, offset - h));
  const double mid = s(g.point_at(edge, offset));
  const double right = s(g.point_at(edge, offset + h));
  const double step = to_double(h);
  return (left - 2 * mid + right) / (step * step);
}

double vertex_derivative_sum(const SmoothedFunction& s, const std::string& vertex, const Rational& h) {
  const MetricGraph& g = s.graph();
  const double base = s(GraphPoint::vertex(vertex));
  const double step = to_double(h);
  double total = 0;
  for (const auto& end : g.incident(g.vertex_index(vertex))) {
    const Edge& e = g.edges()[end.edge];
    if (h <= 0 || h > e.length) throw InputError("derivative step leaves edge '" + e.id + "'");
    const Rational offset = end.end == End::U ? h : Rational(e.length - h);
    total += (s(g.point_at(e.id, offset)) - base) / step;
  }
  return total;
}

RegularizationSequence::RegularizationSequence(PAFunction base, Refinement working,
                                               std::vector<Patch> patches, Rational epsilon0)
    : base_(std::move(base)),
      working_(std::move(working)),
      working_function_(push_forward(base_, working_)),
      patches_(std::move(patches)),
      epsilon0_(std::move(epsilon0)) {}

Rational RegularizationSequence::epsilon_exact(std::size_t k) const {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 4, k);
  return epsilon0_ / scale;
}

double RegularizationSequence::epsilon(std::size_t k) const { return to_double(epsilon_exact(k)); }

SmoothedFunction RegularizationSequence::term(std::size_t k) const {
  const double eps = epsilon(k);
  const SmoothedFunction f = SmoothedFunction::leaf(working_function_);
  SmoothedFunction out = f;
  for (const auto& patch : patches_) {
    std::map<std::pair<std::string, End>, Rational> slopes;
    for (const auto& arc : patch.arcs) slopes[{arc.edge, arc.end}] = arc.g_slope;
    const SmoothedFunction cone =
        SmoothedFunction::star_affine(working_.fine(), patch.center, patch.value, std::move(slopes));
    SmoothedFunction inside =
        SmoothedFunction::smooth_max(eps / 2, SmoothedFunction::shift(eps, cone), f);
    out = SmoothedFunction::local(patch.center, std::move(inside), std::move(out));
  }
  return out;
}

RegularizationSequence build_regularization(const PAFunction& f) {
  const auto verdict = is_subharmonic_slope(f);
  if (!verdict.subharmonic) {
    throw PreconditionError("regularization needs a function subharmonic off the boundary; " +
                            describe(verdict.witnesses.front().first) + " has mass " +
                            to_string(verdict.witnesses.front().second));
  }
  const MetricGraph& g = f.graph();
  const DiscreteMeasure mu = ddc(f);

  std::set<GraphPoint> peaks;
  for (const auto& [x, m] : mu.atoms()) {
    if (x.is_vertex() && g.is_boundary(x.id())) continue;
    if (m > 0) peaks.insert(x);
  }

  // Split at every breakpoint so f is affine on working edges, and halve any
  // segment joining two peaks so that peak stars are disjoint.
  std::vector<GraphPoint> splits = f.interior_breakpoints();
  for (const auto& e : g.edges()) {
    const Profile& p = f.profile(e.id);
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
      const GraphPoint a = g.point_at(e.id, p[k].offset);
      const GraphPoint b = g.point_at(e.id, p[k + 1].offset);
      if (peaks.count(a) && peaks.count(b)) {
        splits.push_back(GraphPoint::on_edge(e.id, (p[k].offset + p[k + 1].offset) / 2));
      }
    }
  }
  Refinement working(g, splits);
  const PAFunction fw = push_forward(f, working);
  const MetricGraph& wg = working.fine();

  std::vector<Patch> patches;
  std::optional<Rational> eps0;
  for (const auto& x : peaks) {
    Patch patch{x, working.to_fine(x).id(), eval(f, x), mu.mass_at(x), {}};
    const auto& ends = wg.incident(wg.vertex_index(patch.center));
    const Rational share = patch.mass / static_cast<long>(ends.size());
    for (const auto& end : ends) {
      const Edge& e = wg.edges()[end.edge];
      PatchArc arc;
      arc.edge = e.id;
      arc.end = end.end;
      arc.length = e.length;
      arc.f_slope = outgoing_slope(
          fw, {GraphPoint::vertex(patch.center), e.id, end.end == End::U ? Toward::V : Toward::U});
      arc.g_slope = arc.f_slope - share;
      arc.gap = share * e.length;
      arc.eps = arc.gap / 3;
      if (!eps0 || arc.eps < *eps0) eps0 = arc.eps;
      patch.arcs.push_back(std::move(arc));
    }
    patches.push_back(std::move(patch));
  }
  return RegularizationSequence(f, std::move(working), std::move(patches), eps0.value_or(Rational(1)));
}

}  // namespace skelpot
