#include "skelpot/potential.hpp"

#include <set>

#include "skelpot/error.hpp"
#include "skelpot/linalg.hpp"

namespace skelpot {
namespace {

// Vertex values u with u = fixed on the boundary and, at every other vertex
// v, sum over edges (u_v - u_w) / length = source[v] (i.e. the dd^c mass at
// v equals -source[v]).
std::vector<Rational> solve_kirchhoff(const MetricGraph& g, const std::vector<Rational>& fixed,
                                      const std::vector<Rational>& source) {
  const std::size_t n = g.vertices().size();
  std::vector<std::ptrdiff_t> unknown(n, -1);
  std::size_t count = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!g.is_boundary(g.vertices()[v])) unknown[v] = static_cast<std::ptrdiff_t>(count++);
  }
  RationalMatrix a(count, count);
  std::vector<Rational> rhs(count);
  for (std::size_t v = 0; v < n; ++v) {
    if (unknown[v] < 0) continue;
    const auto row = static_cast<std::size_t>(unknown[v]);
    rhs[row] = source[v];
    for (const auto& end : g.incident(v)) {
      const Edge& e = g.edges()[end.edge];
      if (e.u == e.v) continue;
      const std::size_t w = g.vertex_index(end.end == End::U ? e.v : e.u);
      const Rational conductance = 1 / e.length;
      a(row, row) += conductance;
      if (unknown[w] >= 0) {
        a(row, static_cast<std::size_t>(unknown[w])) -= conductance;
      } else {
        rhs[row] += conductance * fixed[w];
      }
    }
  }
  const auto solution = bareiss_solve(a, rhs);
  std::vector<Rational> values = fixed;
  for (std::size_t v = 0; v < n; ++v) {
    if (unknown[v] >= 0) values[v] = solution[static_cast<std::size_t>(unknown[v])];
  }
  return values;
}

PAFunction from_values(const MetricGraph& g, const std::vector<Rational>& values) {
  std::map<std::string, Rational> by_id;
  for (std::size_t v = 0; v < values.size(); ++v) by_id[g.vertices()[v]] = values[v];
  return PAFunction::from_vertex_values(g, by_id);
}

void require_interior(const MetricGraph& g, const GraphPoint& x) {
  if (!g.contains(x)) throw InputError(describe(x) + " is not on the graph");
  if (x.is_vertex() && g.is_boundary(x.id())) {
    throw InputError(describe(x) + " lies on the boundary");
  }
}

std::set<GraphPoint> boundary_points(const MetricGraph& g) {
  std::set<GraphPoint> out;
  for (const auto& b : g.boundary()) out.insert(GraphPoint::vertex(b));
  return out;
}

}  // namespace

HarmonicExtension dirichlet_solve(const MetricGraph& g,
                                  const std::map<std::string, Rational>& boundary_values) {
  require_potential_ready(g);
  for (const auto& [id, value] : boundary_values) {
    if (!g.find_vertex(id)) throw InputError("boundary value for unknown vertex '" + id + "'");
    if (!g.is_boundary(id)) throw InputError("vertex '" + id + "' is not a boundary vertex");
  }
  std::vector<Rational> fixed(g.vertices().size());
  for (const auto& b : g.boundary()) {
    const auto it = boundary_values.find(b);
    if (it == boundary_values.end()) throw InputError("missing boundary value for '" + b + "'");
    fixed[g.vertex_index(b)] = it->second;
  }
  const std::vector<Rational> source(g.vertices().size());
  return {from_values(g, solve_kirchhoff(g, fixed, source)), boundary_values};
}

GreenFunction green(const MetricGraph& g, const GraphPoint& x) {
  require_potential_ready(g);
  require_interior(g, x);

  auto solve_at = [](const MetricGraph& graph, const std::string& pole) {
    const std::vector<Rational> fixed(graph.vertices().size());
    std::vector<Rational> source(graph.vertices().size());
    source[graph.vertex_index(pole)] = 1;
    return from_values(graph, solve_kirchhoff(graph, fixed, source));
  };

  PAFunction result = [&] {
    if (x.is_vertex()) return solve_at(g, x.id());
    const Refinement r(g, {x});
    return pull_back(solve_at(r.fine(), r.new_vertex(x)), r);
  }();
  DiscreteMeasure masses = ddc(result).restricted_to(boundary_points(g));
  return {x, std::move(result), std::move(masses)};
}

std::pair<Rational, Rational> evaluation_formula_check(const MetricGraph& g, const GraphPoint& x,
                                                       const PAFunction& h) {
  if (!(h.graph() == g)) throw InputError("harmonic function lives on a different graph");
  require_interior(g, x);
  if (!is_harmonic_on(h, boundary_points(g))) {
    throw PreconditionError("function is not harmonic off the boundary");
  }
  const GreenFunction gf = green(g, x);
  return {eval(h, x), integrate(h, gf.boundary_masses)};
}

Rational green_pairing(const PAFunction& f, const GraphPoint& x) {
  return integrate(f, ddc(green(f.graph(), x).result));
}

SubharmonicVerdict is_subharmonic_green(const PAFunction& f,
                                        std::optional<std::vector<GraphPoint>> sample) {
  const MetricGraph& g = f.graph();
  require_potential_ready(g);
  if (!sample) {
    sample.emplace();
    for (const auto& v : g.vertices()) {
      if (!g.is_boundary(v)) sample->push_back(GraphPoint::vertex(v));
    }
    for (const auto& b : f.interior_breakpoints()) sample->push_back(b);
    for (const auto& e : g.edges()) sample->push_back(GraphPoint::on_edge(e.id, e.length / 2));
  }
  for (const auto& x : *sample) require_interior(g, x);

  const Refinement r = refine_at_breakpoints(f, *sample);
  const MetricGraph& fine = r.fine();
  const PAFunction f_fine = push_forward(f, r);

  SubharmonicVerdict verdict;
  std::set<GraphPoint> seen;
  for (const auto& x : *sample) {
    if (!seen.insert(x).second) continue;
    const std::string center = r.to_fine(x).id();
    const auto& ends = fine.incident(fine.vertex_index(center));

    // The closed star around x reaching halfway along each arc, as a graph
    // of its own; its Green function at the center is then extended by zero.
    std::vector<std::string> vertices{"c"};
    std::vector<Edge> edges;
    std::vector<std::string> leaves;
    for (std::size_t k = 0; k < ends.size(); ++k) {
      const std::string leaf = "l" + std::to_string(k);
      vertices.push_back(leaf);
      leaves.push_back(leaf);
      edges.push_back({"a" + std::to_string(k), "c", leaf, fine.edges()[ends[k].edge].length / 2});
    }
    const MetricGraph local(vertices, edges, leaves);
    const Rational peak = eval(green(local, GraphPoint::vertex("c")).result, GraphPoint::vertex("c"));

    std::map<std::string, Profile> profiles;
    for (const auto& e : fine.edges()) profiles[e.id] = {{Rational(0), Rational(0)}, {e.length, Rational(0)}};
    for (const auto& end : ends) {
      const Edge& e = fine.edges()[end.edge];
      Profile& p = profiles[e.id];
      if (p.size() == 2) p.insert(p.begin() + 1, {e.length / 2, Rational(0)});
      (end.end == End::U ? p.front() : p.back()).value = peak;
    }
    const PAFunction extended(fine, std::move(profiles));

    const Rational pairing = integrate(f_fine, ddc(extended));
    if (pairing < 0) verdict.witnesses.emplace_back(x, pairing);
  }
  verdict.subharmonic = verdict.witnesses.empty();
  return verdict;
}

bool maximum_principle_check(const PAFunction& f) {
  if (!is_subharmonic_slope(f).subharmonic) {
    throw PreconditionError("maximum principle check needs a subharmonic function");
  }
  const MetricGraph& g = f.graph();
  std::map<std::string, Rational> values;
  for (const auto& b : g.boundary()) values[b] = f.vertex_value(b);
  const PAFunction h = dirichlet_solve(g, values).result;
  for (const auto& v : g.vertices()) {
    if (f.vertex_value(v) > h.vertex_value(v)) return false;
  }
  for (const auto& x : f.interior_breakpoints()) {
    if (eval(f, x) > eval(h, x)) return false;
  }
  return true;
}

}  // namespace skelpot
