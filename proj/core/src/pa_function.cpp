#include "skelpot/pa_function.hpp"

#include <algorithm>

#include "skelpot/error.hpp"

namespace skelpot {
namespace {

Rational segment_slope(const Breakpoint& a, const Breakpoint& b) {
  return (b.value - a.value) / (b.offset - a.offset);
}

// Value of an edge profile at an offset in [0, length].
Rational eval_profile(const Profile& p, const Rational& offset) {
  const auto it = std::lower_bound(p.begin(), p.end(), offset,
                                   [](const Breakpoint& b, const Rational& o) { return b.offset < o; });
  if (it == p.end()) throw InputError("offset beyond edge profile");
  if (it->offset == offset) return it->value;
  if (it == p.begin()) throw InputError("offset before edge profile");
  const Breakpoint& lo = *(it - 1);
  return lo.value + segment_slope(lo, *it) * (offset - lo.offset);
}

// Slope of the segment just after (toward v) or just before (toward u) the
// offset, returned as the outgoing slope in that direction.
Rational profile_outgoing(const Profile& p, const Rational& offset, Toward toward) {
  if (toward == Toward::V) {
    const auto j = std::upper_bound(p.begin(), p.end(), offset,
                                    [](const Rational& o, const Breakpoint& b) { return o < b.offset; });
    if (j == p.end() || j == p.begin()) throw InputError("no segment toward v");
    return segment_slope(*(j - 1), *j);
  }
  const auto j = std::lower_bound(p.begin(), p.end(), offset,
                                  [](const Breakpoint& b, const Rational& o) { return b.offset < o; });
  if (j == p.begin()) throw InputError("no segment toward u");
  if (j == p.end()) throw InputError("offset beyond edge profile");
  return -segment_slope(*(j - 1), *j);
}

void require_same_graph(const MetricGraph& a, const MetricGraph& b, const char* what) {
  if (!(a == b)) throw InputError(std::string(what) + ": functions live on different graphs");
}

}  // namespace

PAFunction::PAFunction(MetricGraph graph, std::map<std::string, Profile> profiles)
    : graph_(std::move(graph)) {
  require_valid(graph_);
  profiles_.resize(graph_.edges().size());
  for (auto& [edge_id, profile] : profiles) {
    const auto idx = graph_.find_edge(edge_id);
    if (!idx) throw InputError("profile for unknown edge '" + edge_id + "'");
    profiles_[*idx] = std::move(profile);
  }
  check_and_index();
}

void PAFunction::check_and_index() {
  for (auto& profile : profiles_) {
    for (auto& b : profile) {
      b.offset.canonicalize();
      b.value.canonicalize();
    }
  }
  vertex_values_.assign(graph_.vertices().size(), Rational(0));
  std::vector<bool> assigned(graph_.vertices().size(), false);
  for (std::size_t i = 0; i < graph_.edges().size(); ++i) {
    const Edge& e = graph_.edges()[i];
    const Profile& p = profiles_[i];
    if (p.size() < 2) throw InputError("edge '" + e.id + "' needs a profile with at least two breakpoints");
    if (p.front().offset != 0) throw InputError("profile of '" + e.id + "' must start at offset 0");
    if (p.back().offset != e.length) {
      throw InputError("profile of '" + e.id + "' must end at the edge length " + to_string(e.length));
    }
    for (std::size_t k = 1; k < p.size(); ++k) {
      if (!(p[k - 1].offset < p[k].offset)) {
        throw InputError("profile offsets of '" + e.id + "' are not strictly increasing");
      }
    }
    const std::pair<std::size_t, const Rational*> ends[] = {
        {graph_.vertex_index(e.u), &p.front().value}, {graph_.vertex_index(e.v), &p.back().value}};
    for (const auto& [v, value] : ends) {
      if (!assigned[v]) {
        vertex_values_[v] = *value;
        assigned[v] = true;
      } else if (vertex_values_[v] != *value) {
        throw InputError("discontinuity at vertex '" + graph_.vertices()[v] + "'");
      }
    }
  }
}

PAFunction PAFunction::from_vertex_values(MetricGraph graph,
                                          const std::map<std::string, Rational>& values) {
  std::map<std::string, Profile> profiles;
  for (const auto& e : graph.edges()) {
    const auto u = values.find(e.u);
    const auto v = values.find(e.v);
    if (u == values.end() || v == values.end()) {
      throw InputError("missing vertex value for edge '" + e.id + "'");
    }
    profiles[e.id] = {{Rational(0), u->second}, {e.length, v->second}};
  }
  PAFunction f(std::move(graph), std::move(profiles));
  for (const auto& [id, value] : values) {
    if (const auto i = f.graph_.find_vertex(id)) f.vertex_values_[*i] = value;
  }
  return f;
}

PAFunction PAFunction::constant(MetricGraph graph, const Rational& c) {
  std::map<std::string, Rational> values;
  for (const auto& v : graph.vertices()) values[v] = c;
  return from_vertex_values(std::move(graph), values);
}

const Profile& PAFunction::profile(const std::string& edge_id) const {
  return profiles_.at(graph_.edge_index(edge_id));
}

const Rational& PAFunction::vertex_value(const std::string& vertex_id) const {
  return vertex_values_.at(graph_.vertex_index(vertex_id));
}

std::vector<GraphPoint> PAFunction::interior_breakpoints() const {
  std::vector<GraphPoint> out;
  for (std::size_t i = 0; i < profiles_.size(); ++i) {
    const Profile& p = profiles_[i];
    for (std::size_t k = 1; k + 1 < p.size(); ++k) {
      out.push_back(GraphPoint::on_edge(graph_.edges()[i].id, p[k].offset));
    }
  }
  return out;
}

bool PAFunction::operator==(const PAFunction& other) const {
  return graph_ == other.graph_ && profiles_ == other.profiles_ &&
         vertex_values_ == other.vertex_values_;
}

DiscreteMeasure::DiscreteMeasure(std::vector<std::pair<GraphPoint, Rational>> atoms) {
  std::map<GraphPoint, Rational> merged;
  for (auto& [p, m] : atoms) {
    auto [it, inserted] = merged.emplace(p, m);
    if (!inserted) it->second += m;
  }
  for (auto& [p, m] : merged) {
    if (m != 0) atoms_.emplace_back(p, std::move(m));
  }
}

DiscreteMeasure DiscreteMeasure::dirac(const GraphPoint& x, const Rational& mass) {
  return DiscreteMeasure({{x, mass}});
}

Rational DiscreteMeasure::mass_at(const GraphPoint& x) const {
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                                   [](const auto& atom, const GraphPoint& p) { return atom.first < p; });
  if (it != atoms_.end() && it->first == x) return it->second;
  return 0;
}

Rational DiscreteMeasure::total_mass() const {
  Rational t = 0;
  for (const auto& [p, m] : atoms_) t += m;
  return t;
}

Rational DiscreteMeasure::total_variation() const {
  Rational t = 0;
  for (const auto& [p, m] : atoms_) t += abs_value(m);
  return t;
}

DiscreteMeasure DiscreteMeasure::restricted_to(const std::set<GraphPoint>& points) const {
  std::vector<std::pair<GraphPoint, Rational>> kept;
  for (const auto& atom : atoms_) {
    if (points.count(atom.first)) kept.push_back(atom);
  }
  return DiscreteMeasure(std::move(kept));
}

DiscreteMeasure DiscreteMeasure::operator+(const DiscreteMeasure& other) const {
  auto all = atoms_;
  all.insert(all.end(), other.atoms_.begin(), other.atoms_.end());
  return DiscreteMeasure(std::move(all));
}

DiscreteMeasure DiscreteMeasure::operator-(const DiscreteMeasure& other) const {
  return *this + other * Rational(-1);
}

DiscreteMeasure DiscreteMeasure::operator*(const Rational& c) const {
  auto scaled = atoms_;
  for (auto& atom : scaled) atom.second *= c;
  return DiscreteMeasure(std::move(scaled));
}

Rational eval(const PAFunction& f, const GraphPoint& x) {
  const MetricGraph& g = f.graph();
  if (!g.contains(x)) throw InputError(describe(x) + " is not on the graph");
  if (x.is_vertex()) return f.vertex_value(x.id());
  return eval_profile(f.profile(x.id()), x.offset());
}

Rational outgoing_slope(const PAFunction& f, const TangentDirection& d) {
  const MetricGraph& g = f.graph();
  if (!g.contains(d.base)) throw InputError(describe(d.base) + " is not on the graph");
  const Edge& e = g.edge(d.edge);
  Rational offset;
  if (d.base.is_vertex()) {
    const bool from_u = d.base.id() == e.u && d.toward == Toward::V;
    const bool from_v = d.base.id() == e.v && d.toward == Toward::U;
    if (!from_u && !from_v) {
      throw InputError("direction along '" + d.edge + "' is not tangent at " + describe(d.base));
    }
    offset = from_u ? Rational(0) : e.length;
  } else {
    if (d.base.id() != d.edge) {
      throw InputError("direction along '" + d.edge + "' is not tangent at " + describe(d.base));
    }
    offset = d.base.offset();
  }
  return profile_outgoing(f.profile(d.edge), offset, d.toward);
}

DiscreteMeasure ddc(const PAFunction& f) {
  const MetricGraph& g = f.graph();
  std::vector<std::pair<GraphPoint, Rational>> atoms;
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    Rational mass = 0;
    for (const auto& end : g.incident(v)) {
      const Profile& p = f.profile(end.edge);
      mass += end.end == End::U ? segment_slope(p[0], p[1])
                                : Rational(-segment_slope(p[p.size() - 2], p.back()));
    }
    atoms.emplace_back(GraphPoint::vertex(g.vertices()[v]), mass);
  }
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const Profile& p = f.profile(i);
    for (std::size_t k = 1; k + 1 < p.size(); ++k) {
      Rational kink = segment_slope(p[k], p[k + 1]) - segment_slope(p[k - 1], p[k]);
      atoms.emplace_back(GraphPoint::on_edge(g.edges()[i].id, p[k].offset), kink);
    }
  }
  return DiscreteMeasure(std::move(atoms));
}

Rational integrate(const PAFunction& f, const DiscreteMeasure& mu) {
  Rational total = 0;
  for (const auto& [x, m] : mu.atoms()) total += eval(f, x) * m;
  return total;
}

SubharmonicVerdict is_subharmonic_slope(const PAFunction& f) {
  SubharmonicVerdict verdict;
  const DiscreteMeasure mu = ddc(f);
  for (const auto& [x, m] : mu.atoms()) {
    if (x.is_vertex() && f.graph().is_boundary(x.id())) continue;
    if (m < 0) verdict.witnesses.emplace_back(x, m);
  }
  verdict.subharmonic = verdict.witnesses.empty();
  return verdict;
}

bool is_harmonic_on(const PAFunction& f, const std::set<GraphPoint>& excluded) {
  const DiscreteMeasure mu = ddc(f);
  for (const auto& [x, m] : mu.atoms()) {
    if (!excluded.count(x)) return false;
  }
  return true;
}

PAFunction linear_combine(const std::vector<std::pair<Rational, PAFunction>>& terms) {
  if (terms.empty()) throw InputError("linear_combine needs at least one term");
  const MetricGraph& g = terms.front().second.graph();
  for (const auto& [c, f] : terms) require_same_graph(g, f.graph(), "linear_combine");

  std::map<std::string, Profile> profiles;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    std::set<Rational, std::less<>> offsets;
    for (const auto& [c, f] : terms) {
      for (const auto& b : f.profile(i)) offsets.insert(b.offset);
    }
    Profile p;
    for (const auto& o : offsets) {
      Rational value = 0;
      for (const auto& [c, f] : terms) value += c * eval_profile(f.profile(i), o);
      p.push_back({o, value});
    }
    profiles[g.edges()[i].id] = std::move(p);
  }
  return PAFunction(g, std::move(profiles));
}

PAFunction push_forward(const PAFunction& f, const Refinement& r) {
  require_same_graph(f.graph(), r.coarse(), "push_forward");
  std::map<std::string, Profile> profiles;
  for (const auto& e : r.coarse().edges()) {
    const Profile& coarse = f.profile(e.id);
    for (const auto& piece : r.pieces(e.id)) {
      const Rational end = piece.start + r.fine().edge(piece.fine_edge).length;
      Profile p{{Rational(0), eval_profile(coarse, piece.start)}};
      for (const auto& b : coarse) {
        if (b.offset > piece.start && b.offset < end) p.push_back({b.offset - piece.start, b.value});
      }
      p.push_back({Rational(end - piece.start), eval_profile(coarse, end)});
      profiles[piece.fine_edge] = std::move(p);
    }
  }
  return PAFunction(r.fine(), std::move(profiles));
}

PAFunction pull_back(const PAFunction& f, const Refinement& r) {
  require_same_graph(f.graph(), r.fine(), "pull_back");
  std::map<std::string, Profile> profiles;
  for (const auto& e : r.coarse().edges()) {
    Profile p;
    for (const auto& piece : r.pieces(e.id)) {
      for (const auto& b : f.profile(piece.fine_edge)) {
        Rational o = piece.start + b.offset;
        if (!p.empty() && p.back().offset == o) continue;
        p.push_back({std::move(o), b.value});
      }
    }
    profiles[e.id] = std::move(p);
  }
  return PAFunction(r.coarse(), std::move(profiles));
}

DiscreteMeasure pull_back(const DiscreteMeasure& mu, const Refinement& r) {
  std::vector<std::pair<GraphPoint, Rational>> atoms;
  for (const auto& [x, m] : mu.atoms()) atoms.emplace_back(r.to_coarse(x), m);
  return DiscreteMeasure(std::move(atoms));
}

Refinement refine_at_breakpoints(const PAFunction& f, const std::vector<GraphPoint>& extra) {
  auto points = f.interior_breakpoints();
  points.insert(points.end(), extra.begin(), extra.end());
  return Refinement(f.graph(), points);
}

Rational lipschitz_constant(const PAFunction& f) {
  Rational best = 0;
  for (std::size_t i = 0; i < f.graph().edges().size(); ++i) {
    const Profile& p = f.profile(i);
    for (std::size_t k = 1; k < p.size(); ++k) {
      best = std::max(best, abs_value(segment_slope(p[k - 1], p[k])));
    }
  }
  return best;
}

}  // namespace skelpot
