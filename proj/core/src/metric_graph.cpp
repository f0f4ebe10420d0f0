#include "skelpot/metric_graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "skelpot/error.hpp"

namespace skelpot {

GraphPoint GraphPoint::vertex(std::string id) { return GraphPoint(std::move(id), std::nullopt); }

GraphPoint GraphPoint::on_edge(std::string edge_id, Rational offset) {
  offset.canonicalize();
  return GraphPoint(std::move(edge_id), std::move(offset));
}

const Rational& GraphPoint::offset() const {
  if (!offset_) throw InputError("vertex point '" + id_ + "' has no offset");
  return *offset_;
}

std::strong_ordering GraphPoint::operator<=>(const GraphPoint& other) const {
  if (is_vertex() != other.is_vertex()) {
    return is_vertex() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = id_ <=> other.id_; c != 0) return c;
  if (is_vertex()) return std::strong_ordering::equal;
  const int c = cmp(*offset_, *other.offset_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool GraphPoint::operator==(const GraphPoint& other) const {
  return (*this <=> other) == std::strong_ordering::equal;
}

std::string describe(const GraphPoint& p) {
  if (p.is_vertex()) return "vertex " + p.id();
  return "edge " + p.id() + " at " + to_string(p.offset());
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::NonPositiveLength: return "non-positive length";
    case Violation::Kind::UnknownEndpoint: return "unknown endpoint";
    case Violation::Kind::BoundaryNotSubset: return "boundary not subset";
    case Violation::Kind::DuplicateVertex: return "duplicate vertex";
    case Violation::Kind::DuplicateEdgeId: return "duplicate edge id";
    case Violation::Kind::SelfLoop: return "self-loop";
    case Violation::Kind::ParallelEdge: return "parallel edge";
  }
  return "unknown";
}

MetricGraph::MetricGraph(std::vector<std::string> vertices, std::vector<Edge> edges,
                         std::vector<std::string> boundary, GraphOptions options)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      boundary_(std::move(boundary)),
      options_(options) {
  for (auto& e : edges_) e.length.canonicalize();
  std::sort(vertices_.begin(), vertices_.end());
  std::sort(boundary_.begin(), boundary_.end());
  index();
}

void MetricGraph::index() {
  vertex_lookup_.clear();
  edge_lookup_.clear();
  for (std::size_t i = 0; i < vertices_.size(); ++i) vertex_lookup_.emplace(vertices_[i], i);
  for (std::size_t i = 0; i < edges_.size(); ++i) edge_lookup_.emplace(edges_[i].id, i);
  incident_.assign(vertices_.size(), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto u = vertex_lookup_.find(edges_[i].u);
    const auto v = vertex_lookup_.find(edges_[i].v);
    if (u != vertex_lookup_.end()) incident_[u->second].push_back({i, End::U});
    if (v != vertex_lookup_.end()) incident_[v->second].push_back({i, End::V});
  }
}

std::optional<std::size_t> MetricGraph::find_vertex(const std::string& id) const {
  const auto it = vertex_lookup_.find(id);
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> MetricGraph::find_edge(const std::string& id) const {
  const auto it = edge_lookup_.find(id);
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t MetricGraph::vertex_index(const std::string& id) const {
  if (auto i = find_vertex(id)) return *i;
  throw InputError("unknown vertex '" + id + "'");
}

std::size_t MetricGraph::edge_index(const std::string& id) const {
  if (auto i = find_edge(id)) return *i;
  throw InputError("unknown edge '" + id + "'");
}

bool MetricGraph::is_boundary(const std::string& vertex_id) const {
  return std::binary_search(boundary_.begin(), boundary_.end(), vertex_id);
}

const std::vector<EdgeEnd>& MetricGraph::incident(std::size_t vertex) const {
  return incident_.at(vertex);
}

std::size_t MetricGraph::degree(const std::string& vertex_id) const {
  return incident(vertex_index(vertex_id)).size();
}

bool MetricGraph::contains(const GraphPoint& p) const {
  if (p.is_vertex()) return find_vertex(p.id()).has_value();
  const auto e = find_edge(p.id());
  if (!e) return false;
  return p.offset() > 0 && p.offset() < edges_[*e].length;
}

GraphPoint MetricGraph::point_at(const std::string& edge_id, const Rational& offset) const {
  const Edge& e = edge(edge_id);
  if (offset < 0 || offset > e.length) {
    throw InputError("offset " + to_string(offset) + " outside edge '" + edge_id + "'");
  }
  if (offset == 0) return GraphPoint::vertex(e.u);
  if (offset == e.length) return GraphPoint::vertex(e.v);
  return GraphPoint::on_edge(edge_id, offset);
}

Rational MetricGraph::total_length() const {
  Rational total = 0;
  for (const auto& e : edges_) total += e.length;
  return total;
}

bool MetricGraph::is_connected() const {
  if (vertices_.empty()) return false;
  std::vector<bool> seen(vertices_.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (const auto& end : incident_[v]) {
      const Edge& e = edges_[end.edge];
      const auto other = vertex_lookup_.find(end.end == End::U ? e.v : e.u);
      if (other == vertex_lookup_.end() || seen[other->second]) continue;
      seen[other->second] = true;
      stack.push_back(other->second);
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

bool MetricGraph::operator==(const MetricGraph& other) const {
  return vertices_ == other.vertices_ && edges_ == other.edges_ &&
         boundary_ == other.boundary_ && options_ == other.options_;
}

std::vector<Violation> validate(const MetricGraph& g) {
  std::vector<Violation> out;
  using K = Violation::Kind;
  for (std::size_t i = 1; i < g.vertices().size(); ++i) {
    if (g.vertices()[i] == g.vertices()[i - 1]) {
      out.push_back({K::DuplicateVertex, g.vertices()[i]});
    }
  }
  std::set<std::string> edge_ids;
  std::set<std::pair<std::string, std::string>> endpoint_pairs;
  for (const auto& e : g.edges()) {
    if (!edge_ids.insert(e.id).second) out.push_back({K::DuplicateEdgeId, e.id});
    if (e.length <= 0) {
      out.push_back({K::NonPositiveLength, e.id + " has length " + to_string(e.length)});
    }
    for (const auto* end : {&e.u, &e.v}) {
      if (!g.find_vertex(*end)) out.push_back({K::UnknownEndpoint, e.id + " -> " + *end});
    }
    if (e.u == e.v && !g.options().allow_loops) out.push_back({K::SelfLoop, e.id});
    auto key = std::minmax(e.u, e.v);
    if (!endpoint_pairs.insert({key.first, key.second}).second && !g.options().allow_multi) {
      out.push_back({K::ParallelEdge, e.id});
    }
  }
  for (const auto& b : g.boundary()) {
    if (!g.find_vertex(b)) out.push_back({K::BoundaryNotSubset, b});
  }
  return out;
}

void require_valid(const MetricGraph& g) {
  const auto violations = validate(g);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid graph:";
  for (const auto& v : violations) msg << " [" << to_string(v.kind) << ": " << v.detail << "]";
  throw InputError(msg.str());
}

void require_potential_ready(const MetricGraph& g) {
  require_valid(g);
  if (!g.is_connected()) throw InputError("graph is disconnected");
  if (g.boundary().empty()) throw InputError("graph has an empty boundary");
}

std::vector<TangentDirection> star(const MetricGraph& g, const GraphPoint& x) {
  if (!g.contains(x)) throw InputError(describe(x) + " is not on the graph");
  std::vector<TangentDirection> out;
  if (x.is_vertex()) {
    for (const auto& end : g.incident(g.vertex_index(x.id()))) {
      const Edge& e = g.edges()[end.edge];
      out.push_back({x, e.id, end.end == End::U ? Toward::V : Toward::U});
    }
  } else {
    out.push_back({x, x.id(), Toward::U});
    out.push_back({x, x.id(), Toward::V});
  }
  return out;
}

Rational distance(const MetricGraph& g, const GraphPoint& a, const GraphPoint& b) {
  if (!g.contains(a)) throw InputError(describe(a) + " is not on the graph");
  if (!g.contains(b)) throw InputError(describe(b) + " is not on the graph");
  const std::size_t n = g.vertices().size();
  std::vector<std::optional<Rational>> dist(n);
  auto relax = [&](std::size_t v, const Rational& d) {
    if (!dist[v] || d < *dist[v]) dist[v] = d;
  };
  if (a.is_vertex()) {
    relax(g.vertex_index(a.id()), Rational(0));
  } else {
    const Edge& e = g.edge(a.id());
    relax(g.vertex_index(e.u), a.offset());
    relax(g.vertex_index(e.v), Rational(e.length - a.offset()));
  }
  std::vector<bool> done(n, false);
  for (std::size_t round = 0; round < n; ++round) {
    std::optional<std::size_t> best;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v] || !dist[v]) continue;
      if (!best || *dist[v] < *dist[*best]) best = v;
    }
    if (!best) break;
    done[*best] = true;
    for (const auto& end : g.incident(*best)) {
      const Edge& e = g.edges()[end.edge];
      const std::size_t other = g.vertex_index(end.end == End::U ? e.v : e.u);
      relax(other, Rational(*dist[*best] + e.length));
    }
  }
  std::optional<Rational> result;
  auto consider = [&](const std::optional<Rational>& d, const Rational& extra) {
    if (!d) return;
    Rational total = *d + extra;
    if (!result || total < *result) result = total;
  };
  if (b.is_vertex()) {
    consider(dist[g.vertex_index(b.id())], Rational(0));
  } else {
    const Edge& e = g.edge(b.id());
    consider(dist[g.vertex_index(e.u)], b.offset());
    consider(dist[g.vertex_index(e.v)], Rational(e.length - b.offset()));
    if (!a.is_vertex() && a.id() == b.id()) {
      consider(Rational(0), abs_value(Rational(a.offset() - b.offset())));
    }
  }
  if (!result) throw InputError("points lie in different components");
  return *result;
}

namespace {

std::string fresh_id(std::string candidate, const std::set<std::string>& taken) {
  while (taken.count(candidate)) candidate += "'";
  return candidate;
}

}  // namespace

Refinement::Refinement(const MetricGraph& coarse, const std::vector<GraphPoint>& points)
    : coarse_(coarse) {
  require_valid(coarse);
  std::map<std::string, std::set<Rational, std::less<>>> splits;
  for (const auto& p : points) {
    if (!coarse.contains(p)) throw InputError(describe(p) + " is not on the graph");
    if (p.is_vertex()) continue;
    splits[p.id()].insert(p.offset());
  }

  std::set<std::string> taken(coarse.vertices().begin(), coarse.vertices().end());
  for (const auto& e : coarse.edges()) taken.insert(e.id);

  std::vector<std::string> vertices = coarse.vertices();
  std::vector<Edge> edges;
  bool split_loop = false;
  for (const auto& e : coarse.edges()) {
    const auto it = splits.find(e.id);
    if (it == splits.end()) {
      edges.push_back(e);
      pieces_[e.id].push_back({e.id, Rational(0)});
      fine_to_coarse_edge_[e.id] = {e.id, Rational(0)};
      continue;
    }
    split_loop = split_loop || e.u == e.v;
    std::string prev_vertex = e.u;
    Rational prev_offset = 0;
    std::size_t k = 0;
    auto emit_piece = [&](const std::string& to, const Rational& end_offset) {
      const std::string piece_id = fresh_id(e.id + "." + std::to_string(k++), taken);
      taken.insert(piece_id);
      edges.push_back({piece_id, prev_vertex, to, Rational(end_offset - prev_offset)});
      pieces_[e.id].push_back({piece_id, prev_offset});
      fine_to_coarse_edge_[piece_id] = {e.id, prev_offset};
    };
    for (const auto& offset : it->second) {
      const std::string vid = fresh_id(e.id + "@" + to_string(offset), taken);
      taken.insert(vid);
      vertices.push_back(vid);
      new_vertices_.emplace(GraphPoint::on_edge(e.id, offset), vid);
      emit_piece(vid, offset);
      prev_vertex = vid;
      prev_offset = offset;
    }
    emit_piece(e.v, e.length);
  }
  GraphOptions opts = coarse.options();
  opts.allow_multi = opts.allow_multi || split_loop;
  fine_ = MetricGraph(std::move(vertices), std::move(edges), coarse.boundary(), opts);
}

GraphPoint Refinement::to_fine(const GraphPoint& p) const {
  if (!coarse_.contains(p)) throw InputError(describe(p) + " is not on the coarse graph");
  if (p.is_vertex()) return p;
  if (auto it = new_vertices_.find(p); it != new_vertices_.end()) {
    return GraphPoint::vertex(it->second);
  }
  const auto& ps = pieces_.at(p.id());
  std::size_t i = 0;
  while (i + 1 < ps.size() && ps[i + 1].start < p.offset()) ++i;
  return GraphPoint::on_edge(ps[i].fine_edge, Rational(p.offset() - ps[i].start));
}

GraphPoint Refinement::to_coarse(const GraphPoint& p) const {
  if (!fine_.contains(p)) throw InputError(describe(p) + " is not on the fine graph");
  if (p.is_vertex()) {
    for (const auto& [coarse_point, vid] : new_vertices_) {
      if (vid == p.id()) return coarse_point;
    }
    return p;
  }
  const auto& [coarse_edge, start] = fine_to_coarse_edge_.at(p.id());
  return GraphPoint::on_edge(coarse_edge, Rational(start + p.offset()));
}

const std::string& Refinement::new_vertex(const GraphPoint& coarse_point) const {
  const auto it = new_vertices_.find(coarse_point);
  if (it == new_vertices_.end()) {
    throw InputError(describe(coarse_point) + " was not split by this refinement");
  }
  return it->second;
}

const std::vector<Refinement::Piece>& Refinement::pieces(const std::string& coarse_edge) const {
  const auto it = pieces_.find(coarse_edge);
  if (it == pieces_.end()) throw InputError("unknown edge '" + coarse_edge + "'");
  return it->second;
}

Subdivision subdivide(const MetricGraph& g, const GraphPoint& x) {
  if (x.is_vertex()) throw InputError(describe(x) + " is already a vertex");
  Refinement r(g, {x});
  return {r.fine(), r.new_vertex(x)};
}

}  // namespace skelpot
