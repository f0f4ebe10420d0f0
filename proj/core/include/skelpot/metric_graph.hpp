#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skelpot/rational.hpp"

namespace skelpot {

struct Edge {
  std::string id;
  std::string u;
  std::string v;
  Rational length;

  bool operator==(const Edge&) const = default;
};

struct GraphOptions {
  bool allow_loops = false;
  bool allow_multi = false;

  bool operator==(const GraphOptions&) const = default;
};

enum class End { U, V };

// One end of an edge, seen from the vertex it is attached to.
struct EdgeEnd {
  std::size_t edge;
  End end;
};

// A point of a metric graph: a vertex, or a point strictly inside an edge at
// `offset` from the edge's u endpoint.
class GraphPoint {
 public:
  static GraphPoint vertex(std::string id);
  static GraphPoint on_edge(std::string edge_id, Rational offset);

  bool is_vertex() const { return !offset_.has_value(); }
  // Vertex id or edge id, depending on the kind.
  const std::string& id() const { return id_; }
  const Rational& offset() const;

  // Vertices first (by id), then edge points by (edge id, offset).
  std::strong_ordering operator<=>(const GraphPoint& other) const;
  bool operator==(const GraphPoint& other) const;

 private:
  GraphPoint(std::string id, std::optional<Rational> offset)
      : id_(std::move(id)), offset_(std::move(offset)) {}

  std::string id_;
  std::optional<Rational> offset_;
};

std::string describe(const GraphPoint& p);

enum class Toward { U, V };

struct TangentDirection {
  GraphPoint base;
  std::string edge;
  Toward toward;

  bool operator==(const TangentDirection&) const = default;
};

struct Violation {
  enum class Kind {
    NonPositiveLength,
    UnknownEndpoint,
    BoundaryNotSubset,
    DuplicateVertex,
    DuplicateEdgeId,
    SelfLoop,
    ParallelEdge,
  };
  Kind kind;
  std::string detail;
};

std::string to_string(Violation::Kind kind);

// Finite metric graph with rational edge lengths and a boundary vertex set.
// Vertices are kept in lexicographic order of their ids; edges keep their
// input order. Construction never throws on invariant violations; call
// validate() (or require_valid()) before relying on them.
class MetricGraph {
 public:
  MetricGraph() = default;
  MetricGraph(std::vector<std::string> vertices, std::vector<Edge> edges,
              std::vector<std::string> boundary, GraphOptions options = {});

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& boundary() const { return boundary_; }
  const GraphOptions& options() const { return options_; }

  std::optional<std::size_t> find_vertex(const std::string& id) const;
  std::optional<std::size_t> find_edge(const std::string& id) const;
  std::size_t vertex_index(const std::string& id) const;  // throws InputError
  std::size_t edge_index(const std::string& id) const;    // throws InputError
  const Edge& edge(const std::string& id) const { return edges_[edge_index(id)]; }

  bool is_boundary(const std::string& vertex_id) const;
  // Edge ends attached to a vertex, in edge order; a loop contributes two.
  const std::vector<EdgeEnd>& incident(std::size_t vertex) const;
  std::size_t degree(const std::string& vertex_id) const;

  // Whether `p` names a vertex or a point strictly inside an edge of this graph.
  bool contains(const GraphPoint& p) const;
  // Canonical point for a position given by (edge, offset) with
  // 0 <= offset <= length; endpoints collapse to vertex points.
  GraphPoint point_at(const std::string& edge_id, const Rational& offset) const;

  Rational total_length() const;
  bool is_connected() const;

  bool operator==(const MetricGraph& other) const;

 private:
  void index();

  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::string> boundary_;
  GraphOptions options_;

  std::map<std::string, std::size_t> vertex_lookup_;
  std::map<std::string, std::size_t> edge_lookup_;
  std::vector<std::vector<EdgeEnd>> incident_;
};

std::vector<Violation> validate(const MetricGraph& g);

// Throws InputError listing every violation.
void require_valid(const MetricGraph& g);
// require_valid plus connectivity and a nonempty boundary.
void require_potential_ready(const MetricGraph& g);

std::vector<TangentDirection> star(const MetricGraph& g, const GraphPoint& x);

// Shortest-path distance between two points, exact.
Rational distance(const MetricGraph& g, const GraphPoint& a, const GraphPoint& b);

// A graph obtained by promoting finitely many edge-interior points to
// vertices, with the maps between the two coordinate systems.
class Refinement {
 public:
  Refinement(const MetricGraph& coarse, const std::vector<GraphPoint>& points);

  const MetricGraph& coarse() const { return coarse_; }
  const MetricGraph& fine() const { return fine_; }

  GraphPoint to_fine(const GraphPoint& p) const;
  GraphPoint to_coarse(const GraphPoint& p) const;

  // Fine-graph vertex created for a coarse edge point that was split.
  const std::string& new_vertex(const GraphPoint& coarse_point) const;

  // Fine edges that make up a coarse edge, in order from its u endpoint, with
  // their starting offsets on the coarse edge.
  struct Piece {
    std::string fine_edge;
    Rational start;
  };
  const std::vector<Piece>& pieces(const std::string& coarse_edge) const;

 private:
  MetricGraph coarse_;
  MetricGraph fine_;
  std::map<std::string, std::vector<Piece>> pieces_;
  std::map<std::string, std::pair<std::string, Rational>> fine_to_coarse_edge_;
  std::map<GraphPoint, std::string> new_vertices_;
};

struct Subdivision {
  MetricGraph graph;
  std::string vertex;
};

// Promotes an edge-interior point to a vertex.
Subdivision subdivide(const MetricGraph& g, const GraphPoint& x);

}  // namespace skelpot
