#include "skelpot/json_io.hpp"

#include <fstream>
#include <sstream>

#include "skelpot/error.hpp"

namespace skelpot::io {
namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing \"" + key + "\"");
  return *it;
}

std::string string_from_json(const json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

const json& array_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  return j;
}

std::vector<std::string> strings_from_json(const json& j, const std::string& where) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < array_from_json(j, where).size(); ++k) {
    out.push_back(string_from_json(j[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

bool flag(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) return false;
  if (!it->is_boolean()) throw InputError(std::string("graph: \"") + key + "\" must be a boolean");
  return it->get<bool>();
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    const auto colon = what.rfind(": ");
    if (colon != std::string::npos) what = what.substr(colon + 2);
    throw ParseError("malformed JSON (" + what + ")", line, column);
  }
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_json(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": malformed JSON", e.line(), e.column());
  }
}

Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (!j.is_string()) throw InputError(where + ": expected a rational as a string");
  try {
    return parse_number(j.get<std::string>());
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

json to_json(const Rational& q) { return to_string(q); }

MetricGraph graph_from_json(const json& j) {
  const std::vector<std::string> vertices = strings_from_json(field(j, "vertices", "graph"), "graph.vertices");
  std::vector<Edge> edges;
  const json& raw = array_from_json(field(j, "edges", "graph"), "graph.edges");
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const std::string where = "graph.edges[" + std::to_string(k) + "]";
    const json& e = raw[k];
    Edge edge;
    edge.id = e.is_object() && e.contains("id") ? string_from_json(e["id"], where + ".id")
                                                 : "e" + std::to_string(k + 1);
    edge.u = string_from_json(field(e, "u", where), where + ".u");
    edge.v = string_from_json(field(e, "v", where), where + ".v");
    edge.length = rational_from_json(field(e, "length", where), where + ".length");
    edges.push_back(std::move(edge));
  }
  std::vector<std::string> boundary;
  if (j.contains("boundary")) boundary = strings_from_json(j["boundary"], "graph.boundary");
  MetricGraph g(vertices, std::move(edges), std::move(boundary),
                GraphOptions{flag(j, "allow_loops"), flag(j, "allow_multi")});
  require_valid(g);
  return g;
}

json to_json(const MetricGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}, {"length", to_string(e.length)}});
  }
  json out{{"vertices", g.vertices()}, {"edges", edges}, {"boundary", g.boundary()}};
  if (g.options().allow_loops) out["allow_loops"] = true;
  if (g.options().allow_multi) out["allow_multi"] = true;
  return out;
}

GraphPoint point_from_json(const json& j) {
  if (!j.is_object()) throw InputError("point: expected an object");
  if (j.contains("vertex")) {
    if (j.contains("edge")) throw InputError("point: give either \"vertex\" or \"edge\"");
    return GraphPoint::vertex(string_from_json(j["vertex"], "point.vertex"));
  }
  if (!j.contains("edge")) throw InputError("point: missing \"vertex\" or \"edge\"");
  return GraphPoint::on_edge(string_from_json(j["edge"], "point.edge"),
                             rational_from_json(field(j, "offset", "point"), "point.offset"));
}

json to_json(const GraphPoint& p) {
  if (p.is_vertex()) return {{"vertex", p.id()}};
  return {{"edge", p.id()}, {"offset", to_string(p.offset())}};
}

MetricGraph graph_ref_from_json(const json& j, const std::filesystem::path& base) {
  if (j.is_string()) {
    const std::filesystem::path path = base / j.get<std::string>();
    return graph_from_json(load_json(path));
  }
  return graph_from_json(j);
}

namespace {

std::map<std::string, Profile> profiles_from_json(const json& j) {
  if (!j.is_object()) throw InputError("profiles: expected an object keyed by edge id");
  std::map<std::string, Profile> out;
  for (const auto& [edge, points] : j.items()) {
    const std::string where = "profiles." + edge;
    Profile& p = out[edge];
    for (std::size_t k = 0; k < array_from_json(points, where).size(); ++k) {
      const std::string at = where + "[" + std::to_string(k) + "]";
      const json& bp = points[k];
      if (!bp.is_array() || bp.size() != 2) throw InputError(at + ": expected [offset, value]");
      p.push_back({rational_from_json(bp[0], at + "[0]"), rational_from_json(bp[1], at + "[1]")});
    }
  }
  return out;
}

}  // namespace

std::map<std::string, Rational> values_from_json(const json& j) {
  if (!j.is_object()) throw InputError("values: expected an object keyed by vertex id");
  std::map<std::string, Rational> out;
  for (const auto& [id, value] : j.items()) out[id] = rational_from_json(value, "values." + id);
  return out;
}

PAFunction function_from_json(const json& j, const std::filesystem::path& base) {
  MetricGraph g = graph_ref_from_json(field(j, "graph", "function"), base);
  if (j.contains("profiles")) {
    if (j.contains("vertex_values")) throw InputError("function: give either \"profiles\" or \"vertex_values\"");
    return PAFunction(std::move(g), profiles_from_json(j["profiles"]));
  }
  if (j.contains("vertex_values")) {
    return PAFunction::from_vertex_values(std::move(g), values_from_json(j["vertex_values"]));
  }
  throw InputError("function: missing \"profiles\" or \"vertex_values\"");
}

ApproxPAFunction approx_from_json(const json& j, const std::filesystem::path& base) {
  return {function_from_json(j, base)};
}

json to_json(const PAFunction& f) {
  json profiles = json::object();
  for (const auto& e : f.graph().edges()) {
    json points = json::array();
    for (const auto& b : f.profile(e.id)) points.push_back({to_string(b.offset), to_string(b.value)});
    profiles[e.id] = points;
  }
  return {{"graph", to_json(f.graph())}, {"profiles", profiles}};
}

DiscreteMeasure measure_from_json(const json& j) {
  std::vector<std::pair<GraphPoint, Rational>> atoms;
  for (std::size_t k = 0; k < array_from_json(j, "measure").size(); ++k) {
    const std::string where = "measure[" + std::to_string(k) + "]";
    atoms.emplace_back(point_from_json(field(j[k], "at", where)),
                       rational_from_json(field(j[k], "mass", where), where + ".mass"));
  }
  return DiscreteMeasure(std::move(atoms));
}

json to_json(const DiscreteMeasure& mu) {
  json out = json::array();
  for (const auto& [x, m] : mu.atoms()) out.push_back({{"at", to_json(x)}, {"mass", to_string(m)}});
  return out;
}

json to_json(const GreenFunction& g) {
  return {{"pole", to_json(g.pole)},
          {"value_at_pole", to_string(eval(g.result, g.pole))},
          {"boundary_masses", to_json(g.boundary_masses)},
          {"function", to_json(g.result)}};
}

json to_json(const HarmonicExtension& h) {
  json values = json::object();
  for (const auto& [id, v] : h.boundary_values) values[id] = to_string(v);
  return {{"boundary_values", values}, {"function", to_json(h.result)}};
}

json verdict_to_json(const SubharmonicVerdict& v, const std::string& method) {
  json witnesses = json::array();
  for (const auto& [x, value] : v.witnesses) witnesses.push_back({{"at", to_json(x)}, {"value", to_string(value)}});
  return {{"method", method}, {"subharmonic", v.subharmonic}, {"witnesses", witnesses}};
}

json to_json(const RationalizationCertificate& c) {
  json checks = json::array();
  for (const auto& check : c.checks) {
    checks.push_back({{"name", check.name}, {"passed", check.passed}, {"witnesses", check.witnesses}});
  }
  return {{"tol", to_string(c.tol)},
          {"grid", c.grid.get_str()},
          {"checks", checks},
          {"input_pairing", to_string(c.input_pairing)},
          {"pairing", to_string(c.pairing)},
          {"pairing_negative", c.pairing < 0},
          {"max_deviation", to_string(c.max_deviation)},
          {"mass_bound", to_string(c.mass_bound)},
          {"deviation_bound", to_string(c.deviation_bound)},
          {"bound_holds", c.bound_holds},
          {"certified", c.certified()},
          {"steps",
           {{"offsets", to_json(c.after_offsets)["profiles"]},
            {"values", to_json(c.after_values)["profiles"]}}},
          {"output", to_json(c.output)}};
}

json to_json(const TentDecomposition& d) {
  json tents = json::array();
  for (const auto& t : d.tents) {
    tents.push_back({{"edge", t.edge}, {"coefficient", to_string(t.coefficient)},
                     {"profile", to_json(t.function)["profiles"][t.edge]}});
  }
  return {{"center", d.center}, {"constant", to_string(d.constant)}, {"tents", tents}};
}

}  // namespace skelpot::io
