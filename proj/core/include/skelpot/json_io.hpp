#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "skelpot/metric_graph.hpp"
#include "skelpot/pa_function.hpp"
#include "skelpot/potential.hpp"
#include "skelpot/rationalize.hpp"

namespace skelpot::io {

using nlohmann::json;

// Parses JSON text; syntax errors become ParseError with line and column.
json parse_json(const std::string& text);
json load_json(const std::filesystem::path& path);

// Rationals are strings ("p/q", "p" or an exact decimal); integral JSON
// numbers are accepted on input.
Rational rational_from_json(const json& j, const std::string& where);
json to_json(const Rational& q);

// {"vertices": [...], "edges": [{"id", "u", "v", "length"}], "boundary": [...],
//  "allow_loops": bool, "allow_multi": bool}. Edge ids default to e1, e2, ...
// The graph is validated.
MetricGraph graph_from_json(const json& j);
json to_json(const MetricGraph& g);

// {"vertex": id} or {"edge": id, "offset": q}.
GraphPoint point_from_json(const json& j);
json to_json(const GraphPoint& p);

// {"graph": <graph or path>, "profiles": {edge: [[offset, value], ...]}} or
// {"graph": ..., "vertex_values": {vertex: value}}. A graph given as a string
// is a file path relative to `base`.
PAFunction function_from_json(const json& j, const std::filesystem::path& base = {});
ApproxPAFunction approx_from_json(const json& j, const std::filesystem::path& base = {});
json to_json(const PAFunction& f);

MetricGraph graph_ref_from_json(const json& j, const std::filesystem::path& base);

// [{"at": point, "mass": q}, ...]
DiscreteMeasure measure_from_json(const json& j);
json to_json(const DiscreteMeasure& mu);

std::map<std::string, Rational> values_from_json(const json& j);

json to_json(const GreenFunction& g);
json to_json(const HarmonicExtension& h);
json verdict_to_json(const SubharmonicVerdict& v, const std::string& method);
json to_json(const RationalizationCertificate& c);
json to_json(const TentDecomposition& d);

}  // namespace skelpot::io
