#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "skelpot/error.hpp"
#include "skelpot/json_io.hpp"
#include "skelpot/potential.hpp"
#include "skelpot/rationalize.hpp"
#include "skelpot/regularize.hpp"
#include "skelpot/selftest.hpp"
#include "skelpot/superform.hpp"

namespace skelpot::cli {
namespace {

namespace fs = std::filesystem;
using io::json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

fs::path base_of(const std::string& file) { return fs::path(file).parent_path(); }

PAFunction load_function(const std::string& file) { return io::function_from_json(io::load_json(file), base_of(file)); }

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

std::string format_double(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

std::vector<Rational> parse_point(const std::string& text, std::size_t r) {
  std::vector<Rational> x;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) x.push_back(parse_number(item));
  if (x.size() != r) {
    throw InputError("point '" + text + "' needs " + std::to_string(r) + " coordinates");
  }
  return x;
}

std::vector<std::vector<Rational>> default_points(std::size_t r) {
  // {-1, 0, 1}^r for r <= 3, else the origin and the unit vectors.
  std::vector<std::vector<Rational>> points;
  if (r <= 3) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < r; ++i) count *= 3;
    for (std::size_t k = 0; k < count; ++k) {
      std::vector<Rational> x(r);
      std::size_t code = k;
      for (std::size_t i = 0; i < r; ++i, code /= 3) x[i] = static_cast<long>(code % 3) - 1;
      points.push_back(std::move(x));
    }
    return points;
  }
  points.emplace_back(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Rational> x(r);
    x[i] = 1;
    points.push_back(std::move(x));
  }
  return points;
}

std::string describe_point(const std::vector<Rational>& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + to_string(x[i]);
  return s + ")";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Piecewise-affine potential theory on metric graphs", "skelpot"};
  app.require_subcommand(1);

  std::string file;
  auto* ddc_cmd = app.add_subcommand("ddc", "Laplacian measure of a function");
  ddc_cmd->add_option("file", file, "function JSON")->required();

  std::string graph_file;
  std::string vertex;
  std::string edge;
  std::string offset;
  auto* green_cmd = app.add_subcommand("green", "Green function with a pole");
  green_cmd->add_option("graph", graph_file, "graph JSON")->required();
  auto* vertex_opt = green_cmd->add_option("--vertex", vertex, "pole at a vertex");
  auto* edge_opt = green_cmd->add_option("--edge", edge, "pole inside an edge");
  auto* offset_opt = green_cmd->add_option("--offset", offset, "offset of the pole from the edge's u end");
  vertex_opt->excludes(edge_opt);
  edge_opt->needs(offset_opt);
  offset_opt->needs(edge_opt);

  std::vector<std::string> value_items;
  std::string values_file;
  auto* harmonic_cmd = app.add_subcommand("harmonic", "Harmonic extension of boundary values");
  harmonic_cmd->add_option("graph", graph_file, "graph JSON")->required();
  auto* value_opt = harmonic_cmd->add_option("--value", value_items, "boundary value id=q (repeatable)");
  auto* values_opt = harmonic_cmd->add_option("--values", values_file, "JSON object of boundary values");
  value_opt->excludes(values_opt);

  std::string method = "both";
  auto* sub_cmd = app.add_subcommand("subharmonic", "Subharmonicity verdict");
  sub_cmd->add_option("file", file, "function JSON")->required();
  sub_cmd->add_option("--method", method, "slope, green or both")
      ->check(CLI::IsMember({"slope", "green", "both"}));

  std::size_t k_max = 5;
  std::size_t samples = 32;
  std::string patches_file;
  auto* reg_cmd = app.add_subcommand("regularize", "Sample the smooth-max regularization as CSV");
  reg_cmd->add_option("file", file, "function JSON")->required();
  reg_cmd->add_option("--k", k_max, "terms f_0 .. f_{k-1}")->check(CLI::Range(1, 60));
  reg_cmd->add_option("--samples", samples, "points per working edge")->check(CLI::Range(2, 100000));
  reg_cmd->add_option("--patches", patches_file, "also write the peak patches as JSON");

  std::string f_file;
  std::string g_file;
  std::string tol_text = "1/1000";
  auto* rat_cmd = app.add_subcommand("rationalize", "Move G onto a rational grid, keeping the pairing negative");
  rat_cmd->add_option("--f", f_file, "function JSON")->required();
  rat_cmd->add_option("--g", g_file, "function JSON with decimal data")->required();
  rat_cmd->add_option("--tol", tol_text, "tolerance");

  std::string expr;
  std::string op;
  std::string with;
  std::size_t dim = 0;
  std::vector<std::string> at;
  auto* form_cmd = app.add_subcommand("superform", "Superform calculus");
  form_cmd->add_option("expr", expr, "form, e.g. \"(2*x1^2 + x2) d'x1 ^ d''x2\"")->required();
  form_cmd->add_option("--op", op, "dprime, dsecond, wedge, J or positivity")
      ->required()
      ->check(CLI::IsMember({"dprime", "dsecond", "wedge", "J", "positivity"}));
  form_cmd->add_option("--with", with, "second form for wedge");
  form_cmd->add_option("--dim", dim, "ambient dimension (default: largest index used)");
  form_cmd->add_option("--at", at, "sample point \"x1,x2,...\" for positivity (repeatable)");

  std::uint64_t seed = 42;
  bool timings = false;
  auto* self_cmd = app.add_subcommand("selftest", "Run the property battery on a seeded corpus");
  self_cmd->add_option("--seed", seed, "corpus seed (SKELPOT_SEED overrides)");
  self_cmd->add_flag("--timings", timings, "include wall-clock timings");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*ddc_cmd) {
      emit(out, io::to_json(ddc(load_function(file))));
      return kOk;
    }
    if (*green_cmd) {
      const MetricGraph g = io::graph_from_json(io::load_json(graph_file));
      GraphPoint x = GraphPoint::vertex(vertex);
      if (*edge_opt) {
        x = GraphPoint::on_edge(edge, parse_number(offset));
      } else if (!*vertex_opt) {
        throw InputError("give --vertex or --edge with --offset");
      }
      emit(out, io::to_json(green(g, x)));
      return kOk;
    }
    if (*harmonic_cmd) {
      const MetricGraph g = io::graph_from_json(io::load_json(graph_file));
      std::map<std::string, Rational> values;
      if (*values_opt) {
        values = io::values_from_json(io::load_json(values_file));
      } else {
        for (const auto& item : value_items) {
          const auto eq = item.find('=');
          if (eq == std::string::npos) throw InputError("--value expects id=q, got '" + item + "'");
          values[item.substr(0, eq)] = parse_number(item.substr(eq + 1));
        }
      }
      emit(out, io::to_json(dirichlet_solve(g, values)));
      return kOk;
    }
    if (*sub_cmd) {
      const PAFunction f = load_function(file);
      if (method == "slope") {
        const auto v = is_subharmonic_slope(f);
        emit(out, io::verdict_to_json(v, "slope"));
        return v.subharmonic ? kOk : kNegative;
      }
      if (method == "green") {
        const auto v = is_subharmonic_green(f);
        emit(out, io::verdict_to_json(v, "green"));
        return v.subharmonic ? kOk : kNegative;
      }
      const auto slope = is_subharmonic_slope(f);
      const auto local = is_subharmonic_green(f);
      const bool agree = slope.subharmonic == local.subharmonic;
      emit(out, {{"subharmonic", slope.subharmonic && local.subharmonic},
                 {"agree", agree},
                 {"slope", io::verdict_to_json(slope, "slope")},
                 {"green", io::verdict_to_json(local, "green")}});
      if (!agree) err << "warning: the slope and Green tests disagree\n";
      return slope.subharmonic && local.subharmonic ? kOk : kNegative;
    }
    if (*reg_cmd) {
      const PAFunction f = load_function(file);
      const RegularizationSequence seq = build_regularization(f);
      const Refinement& r = seq.refinement();
      const MetricGraph& wg = r.fine();
      std::vector<GraphPoint> points;
      for (const auto& e : wg.edges()) {
        for (std::size_t j = 0; j < samples; ++j) {
          Rational t(static_cast<long>(j), static_cast<long>(samples - 1));
          t.canonicalize();
          points.push_back(wg.point_at(e.id, e.length * t));
        }
      }
      std::vector<SmoothedFunction> terms;
      for (std::size_t k = 0; k < k_max; ++k) terms.push_back(seq.term(k));
      out << "# samples_per_edge=" << samples << " k=" << k_max << " epsilon0=" << to_string(seq.epsilon_exact(0))
          << "\n";
      out << "k,epsilon,edge,offset,vertex,f_k,f,f_k-f\n";
      for (std::size_t k = 0; k < k_max; ++k) {
        for (const auto& x : points) {
          const GraphPoint coarse = r.to_coarse(x);
          out << k << "," << format_double(seq.epsilon(k)) << ",";
          if (coarse.is_vertex()) {
            out << ",," << coarse.id();
          } else {
            out << coarse.id() << "," << to_string(coarse.offset()) << ",";
          }
          const double fk = terms[k](x);
          const double base = to_double(eval(f, coarse));
          out << "," << format_double(fk) << "," << format_double(base) << "," << format_double(fk - base) << "\n";
        }
      }
      if (!patches_file.empty()) {
        json patches = json::array();
        for (const auto& p : seq.patches()) {
          json arcs = json::array();
          for (const auto& a : p.arcs) {
            arcs.push_back({{"edge", a.edge},
                            {"end", a.end == End::U ? "u" : "v"},
                            {"length", to_string(a.length)},
                            {"f_slope", to_string(a.f_slope)},
                            {"g_slope", to_string(a.g_slope)},
                            {"gap", to_string(a.gap)},
                            {"epsilon", to_string(a.eps)}});
          }
          patches.push_back({{"peak", io::to_json(p.peak)},
                             {"center", p.center},
                             {"value", to_string(p.value)},
                             {"mass", to_string(p.mass)},
                             {"arcs", arcs}});
        }
        std::ofstream pf(patches_file);
        if (!pf) throw InputError("cannot write '" + patches_file + "'");
        pf << json{{"epsilon0", to_string(seq.epsilon_exact(0))}, {"patches", patches}}.dump(2) << "\n";
      }
      return kOk;
    }
    if (*rat_cmd) {
      const PAFunction f = load_function(f_file);
      const ApproxPAFunction g = io::approx_from_json(io::load_json(g_file), base_of(g_file));
      const RationalizationCertificate cert = rationalize(f, g, parse_number(tol_text));
      emit(out, io::to_json(cert));
      if (!cert.certified()) err << "not certified: pairing " << to_string(cert.pairing) << "\n";
      return cert.certified() ? kOk : kNegative;
    }
    if (*form_cmd) {
      const std::optional<std::size_t> r = dim ? std::optional<std::size_t>(dim) : std::nullopt;
      SuperForm a = parse_form(expr, r);
      if (op == "dprime") {
        out << to_string(d_prime(a)) << "\n";
      } else if (op == "dsecond") {
        out << to_string(d_second(a)) << "\n";
      } else if (op == "J") {
        out << to_string(J(a)) << "\n";
      } else if (op == "wedge") {
        if (with.empty()) throw InputError("--op wedge needs --with");
        SuperForm b = parse_form(with, r);
        const std::size_t common = std::max(a.dim(), b.dim());
        if (!r && a.dim() != b.dim()) {
          a = parse_form(expr, common);
          b = parse_form(with, common);
        }
        out << to_string(wedge(a, b)) << "\n";
      } else {
        std::vector<std::vector<Rational>> points;
        for (const auto& p : at) points.push_back(parse_point(p, a.dim()));
        if (points.empty()) points = default_points(a.dim());
        const PositivityVerdict v = positivity(a, points);
        if (v.positive()) {
          out << "positive at " << points.size() << " sample points\n";
          return kOk;
        }
        out << (v.status == PositivityStatus::NonSymmetric ? "non-symmetric coefficient matrix at "
                                                           : "not positive at ")
            << describe_point(*v.witness) << "\n";
        return kNegative;
      }
      return kOk;
    }
    if (*self_cmd) {
      if (const char* env = std::getenv("SKELPOT_SEED")) {
        try {
          seed = std::stoull(env);
        } catch (const std::exception&) {
          throw InputError(std::string("SKELPOT_SEED is not an unsigned integer: '") + env + "'");
        }
      }
      const RunReport report = run_selftest(seed, timings);
      emit(out, to_json(report));
      return report.passed() ? kOk : kNegative;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace skelpot::cli
