#include "skelpot/rationalize.hpp"

#include <set>

#include "skelpot/error.hpp"

namespace skelpot {
namespace {

bool on_grid(const Rational& q, const Integer& n) { return q.get_den() <= n; }

Rational profile_value(const Profile& p, const Rational& t) {
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    if (t <= p[k + 1].offset) {
      const Rational slope = (p[k + 1].value - p[k].value) / (p[k + 1].offset - p[k].offset);
      return p[k].value + slope * (t - p[k].offset);
    }
  }
  return p.back().value;
}

std::string where(const std::string& edge, const Rational& offset) {
  return edge + "@" + to_string(offset);
}

Rational snap_interior(const Rational& v, const Integer& n) {
  Rational s = best_rational(v, n);
  if (s <= 0) s = Rational(1) / Rational(n);
  return s;
}

}  // namespace

ApproxPAFunction approx_from_strings(
    const MetricGraph& graph,
    const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& profiles) {
  std::map<std::string, Profile> exact;
  for (const auto& [edge, points] : profiles) {
    Profile& p = exact[edge];
    for (const auto& [offset, value] : points) p.push_back({parse_number(offset), parse_number(value)});
  }
  return {PAFunction(graph, std::move(exact))};
}

bool RationalizationCertificate::checks_pass() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

Profile collar(const Breakpoint& left, const Breakpoint& right, const Integer& den) {
  if (left.value == right.value) return {left, right};
  const Rational lo = on_grid(left.offset, den) ? left.offset : grid_above(left.offset, den);
  const Rational hi = on_grid(right.offset, den) ? right.offset : grid_below(right.offset, den);
  if (lo >= hi) return {};
  Profile out{left};
  if (lo != left.offset) out.push_back({lo, left.value});
  if (hi != right.offset) out.push_back({hi, right.value});
  out.push_back(right);
  return out;
}

Rational max_deviation(const PAFunction& f, const PAFunction& g) {
  if (!(f.graph() == g.graph())) throw InputError("functions live on different graphs");
  Rational worst = 0;
  for (const auto& e : f.graph().edges()) {
    const Profile& pf = f.profile(e.id);
    const Profile& pg = g.profile(e.id);
    std::set<Rational> offsets;
    for (const auto& b : pf) offsets.insert(b.offset);
    for (const auto& b : pg) offsets.insert(b.offset);
    for (const auto& t : offsets) {
      const Rational d = abs_value(profile_value(pf, t) - profile_value(pg, t));
      if (d > worst) worst = d;
    }
  }
  return worst;
}

RationalizationCertificate rationalize(const PAFunction& f, const ApproxPAFunction& approx,
                                       const Rational& tol) {
  if (tol <= 0) throw InputError("tolerance must be positive");
  const PAFunction& g = approx.exact;
  const MetricGraph& graph = g.graph();
  if (!(f.graph() == graph)) throw InputError("f and G live on different graphs");
  require_potential_ready(graph);
  for (const auto& e : graph.edges()) {
    if (graph.is_boundary(e.u) && graph.is_boundary(e.v)) {
      throw PreconditionError("edge '" + e.id + "' has both endpoints on the boundary; subdivide it first");
    }
  }

  RationalizationCertificate cert{tol, {}, g, g, g, {}, {}, {}, {}, {}, {}};
  {
    const Rational inv = 1 / tol;
    cert.grid = inv.get_num() / inv.get_den();
    if (cert.grid * inv.get_den() != inv.get_num()) cert.grid += 1;
  }
  const Integer& n = cert.grid;

  // Step 1: kinks.
  std::map<std::string, Profile> step1;
  for (const auto& e : graph.edges()) {
    const Profile& p = g.profile(e.id);
    Profile q{p.front()};
    for (std::size_t k = 1; k + 1 < p.size(); ++k) {
      const Rational t = best_rational(p[k].offset, n);
      if (t <= q.back().offset || t >= e.length) continue;
      q.push_back({t, profile_value(p, t)});
    }
    q.push_back(p.back());
    step1[e.id] = std::move(q);
  }
  cert.after_offsets = PAFunction(graph, step1);

  // Step 2: values.
  std::map<std::string, Rational> vertex_values;
  for (const auto& v : graph.vertices()) {
    const Rational& value = g.vertex_value(v);
    if (graph.is_boundary(v)) {
      if (best_rational(value, n) != 0) {
        throw PreconditionError("G is not zero at boundary vertex '" + v + "' (value " +
                                to_string(value) + ")");
      }
      vertex_values[v] = 0;
    } else {
      vertex_values[v] = snap_interior(value, n);
    }
  }
  std::map<std::string, Profile> step2;
  for (const auto& e : graph.edges()) {
    Profile q = step1.at(e.id);
    q.front().value = vertex_values.at(e.u);
    q.back().value = vertex_values.at(e.v);
    for (std::size_t k = 1; k + 1 < q.size(); ++k) q[k].value = snap_interior(q[k].value, n);
    step2[e.id] = std::move(q);
  }
  cert.after_values = PAFunction(graph, step2);

  // Step 3: collars.
  std::map<std::string, Profile> step3;
  for (const auto& e : graph.edges()) {
    const Profile& q = step2.at(e.id);
    Profile out{q.front()};
    for (std::size_t k = 0; k + 1 < q.size(); ++k) {
      Profile piece{q[k], q[k + 1]};
      if (q[k].value != q[k + 1].value && !(on_grid(q[k].offset, n) && on_grid(q[k + 1].offset, n))) {
        Profile collared = collar(q[k], q[k + 1], n);
        if (!collared.empty()) piece = std::move(collared);
      }
      out.insert(out.end(), piece.begin() + 1, piece.end());
    }
    step3[e.id] = std::move(out);
  }
  cert.output = PAFunction(graph, step3);

  // Every check is rederived from the output alone.
  RationalizationCheck kinks{"kinks", true, {}};
  RationalizationCheck values{"values", true, {}};
  RationalizationCheck positive{"positive_interior", true, {}};
  RationalizationCheck zero{"zero_boundary", true, {}};
  RationalizationCheck slopes{"slopes", true, {}};
  for (const auto& v : graph.vertices()) {
    const Rational& value = cert.output.vertex_value(v);
    if (!on_grid(value, n)) {
      values.passed = false;
      values.witnesses.push_back(v + " = " + to_string(value));
    }
    if (graph.is_boundary(v) && value != 0) {
      zero.passed = false;
      zero.witnesses.push_back(v + " = " + to_string(value));
    }
    if (!graph.is_boundary(v) && value <= 0) {
      positive.passed = false;
      positive.witnesses.push_back(v + " = " + to_string(value));
    }
  }
  for (const auto& e : graph.edges()) {
    const Profile& p = cert.output.profile(e.id);
    for (std::size_t k = 1; k + 1 < p.size(); ++k) {
      if (!on_grid(p[k].offset, n)) {
        kinks.passed = false;
        kinks.witnesses.push_back(where(e.id, p[k].offset));
      }
      if (!on_grid(p[k].value, n)) {
        values.passed = false;
        values.witnesses.push_back(where(e.id, p[k].offset) + " = " + to_string(p[k].value));
      }
      if (p[k].value <= 0) {
        positive.passed = false;
        positive.witnesses.push_back(where(e.id, p[k].offset) + " = " + to_string(p[k].value));
      }
    }
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
      if (p[k].value == p[k + 1].value) continue;
      if (!on_grid(p[k].offset, n) || !on_grid(p[k + 1].offset, n)) {
        slopes.passed = false;
        slopes.witnesses.push_back(where(e.id, p[k].offset) + " to " + to_string(p[k + 1].offset));
      }
    }
  }
  cert.checks = {kinks, values, slopes, positive, zero};

  cert.input_pairing = integrate(f, ddc(g));
  cert.pairing = integrate(f, ddc(cert.output));
  cert.max_deviation = max_deviation(g, cert.output);
  cert.mass_bound = ddc(f).total_variation();
  cert.deviation_bound = cert.mass_bound * cert.max_deviation;
  cert.bound_holds = abs_value(cert.pairing - cert.input_pairing) <= cert.deviation_bound;
  return cert;
}

TentDecomposition tent_decompose(const PAFunction& f, const std::string& x) {
  const MetricGraph& g = f.graph();
  const std::size_t c = g.vertex_index(x);
  if (g.is_boundary(x)) throw InputError("tent decomposition at boundary vertex '" + x + "'");
  TentDecomposition out{x, {}, f.vertex_value(x)};
  for (const auto& end : g.incident(c)) {
    const Edge& e = g.edges()[end.edge];
    if (e.u == e.v) throw InputError("loop '" + e.id + "' at '" + x + "'; subdivide it first");
    const Profile& p = f.profile(e.id);
    const Rational slope = (p[1].value - p[0].value) / (p[1].offset - p[0].offset);
    for (std::size_t k = 1; k + 1 < p.size(); ++k) {
      if ((p[k + 1].value - p[k].value) / (p[k + 1].offset - p[k].offset) != slope) {
        throw PreconditionError("f is not affine on edge '" + e.id + "' next to '" + x +
                                "'; subdivide first");
      }
    }
    const Rational lambda = end.end == End::U ? slope : Rational(-slope);
    if (lambda == 0) continue;
    std::map<std::string, Profile> profiles;
    for (const auto& other : g.edges()) profiles[other.id] = {{0, 0}, {other.length, 0}};
    const Rational half = e.length / 2;
    profiles[e.id] = {{0, 0}, {half, Rational(sign(lambda)) * half}, {e.length, 0}};
    out.tents.push_back({e.id, abs_value(lambda), PAFunction(g, std::move(profiles))});
  }
  return out;
}

PAFunction tent_sum(const TentDecomposition& d, const MetricGraph& g) {
  std::vector<std::pair<Rational, PAFunction>> terms{{Rational(1), PAFunction::constant(g, d.constant)}};
  for (const auto& t : d.tents) terms.emplace_back(t.coefficient, t.function);
  return linear_combine(terms);
}

}  // namespace skelpot
