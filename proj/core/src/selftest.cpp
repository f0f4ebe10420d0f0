#include "skelpot/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "skelpot/generators.hpp"
#include "skelpot/json_io.hpp"
#include "skelpot/potential.hpp"
#include "skelpot/rationalize.hpp"
#include "skelpot/regularize.hpp"
#include "skelpot/superform.hpp"

namespace skelpot {
namespace {

class Digest {
 public:
  void add(const std::string& text) {
    for (unsigned char c : text) {
      hash_ ^= c;
      hash_ *= 0x100000001b3ULL;
    }
  }
  void add(const nlohmann::json& j) { add(j.dump()); }
  std::string hex() const {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << hash_;
    return out.str();
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

void fail(CheckOutcome& out, const std::string& witness) {
  out.passed = false;
  if (out.witnesses.size() < 5) out.witnesses.push_back(witness);
}

MetricGraph path(const Rational& length) {
  return MetricGraph({"a", "b"}, {{"e1", "a", "b", length}}, {"a", "b"});
}

CheckOutcome green_exactness(Rng&, Digest&) {
  CheckOutcome out{"green_exactness", true, 3, {}};
  auto expect = [&](const std::string& label, const GreenFunction& g, const Rational& value,
                    const std::vector<Rational>& masses) {
    const Rational at = eval(g.result, g.pole);
    std::vector<Rational> got;
    for (const auto& atom : g.boundary_masses.atoms()) got.push_back(atom.second);
    if (at != value || got != masses) fail(out, label + ": g(x) = " + to_string(at));
  };
  expect("path midpoint", green(path(2), GraphPoint::on_edge("e1", 1)), Rational(1, 2),
         {Rational(1, 2), Rational(1, 2)});
  const MetricGraph star({"c", "y1", "y2", "y3"},
                         {{"e1", "c", "y1", 1}, {"e2", "c", "y2", 1}, {"e3", "c", "y3", 1}},
                         {"y1", "y2", "y3"});
  expect("3-star", green(star, GraphPoint::vertex("c")), Rational(1, 3),
         {Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  expect("offset 1/4", green(path(1), GraphPoint::on_edge("e1", Rational(1, 4))), Rational(3, 16),
         {Rational(3, 4), Rational(1, 4)});
  return out;
}

CheckOutcome poisson(Rng& rng, Digest& digest) {
  CheckOutcome out{"poisson_formula", true, 0, {}};
  for (int n = 0; n < 5; ++n) {
    const MetricGraph g = gen::graph(rng);
    digest.add(io::to_json(g));
    for (const auto& b : g.boundary()) {
      std::map<std::string, Rational> values;
      for (const auto& c : g.boundary()) values[c] = c == b ? 1 : 0;
      const PAFunction h = dirichlet_solve(g, values).result;
      for (const auto& v : g.vertices()) {
        if (g.is_boundary(v)) continue;
        ++out.cases;
        const auto [lhs, rhs] = evaluation_formula_check(g, GraphPoint::vertex(v), h);
        if (lhs != rhs) fail(out, "graph " + std::to_string(n) + " vertex " + v);
      }
    }
  }
  return out;
}

CheckOutcome symmetry(Rng& rng, Digest& digest) {
  CheckOutcome out{"pairing_symmetry", true, 0, {}};
  for (int n = 0; n < 5; ++n) {
    const MetricGraph g = gen::graph(rng);
    for (int k = 0; k < 5; ++k) {
      const PAFunction f = gen::pa_function(rng, g);
      const PAFunction h = gen::pa_function(rng, g);
      digest.add(io::to_json(f));
      digest.add(io::to_json(h));
      ++out.cases;
      if (integrate(f, ddc(h)) != integrate(h, ddc(f))) fail(out, "graph " + std::to_string(n));
    }
  }
  return out;
}

CheckOutcome subharmonic_methods(Rng& rng, Digest& digest) {
  CheckOutcome out{"subharmonic_methods_agree", true, 0, {}};
  const gen::FunctionClass classes[] = {gen::FunctionClass::Subharmonic, gen::FunctionClass::Superharmonic,
                                        gen::FunctionClass::Harmonic, gen::FunctionClass::Random,
                                        gen::FunctionClass::Mixed};
  for (int n = 0; n < 25; ++n) {
    const MetricGraph g = gen::graph(rng);
    const PAFunction f = gen::of_class(rng, g, classes[n % 5]);
    digest.add(io::to_json(f));
    ++out.cases;
    const auto slope = is_subharmonic_slope(f);
    const auto local = is_subharmonic_green(f);
    bool shared = slope.witnesses.empty() && local.witnesses.empty();
    for (const auto& a : slope.witnesses) {
      for (const auto& b : local.witnesses) shared |= a.first == b.first;
    }
    if (slope.subharmonic != local.subharmonic || !shared) fail(out, "function " + std::to_string(n));
  }
  return out;
}

CheckOutcome maximum_principle(Rng& rng, Digest& digest) {
  CheckOutcome out{"maximum_principle", true, 0, {}};
  for (int n = 0; n < 10; ++n) {
    const MetricGraph g = gen::graph(rng);
    const PAFunction f = gen::subharmonic(rng, g);
    digest.add(io::to_json(f));
    ++out.cases;
    if (!maximum_principle_check(f)) fail(out, "function " + std::to_string(n));
  }
  return out;
}

CheckOutcome smooth_max_axioms(Rng& rng, Digest& digest) {
  CheckOutcome out{"smooth_max_axioms", true, 0, {}};
  std::ostringstream corpus;
  for (int n = 0; n < 1000; ++n) {
    ++out.cases;
    const double eps = 0.01 + rng.unit();
    const double a = 4 * rng.unit() - 2;
    const double b = a + (2 * rng.unit() - 1) * 2 * eps;
    corpus << eps << a << b;
    const double m = smooth_max(eps, a, b);
    const double hi = std::max(a, b);
    if (m < hi - 1e-12 || m > hi + eps / 4 + 1e-12) fail(out, "m bounds at tuple " + std::to_string(n));
    if (std::abs(a - b) >= eps && m != hi) fail(out, "m exactness at tuple " + std::to_string(n));
    if (std::abs(smooth_max(eps, b, a) - m) > 1e-12) fail(out, "m symmetry at tuple " + std::to_string(n));

    std::vector<double> t(static_cast<std::size_t>(rng.uniform(1, 6)));
    for (auto& x : t) x = 4 * rng.unit() - 2;
    const double delta = 0.01 + rng.unit();
    const double top = *std::max_element(t.begin(), t.end());
    const double mt = smooth_max_n(delta, t);
    if (mt < top - 1e-12 || mt > top + delta / 2 + 1e-12) fail(out, "M bounds at tuple " + std::to_string(n));
    std::vector<double> extended = t;
    extended.push_back(top - delta - rng.unit());
    if (smooth_max_n(delta, extended) != mt) fail(out, "M drop-out at tuple " + std::to_string(n));
  }
  digest.add(corpus.str());
  return out;
}

CheckOutcome regularization(Rng& rng, Digest& digest) {
  CheckOutcome out{"monotone_regularization", true, 0, {}};
  for (int n = 0; n < 3; ++n) {
    const MetricGraph g = gen::graph(rng, {3, 6, 8, 10, Rational(1, 2), Rational(3), false});
    const PAFunction f = gen::subharmonic(rng, g);
    digest.add(io::to_json(f));
    const RegularizationSequence seq = build_regularization(f);
    const MetricGraph& wg = seq.refinement().fine();
    std::vector<GraphPoint> samples;
    for (const auto& v : wg.vertices()) samples.push_back(GraphPoint::vertex(v));
    for (const auto& e : wg.edges()) {
      for (int j = 1; j <= 8; ++j) samples.push_back(GraphPoint::on_edge(e.id, e.length * j / 9));
    }
    std::optional<SmoothedFunction> previous;
    for (std::size_t k = 0; k < 5; ++k) {
      ++out.cases;
      const SmoothedFunction fk = seq.term(k);
      const double eps = seq.epsilon(k);
      for (const auto& x : samples) {
        const double value = fk(x);
        const double base = to_double(eval(seq.working_function(), x));
        if (std::abs(value - base) > 1.25 * eps) fail(out, "distance at " + describe(x));
        if (previous && value > (*previous)(x) + 1e-12) fail(out, "monotonicity at " + describe(x));
        if (!x.is_vertex()) {
          const Rational& o = x.offset();
          const Rational length = wg.edge(x.id()).length;
          const Rational h = o < length - o ? o : Rational(length - o);
          if (arc_second_difference(fk, x.id(), o, h) < -1e-9) fail(out, "convexity at " + describe(x));
        } else if (!wg.is_boundary(x.id())) {
          Rational h;
          bool first = true;
          for (const auto& end : wg.incident(wg.vertex_index(x.id()))) {
            const Rational& l = wg.edges()[end.edge].length;
            if (first || l < h) h = l;
            first = false;
          }
          if (vertex_derivative_sum(fk, x.id(), h) < -1e-9) fail(out, "balance at " + describe(x));
        }
      }
      previous = fk;
    }
  }
  return out;
}

CheckOutcome rationalization(Rng& rng, Digest& digest) {
  CheckOutcome out{"rationalization", true, 0, {}};
  const Rational tol(1, 1000);
  for (int n = 0; n < 3; ++n) {
    const gen::PerturbedGreen input = gen::perturbed_green(rng, tol);
    digest.add(io::to_json(input.g.exact));
    ++out.cases;
    const RationalizationCertificate cert = rationalize(input.f, input.g, tol);
    if (!cert.certified()) fail(out, "input " + std::to_string(n) + " pairing " + to_string(cert.pairing));
    if (integrate(input.f, ddc(cert.output)) != cert.pairing) fail(out, "pairing recomputation " + std::to_string(n));
  }
  return out;
}

CheckOutcome tents(Rng& rng, Digest& digest) {
  CheckOutcome out{"tent_decomposition", true, 0, {}};
  for (int n = 0; n < 20; ++n) {
    const PAFunction f = gen::star_function(rng, static_cast<std::size_t>(rng.uniform(1, 6)));
    digest.add(io::to_json(f));
    ++out.cases;
    const TentDecomposition d = tent_decompose(f, "c");
    const PAFunction sum = tent_sum(d, f.graph());
    const GraphPoint c = GraphPoint::vertex("c");
    bool ok = ddc(sum).mass_at(c) == ddc(f).mass_at(c) && eval(sum, c) == eval(f, c);
    for (const auto& e : f.graph().edges()) {
      const GraphPoint mid = GraphPoint::on_edge(e.id, e.length / 2);
      ok = ok && eval(sum, mid) == eval(f, mid);
    }
    if (!ok) fail(out, "star " + std::to_string(n));
  }
  return out;
}

CheckOutcome superforms(Rng& rng, Digest& digest) {
  CheckOutcome out{"superform_identities", true, 0, {}};
  for (int n = 0; n < 100; ++n) {
    const auto r = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto p = static_cast<std::size_t>(rng.uniform(0, 2));
    const auto q = static_cast<std::size_t>(rng.uniform(0, 2));
    const SuperForm a = gen::form(rng, r, p, q);
    const SuperForm b = gen::form(rng, r, static_cast<std::size_t>(rng.uniform(0, 1)),
                                  static_cast<std::size_t>(rng.uniform(0, 1)));
    digest.add(to_string(a) + "|" + to_string(b));
    ++out.cases;
    const SuperForm dd = d_prime(d_second(a)) + d_second(d_prime(a));
    const int s = (p + q) % 2 ? -1 : 1;
    const SuperForm leibniz = d_prime(wedge(a, b)) - (wedge(d_prime(a), b) + wedge(a, d_prime(b)) * s);
    if (!d_prime(d_prime(a)).is_zero() || !d_second(d_second(a)).is_zero() || !dd.is_zero() ||
        !(J(J(a)) == a) || !leibniz.is_zero()) {
      fail(out, to_string(a));
    }
  }
  return out;
}

}  // namespace

bool RunReport::passed() const {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

RunReport run_selftest(std::uint64_t seed, bool with_timings) {
  RunReport report;
  report.command = "selftest --seed " + std::to_string(seed);
  report.seed = seed;
  Digest digest;
  const std::vector<std::function<CheckOutcome(Rng&, Digest&)>> checks{
      green_exactness, poisson, symmetry, subharmonic_methods, maximum_principle,
      smooth_max_axioms, regularization, rationalization, tents, superforms};
  for (std::size_t k = 0; k < checks.size(); ++k) {
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + k + 1);
    const auto start = std::chrono::steady_clock::now();
    CheckOutcome outcome = checks[k](rng, digest);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    if (with_timings) report.timings.emplace_back(outcome.name, elapsed.count());
    report.results.push_back(std::move(outcome));
  }
  report.inputs_digest = digest.hex();
  return report;
}

nlohmann::json to_json(const RunReport& report) {
  nlohmann::json results = nlohmann::json::array();
  for (const auto& r : report.results) {
    results.push_back({{"check", r.name}, {"passed", r.passed}, {"cases", r.cases}, {"witnesses", r.witnesses}});
  }
  nlohmann::json out{{"command", report.command},
                     {"seed", report.seed},
                     {"inputs_digest", report.inputs_digest},
                     {"passed", report.passed()},
                     {"results", results}};
  if (!report.timings.empty()) {
    nlohmann::json timings = nlohmann::json::object();
    for (const auto& [name, seconds] : report.timings) timings[name] = seconds;
    out["timings"] = timings;
  }
  return out;
}

}  // namespace skelpot
