#include "skelpot/generators.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "skelpot/error.hpp"
#include "skelpot/potential.hpp"

namespace skelpot {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InputError("empty random range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / span * span;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return lo + static_cast<std::int64_t>(x % span);
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Rational Rng::rational(const Rational& lo, const Rational& hi, std::int64_t max_den) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const std::int64_t q = uniform(1, max_den);
    Integer first;
    Integer last;
    const Rational a = lo * q;
    const Rational b = hi * q;
    mpz_cdiv_q(first.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    mpz_fdiv_q(last.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    if (first > last) continue;
    const Integer span = last - first;
    const std::int64_t offset = uniform(0, span.get_si());
    Rational out(first + offset, q);
    out.canonicalize();
    return out;
  }
  return lo;
}

namespace gen {
namespace {

std::string vertex_name(std::size_t k) { return "v" + std::to_string(k); }

Rational lerp_value(const Profile& p, const Rational& t) {
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    if (t <= p[k + 1].offset) {
      return p[k].value + (p[k + 1].value - p[k].value) * (t - p[k].offset) / (p[k + 1].offset - p[k].offset);
    }
  }
  return p.back().value;
}

Rational noise(Rng& rng) { return Rational(rng.uniform(-100000, 100000), Integer("1000000000000")); }

std::vector<std::size_t> subset(Rng& rng, std::size_t r, std::size_t size) {
  std::vector<std::size_t> all(r);
  for (std::size_t i = 0; i < r; ++i) all[i] = i;
  for (std::size_t i = 0; i + 1 < r; ++i) {
    const auto j = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(i), static_cast<std::int64_t>(r) - 1));
    std::swap(all[i], all[j]);
  }
  all.resize(size);
  return all;
}

}  // namespace

MetricGraph graph(Rng& rng, const GraphShape& shape) {
  const auto n = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(shape.min_vertices),
                                                      static_cast<std::int64_t>(shape.max_vertices)));
  std::vector<std::string> vertices;
  for (std::size_t k = 0; k < n; ++k) vertices.push_back(vertex_name(k));
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = 1; k < n; ++k) {
    const auto parent = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(k) - 1));
    pairs.insert({parent, k});
  }
  const std::size_t room = shape.max_edges > n - 1 ? shape.max_edges - (n - 1) : 0;
  const auto extra = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(std::min(room, n))));
  for (std::size_t attempt = 0; attempt < 8 * extra && pairs.size() < n - 1 + extra; ++attempt) {
    auto a = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    auto b = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    pairs.insert({a, b});
  }
  std::vector<std::pair<std::size_t, std::size_t>> ordered(pairs.begin(), pairs.end());
  for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
    const auto j = static_cast<std::size_t>(
        rng.uniform(static_cast<std::int64_t>(i), static_cast<std::int64_t>(ordered.size()) - 1));
    std::swap(ordered[i], ordered[j]);
  }
  std::vector<Edge> edges;
  std::vector<std::set<std::size_t>> adjacent(n);
  for (const auto& [a, b] : ordered) {
    edges.push_back({"e" + std::to_string(edges.size() + 1), vertex_name(a), vertex_name(b),
                     rng.rational(shape.min_length, shape.max_length, shape.max_den)});
    adjacent[a].insert(b);
    adjacent[b].insert(a);
  }

  const auto wanted = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(std::max<std::size_t>(1, n / 3))));
  std::vector<std::string> boundary;
  std::set<std::size_t> chosen;
  for (std::size_t v : subset(rng, n, n)) {
    if (chosen.size() == wanted) break;
    if (shape.separated_boundary &&
        std::any_of(adjacent[v].begin(), adjacent[v].end(), [&](std::size_t w) { return chosen.count(w) > 0; })) {
      continue;
    }
    chosen.insert(v);
  }
  for (std::size_t v : chosen) boundary.push_back(vertex_name(v));
  return MetricGraph(std::move(vertices), std::move(edges), std::move(boundary));
}

PAFunction pa_function(Rng& rng, const MetricGraph& g, std::size_t max_kinks) {
  std::map<std::string, Rational> values;
  for (const auto& v : g.vertices()) values[v] = rng.rational(-3, 3, 10);
  std::map<std::string, Profile> profiles;
  for (const auto& e : g.edges()) {
    Profile p{{0, values[e.u]}};
    const auto kinks = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(max_kinks)));
    const std::int64_t m = rng.uniform(2, 6);
    std::set<std::int64_t> ks;
    for (std::size_t k = 0; k < kinks; ++k) ks.insert(rng.uniform(1, m - 1));
    for (std::int64_t k : ks) p.push_back({e.length * k / m, rng.rational(-3, 3, 10)});
    p.push_back({e.length, values[e.v]});
    profiles[e.id] = std::move(p);
  }
  return PAFunction(g, std::move(profiles));
}

PAFunction harmonic(Rng& rng, const MetricGraph& g) {
  std::map<std::string, Rational> values;
  for (const auto& b : g.boundary()) values[b] = rng.rational(-2, 2, 10);
  return dirichlet_solve(g, values).result;
}

namespace {

GraphPoint random_interior_point(Rng& rng, const MetricGraph& g) {
  std::vector<std::string> interior;
  for (const auto& v : g.vertices()) {
    if (!g.is_boundary(v)) interior.push_back(v);
  }
  if (!interior.empty() && rng.chance(1, 2)) return GraphPoint::vertex(rng.pick(interior));
  const Edge& e = rng.pick(g.edges());
  const std::vector<Rational> fractions{Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  return GraphPoint::on_edge(e.id, e.length * rng.pick(fractions));
}

}  // namespace

PAFunction subharmonic(Rng& rng, const MetricGraph& g, std::size_t max_poles) {
  std::vector<std::pair<Rational, PAFunction>> terms{{Rational(1), harmonic(rng, g)}};
  const auto poles = rng.uniform(1, static_cast<std::int64_t>(max_poles));
  for (std::int64_t k = 0; k < poles; ++k) {
    terms.emplace_back(-rng.rational(Rational(1, 4), 2, 4), green(g, random_interior_point(rng, g)).result);
  }
  return linear_combine(terms);
}

const char* class_name(FunctionClass c) {
  switch (c) {
    case FunctionClass::Subharmonic: return "subharmonic";
    case FunctionClass::Superharmonic: return "superharmonic";
    case FunctionClass::Harmonic: return "harmonic";
    case FunctionClass::Random: return "random";
    case FunctionClass::Mixed: return "mixed";
  }
  return "unknown";
}

PAFunction of_class(Rng& rng, const MetricGraph& g, FunctionClass c) {
  switch (c) {
    case FunctionClass::Subharmonic: return subharmonic(rng, g);
    case FunctionClass::Superharmonic: return linear_combine({{Rational(-1), subharmonic(rng, g)}});
    case FunctionClass::Harmonic: return harmonic(rng, g);
    case FunctionClass::Random: return pa_function(rng, g);
    case FunctionClass::Mixed: {
      const PAFunction bump = green(g, random_interior_point(rng, g)).result;
      return linear_combine({{Rational(1), subharmonic(rng, g)}, {rng.rational(Rational(1, 8), 1, 8), bump}});
    }
  }
  throw InputError("unknown function class");
}

PAFunction star_function(Rng& rng, std::size_t degree) {
  std::vector<std::string> vertices{"c"};
  std::vector<Edge> edges;
  std::vector<std::string> leaves;
  for (std::size_t i = 1; i <= degree; ++i) {
    const std::string leaf = "y" + std::to_string(i);
    vertices.push_back(leaf);
    leaves.push_back(leaf);
    edges.push_back({"e" + std::to_string(i), "c", leaf, rng.rational(Rational(1, 2), 3, 10)});
  }
  const MetricGraph g(vertices, edges, leaves);
  const Rational center = rng.rational(-3, 3, 10);
  std::map<std::string, Profile> profiles;
  for (const auto& e : edges) {
    const Rational slope = rng.chance(1, 4) ? Rational(0) : rng.rational(-3, 3, 4);
    profiles[e.id] = {{0, center}, {e.length, center + slope * e.length}};
  }
  return PAFunction(g, std::move(profiles));
}

std::string decimal_string(const Rational& q, int digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const Rational scaled = abs_value(q) * scale + Rational(1, 2);
  Integer n;
  mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  std::string s = n.get_str();
  if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return (q < 0 && n != 0 ? "-" : "") + s;
}

PerturbedGreen perturbed_green(Rng& rng, const Rational& tol) {
  GraphShape shape;
  shape.max_vertices = 8;
  shape.max_edges = 11;
  shape.separated_boundary = true;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const MetricGraph g = graph(rng, shape);
    const GraphPoint pole = random_interior_point(rng, g);
    const PAFunction green_fn = green(g, pole).result;
    const PAFunction f = linear_combine({{Rational(1), green_fn}, {Rational(1), harmonic(rng, g)}});

    std::map<std::string, std::string> vertex_text;
    for (const auto& v : g.vertices()) {
      vertex_text[v] = g.is_boundary(v) ? "0" : decimal_string(green_fn.vertex_value(v) + noise(rng), 12);
    }
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> profiles;
    for (const auto& e : g.edges()) {
      const Profile& p = green_fn.profile(e.id);
      std::vector<Rational> offsets;
      for (std::size_t k = 1; k + 1 < p.size(); ++k) offsets.push_back(p[k].offset + noise(rng));
      offsets.push_back(rng.rational(Rational(1, 10), Rational(9, 10), 10) * e.length + noise(rng));
      std::sort(offsets.begin(), offsets.end());
      auto& out = profiles[e.id];
      out.emplace_back("0", vertex_text[e.u]);
      for (const auto& t : offsets) {
        if (t <= 0 || t >= e.length) continue;
        const std::string ts = decimal_string(t, 12);
        if (!out.empty() && out.back().first == ts) continue;
        out.emplace_back(ts, decimal_string(lerp_value(p, t) + noise(rng), 12));
      }
      out.emplace_back(to_string(e.length), vertex_text[e.v]);
    }
    ApproxPAFunction approx = approx_from_strings(g, profiles);

    const Rational mass_bound = ddc(f).total_variation() * (1 + lipschitz_constant(approx.exact));
    const Rational pairing = integrate(f, ddc(approx.exact));
    if (-pairing < 10 * tol * mass_bound) continue;
    return {f, std::move(approx), pole, tol, mass_bound};
  }
  throw Error("could not draw a perturbed Green function with enough margin");
}

Poly poly(Rng& rng, std::size_t r, unsigned max_degree, std::size_t max_terms) {
  Poly p(r);
  const auto terms = rng.uniform(0, static_cast<std::int64_t>(max_terms));
  for (std::int64_t t = 0; t < terms; ++t) {
    Monomial m(r, 0);
    const auto degree = rng.uniform(0, max_degree);
    for (std::int64_t d = 0; d < degree; ++d) ++m[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(r) - 1))];
    p.add_term(m, rng.rational(-3, 3, 4));
  }
  return p;
}

SuperForm form(Rng& rng, std::size_t r, std::size_t p, std::size_t q, unsigned max_degree) {
  SuperForm out(r, p, q);
  if (p > r || q > r) return out;
  const auto keys = rng.uniform(1, 3);
  for (std::int64_t k = 0; k < keys; ++k) {
    IndexSet i = 0;
    IndexSet j = 0;
    for (std::size_t x : subset(rng, r, p)) i |= IndexSet{1} << x;
    for (std::size_t x : subset(rng, r, q)) j |= IndexSet{1} << x;
    out.add(i, j, poly(rng, r, max_degree, 3));
  }
  return out;
}

AffineMap affine_map(Rng& rng, std::size_t source, std::size_t target) {
  AffineMap f{RationalMatrix(target, source), std::vector<Rational>(target)};
  for (std::size_t i = 0; i < target; ++i) {
    for (std::size_t l = 0; l < source; ++l) f.linear(i, l) = rng.rational(-2, 2, 3);
    f.translation[i] = rng.rational(-2, 2, 3);
  }
  return f;
}

std::vector<Rational> point(Rng& rng, std::size_t r) {
  std::vector<Rational> x(r);
  for (auto& c : x) c = rng.rational(-2, 2, 4);
  return x;
}

Poly convexity_sample(Rng& rng, std::size_t r, bool quartic) {
  std::vector<Poly> linear;
  for (std::size_t k = 0; k < r; ++k) {
    Poly l(r);
    for (std::size_t i = 0; i < r; ++i) l += Poly::variable(r, i) * rng.rational(-2, 2, 2);
    linear.push_back(std::move(l));
  }
  // Sum of signed squares of linear forms: PSD when every sign is +.
  const bool convex = rng.chance(1, 2);
  Poly psi(r);
  for (const auto& l : linear) {
    const Rational c = convex || rng.chance(1, 2) ? rng.rational(0, 2, 3) : rng.rational(-2, 0, 3);
    psi += l * l * c;
  }
  for (std::size_t i = 0; i < r; ++i) psi += Poly::variable(r, i) * rng.rational(-1, 1, 3);
  if (quartic) {
    const Poly& l = rng.pick(linear);
    psi += l * l * l * l * rng.rational(-1, 1, 4);
  }
  return psi;
}

}  // namespace gen
}  // namespace skelpot
