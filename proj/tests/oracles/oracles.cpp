#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace oracle {

using skelpot::Edge;
using skelpot::Poly;
using skelpot::SuperForm;

std::vector<Rational> solve(Matrix a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::runtime_error("singular system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Rational d = a[col][col];
    for (std::size_t j = 0; j < n; ++j) a[col][j] /= d;
    b[col] /= d;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const Rational factor = a[i][col];
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= factor * a[col][j];
      b[i] -= factor * b[col];
    }
  }
  return b;
}

Rational cofactor_determinant(const Matrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Rational total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j] == 0) continue;
    Matrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) row.push_back(a[i][k]);
      }
      minor.push_back(std::move(row));
    }
    const Rational term = a[0][j] * cofactor_determinant(minor);
    total += j % 2 ? Rational(-term) : term;
  }
  return total;
}

bool psd_by_minors(const Matrix& a) {
  const std::size_t n = a.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) idx.push_back(i);
    }
    Matrix sub;
    for (std::size_t i : idx) {
      std::vector<Rational> row;
      for (std::size_t j : idx) row.push_back(a[i][j]);
      sub.push_back(std::move(row));
    }
    if (cofactor_determinant(sub) < 0) return false;
  }
  return true;
}

namespace {

struct Link {
  std::string a;
  std::string b;
  Rational length;
};

// Node values with fixed boundary values, Kirchhoff balance elsewhere:
// sum over links (u_n - u_m) / length = source[n].
std::map<std::string, Rational> kirchhoff(const std::vector<std::string>& nodes, const std::vector<Link>& links,
                                          const std::map<std::string, Rational>& fixed,
                                          const std::map<std::string, Rational>& source) {
  std::vector<std::string> free;
  for (const auto& n : nodes) {
    if (!fixed.count(n)) free.push_back(n);
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < free.size(); ++k) index[free[k]] = k;
  Matrix a(free.size(), std::vector<Rational>(free.size()));
  std::vector<Rational> b(free.size());
  for (const auto& [n, s] : source) {
    if (index.count(n)) b[index[n]] += s;
  }
  for (const auto& l : links) {
    if (l.a == l.b) continue;
    const Rational c = 1 / l.length;
    for (const auto& [from, to] : {std::pair{l.a, l.b}, std::pair{l.b, l.a}}) {
      if (!index.count(from)) continue;
      const std::size_t row = index[from];
      a[row][row] += c;
      if (index.count(to)) {
        a[row][index[to]] -= c;
      } else {
        b[row] += c * fixed.at(to);
      }
    }
  }
  const std::vector<Rational> x = solve(a, b);
  std::map<std::string, Rational> out = fixed;
  for (std::size_t k = 0; k < free.size(); ++k) out[free[k]] = x[k];
  return out;
}

}  // namespace

Network green_network(const MetricGraph& g, const GraphPoint& pole) {
  std::vector<std::string> nodes = g.vertices();
  std::vector<Link> links;
  std::string pole_node = pole.is_vertex() ? pole.id() : std::string("*pole");
  for (const Edge& e : g.edges()) {
    if (!pole.is_vertex() && e.id == pole.id()) {
      links.push_back({e.u, pole_node, pole.offset()});
      links.push_back({pole_node, e.v, e.length - pole.offset()});
    } else {
      links.push_back({e.u, e.v, e.length});
    }
  }
  if (!pole.is_vertex()) nodes.push_back(pole_node);
  std::map<std::string, Rational> fixed;
  for (const auto& b : g.boundary()) fixed[b] = 0;
  const auto values = kirchhoff(nodes, links, fixed, {{pole_node, Rational(1)}});
  Network out;
  for (const auto& v : g.vertices()) out.vertex_values[v] = values.at(v);
  out.pole_value = values.at(pole_node);
  for (const auto& b : g.boundary()) {
    Rational mass = 0;
    for (const auto& l : links) {
      if (l.a == l.b) continue;
      if (l.a == b) mass += (values.at(l.b) - values.at(b)) / l.length;
      if (l.b == b) mass += (values.at(l.a) - values.at(b)) / l.length;
    }
    out.boundary_masses[b] = mass;
  }
  return out;
}

std::map<std::string, Rational> harmonic_values(const MetricGraph& g,
                                                const std::map<std::string, Rational>& boundary) {
  std::vector<Link> links;
  for (const Edge& e : g.edges()) links.push_back({e.u, e.v, e.length});
  return kirchhoff(g.vertices(), links, boundary, {});
}

namespace {

Rational slope(const skelpot::Breakpoint& a, const skelpot::Breakpoint& b) {
  return (b.value - a.value) / (b.offset - a.offset);
}

}  // namespace

Rational ddc_mass(const PAFunction& f, const GraphPoint& x) {
  const MetricGraph& g = f.graph();
  Rational total = 0;
  if (x.is_vertex()) {
    for (const Edge& e : g.edges()) {
      const auto& p = f.profile(e.id);
      if (e.u == x.id()) total += slope(p[0], p[1]);
      if (e.v == x.id()) total -= slope(p[p.size() - 2], p[p.size() - 1]);
    }
    return total;
  }
  const auto& p = f.profile(x.id());
  for (std::size_t k = 1; k + 1 < p.size(); ++k) {
    if (p[k].offset == x.offset()) return slope(p[k], p[k + 1]) - slope(p[k - 1], p[k]);
  }
  return 0;
}

Rational value(const PAFunction& f, const GraphPoint& x) {
  const MetricGraph& g = f.graph();
  if (x.is_vertex()) {
    for (const Edge& e : g.edges()) {
      if (e.u == x.id()) return f.profile(e.id).front().value;
      if (e.v == x.id()) return f.profile(e.id).back().value;
    }
    throw std::runtime_error("isolated vertex");
  }
  const auto& p = f.profile(x.id());
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    if (x.offset() <= p[k + 1].offset) return p[k].value + slope(p[k], p[k + 1]) * (x.offset() - p[k].offset);
  }
  return p.back().value;
}

Rational energy_pairing(const PAFunction& f, const PAFunction& h) {
  Rational total = 0;
  for (const Edge& e : f.graph().edges()) {
    std::vector<Rational> cuts;
    for (const auto& b : f.profile(e.id)) cuts.push_back(b.offset);
    for (const auto& b : h.profile(e.id)) cuts.push_back(b.offset);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto at = [&](const PAFunction& fn, const Rational& t) {
      const auto& p = fn.profile(e.id);
      for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        if (t <= p[k + 1].offset) return Rational(p[k].value + slope(p[k], p[k + 1]) * (t - p[k].offset));
      }
      return p.back().value;
    };
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const Rational len = cuts[k + 1] - cuts[k];
      total -= (at(f, cuts[k + 1]) - at(f, cuts[k])) * (at(h, cuts[k + 1]) - at(h, cuts[k])) / len;
    }
  }
  return total;
}

double smooth_max_quadrature(double delta, const std::vector<double>& t) {
  static const std::array<double, 5> nodes{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                           0.9061798459386640};
  static const std::array<double, 5> weights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                             0.4786286704993665, 0.2369268850561891};
  const double top = *std::max_element(t.begin(), t.end());
  const double lo = top - delta / 2;
  const double hi = top + delta / 2;
  std::vector<double> cuts{lo, hi};
  for (double x : t) {
    for (double c : {x - delta / 2, x + delta / 2}) {
      if (c > lo && c < hi) cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double integral = 0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k];
    const double b = cuts[k + 1];
    if (b <= a) continue;
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const double s = (a + b) / 2 + (b - a) / 2 * nodes[q];
      double product = 1;
      for (double x : t) product *= std::clamp((s - (x - delta / 2)) / delta, 0.0, 1.0);
      integral += weights[q] * (b - a) / 2 * (1 - product);
    }
  }
  return lo + integral;
}

namespace {

void add_word(GenForm& out, std::vector<int> word, const Poly& c) {
  if (c.is_zero()) return;
  int sign = 1;
  for (std::size_t i = 0; i < word.size(); ++i) {
    for (std::size_t j = 0; j + 1 < word.size() - i; ++j) {
      if (word[j] > word[j + 1]) {
        std::swap(word[j], word[j + 1]);
        sign = -sign;
      }
    }
  }
  for (std::size_t j = 0; j + 1 < word.size(); ++j) {
    if (word[j] == word[j + 1]) return;
  }
  auto it = out.terms.find(word);
  const Poly signed_c = c * Rational(sign);
  if (it == out.terms.end()) {
    out.terms.emplace(word, signed_c);
    return;
  }
  it->second += signed_c;
  if (it->second.is_zero()) out.terms.erase(it);
}

}  // namespace

GenForm from_superform(const SuperForm& a) {
  GenForm out{a.dim(), {}};
  const int r = static_cast<int>(a.dim());
  for (const auto& [key, c] : a.coeffs()) {
    std::vector<int> word;
    for (std::size_t i : skelpot::indices(key.first)) word.push_back(static_cast<int>(i) - 1);
    for (std::size_t j : skelpot::indices(key.second)) word.push_back(r + static_cast<int>(j) - 1);
    add_word(out, word, c);
  }
  return out;
}

SuperForm to_superform(const GenForm& a, std::size_t p, std::size_t q) {
  SuperForm out(a.r, p, q);
  const int r = static_cast<int>(a.r);
  for (const auto& [word, c] : a.terms) {
    std::vector<std::size_t> i;
    std::vector<std::size_t> j;
    for (int letter : word) {
      if (letter < r) {
        i.push_back(static_cast<std::size_t>(letter) + 1);
      } else {
        j.push_back(static_cast<std::size_t>(letter - r) + 1);
      }
    }
    out.add(skelpot::index_set(i), skelpot::index_set(j), c);
  }
  return out;
}

GenForm gen_wedge(const GenForm& a, const GenForm& b) {
  GenForm out{a.r, {}};
  for (const auto& [wa, ca] : a.terms) {
    for (const auto& [wb, cb] : b.terms) {
      std::vector<int> word = wa;
      word.insert(word.end(), wb.begin(), wb.end());
      add_word(out, word, ca * cb);
    }
  }
  return out;
}

GenForm gen_d(const GenForm& a, bool second) {
  GenForm out{a.r, {}};
  const int r = static_cast<int>(a.r);
  for (const auto& [w, c] : a.terms) {
    for (int k = 0; k < r; ++k) {
      std::vector<int> word{second ? r + k : k};
      word.insert(word.end(), w.begin(), w.end());
      add_word(out, word, c.derivative(static_cast<std::size_t>(k)));
    }
  }
  return out;
}

GenForm gen_J(const GenForm& a) {
  GenForm out{a.r, {}};
  const int r = static_cast<int>(a.r);
  for (const auto& [w, c] : a.terms) {
    std::vector<int> word;
    for (int letter : w) word.push_back(letter < r ? letter + r : letter - r);
    add_word(out, word, c);
  }
  return out;
}

}  // namespace oracle
