#include "skelpot/superform.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "poly_parse.hpp"
#include "skelpot/error.hpp"

namespace skelpot {
namespace {

IndexSet below(std::size_t k) { return (IndexSet{1} << k) - 1; }

int parity_sign(unsigned n) { return n % 2 ? -1 : 1; }

// Sign of sorting the concatenation I, K into increasing order.
int merge_sign(IndexSet i, IndexSet k) {
  unsigned inversions = 0;
  for (std::size_t b = 0; b < SuperForm::max_dim; ++b) {
    if (k >> b & 1) inversions += static_cast<unsigned>(std::popcount(i & ~below(b + 1)));
  }
  return parity_sign(inversions);
}

std::size_t size_of(IndexSet s) { return static_cast<std::size_t>(std::popcount(s)); }

void require_dim(const SuperForm& a, const SuperForm& b) {
  if (a.dim() != b.dim()) throw InputError("superforms on different ambient spaces");
}

}  // namespace

SuperForm::SuperForm(std::size_t r, std::size_t p, std::size_t q) : r_(r), p_(p), q_(q) {
  if (r > max_dim) throw InputError("ambient dimension exceeds " + std::to_string(max_dim));
}

SuperForm SuperForm::function(const Poly& f) {
  SuperForm out(f.dim(), 0, 0);
  out.add(0, 0, f);
  return out;
}

Poly SuperForm::coeff(IndexSet i, IndexSet j) const {
  const auto it = coeffs_.find({i, j});
  return it == coeffs_.end() ? Poly(r_) : it->second;
}

void SuperForm::add(IndexSet i, IndexSet j, const Poly& a) {
  if (a.dim() != r_) throw InputError("coefficient in the wrong number of variables");
  if (size_of(i) != p_ || size_of(j) != q_) throw InputError("index sets do not match the bidegree");
  if ((i | j) >> r_) throw InputError("index beyond the ambient dimension");
  if (a.is_zero()) return;
  auto [it, inserted] = coeffs_.emplace(std::make_pair(i, j), a);
  if (inserted) return;
  it->second += a;
  if (it->second.is_zero()) coeffs_.erase(it);
}

SuperForm SuperForm::operator+(const SuperForm& o) const {
  require_dim(*this, o);
  if (p_ != o.p_ || q_ != o.q_) throw InputError("adding superforms of different bidegrees");
  SuperForm out = *this;
  for (const auto& [key, a] : o.coeffs_) out.add(key.first, key.second, a);
  return out;
}

SuperForm SuperForm::operator-(const SuperForm& o) const { return *this + o * Rational(-1); }

SuperForm SuperForm::operator*(const Rational& c) const {
  SuperForm out(r_, p_, q_);
  for (const auto& [key, a] : coeffs_) out.add(key.first, key.second, a * c);
  return out;
}

IndexSet index_set(const std::vector<std::size_t>& one_based) {
  IndexSet s = 0;
  for (std::size_t i : one_based) {
    if (i == 0 || i > SuperForm::max_dim) throw InputError("index out of range");
    s |= IndexSet{1} << (i - 1);
  }
  return s;
}

std::vector<std::size_t> indices(IndexSet s) {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < SuperForm::max_dim; ++b) {
    if (s >> b & 1) out.push_back(b + 1);
  }
  return out;
}

SuperForm d_prime(const SuperForm& a) {
  SuperForm out(a.dim(), a.p() + 1, a.q());
  for (const auto& [key, c] : a.coeffs()) {
    const auto [i, j] = key;
    for (std::size_t k = 0; k < a.dim(); ++k) {
      if (i >> k & 1) continue;
      const Poly d = c.derivative(k);
      if (d.is_zero()) continue;
      out.add(i | IndexSet{1} << k, j, d * parity_sign(size_of(i & below(k))));
    }
  }
  return out;
}

SuperForm d_second(const SuperForm& a) {
  SuperForm out(a.dim(), a.p(), a.q() + 1);
  const int outer = parity_sign(static_cast<unsigned>(a.p()));
  for (const auto& [key, c] : a.coeffs()) {
    const auto [i, j] = key;
    for (std::size_t k = 0; k < a.dim(); ++k) {
      if (j >> k & 1) continue;
      const Poly d = c.derivative(k);
      if (d.is_zero()) continue;
      out.add(i, j | IndexSet{1} << k, d * (outer * parity_sign(size_of(j & below(k)))));
    }
  }
  return out;
}

SuperForm wedge(const SuperForm& a, const SuperForm& b) {
  require_dim(a, b);
  SuperForm out(a.dim(), a.p() + b.p(), a.q() + b.q());
  const int outer = parity_sign(static_cast<unsigned>(b.p() * a.q()));
  for (const auto& [ka, ca] : a.coeffs()) {
    for (const auto& [kb, cb] : b.coeffs()) {
      if (ka.first & kb.first || ka.second & kb.second) continue;
      const int s = outer * merge_sign(ka.first, kb.first) * merge_sign(ka.second, kb.second);
      out.add(ka.first | kb.first, ka.second | kb.second, ca * cb * s);
    }
  }
  return out;
}

SuperForm J(const SuperForm& a) {
  SuperForm out(a.dim(), a.q(), a.p());
  const int s = parity_sign(static_cast<unsigned>(a.p() * a.q()));
  for (const auto& [key, c] : a.coeffs()) out.add(key.second, key.first, c * s);
  return out;
}

SuperForm pullback(const AffineMap& f, const SuperForm& a) {
  const std::size_t r = f.target_dim();
  const std::size_t rs = f.source_dim();
  if (a.dim() != r || f.translation.size() != r) throw InputError("affine map does not match the form");
  std::vector<Poly> subs;
  std::vector<SuperForm> dp;
  std::vector<SuperForm> ds;
  for (std::size_t i = 0; i < r; ++i) {
    Poly x = Poly::constant(rs, f.translation[i]);
    SuperForm one_p(rs, 1, 0);
    SuperForm one_s(rs, 0, 1);
    for (std::size_t l = 0; l < rs; ++l) {
      const Rational& c = f.linear(i, l);
      x += Poly::variable(rs, l) * c;
      one_p.add(IndexSet{1} << l, 0, Poly::constant(rs, c));
      one_s.add(0, IndexSet{1} << l, Poly::constant(rs, c));
    }
    subs.push_back(std::move(x));
    dp.push_back(std::move(one_p));
    ds.push_back(std::move(one_s));
  }
  SuperForm out(rs, a.p(), a.q());
  for (const auto& [key, c] : a.coeffs()) {
    SuperForm term = SuperForm::function(c.compose(subs));
    for (std::size_t i : indices(key.first)) term = wedge(term, dp[i - 1]);
    for (std::size_t j : indices(key.second)) term = wedge(term, ds[j - 1]);
    out = out + term;
  }
  return out;
}

SuperForm hessian_form(const Poly& psi) {
  SuperForm out(psi.dim(), 1, 1);
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    const Poly di = psi.derivative(i);
    for (std::size_t j = 0; j < psi.dim(); ++j) {
      out.add(IndexSet{1} << i, IndexSet{1} << j, di.derivative(j));
    }
  }
  return out;
}

RationalMatrix matrix_11(const SuperForm& a, const std::vector<Rational>& x) {
  if (a.p() != 1 || a.q() != 1) throw InputError("expected a (1,1)-form");
  const std::size_t r = a.dim();
  RationalMatrix m(r, r);
  for (const auto& [key, c] : a.coeffs()) {
    m(indices(key.first)[0] - 1, indices(key.second)[0] - 1) = c.eval(x);
  }
  return m;
}

bool is_psd(const RationalMatrix& input) {
  const std::size_t n = input.rows();
  if (input.cols() != n) throw InputError("PSD test needs a square matrix");
  RationalMatrix a = input;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pivot = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      if (pivot == n || abs_value(a(k, k)) > abs_value(a(pivot, pivot))) pivot = k;
    }
    const Rational d = a(pivot, pivot);
    if (d < 0) return false;
    if (d == 0) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!done[i] && !done[j] && a(i, j) != 0) return false;
        }
      }
      return true;
    }
    done[pivot] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a(i, pivot) == 0) continue;
      const Rational factor = a(i, pivot) / d;
      for (std::size_t j = 0; j < n; ++j) {
        if (!done[j]) a(i, j) -= factor * a(pivot, j);
      }
    }
  }
  return true;
}

namespace {

bool symmetric(const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (m(i, j) != m(j, i)) return false;
    }
  }
  return true;
}

}  // namespace

PositivityVerdict is_positive_11(const SuperForm& a, const std::vector<std::vector<Rational>>& points) {
  if (a.p() != 1 || a.q() != 1) throw InputError("expected a (1,1)-form");
  for (const auto& x : points) {
    const RationalMatrix m = matrix_11(a, x);
    if (!symmetric(m)) return {PositivityStatus::NonSymmetric, x};
    if (!is_psd(m)) return {PositivityStatus::NotPositive, x};
  }
  return {};
}

PositivityVerdict positivity(const SuperForm& a, const std::vector<std::vector<Rational>>& points) {
  const std::size_t r = a.dim();
  if (a.p() != a.q()) throw InputError("positivity needs a (p,p)-form");
  const std::size_t p = a.p();
  if (p == 0 || (p == r && r != 1)) {
    const IndexSet full = p == 0 ? 0 : below(r);
    const Poly c = a.coeff(full, full);
    const int s = p == 0 ? 1 : parity_sign(static_cast<unsigned>(p * (p - 1) / 2));
    for (const auto& x : points) {
      if (c.eval(x) * s < 0) return {PositivityStatus::NotPositive, x};
    }
    return {};
  }
  if (p == 1) return is_positive_11(a, points);
  throw InputError("positivity is implemented for bidegrees (0,0), (1,1) and (r,r) only");
}

PositivityVerdict restrict_convexity_check(const Poly& psi, const std::vector<Rational>& origin,
                                           const std::vector<std::vector<Rational>>& basis,
                                           const std::vector<std::vector<Rational>>& samples) {
  const std::size_t r = psi.dim();
  const std::size_t k = basis.size();
  if (origin.size() != r) throw InputError("origin has the wrong dimension");
  if (k == 0) throw InputError("degenerate basis: no directions");
  for (const auto& b : basis) {
    if (b.size() != r) throw InputError("basis vector has the wrong dimension");
  }
  RationalMatrix gram(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = 0; l < r; ++l) gram(i, j) += basis[i][l] * basis[j][l];
    }
  }
  if (determinant(gram) == 0) throw InputError("degenerate basis: directions are linearly dependent");

  const SuperForm h = hessian_form(psi);
  for (const auto& t : samples) {
    if (t.size() != k) throw InputError("sample has the wrong number of coordinates");
    std::vector<Rational> x = origin;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t l = 0; l < r; ++l) x[l] += t[i] * basis[i][l];
    }
    const RationalMatrix m = matrix_11(h, x);
    RationalMatrix c(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t a = 0; a < r; ++a) {
          for (std::size_t b = 0; b < r; ++b) c(i, j) += basis[i][a] * m(a, b) * basis[j][b];
        }
      }
    }
    if (!is_psd(c)) return {PositivityStatus::NotPositive, x};
  }
  return {};
}

Rational integrate_box(const SuperForm& a, const std::vector<std::pair<Rational, Rational>>& box) {
  const std::size_t r = a.dim();
  if (a.p() != r || a.q() != r) throw InputError("integration needs an (r,r)-form");
  return integrate_box(a.coeff(below(r), below(r)), box);
}

std::string to_string(const SuperForm& a) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, c] : a.coeffs()) {
    std::string gens;
    for (std::size_t i : indices(key.first)) gens += (gens.empty() ? "" : " ^ ") + std::string("d'x") + std::to_string(i);
    for (std::size_t j : indices(key.second)) gens += (gens.empty() ? "" : " ^ ") + std::string("d''x") + std::to_string(j);
    const bool constant = c.terms().size() == 1 && c.degree() == 0;
    if (constant) {
      const Rational value = c.terms().begin()->second;
      const bool negative = value < 0;
      out << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
      const Rational magnitude = abs_value(value);
      if (magnitude != 1 || gens.empty()) out << to_string(magnitude) << (gens.empty() ? "" : " ");
    } else {
      out << (first ? "" : " + ") << "(" << to_string(c) << ")" << (gens.empty() ? "" : " ");
    }
    out << gens;
    first = false;
  }
  return out.str();
}

namespace {

struct Generator {
  int kind;  // 0 for d', 1 for d''
  std::size_t index;
  std::size_t position;
};

struct RawTerm {
  int sign;
  Poly coeff;
  std::vector<Generator> gens;
  std::size_t position;
};

Generator parse_generator(detail::Scanner& s) {
  s.skip_space();
  const std::size_t at = s.position();
  if (s.raw_peek() != 'd') s.fail("expected d'x or d''x");
  s.advance();
  int primes = 0;
  while (s.raw_peek() == '\'') {
    s.advance();
    ++primes;
  }
  if (primes != 1 && primes != 2) throw ParseError("expected d'x or d''x", 1, at + 1);
  if (s.raw_peek() != 'x') s.fail("expected 'x' in generator");
  s.advance();
  const unsigned index = s.integer();
  if (index == 0 || index > SuperForm::max_dim) {
    throw ParseError("generator index out of range", 1, at + 1);
  }
  return {primes - 1, index, at};
}

}  // namespace

SuperForm parse_form(std::string_view text, std::optional<std::size_t> r) {
  detail::Scanner s(text);
  const std::size_t cap = r.value_or(SuperForm::max_dim);
  if (cap > SuperForm::max_dim) throw InputError("ambient dimension exceeds " + std::to_string(SuperForm::max_dim));
  std::size_t max_index = 0;
  std::vector<RawTerm> terms;
  bool first = true;
  while (true) {
    int sign = 1;
    if (first) {
      if (s.accept('-')) {
        sign = -1;
      } else {
        s.accept('+');
      }
    } else if (s.accept('-')) {
      sign = -1;
    } else if (!s.accept('+')) {
      break;
    }
    first = false;
    RawTerm term{sign, Poly::constant(cap, 1), {}, s.position()};
    bool has_coeff = false;
    if (s.accept('(')) {
      term.coeff = detail::parse_poly_expr(s, cap, max_index);
      s.expect(')');
      has_coeff = true;
    } else if (s.starts_number()) {
      term.coeff = Poly::constant(cap, s.number());
      has_coeff = true;
    }
    if (has_coeff) s.accept('*');
    if (s.peek() == 'd') {
      term.gens.push_back(parse_generator(s));
      while (s.accept('^')) term.gens.push_back(parse_generator(s));
    } else if (!has_coeff) {
      s.fail("expected a coefficient or a generator");
    }
    terms.push_back(std::move(term));
  }
  if (!s.at_end()) s.fail("unexpected trailing input");

  for (const auto& t : terms) {
    for (const auto& g : t.gens) {
      if (r && g.index > *r) throw ParseError("generator index beyond dimension", 1, g.position + 1);
      max_index = std::max(max_index, g.index);
    }
  }
  const std::size_t dim = r.value_or(std::max<std::size_t>(max_index, 1));
  auto count = [](const RawTerm& t, int kind) {
    return static_cast<std::size_t>(
        std::count_if(t.gens.begin(), t.gens.end(), [&](const Generator& g) { return g.kind == kind; }));
  };
  const std::size_t p = count(terms.front(), 0);
  const std::size_t q = count(terms.front(), 1);
  SuperForm out(dim, p, q);
  for (auto& t : terms) {
    if (count(t, 0) != p || count(t, 1) != q) {
      throw ParseError("terms of different bidegrees", 1, t.position + 1);
    }
    // Bubble the generators into canonical order (all d' then all d'',
    // increasing), each swap flipping the sign.
    auto key = [](const Generator& g) { return std::make_pair(g.kind, g.index); };
    int sign = t.sign;
    for (std::size_t a = 0; a < t.gens.size(); ++a) {
      for (std::size_t b = 0; b + 1 < t.gens.size() - a; ++b) {
        if (key(t.gens[b]) > key(t.gens[b + 1])) {
          std::swap(t.gens[b], t.gens[b + 1]);
          sign = -sign;
        }
      }
    }
    bool repeated = false;
    for (std::size_t b = 0; b + 1 < t.gens.size(); ++b) repeated |= key(t.gens[b]) == key(t.gens[b + 1]);
    if (repeated) continue;
    IndexSet i = 0;
    IndexSet j = 0;
    for (const auto& g : t.gens) (g.kind == 0 ? i : j) |= IndexSet{1} << (g.index - 1);
    out.add(i, j, detail::with_dim(t.coeff, dim) * sign);
  }
  return out;
}

}  // namespace skelpot
