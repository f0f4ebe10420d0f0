#include "skelpot/poly.hpp"

#include <algorithm>
#include <sstream>

#include "poly_parse.hpp"
#include "skelpot/error.hpp"

namespace skelpot {

Poly Poly::constant(std::size_t r, const Rational& c) {
  Poly p(r);
  p.add_term(Monomial(r, 0), c);
  return p;
}

Poly Poly::variable(std::size_t r, std::size_t i) {
  if (i >= r) throw InputError("variable index out of range");
  Monomial m(r, 0);
  m[i] = 1;
  Poly p(r);
  p.add_term(m, 1);
  return p;
}

unsigned Poly::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    unsigned total = 0;
    for (unsigned e : m) total += e;
    d = std::max(d, total);
  }
  return d;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != r_) throw InputError("monomial has the wrong number of variables");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void Poly::require_same(const Poly& o) const {
  if (r_ != o.r_) throw InputError("polynomials in different numbers of variables");
}

Poly Poly::operator+(const Poly& o) const {
  Poly out = *this;
  out += o;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  require_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly Poly::operator-() const { return *this * Rational(-1); }

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  require_same(o);
  Poly out(r_);
  Monomial m(r_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      for (std::size_t i = 0; i < r_; ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Poly Poly::operator*(const Rational& c) const {
  Poly out(r_);
  if (c == 0) return out;
  for (const auto& [m, a] : terms_) out.terms_.emplace(m, a * c);
  return out;
}

Poly Poly::derivative(std::size_t i) const {
  if (i >= r_) throw InputError("variable index out of range");
  Poly out(r_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial d = m;
    --d[i];
    out.add_term(d, c * m[i]);
  }
  return out;
}

Rational Poly::eval(const std::vector<Rational>& x) const {
  if (x.size() != r_) throw InputError("point has the wrong dimension");
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < r_; ++i) {
      for (unsigned e = 0; e < m[i]; ++e) term *= x[i];
    }
    total += term;
  }
  return total;
}

Poly Poly::compose(const std::vector<Poly>& subs) const {
  if (subs.size() != r_) throw InputError("substitution has the wrong length");
  const std::size_t target = subs.empty() ? 0 : subs.front().dim();
  for (const auto& s : subs) {
    if (s.dim() != target) throw InputError("substitutions in different numbers of variables");
  }
  std::vector<std::vector<Poly>> powers(r_);
  Poly out(target);
  for (const auto& [m, c] : terms_) {
    Poly term = Poly::constant(target, c);
    for (std::size_t i = 0; i < r_; ++i) {
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Poly::constant(target, 1));
      while (pw.size() <= m[i]) pw.push_back(pw.back() * subs[i]);
      if (m[i] > 0) term = term * pw[m[i]];
    }
    out += term;
  }
  return out;
}

namespace {

std::vector<const std::pair<const Monomial, Rational>*> print_order(const Poly& p) {
  std::vector<const std::pair<const Monomial, Rational>*> order;
  for (const auto& t : p.terms()) order.push_back(&t);
  auto total = [](const Monomial& m) {
    unsigned s = 0;
    for (unsigned e : m) s += e;
    return s;
  };
  std::sort(order.begin(), order.end(), [&](const auto* a, const auto* b) {
    const unsigned da = total(a->first);
    const unsigned db = total(b->first);
    if (da != db) return da > db;
    return a->first > b->first;
  });
  return order;
}

}  // namespace

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto* t : print_order(p)) {
    const Monomial& m = t->first;
    const Rational& c = t->second;
    const bool negative = c < 0;
    const Rational mag = abs_value(c);
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      std::string f = "x" + std::to_string(i + 1);
      if (m[i] > 1) f += "^" + std::to_string(m[i]);
      factors.push_back(f);
    }
    if (factors.empty()) {
      out << to_string(mag);
      continue;
    }
    if (mag != 1) out << to_string(mag) << "*";
    for (std::size_t k = 0; k < factors.size(); ++k) out << (k ? "*" : "") << factors[k];
  }
  return out.str();
}

namespace detail {
namespace {

Poly parse_sum(Scanner& s, std::size_t cap, std::size_t& max_index);

Poly parse_atom(Scanner& s, std::size_t cap, std::size_t& max_index) {
  if (s.accept('(')) {
    Poly inner = parse_sum(s, cap, max_index);
    s.expect(')');
    return inner;
  }
  if (s.peek() == 'x') {
    s.advance();
    const std::size_t at = s.position();
    const unsigned index = s.integer();
    if (index == 0 || index > cap) {
      throw ParseError("variable x" + std::to_string(index) + " out of range", 1, at + 1);
    }
    max_index = std::max<std::size_t>(max_index, index);
    return Poly::variable(cap, index - 1);
  }
  if (s.starts_number()) return Poly::constant(cap, s.number());
  s.fail("expected a number, a variable or '('");
}

Poly parse_factor(Scanner& s, std::size_t cap, std::size_t& max_index) {
  Poly base = parse_atom(s, cap, max_index);
  if (!s.accept('^')) return base;
  const unsigned e = s.integer();
  if (e > 64) s.fail("exponent too large");
  Poly out = Poly::constant(cap, 1);
  for (unsigned k = 0; k < e; ++k) out = out * base;
  return out;
}

Poly parse_product(Scanner& s, std::size_t cap, std::size_t& max_index) {
  Poly out = parse_factor(s, cap, max_index);
  while (s.accept('*')) out = out * parse_factor(s, cap, max_index);
  return out;
}

Poly parse_sum(Scanner& s, std::size_t cap, std::size_t& max_index) {
  bool negative = false;
  if (s.accept('-')) {
    negative = true;
  } else {
    s.accept('+');
  }
  Poly out = parse_product(s, cap, max_index);
  if (negative) out = -out;
  while (true) {
    if (s.accept('+')) {
      out += parse_product(s, cap, max_index);
    } else if (s.accept('-')) {
      out = out - parse_product(s, cap, max_index);
    } else {
      return out;
    }
  }
}

}  // namespace

Poly parse_poly_expr(Scanner& s, std::size_t cap, std::size_t& max_index) {
  return parse_sum(s, cap, max_index);
}

Poly with_dim(const Poly& p, std::size_t r) {
  Poly out(r);
  for (const auto& [m, c] : p.terms()) {
    Monomial shrunk(r, 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= r) throw InputError("polynomial uses x" + std::to_string(i + 1) + " beyond dimension");
      shrunk[i] = m[i];
    }
    out.add_term(shrunk, c);
  }
  return out;
}

}  // namespace detail

Poly parse_poly(std::string_view text, std::size_t r) {
  detail::Scanner s(text);
  std::size_t max_index = 0;
  Poly p = detail::parse_poly_expr(s, r, max_index);
  if (!s.at_end()) s.fail("unexpected trailing input");
  return p;
}

Rational integrate_box(const Poly& p, const std::vector<std::pair<Rational, Rational>>& box) {
  if (box.size() != p.dim()) throw InputError("box has the wrong dimension");
  Rational total = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      Rational hi = 1;
      Rational lo = 1;
      for (unsigned e = 0; e <= m[i]; ++e) {
        hi *= box[i].second;
        lo *= box[i].first;
      }
      term *= (hi - lo) / (m[i] + 1);
    }
    total += term;
  }
  return total;
}

}  // namespace skelpot
