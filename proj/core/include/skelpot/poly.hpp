#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "skelpot/rational.hpp"

namespace skelpot {

// Exponent vector of a monomial in x1..xr.
using Monomial = std::vector<unsigned>;

// Polynomial in x1..xr with rational coefficients. Terms are kept in a map
// keyed by exponent vector; zero coefficients are never stored.
class Poly {
 public:
  explicit Poly(std::size_t r = 0) : r_(r) {}
  static Poly constant(std::size_t r, const Rational& c);
  // x_i, 0-based.
  static Poly variable(std::size_t r, std::size_t i);

  std::size_t dim() const { return r_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;

  void add_term(const Monomial& m, const Rational& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& c) const;
  Poly& operator+=(const Poly& o);
  bool operator==(const Poly& o) const = default;

  // d/dx_i, 0-based.
  Poly derivative(std::size_t i) const;
  Rational eval(const std::vector<Rational>& x) const;
  // p(x) with x_i = subs[i](t); every subs[i] lives in the same dimension.
  Poly compose(const std::vector<Poly>& subs) const;

 private:
  void require_same(const Poly& o) const;

  std::size_t r_;
  std::map<Monomial, Rational> terms_;
};

// "2*x1^2 + x2 - 3/4"; higher total degree first. Zero prints as "0".
std::string to_string(const Poly& p);

// Parses the same syntax. Variables are x1..x<r>; numbers may be integers,
// p/q or decimals. Throws ParseError on malformed text.
Poly parse_poly(std::string_view text, std::size_t r);

// Exact integral over the box prod [lo_i, hi_i].
Rational integrate_box(const Poly& p, const std::vector<std::pair<Rational, Rational>>& box);

}  // namespace skelpot
