#include "skelpot/rational.hpp"

#include <cctype>
#include <cmath>

#include "skelpot/error.hpp"

namespace skelpot {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw InputError("malformed rational '" + std::string(whole) + "'");
  }
  Integer z(std::string(s), 10);
  return negative ? Integer(-z) : z;
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Integer floor_div(const Integer& n, const Integer& d) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  const Integer num = parse_integer(text.substr(0, slash), text);
  const std::string_view den_text = text.substr(slash + 1);
  if (!all_digits(den_text)) {
    throw InputError("malformed rational '" + std::string(text) + "'");
  }
  const Integer den(std::string(den_text), 10);
  if (den == 0) {
    throw InputError("zero denominator in '" + std::string(text) + "'");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) {
      throw InputError("malformed decimal '" + std::string(text) + "'");
    }
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  long frac_digits = 0;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto int_part = s.substr(0, dot);
    const auto frac_part = s.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
      throw InputError("malformed decimal '" + std::string(text) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    frac_digits = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) {
      throw InputError("malformed decimal '" + std::string(text) + "'");
    }
    digits = std::string(s);
  }
  Rational q{Integer(digits, 10)};
  const long shift = exponent - frac_digits;
  if (shift > 0) {
    q *= pow10(static_cast<unsigned long>(shift));
  } else if (shift < 0) {
    q /= pow10(static_cast<unsigned long>(-shift));
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) {
    throw InputError("non-finite value cannot be made rational");
  }
  return Rational(x);
}

Rational best_rational(const Rational& x, const Integer& max_den) {
  if (max_den < 1) {
    throw InputError("denominator bound must be positive");
  }
  if (x.get_den() <= max_den) return x;

  // Continued-fraction convergents, then the best semiconvergent.
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = x.get_num(), d = x.get_den();
  while (true) {
    const Integer a = floor_div(n, d);
    const Integer q2 = q0 + a * q1;
    if (q2 > max_den) break;
    const Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Integer r = n - a * d;
    n = d;
    d = r;
  }
  const Integer k = floor_div(max_den - q0, q1);
  Rational lower(p0 + k * p1, q0 + k * q1);
  Rational upper(p1, q1);
  lower.canonicalize();
  upper.canonicalize();
  const Rational dl = abs_value(Rational(lower - x));
  const Rational du = abs_value(Rational(upper - x));
  if (du < dl) return upper;
  if (dl < du) return lower;
  return upper.get_den() <= lower.get_den() ? upper : lower;
}

Rational grid_below(const Rational& x, const Integer& den) {
  // ceil(x*den) - 1
  Rational scaled = x * den;
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational r(Integer(c - 1), den);
  r.canonicalize();
  return r;
}

Rational grid_above(const Rational& x, const Integer& den) {
  Rational scaled = x * den;
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational r(Integer(f + 1), den);
  r.canonicalize();
  return r;
}

Rational parse_number(std::string_view text) {
  if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
  return parse_rational(text);
}

}  // namespace skelpot
