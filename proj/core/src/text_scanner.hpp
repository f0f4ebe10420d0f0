#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "skelpot/error.hpp"
#include "skelpot/rational.hpp"

namespace skelpot::detail {

// Single-line cursor for the polynomial and form grammars.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  // Next character without skipping space.
  char raw_peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool starts_number() { return std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.'; }

  // digits [. digits] [e[+-]digits]  or  digits / digits
  Rational number() {
    skip_space();
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ > s;
    };
    bool any = digits();
    bool decimal = false;
    if (raw_peek() == '.') {
      ++pos_;
      any = digits() || any;
      decimal = true;
    }
    if (!any) fail("expected a number");
    if (raw_peek() == 'e' || raw_peek() == 'E') {
      ++pos_;
      if (raw_peek() == '+' || raw_peek() == '-') ++pos_;
      if (!digits()) fail("malformed exponent");
      decimal = true;
    }
    if (!decimal && raw_peek() == '/') {
      ++pos_;
      if (!digits()) fail("expected a denominator");
    }
    const std::string_view token = text_.substr(start, pos_ - start);
    try {
      return decimal ? parse_decimal(token) : parse_rational(token);
    } catch (const InputError& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  unsigned integer() {
    skip_space();
    const std::size_t start = pos_;
    unsigned long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<unsigned long>(text_[pos_] - '0');
      if (value > 1000000) fail("integer too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected an integer");
    return static_cast<unsigned>(value);
  }

  void advance(std::size_t n = 1) { pos_ += n; }
  std::size_t position() const { return pos_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, pos_ + 1); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace skelpot::detail
