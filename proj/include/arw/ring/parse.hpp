#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include "arw/ring/polynomial.hpp"

namespace arw {

namespace detail {

template <CoefficientField F>
class PolyParser {
 public:
  PolyParser(const PolyRing<F>& ring, std::string_view text) : ring_(ring), s_(text) {}

  Polynomial<F> parse() {
    skip();
    if (pos_ == s_.size()) error("empty polynomial");
    Polynomial<F> p = expr();
    skip();
    if (pos_ != s_.size()) error(std::string("unexpected character '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::kParse,
         msg + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '(' ||
           std::isdigit(static_cast<unsigned char>(c));
  }

  Polynomial<F> expr() {
    Polynomial<F> acc = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc = acc + term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }
  Polynomial<F> term() {
    Polynomial<F> acc = unary();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * unary();
      } else if (peek('/')) {
        ++pos_;
        skip();
        mpz_class den = integer();
        if (den == 0) error("division by zero");
        acc = acc.scale(ring_.field().from_rational(mpz_class(1), den));
      } else if (starts_factor()) {
        acc = acc * power();  // juxtaposition: 2x, 3(x+y)
      } else {
        return acc;
      }
    }
  }
  Polynomial<F> unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }
  Polynomial<F> power() {
    Polynomial<F> base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      mpz_class e = integer();
      if (e > 4096) error("exponent too large");
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }
  mpz_class integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected an integer");
    if (pos_ - start > 200) error("integer literal too long");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }
  Polynomial<F> atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial<F> p = expr();
      if (!peek(')')) error("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class n = integer();
      return ring_.constant(ring_.field().from_rational(n, mpz_class(1)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      int idx = ring_.var_index(name);
      if (idx < 0) {
        pos_ = start;
        error("undefined variable '" + name + "'");
      }
      return ring_.variable(static_cast<std::size_t>(idx));
    }
    error(std::string("unexpected character '") + c + "'");
  }

  const PolyRing<F>& ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses sums of terms such as `3*x^2*y - 1/2*z + 7`; parentheses and
/// juxtaposition (`2x`) are accepted.
template <CoefficientField F>
Polynomial<F> parse_polynomial(const PolyRing<F>& ring, std::string_view text) {
  return detail::PolyParser<F>(ring, text).parse();
}

template <CoefficientField F>
std::string to_string(const Polynomial<F>& p) {
  if (p.is_zero()) return "0";
  const auto& ring = *p.ring();
  const F& k = ring.field();
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms) {
    bool neg = k.is_negative(t.c);
    auto mag = neg ? k.neg(t.c) : t.c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool unit = k.equal(mag, k.one());
    bool wrote = false;
    if (!unit || t.m.deg == 0) {
      os << k.to_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
      if (!t.m.exp[i]) continue;
      if (wrote) os << "*";
      os << ring.names()[i];
      if (t.m.exp[i] > 1) os << "^" << t.m.exp[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace arw
