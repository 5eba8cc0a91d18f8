#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "kncenter/scalar.hpp"

namespace kn {

namespace detail {

// expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)*
// unary := '-' unary | power ; power := atom ('^' ['-'] int)?
// atom := int | name | 'zeta(' int ')' | '(' expr ')'
class ScalarParser {
 public:
  explicit ScalarParser(std::string_view s) : s_(s) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  mpz_class integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  long small_integer() {
    mpz_class z = integer();
    if (!z.fits_slong_p()) fail("integer too large");
    return z.get_si();
  }

  Scalar expr() {
    Scalar v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  Scalar term() {
    Scalar v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        Scalar d = unary();
        if (d.is_zero()) fail("division by zero");
        if (!d.is_unit()) fail("division by a non-unit");
        v /= d;
      } else {
        return v;
      }
    }
  }

  Scalar unary() {
    if (eat('-')) return -unary();
    return power();
  }

  Scalar power() {
    Scalar base = atom();
    if (!eat('^')) return base;
    bool neg = eat('-');
    long e = small_integer();
    if (neg) {
      if (!base.is_unit()) fail("negative power of a non-unit");
      e = -e;
    }
    return base.pow(e);
  }

  Scalar atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Scalar(Rat(integer()));
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "zeta") {
        if (!eat('(')) fail("expected '(' after zeta");
        long m = small_integer();
        if (m < 1) fail("zeta order must be positive");
        if (!eat(')')) fail("expected ')'");
        return Scalar::zeta(static_cast<int>(m));
      }
      return Scalar::var(name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace detail

inline Scalar parse_scalar(std::string_view text) { return detail::ScalarParser(text).parse(); }

}  // namespace kn
