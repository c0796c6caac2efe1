#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>

#include "pv/error.hpp"
#include "pv/rational.hpp"

namespace pv::detail {

// Recursive-descent parser shared by the polynomial and Liouvillian grammars.
// Hooks supplies: constant(Rational), variable(int), name(id) -> optional<T>,
// call(id, T) -> optional<T>, derive(T, k), as_constant(T) -> optional<Rational>.
template <class T, class Hooks>
class ExprParser {
 public:
  ExprParser(const std::string& text, Hooks& hooks) : s_(text), h_(hooks) {}

  T parse() {
    T p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError,
                msg + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool starts_factor() {
    char c = peek();
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
  }

  T expr() {
    T acc;
    if (accept('-'))
      acc = -term();
    else {
      accept('+');
      acc = term();
    }
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  T term() {
    T acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        auto d = h_.as_constant(unary());
        if (!d || is_zero(*d)) fail("division by a non-constant or zero");
        acc = acc * T(Rational(1) / *d);
      } else if (starts_factor()) {
        acc = acc * unary();
      } else {
        break;
      }
    }
    return acc;
  }

  T unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  T power() {
    T base = postfix();
    if (accept('^')) {
      long e = integer();
      T r = h_.constant(Rational(1));
      for (long k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  T postfix() {
    T p = primary();
    int k = 0;
    while (peek() == '\'') {
      ++pos_;
      ++k;
    }
    if (k == 0 && accept('[')) {
      k = static_cast<int>(integer());
      if (!accept(']')) fail("expected ']'");
    }
    return k ? h_.derive(p, k) : p;
  }

  long integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(s_.substr(start, pos_ - start));
  }

  T primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      T p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return h_.constant(Rational(mpz_class(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (peek() == '(') {
        ++pos_;
        T arg = expr();
        if (!accept(')')) fail("expected ')'");
        if (auto r = h_.call(id, arg)) return *r;
        pos_ = start;
        fail("unknown function '" + id + "'");
      }
      if (auto r = h_.name(id)) return *r;
      for (const std::string prefix : {"eta", "e"}) {
        if (id.size() > prefix.size() && id.compare(0, prefix.size(), prefix) == 0) {
          std::string digits = id.substr(prefix.size());
          bool ok = std::all_of(digits.begin(), digits.end(), [](char d) {
            return std::isdigit(static_cast<unsigned char>(d));
          });
          if (ok && digits[0] != '0') return h_.variable(std::stoi(digits));
        }
      }
      pos_ = start;
      fail("unknown name '" + id + "'");
    }
    fail("unexpected end of expression");
  }

  const std::string& s_;
  Hooks& h_;
  std::size_t pos_ = 0;
};

}  // namespace pv::detail
