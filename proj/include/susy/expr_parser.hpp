#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <utility>

#include "susy/rational.hpp"

namespace susy {

/// Recursive-descent parser for + - * / ^ expressions with integer literals,
/// parentheses and identifiers. "·" and juxtaposition also multiply. `Ops` supplies
///   T number(const Rational&), T identifier(const std::string&), T divide(const T&, const T&)
/// and T must provide binary + - *, unary -.
template <class T, class Ops>
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, Ops ops) : s_(text), ops_(std::move(ops)) {}

  T parse() {
    T v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  static constexpr std::string_view kDot = "·";

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("parse error at offset " + std::to_string(pos_) + ": " + what + " in \"" + std::string(s_) + "\"");
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_dot() const { return s_.substr(pos_, kDot.size()) == kDot; }
  bool ident_byte(unsigned char ch) const { return std::isalpha(ch) || ch == '_' || ch >= 0x80; }
  bool starts_factor() {
    skip_ws();
    if (pos_ >= s_.size() || at_dot()) return false;
    unsigned char ch = static_cast<unsigned char>(s_[pos_]);
    return ch == '(' || std::isdigit(ch) || ident_byte(ch);
  }

  T expr() {
    T v = term();
    while (true) {
      skip_ws();
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        char op = s_[pos_++];
        T rhs = term();
        v = op == '+' ? v + rhs : v - rhs;
      } else {
        return v;
      }
    }
  }

  T term() {
    T v = unary();
    while (true) {
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        v = v * unary();
      } else if (at_dot()) {
        pos_ += kDot.size();
        v = v * unary();
      } else if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        v = ops_.divide(v, unary());
      } else if (starts_factor()) {
        v = v * power();
      } else {
        return v;
      }
    }
  }

  T unary() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '-') {
      ++pos_;
      return -unary();
    }
    if (pos_ < s_.size() && s_[pos_] == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  T power() {
    T base = primary();
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      unsigned e = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
      T out = ops_.number(Rational(1));
      for (unsigned i = 0; i < e; ++i) out = out * base;
      return out;
    }
    return base;
  }

  T primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    unsigned char ch = static_cast<unsigned char>(s_[pos_]);
    if (ch == '(') {
      ++pos_;
      T v = expr();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(ch)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return ops_.number(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (ident_byte(ch) && !at_dot()) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && !at_dot()) {
        unsigned char c = static_cast<unsigned char>(s_[pos_]);
        if (!(ident_byte(c) || std::isdigit(c))) break;
        ++pos_;
      }
      return ops_.identifier(std::string(s_.substr(start, pos_ - start)));
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  Ops ops_;
};

template <class T, class Ops>
T parse_expression(std::string_view text, Ops ops) {
  return ExpressionParser<T, Ops>(text, std::move(ops)).parse();
}

}  // namespace susy
