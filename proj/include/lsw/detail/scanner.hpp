#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lsw/rational.hpp"

namespace lsw {

/// Raised by every text parser; `position` is the 0-based offset in the input.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::invalid_argument(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

// Whitespace-skipping cursor shared by the term grammars.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  // No whitespace skipping: used inside tokens such as `x1^-2`.
  char peek_raw() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }

  std::size_t pos() const { return pos_; }

  bool peek_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  bool peek_letter() { return std::isalpha(static_cast<unsigned char>(peek())) != 0; }

  // Unsigned `a` or `a/b`.
  Rational number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected a number");
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      std::size_t den = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == den) fail("expected a denominator");
    }
    std::string_view lit = text_.substr(start, pos_ - start);
    try {
      return parse_rational(lit);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), start);
    }
  }

  // Optionally signed decimal integer, read without skipping whitespace.
  long integer_raw() {
    std::size_t start = pos_;
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    std::size_t digits = pos_;
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1'000'000'000L) fail_at("integer too large", start);
      ++pos_;
    }
    if (pos_ == digits) fail_at("expected an integer", start);
    return neg ? -value : value;
  }

  // A letter followed by digits and underscores, e.g. `x12`, `d3`, `l1_10`.
  std::string_view identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_])))
      fail("expected an identifier");
    ++pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  [[noreturn]] static void fail_at(const std::string& message, std::size_t at) {
    throw ParseError(message, at);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// Appends one signed term of a sum. `body` is the non-scalar part (may be empty).
inline void append_term(std::string& out, const Rational& coeff, const std::string& body) {
  bool first = out.empty();
  bool negative = sgn(coeff) < 0;
  Rational mag = negative ? Rational(-coeff) : coeff;
  if (first) {
    if (negative) out += '-';
  } else {
    out += negative ? " - " : " + ";
  }
  if (body.empty()) {
    out += mag.get_str();
  } else if (mag == 1) {
    out += body;
  } else {
    out += mag.get_str();
    out += ' ';
    out += body;
  }
}

}  // namespace detail
}  // namespace lsw
