#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lsw {

using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses `a` or `a/b` (optional leading sign). Throws std::invalid_argument on junk
/// or a zero denominator.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/' && !slash && i > start && i + 1 < s.size()) {
      slash = true;
      continue;
    }
    if (c < '0' || c > '9') throw std::invalid_argument("malformed rational literal '" + s + "'");
  }
  if (start == s.size()) throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Exact conversion to int64; throws if q is not an integer or does not fit.
inline std::int64_t to_int64(const Rational& q) {
  if (!is_integer(q)) throw std::domain_error("rational " + q.get_str() + " is not an integer");
  const Integer& z = q.get_num();
  if (!z.fits_slong_p()) throw std::overflow_error("integer " + z.get_str() + " out of range");
  return z.get_si();
}

}  // namespace lsw
