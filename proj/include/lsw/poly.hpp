#pragma once

// Sparse multivariate polynomials over Q with integer exponents.
//
// A Polynomial lives in a declared variable universe (VarSet): the x-variables
// x1..xn of P_n (optionally Laurent), the lambda-variables l_ij (i<j) of k[lambda],
// or a block of generic indeterminates t1..tm. Monomials are dense exponent
// tuples ordered lexicographically; for the lambda universe the tuple order is
// (l12, l13, ..., l1n, l23, ..., l_{n-1,n}), which makes std::map's maximum the
// leading monomial.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lsw/detail/scanner.hpp"
#include "lsw/rational.hpp"

namespace lsw {

enum class VarKind : std::uint8_t { x, lambda, generic };

class VarSet {
 public:
  static VarSet x(int n, bool laurent = false) {
    if (n < 0) throw std::invalid_argument("negative variable count");
    return VarSet(VarKind::x, n, laurent);
  }

  static VarSet lambda(int n) {
    if (n < 0) throw std::invalid_argument("negative variable count");
    return VarSet(VarKind::lambda, n, false);
  }

  static VarSet generic(int count) {
    if (count < 0) throw std::invalid_argument("negative variable count");
    return VarSet(VarKind::generic, count, false);
  }

  VarKind kind() const noexcept { return kind_; }
  /// n for x and lambda universes, the count for generic ones.
  int base() const noexcept { return n_; }
  bool laurent() const noexcept { return laurent_; }

  int size() const noexcept { return kind_ == VarKind::lambda ? n_ * (n_ - 1) / 2 : n_; }

  /// 0-based index of l_ij, 1 <= i < j <= n.
  int lambda_index(int i, int j) const {
    if (kind_ != VarKind::lambda) throw std::logic_error("not a lambda variable set");
    if (i < 1 || j <= i || j > n_)
      throw std::out_of_range("l" + std::to_string(i) + "_" + std::to_string(j) + " out of range");
    // rows 1..i-1 contribute (n-1) + (n-2) + ... + (n-i+1) entries
    return (i - 1) * n_ - (i - 1) * i / 2 + (j - i - 1);
  }

  std::pair<int, int> lambda_pair(int index) const {
    if (kind_ != VarKind::lambda || index < 0 || index >= size())
      throw std::out_of_range("lambda index out of range");
    int i = 1;
    while (index >= n_ - i) {
      index -= n_ - i;
      ++i;
    }
    return {i, i + 1 + index};
  }

  std::string name(int index) const {
    switch (kind_) {
      case VarKind::x: return "x" + std::to_string(index + 1);
      case VarKind::generic: return "t" + std::to_string(index + 1);
      case VarKind::lambda: {
        auto [i, j] = lambda_pair(index);
        if (n_ <= 9) return "l" + std::to_string(i) + std::to_string(j);
        return "l" + std::to_string(i) + "_" + std::to_string(j);
      }
    }
    return {};
  }

  /// Resolves an ASCII variable name; nullopt if it does not belong to this universe.
  std::optional<int> lookup(std::string_view id) const {
    if (id.size() < 2) return std::nullopt;
    char head = id[0];
    std::string_view rest = id.substr(1);
    auto to_int = [](std::string_view s) -> std::optional<int> {
      if (s.empty() || s.size() > 6) return std::nullopt;
      int v = 0;
      for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        v = v * 10 + (c - '0');
      }
      return v;
    };
    if ((kind_ == VarKind::x && head == 'x') || (kind_ == VarKind::generic && head == 't')) {
      auto v = to_int(rest);
      if (!v || *v < 1 || *v > n_) return std::nullopt;
      return *v - 1;
    }
    if (kind_ == VarKind::lambda && head == 'l') {
      int i = 0, j = 0;
      if (auto us = rest.find('_'); us != std::string_view::npos) {
        auto a = to_int(rest.substr(0, us)), b = to_int(rest.substr(us + 1));
        if (!a || !b) return std::nullopt;
        i = *a;
        j = *b;
      } else {
        if (rest.size() != 2) return std::nullopt;
        i = rest[0] - '0';
        j = rest[1] - '0';
      }
      if (i < 1 || j <= i || j > n_) return std::nullopt;
      return lambda_index(i, j);
    }
    return std::nullopt;
  }

  friend bool operator==(const VarSet&, const VarSet&) = default;
  friend auto operator<=>(const VarSet&, const VarSet&) = default;

 private:
  VarSet(VarKind kind, int n, bool laurent) : kind_(kind), n_(n), laurent_(laurent) {}

  VarKind kind_;
  int n_;
  bool laurent_;
};

/// Dense exponent tuple; the default ordering is lexicographic on the tuple.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(int nvars) : exps_(static_cast<std::size_t>(nvars), 0) {}
  explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) {}

  int size() const noexcept { return static_cast<int>(exps_.size()); }
  int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
  void set(int i, int e) { exps_.at(static_cast<std::size_t>(i)) = e; }
  std::span<const int> exponents() const noexcept { return exps_; }

  int degree() const {
    int d = 0;
    for (int e : exps_) d += e;
    return d;
  }

  bool is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
  }

  bool nonnegative() const {
    return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e >= 0; });
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    if (a.size() != b.size()) throw std::invalid_argument("monomial size mismatch");
    Monomial r = a;
    for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] += b.exps_[i];
    return r;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<int> exps_;
};

/// Renders the non-scalar part of a term, e.g. `x1^2 x3` (empty for 1).
inline std::string format_monomial(const Monomial& m, const VarSet& vars) {
  std::string out;
  for (int i = 0; i < m.size(); ++i) {
    int e = m[i];
    if (e == 0) continue;
    if (!out.empty()) out += ' ';
    out += vars.name(i);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit Polynomial(VarSet vars) : vars_(vars) {}

  static Polynomial constant(VarSet vars, const Rational& c) {
    Polynomial p(vars);
    p.add_term(Monomial(vars.size()), c);
    return p;
  }

  /// The variable with 0-based index `index`, raised to `power`.
  static Polynomial variable(VarSet vars, int index, int power = 1) {
    if (index < 0 || index >= vars.size()) throw std::out_of_range("variable index out of range");
    Monomial m(vars.size());
    m.set(index, power);
    return monomial(vars, std::move(m), Rational(1));
  }

  static Polynomial monomial(VarSet vars, Monomial m, const Rational& c) {
    Polynomial p(vars);
    p.add_term(std::move(m), c);
    return p;
  }

  const VarSet& vars() const noexcept { return vars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  /// Constant term (0 when absent).
  Rational constant_term() const {
    auto it = terms_.find(Monomial(vars_.size()));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }

  /// Largest total degree of a term; -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  void add_term(Monomial m, const Rational& c) {
    if (m.size() != vars_.size()) throw std::invalid_argument("monomial does not match the variable set");
    if (!vars_.laurent() && !m.nonnegative())
      throw std::invalid_argument("negative exponent outside Laurent mode");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& q) {
    check_same(q);
    for (const auto& [m, c] : q.terms_) add_term(m, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& q) {
    check_same(q);
    for (const auto& [m, c] : q.terms_) add_term(m, -c);
    return *this;
  }

  Polynomial& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }

  friend Polynomial operator-(Polynomial p) {
    for (auto& [m, v] : p.terms_) v = -v;
    return p;
  }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    p.check_same(q);
    Polynomial r(p.vars_);
    for (const auto& [m1, c1] : p.terms_)
      for (const auto& [m2, c2] : q.terms_) r.add_term(m1 * m2, c1 * c2);
    return r;
  }

  Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  // Arbitrary but total; lets polynomials key ordered containers.
  friend bool operator<(const Polynomial& a, const Polynomial& b) {
    if (a.vars_ != b.vars_) return a.vars_ < b.vars_;
    return std::lexicographical_compare(
        a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
        [](const auto& l, const auto& r) {
          if (l.first != r.first) return l.first < r.first;
          return l.second < r.second;
        });
  }

  void check_same(const Polynomial& q) const {
    if (vars_ != q.vars_) throw std::invalid_argument("polynomial variable sets differ");
  }

 private:
  VarSet vars_;
  Terms terms_;
};

/// Formal partial derivative in the variable with 0-based index `index`.
inline Polynomial partial(const Polynomial& p, int index) {
  if (index < 0 || index >= p.vars().size()) throw std::out_of_range("variable index out of range");
  Polynomial r(p.vars());
  for (const auto& [m, c] : p.terms()) {
    int e = m[index];
    if (e == 0) continue;
    Monomial dm = m;
    dm.set(index, e - 1);
    r.add_term(std::move(dm), c * e);
  }
  return r;
}

/// Lex-maximal monomial (the leading monomial of a lambda-polynomial).
inline Monomial leading_monomial(const Polynomial& p) {
  if (p.is_zero()) throw std::domain_error("leading monomial of the zero polynomial");
  for (const auto& [m, c] : p.terms())
    if (!m.nonnegative()) throw std::domain_error("leading monomial needs nonnegative exponents");
  return p.terms().rbegin()->first;
}

inline Rational power(const Rational& base, int e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("zero raised to a negative power");
    return Rational(1) / power(base, -e);
  }
  Rational r = 1;
  Rational b = base;
  for (unsigned k = static_cast<unsigned>(e); k != 0; k >>= 1) {
    if (k & 1u) r *= b;
    if (k > 1) b *= b;
  }
  return r;
}

/// Exact value at a point. Variables absent from p need not be assigned.
inline Rational eval(const Polynomial& p, const std::map<int, Rational>& assignment) {
  Rational total = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (int i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      auto it = assignment.find(i);
      if (it == assignment.end())
        throw std::invalid_argument("no value assigned to " + p.vars().name(i));
      t *= power(it->second, m[i]);
    }
    total += t;
  }
  return total;
}

/// Same as above with one value per variable, in index order.
inline Rational eval(const Polynomial& p, std::span<const Rational> values) {
  if (static_cast<int>(values.size()) < p.vars().size())
    throw std::invalid_argument("assignment does not cover every variable");
  Rational total = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (int i = 0; i < m.size(); ++i)
      if (m[i] != 0) t *= power(values[static_cast<std::size_t>(i)], m[i]);
    total += t;
  }
  return total;
}

/// p with the variable `index` replaced by the constant `value`.
inline Polynomial substitute(const Polynomial& p, int index, const Rational& value) {
  Polynomial r(p.vars());
  for (const auto& [m, c] : p.terms()) {
    Monomial t = m;
    t.set(index, 0);
    r.add_term(std::move(t), m[index] == 0 ? c : c * power(value, m[index]));
  }
  return r;
}

/// Whether p involves the variable `index`.
inline bool depends_on(const Polynomial& p, int index) {
  for (const auto& [m, c] : p.terms())
    if (m[index] != 0) return true;
  return false;
}

/// Moves p into another universe of the same kind. Exponents are kept position by
/// position; dropped positions must be zero, and the Laurent flag of `target` is enforced.
inline Polynomial rebase(const Polynomial& p, VarSet target) {
  if (p.vars().kind() != target.kind()) throw std::invalid_argument("cannot rebase across variable kinds");
  if (target.kind() == VarKind::lambda && target.base() != p.vars().base())
    throw std::invalid_argument("cannot rebase lambda polynomials across n");
  Polynomial r(target);
  for (const auto& [m, c] : p.terms()) {
    Monomial t(target.size());
    for (int i = 0; i < m.size(); ++i) {
      if (i < target.size())
        t.set(i, m[i]);
      else if (m[i] != 0)
        throw std::invalid_argument("polynomial uses " + p.vars().name(i) + " outside the target set");
    }
    r.add_term(std::move(t), c);
  }
  return r;
}

/// Text form, terms in decreasing lex order: `x1^2 - 3/2 x1 x2 + 1`, `0` for zero.
inline std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    detail::append_term(out, it->second, format_monomial(it->first, p.vars()));
  return out;
}

namespace detail {

// term := [number] factor* ; factor := name [ '^' int ]. Stops at `stop` identifiers
// (used by the derivation grammar for `d<i>`). Returns false if nothing was read.
inline bool parse_poly_term(Scanner& sc, const VarSet& vars, Rational& coeff, Monomial& mono,
                            char stop = '\0') {
  bool any = false;
  coeff = 1;
  mono = Monomial(vars.size());
  if (sc.peek_digit()) {
    coeff = sc.number();
    any = true;
  }
  while (sc.peek_letter() && sc.peek() != stop) {
    std::size_t at = sc.pos();
    sc.skip_ws();
    at = sc.pos();
    std::string_view id = sc.identifier();
    auto idx = vars.lookup(id);
    if (!idx) Scanner::fail_at("unknown variable '" + std::string(id) + "'", at);
    long e = 1;
    if (sc.peek_raw() == '^') {
      sc.consume('^');
      e = sc.integer_raw();
    }
    mono.set(*idx, mono[*idx] + static_cast<int>(e));
    any = true;
  }
  return any;
}

}  // namespace detail

/// Parses `3/2 x1^2 x3 - l12 l23 + x1^-1` in the given universe.
inline Polynomial parse_polynomial(std::string_view text, VarSet vars) {
  detail::Scanner sc(text);
  Polynomial p(vars);
  bool first = true;
  while (!sc.at_end()) {
    Rational sign = 1;
    if (sc.consume('-'))
      sign = -1;
    else if (!sc.consume('+') && !first)
      sc.fail("expected '+' or '-'");
    first = false;
    Rational c;
    Monomial m;
    std::size_t at = sc.pos();
    if (!detail::parse_poly_term(sc, vars, c, m)) sc.fail("expected a term");
    if (!vars.laurent() && !m.nonnegative())
      detail::Scanner::fail_at("negative exponent outside Laurent mode", at);
    p.add_term(std::move(m), sign * c);
  }
  if (first) sc.fail("empty polynomial");
  return p;
}

}  // namespace lsw
