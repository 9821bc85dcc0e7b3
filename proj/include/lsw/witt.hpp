#pragma once

// The left-symmetric Witt algebra L_n of derivations f1 d1 + ... + fn dn of
// k[x1..xn] (or of the Laurent ring in Laurent mode) with the product
//   a d_i . b d_j = (a d_i(b)) d_j,
// together with Jacobians, the grading, triangular subalgebras and right
// multiplication operators.
//
// Directions and operator-word letters are 1-based throughout this header.

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lsw/poly.hpp"

namespace lsw {

class Derivation {
 public:
  explicit Derivation(int n, bool laurent = false) : n_(n), laurent_(laurent) {
    if (n < 1) throw std::invalid_argument("derivations need n >= 1");
    coeffs_.assign(static_cast<std::size_t>(n), Polynomial(VarSet::x(n, laurent)));
  }

  explicit Derivation(std::vector<Polynomial> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("derivations need n >= 1");
    n_ = static_cast<int>(coeffs_.size());
    const VarSet& v = coeffs_.front().vars();
    if (v.kind() != VarKind::x || v.base() != n_)
      throw std::invalid_argument("coefficients must be polynomials in x1..xn");
    laurent_ = v.laurent();
    for (const auto& c : coeffs_) coeffs_.front().check_same(c);
  }

  /// d_i
  static Derivation partial_d(int n, int i, bool laurent = false) {
    return term(n, Monomial(n), i, Rational(1), laurent);
  }

  /// D_X = x1 d1 + ... + xn dn, the right identity.
  static Derivation euler(int n) {
    Derivation d(n);
    for (int i = 1; i <= n; ++i) d.coeffs_[static_cast<std::size_t>(i - 1)] = Polynomial::variable(d.vars(), i - 1);
    return d;
  }

  /// c x^m d_dir
  static Derivation term(int n, Monomial m, int dir, const Rational& c, bool laurent = false) {
    Derivation d(n, laurent);
    d.check_dir(dir);
    d.coeffs_[static_cast<std::size_t>(dir - 1)].add_term(std::move(m), c);
    return d;
  }

  int n() const noexcept { return n_; }
  bool laurent() const noexcept { return laurent_; }
  VarSet vars() const { return VarSet::x(n_, laurent_); }

  const Polynomial& coeff(int dir) const {
    check_dir(dir);
    return coeffs_[static_cast<std::size_t>(dir - 1)];
  }

  void set_coeff(int dir, Polynomial p) {
    check_dir(dir);
    coeffs_.front().check_same(p);
    coeffs_[static_cast<std::size_t>(dir - 1)] = std::move(p);
  }

  const std::vector<Polynomial>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  std::size_t term_count() const {
    std::size_t k = 0;
    for (const auto& c : coeffs_) k += c.term_count();
    return k;
  }

  Derivation& operator+=(const Derivation& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }

  Derivation& operator-=(const Derivation& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }

  Derivation& operator*=(const Rational& c) {
    for (auto& p : coeffs_) p *= c;
    return *this;
  }

  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
  friend Derivation operator*(Derivation a, const Rational& c) { return a *= c; }
  friend Derivation operator*(const Rational& c, Derivation a) { return a *= c; }
  friend Derivation operator-(Derivation a) { return a *= Rational(-1); }

  friend bool operator==(const Derivation& a, const Derivation& b) {
    return a.n_ == b.n_ && a.laurent_ == b.laurent_ && a.coeffs_ == b.coeffs_;
  }

  void check_compatible(const Derivation& o) const {
    if (n_ != o.n_) throw std::invalid_argument("derivation dimension mismatch");
    if (laurent_ != o.laurent_) throw std::invalid_argument("derivation Laurent mode mismatch");
  }

 private:
  void check_dir(int dir) const {
    if (dir < 1 || dir > n_) throw std::out_of_range("direction d" + std::to_string(dir) + " out of range");
  }

  int n_ = 0;
  bool laurent_ = false;
  std::vector<Polynomial> coeffs_;
};

/// n x n matrix over P_n (row-major, 0-based access).
class PolyMatrix {
 public:
  PolyMatrix(int n, VarSet vars) : n_(n), entries_(static_cast<std::size_t>(n * n), Polynomial(vars)) {}

  static PolyMatrix identity(int n, VarSet vars) {
    PolyMatrix m(n, vars);
    for (int i = 0; i < n; ++i) m.at(i, i) = Polynomial::constant(vars, 1);
    return m;
  }

  int n() const noexcept { return n_; }
  Polynomial& at(int i, int j) { return entries_.at(static_cast<std::size_t>(i * n_ + j)); }
  const Polynomial& at(int i, int j) const { return entries_.at(static_cast<std::size_t>(i * n_ + j)); }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  /// Upper triangular; `strict` also requires a zero diagonal.
  bool is_upper_triangular(bool strict = false) const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j <= i; ++j) {
        if (j == i && !strict) continue;
        if (!at(i, j).is_zero()) return false;
      }
    return true;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
    PolyMatrix r(a.n_, a.entries_.front().vars());
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        const Polynomial& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < a.n_; ++j)
          if (!b.at(k, j).is_zero()) r.at(i, j) += aik * b.at(k, j);
      }
    return r;
  }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  int n_;
  std::vector<Polynomial> entries_;
};

/// Product of L_n: the j-th coefficient of a.b is sum_i a_i d_i(b_j).
inline Derivation ls_mul(const Derivation& a, const Derivation& b) {
  a.check_compatible(b);
  Derivation r(a.n(), a.laurent());
  for (int j = 1; j <= a.n(); ++j) {
    const Polynomial& bj = b.coeff(j);
    if (bj.is_zero()) continue;
    Polynomial acc(a.vars());
    for (int i = 1; i <= a.n(); ++i) {
      const Polynomial& ai = a.coeff(i);
      if (ai.is_zero()) continue;
      Polynomial d = partial(bj, i - 1);
      if (!d.is_zero()) acc += ai * d;
    }
    r.set_coeff(j, std::move(acc));
  }
  return r;
}

inline Derivation commutator(const Derivation& a, const Derivation& b) {
  return ls_mul(a, b) - ls_mul(b, a);
}

/// D(p) = sum_i f_i d_i(p)
inline Polynomial apply_derivation(const Derivation& d, const Polynomial& p) {
  d.coeff(1).check_same(p);
  Polynomial r(p.vars());
  for (int i = 1; i <= d.n(); ++i)
    if (!d.coeff(i).is_zero()) r += d.coeff(i) * partial(p, i - 1);
  return r;
}

/// Entry (i,j) = d_j(f_i).
inline PolyMatrix jacobian(const Derivation& d) {
  PolyMatrix m(d.n(), d.vars());
  for (int i = 0; i < d.n(); ++i)
    for (int j = 0; j < d.n(); ++j) m.at(i, j) = partial(d.coeff(i + 1), j);
  return m;
}

/// Homogeneous components: a monomial coefficient of degree s+1 lies in L_s.
inline std::map<int, Derivation> degree_decompose(const Derivation& d) {
  if (d.laurent()) throw std::invalid_argument("grading is defined for polynomial derivations only");
  std::map<int, Derivation> parts;
  for (int dir = 1; dir <= d.n(); ++dir)
    for (const auto& [m, c] : d.coeff(dir).terms()) {
      auto [it, _] = parts.try_emplace(m.degree() - 1, d.n());
      it->second += Derivation::term(d.n(), m, dir, c);
    }
  return parts;
}

/// Exponent tuples of total degree k in n variables, in decreasing lex order
/// (x1^k first).
inline std::vector<Monomial> monomials_of_degree(int n, int k) {
  std::vector<Monomial> out;
  if (k < 0) return out;
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  // recursive fill of positions left to right, largest first
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      e[static_cast<std::size_t>(pos)] = left;
      out.emplace_back(e);
      return;
    }
    for (int v = left; v >= 0; --v) {
      e[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, k);
  return out;
}

inline Integer binomial(long n, long k) {
  if (k < 0 || n < k) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// dim L_s = n * C(n+s, n-1)
inline Integer dim_L(int n, int s) {
  if (s < -1) return 0;
  return Integer(n) * binomial(n + s, n - 1);
}

/// Monomial basis u d_i of L_s: monomials in decreasing lex order, then direction.
inline std::vector<Derivation> basis_of_L(int n, int s) {
  if (s < -1) throw std::invalid_argument("L_s is zero below s = -1");
  std::vector<Derivation> out;
  for (const auto& m : monomials_of_degree(n, s + 1))
    for (int dir = 1; dir <= n; ++dir) out.push_back(Derivation::term(n, m, dir, Rational(1)));
  return out;
}

enum class Subalgebra : std::uint8_t { full, triangular, strongly_triangular };

inline std::string to_string(Subalgebra c) {
  switch (c) {
    case Subalgebra::full: return "full";
    case Subalgebra::triangular: return "triangular";
    case Subalgebra::strongly_triangular: return "strongly_triangular";
  }
  return {};
}

inline Subalgebra parse_subalgebra(std::string_view s) {
  if (s == "full") return Subalgebra::full;
  if (s == "triangular") return Subalgebra::triangular;
  if (s == "strongly_triangular" || s == "strictly_triangular" || s == "strict")
    return Subalgebra::strongly_triangular;
  throw std::invalid_argument("unknown class '" + std::string(s) + "'");
}

/// Whether the monomial derivation x^m d_dir lies in T(L_n) / ST(L_n).
inline bool monomial_in(Subalgebra cls, const Monomial& m, int dir) {
  if (cls == Subalgebra::full) return true;
  int first_allowed = cls == Subalgebra::triangular ? dir : dir + 1;  // 1-based
  for (int v = 1; v < first_allowed && v <= m.size(); ++v)
    if (m[v - 1] != 0) return false;
  return true;
}

/// Strongest class containing d, decided from monomial supports.
inline Subalgebra membership(const Derivation& d) {
  if (d.laurent()) throw std::invalid_argument("membership is defined for polynomial derivations only");
  bool tri = true, strong = true;
  for (int dir = 1; dir <= d.n(); ++dir)
    for (const auto& [m, c] : d.coeff(dir).terms()) {
      tri = tri && monomial_in(Subalgebra::triangular, m, dir);
      strong = strong && monomial_in(Subalgebra::strongly_triangular, m, dir);
    }
  if (strong) return Subalgebra::strongly_triangular;
  return tri ? Subalgebra::triangular : Subalgebra::full;
}

inline bool contains(Subalgebra outer, Subalgebra inner) {
  return static_cast<int>(inner) >= static_cast<int>(outer);
}

/// Monomial basis elements of the class with L-degree <= max_degree, ordered by
/// degree, then monomial (decreasing lex), then direction.
inline std::vector<Derivation> basis_of_class(int n, Subalgebra cls, int max_degree) {
  std::vector<Derivation> out;
  for (int s = -1; s <= max_degree; ++s)
    for (const auto& m : monomials_of_degree(n, s + 1))
      for (int dir = 1; dir <= n; ++dir)
        if (monomial_in(cls, m, dir)) out.push_back(Derivation::term(n, m, dir, Rational(1)));
  return out;
}

/// R_{a_{i1}} ... R_{a_{im}} applied to c, rightmost letter first:
/// ((c . a_{im}) ... ) . a_{i1}. Letters index `args` from 1.
inline Derivation operator_word_apply(std::span<const int> word, std::span<const Derivation> args,
                                      const Derivation& c) {
  Derivation r = c;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < 1 || *it > static_cast<int>(args.size()))
      throw std::out_of_range("operator letter z" + std::to_string(*it) + " has no argument");
    r = ls_mul(r, args[static_cast<std::size_t>(*it - 1)]);
  }
  return r;
}

/// theta(R_{a_{i1}} ... R_{a_{im}}) = J(a_{i1}) ... J(a_{im}).
inline PolyMatrix theta_matrix(std::span<const int> word, std::span<const Derivation> args, int n) {
  PolyMatrix m = PolyMatrix::identity(n, VarSet::x(n));
  for (int letter : word) {
    if (letter < 1 || letter > static_cast<int>(args.size()))
      throw std::out_of_range("operator letter z" + std::to_string(letter) + " has no argument");
    m = m * jacobian(args[static_cast<std::size_t>(letter - 1)]);
  }
  return m;
}

/// The derivation whose coefficient column is M * (column of c).
inline Derivation apply_matrix(const PolyMatrix& m, const Derivation& c) {
  Derivation r(c.n(), c.laurent());
  for (int i = 0; i < c.n(); ++i) {
    Polynomial acc(c.vars());
    for (int j = 0; j < c.n(); ++j)
      if (!m.at(i, j).is_zero() && !c.coeff(j + 1).is_zero()) acc += m.at(i, j) * c.coeff(j + 1);
    r.set_coeff(i + 1, std::move(acc));
  }
  return r;
}

/// Same derivation with the Laurent flag switched; leaving Laurent mode requires
/// all exponents to be nonnegative.
inline Derivation with_laurent(const Derivation& d, bool laurent) {
  std::vector<Polynomial> cs;
  for (const auto& c : d.coeffs()) cs.push_back(rebase(c, VarSet::x(d.n(), laurent)));
  return Derivation(std::move(cs));
}

/// L_n into L_m (m >= n): same coefficients, extra directions zero.
inline Derivation embed(const Derivation& d, int m) {
  if (m < d.n()) throw std::invalid_argument("cannot embed into a smaller algebra");
  Derivation r(m, d.laurent());
  for (int i = 1; i <= d.n(); ++i) r.set_coeff(i, rebase(d.coeff(i), VarSet::x(m, d.laurent())));
  return r;
}

/// L_n (or its Laurent analogue) as a substitution target.
struct WittAlgebra {
  using element_type = Derivation;
  int n = 1;
  bool laurent = false;

  Derivation zero() const { return Derivation(n, laurent); }
  Derivation multiply(const Derivation& a, const Derivation& b) const { return ls_mul(a, b); }
  Derivation add(const Derivation& a, const Derivation& b) const { return a + b; }
  Derivation scale(const Derivation& a, const Rational& c) const { return a * c; }
  bool is_zero(const Derivation& a) const { return a.is_zero(); }
};

// --- single-term fast path -------------------------------------------------

inline constexpr int kMaxFastVars = 8;

/// c x^e d_dir with an integer coefficient. Products of such terms are again
/// single terms, which makes exhaustive basis sweeps cheap.
struct MonomialTerm {
  std::int64_t coeff = 0;
  std::array<std::int16_t, kMaxFastVars> exps{};
  std::int8_t dir = 0;  // 1-based

  bool is_zero() const { return coeff == 0; }
  bool same_basis(const MonomialTerm& o) const { return dir == o.dir && exps == o.exps; }
};

inline MonomialTerm mono_mul(const MonomialTerm& a, const MonomialTerm& b, int n) {
  MonomialTerm r;
  int i = a.dir - 1;
  std::int64_t e = b.exps[static_cast<std::size_t>(i)];
  if (a.coeff == 0 || b.coeff == 0 || e == 0) return r;
  r.coeff = a.coeff * b.coeff * e;
  for (int v = 0; v < n; ++v)
    r.exps[static_cast<std::size_t>(v)] = static_cast<std::int16_t>(a.exps[static_cast<std::size_t>(v)] + b.exps[static_cast<std::size_t>(v)]);
  r.exps[static_cast<std::size_t>(i)] -= 1;
  r.dir = b.dir;
  return r;
}

/// Converts a single-term derivation with integer coefficient.
inline MonomialTerm to_monomial_term(const Derivation& d) {
  if (d.n() > kMaxFastVars) throw std::invalid_argument("fast path supports n <= 8");
  MonomialTerm t;
  if (d.term_count() != 1) throw std::invalid_argument("not a single-term derivation");
  for (int dir = 1; dir <= d.n(); ++dir)
    for (const auto& [m, c] : d.coeff(dir).terms()) {
      t.coeff = to_int64(c);
      t.dir = static_cast<std::int8_t>(dir);
      for (int v = 0; v < d.n(); ++v) t.exps[static_cast<std::size_t>(v)] = static_cast<std::int16_t>(m[v]);
    }
  return t;
}

inline Derivation to_derivation(const MonomialTerm& t, int n, bool laurent = false) {
  if (t.coeff == 0) return Derivation(n, laurent);
  Monomial m(n);
  for (int v = 0; v < n; ++v) m.set(v, t.exps[static_cast<std::size_t>(v)]);
  return Derivation::term(n, std::move(m), t.dir, Rational(static_cast<long>(t.coeff)), laurent);
}

// --- text ------------------------------------------------------------------

/// `3/2 x1^2 x2 d1 - x3 d2`; terms grouped by direction, `0` for zero.
inline std::string to_string(const Derivation& d) {
  std::string out;
  for (int dir = 1; dir <= d.n(); ++dir) {
    const auto& terms = d.coeff(dir).terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      std::string body = format_monomial(it->first, d.vars());
      if (!body.empty()) body += ' ';
      body += "d" + std::to_string(dir);
      detail::append_term(out, it->second, body);
    }
  }
  return out.empty() ? "0" : out;
}

inline std::string to_string(const PolyMatrix& m) {
  std::string out = "[";
  for (int i = 0; i < m.n(); ++i) {
    out += i ? ", [" : "[";
    for (int j = 0; j < m.n(); ++j) {
      if (j) out += ", ";
      out += to_string(m.at(i, j));
    }
    out += "]";
  }
  return out + "]";
}

inline Derivation parse_derivation(std::string_view text, int n, bool laurent = false) {
  detail::Scanner sc(text);
  Derivation d(n, laurent);
  VarSet vars = d.vars();
  bool first = true;
  if (sc.at_end()) sc.fail("empty derivation");
  if (sc.peek() == '0') {
    std::size_t at = sc.pos();
    Rational z = sc.number();
    if (z == 0 && sc.at_end()) return d;
    detail::Scanner::fail_at("expected a derivation term", at);
  }
  while (!sc.at_end()) {
    Rational sign = 1;
    if (sc.consume('-'))
      sign = -1;
    else if (!sc.consume('+') && !first)
      sc.fail("expected '+' or '-'");
    first = false;
    Rational c;
    Monomial m;
    detail::parse_poly_term(sc, vars, c, m, 'd');
    sc.skip_ws();
    std::size_t at = sc.pos();
    if (sc.peek() != 'd') sc.fail("expected a direction d<i>");
    std::string_view id = sc.identifier();
    int dir = 0;
    for (char ch : id.substr(1)) {
      if (ch < '0' || ch > '9') detail::Scanner::fail_at("malformed direction", at);
      dir = dir * 10 + (ch - '0');
    }
    if (id.size() < 2 || dir < 1 || dir > n)
      detail::Scanner::fail_at("direction '" + std::string(id) + "' out of range", at);
    if (!laurent && !m.nonnegative()) detail::Scanner::fail_at("negative exponent outside Laurent mode", at);
    Polynomial p = d.coeff(dir);
    p.add_term(std::move(m), sign * c);
    d.set_coeff(dir, std::move(p));
  }
  return d;
}

}  // namespace lsw
