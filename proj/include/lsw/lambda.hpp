#pragma once

// Monomial derivations with polynomial exponents over k[lambda], the generators
// z_i = x_{i+1}^{l_{i,i+1}} ... x_n^{l_{in}} d_i, the homomorphism chi from the
// free left-symmetric algebra, integer specializations into strongly triangular
// derivations, and certificates that a multilinear element is not an identity of
// ST(L_n).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsw/freelsa.hpp"
#include "lsw/poly.hpp"
#include "lsw/witt.hpp"

namespace lsw {

/// l_ij as a polynomial; the constant 0 when i >= j.
inline Polynomial lambda_var(int n, int i, int j) {
  VarSet vars = VarSet::lambda(n);
  if (i >= j) return Polynomial(vars);
  return Polynomial::variable(vars, vars.lambda_index(i, j));
}

/// Basis symbol x1^{f1} ... xn^{fn} d_dir of the free k[lambda]-module.
struct LambdaKey {
  std::vector<Polynomial> exps;
  int dir = 1;

  friend bool operator<(const LambdaKey& a, const LambdaKey& b) {
    if (a.dir != b.dir) return a.dir < b.dir;
    return a.exps < b.exps;
  }
  friend bool operator==(const LambdaKey&, const LambdaKey&) = default;
};

class LambdaDerivation {
 public:
  using Terms = std::map<LambdaKey, Polynomial>;

  explicit LambdaDerivation(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
  }

  static LambdaDerivation term(int n, Polynomial coeff, std::vector<Polynomial> exps, int dir) {
    LambdaDerivation d(n);
    d.add_term(std::move(coeff), LambdaKey{std::move(exps), dir});
    return d;
  }

  int n() const noexcept { return n_; }
  VarSet vars() const { return VarSet::lambda(n_); }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(Polynomial coeff, LambdaKey key) {
    if (key.dir < 1 || key.dir > n_) throw std::out_of_range("direction out of range");
    if (static_cast<int>(key.exps.size()) != n_) throw std::invalid_argument("need n exponents");
    for (const auto& e : key.exps)
      if (e.vars() != vars()) throw std::invalid_argument("exponents must be lambda-polynomials");
    if (coeff.vars() != vars()) throw std::invalid_argument("coefficient must be a lambda-polynomial");
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(key), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LambdaDerivation& operator+=(const LambdaDerivation& o) {
    if (o.n_ != n_) throw std::invalid_argument("dimension mismatch");
    for (const auto& [k, c] : o.terms_) add_term(c, k);
    return *this;
  }

  LambdaDerivation& operator*=(const Rational& c) {
    if (c == 0) terms_.clear();
    for (auto& [k, v] : terms_) v *= c;
    return *this;
  }

  friend LambdaDerivation operator+(LambdaDerivation a, const LambdaDerivation& b) { return a += b; }
  friend LambdaDerivation operator-(LambdaDerivation a, const LambdaDerivation& b) {
    LambdaDerivation nb = b;
    nb *= Rational(-1);
    return a += nb;
  }
  friend LambdaDerivation operator*(LambdaDerivation a, const Rational& c) { return a *= c; }
  friend bool operator==(const LambdaDerivation&, const LambdaDerivation&) = default;

 private:
  int n_;
  Terms terms_;
};

/// u d_i o v d_j = deg_{x_i}(v) (u v x_i^{-1}) d_j, extended k[lambda]-bilinearly.
inline LambdaDerivation lambda_mul(const LambdaDerivation& a, const LambdaDerivation& b) {
  if (a.n() != b.n()) throw std::invalid_argument("dimension mismatch");
  LambdaDerivation r(a.n());
  VarSet vars = a.vars();
  Polynomial one = Polynomial::constant(vars, 1);
  for (const auto& [ka, ca] : a.terms()) {
    std::size_t i = static_cast<std::size_t>(ka.dir - 1);
    for (const auto& [kb, cb] : b.terms()) {
      const Polynomial& deg = kb.exps[i];
      if (deg.is_zero()) continue;
      LambdaKey key{ka.exps, kb.dir};
      for (std::size_t v = 0; v < key.exps.size(); ++v) key.exps[v] += kb.exps[v];
      key.exps[i] -= one;
      r.add_term(ca * cb * deg, std::move(key));
    }
  }
  return r;
}

/// z_1, ..., z_n with z_i = x_{i+1}^{l_{i,i+1}} ... x_n^{l_{i,n}} d_i.
inline std::vector<LambdaDerivation> generators_z(int n) {
  VarSet vars = VarSet::lambda(n);
  std::vector<LambdaDerivation> out;
  for (int i = 1; i <= n; ++i) {
    std::vector<Polynomial> exps;
    for (int j = 1; j <= n; ++j) exps.push_back(lambda_var(n, i, j));
    out.push_back(LambdaDerivation::term(n, Polynomial::constant(vars, 1), std::move(exps), i));
  }
  return out;
}

/// chi(w) = f^w x1^{f1^w} ... xn^{fn^w} d_{r(w)}.
struct ChiData {
  Polynomial f_w;
  std::vector<Polynomial> exps;
  int r = 1;

  friend bool operator==(const ChiData&, const ChiData&) = default;
};

/// Single-term image of a word under y_i -> z_i, by recursion on w = uv:
/// f^w = f^u f^v f^v_{r(u)}, exponents add with 1 removed at r(u), r(w) = r(v).
inline ChiData chi(const Word& w, int n) {
  if (w.max_letter() > n) throw std::out_of_range("word uses a letter beyond y" + std::to_string(n));
  VarSet vars = VarSet::lambda(n);
  if (w.is_leaf()) {
    int i = w.letter();
    ChiData d{Polynomial::constant(vars, 1), {}, i};
    for (int j = 1; j <= n; ++j) d.exps.push_back(lambda_var(n, i, j));
    return d;
  }
  ChiData u = chi(w.left(), n);
  ChiData v = chi(w.right(), n);
  std::size_t ru = static_cast<std::size_t>(u.r - 1);
  ChiData out{u.f_w * v.f_w * v.exps[ru], u.exps, v.r};
  for (std::size_t k = 0; k < out.exps.size(); ++k) out.exps[k] += v.exps[k];
  out.exps[ru] -= Polynomial::constant(vars, 1);
  return out;
}

inline LambdaDerivation to_lambda_derivation(const ChiData& d, int n) {
  LambdaDerivation r(n);
  r.add_term(d.f_w, LambdaKey{d.exps, d.r});
  return r;
}

/// Linear extension of chi.
inline LambdaDerivation chi_element(const Combination& g, int n) {
  LambdaDerivation r(n);
  for (const auto& [w, c] : g) {
    ChiData d = chi(w, n);
    r.add_term(d.f_w * c, LambdaKey{std::move(d.exps), d.r});
  }
  return r;
}

inline LambdaDerivation chi_element(const LSElement& g, int n) { return chi_element(g.terms(), n); }

/// The algebra of lambda-derivations as a substitution target.
struct LambdaAlgebra {
  using element_type = LambdaDerivation;
  int n = 1;

  LambdaDerivation zero() const { return LambdaDerivation(n); }
  LambdaDerivation multiply(const LambdaDerivation& a, const LambdaDerivation& b) const { return lambda_mul(a, b); }
  LambdaDerivation add(const LambdaDerivation& a, const LambdaDerivation& b) const { return a + b; }
  LambdaDerivation scale(const LambdaDerivation& a, const Rational& c) const { return a * c; }
  bool is_zero(const LambdaDerivation& a) const { return a.is_zero(); }
};

/// Multilinear, special and reduced.
inline bool in_W(const Word& w) { return is_multilinear(w) && is_special(w) && is_reduced(w); }

/// Leading monomial of f^w for w in W, from the L-form w = L_{w1}...L_{wm} y_i:
/// l_{i r(w1)} ... l_{i r(wm)} times the leading monomials of the factors.
inline Monomial leading_f(const Word& w, int n) {
  if (!in_W(w)) throw std::invalid_argument("leading_f needs a multilinear special reduced word");
  if (w.max_letter() > n) throw std::out_of_range("word uses a letter beyond y" + std::to_string(n));
  VarSet vars = VarSet::lambda(n);
  LForm f = l_form(w);
  Monomial m(vars.size());
  for (const auto& wj : f.factors) {
    int idx = vars.lambda_index(f.tail, wj.last_letter());
    m.set(idx, m[idx] + 1);
    m = m * leading_f(wj, n);
  }
  return m;
}

/// Inverse of leading_f on W. The empty monomial determines only the length; it is
/// mapped to y_{lone_letter}.
inline Word reconstruct_word(const Monomial& m, int n, int lone_letter = 1) {
  VarSet vars = VarSet::lambda(n);
  if (m.size() != vars.size()) throw std::invalid_argument("monomial is not over l_ij for this n");
  if (m.is_one()) return Word::leaf(lone_letter);
  // parent[q] = p for every divisor l_pq (q > p).
  std::map<int, int> parent;
  std::set<int> nodes;
  for (int idx = 0; idx < m.size(); ++idx) {
    int e = m[idx];
    if (e == 0) continue;
    if (e != 1) throw std::invalid_argument("monomial is not squarefree");
    auto [p, q] = vars.lambda_pair(idx);
    if (!parent.emplace(q, p).second)
      throw std::invalid_argument("index " + std::to_string(q) + " occurs twice as a second index");
    nodes.insert(p);
    nodes.insert(q);
  }
  std::vector<int> roots;
  for (int v : nodes)
    if (!parent.count(v)) roots.push_back(v);
  if (roots.size() != 1) throw std::invalid_argument("monomial does not describe a single rooted tree");
  std::map<int, std::vector<int>> children;
  for (auto [q, p] : parent) children[p].push_back(q);
  std::size_t reached = 0;
  auto build = [&](auto&& self, int root) -> Word {
    ++reached;
    std::vector<Word> factors;
    for (int c : children[root]) factors.push_back(self(self, c));
    std::sort(factors.begin(), factors.end(), [](const Word& a, const Word& b) { return compare_words(a, b) > 0; });
    return rebuild(LForm{std::move(factors), root});
  };
  Word w = build(build, roots.front());
  if (reached != nodes.size()) throw std::invalid_argument("monomial does not describe a single rooted tree");
  return w;
}

/// Substitutes integers for lambda: coefficients and exponents are evaluated, terms
/// with a vanishing coefficient dropped. The result is a Laurent derivation.
inline Derivation specialize(const LambdaDerivation& a, std::span<const std::int64_t> s) {
  VarSet vars = a.vars();
  if (static_cast<int>(s.size()) != vars.size())
    throw std::invalid_argument("need one integer per l_ij (" + std::to_string(vars.size()) + ")");
  std::vector<Rational> point;
  for (auto v : s) point.emplace_back(static_cast<long>(v));
  Derivation r(a.n(), true);
  for (const auto& [key, coeff] : a.terms()) {
    Rational c = eval(coeff, point);
    if (c == 0) continue;
    Monomial m(a.n());
    for (int v = 0; v < a.n(); ++v) {
      Rational e = eval(key.exps[static_cast<std::size_t>(v)], point);
      if (!is_integer(e)) throw std::domain_error("exponent does not specialize to an integer");
      m.set(v, static_cast<int>(to_int64(e)));
    }
    r += Derivation::term(a.n(), std::move(m), key.dir, c, true);
  }
  return r;
}

/// s-hat(z_1), ..., s-hat(z_n) as polynomial derivations (they lie in ST(L_n)).
inline std::vector<Derivation> specialize_generators(int n, std::span<const std::int64_t> s) {
  for (auto v : s)
    if (v < 0) throw std::invalid_argument("generator specializations need nonnegative integers");
  std::vector<Derivation> out;
  for (const auto& z : generators_z(n)) out.push_back(with_laurent(specialize(z, s), false));
  return out;
}

// --- certificates ----------------------------------------------------------

enum class CertificateVerdict : std::uint8_t { certified, trivial_identity };

/// Evidence that a multilinear element g(y1..yd) is not an identity of ST(L_n):
/// substitutions y_i -> s-hat(z_{sigma(i)}) in ST(L_n) with nonzero value.
struct Certificate {
  CertificateVerdict verdict = CertificateVerdict::trivial_identity;
  Combination input;
  int degree = 0;
  int n = 0;
  std::vector<int> sigma;       // sigma[i-1] = sigma(i)
  std::vector<std::int64_t> s;  // one entry per l_ij of L_degree, tuple order
  Polynomial f_g = Polynomial(VarSet::lambda(1));
  std::vector<Derivation> substitutions;  // value for y1, ..., yd
  std::optional<Derivation> value;
  bool validated = false;
};

/// Recomputes the value of the input on the substitutions from scratch.
inline bool validate(const Certificate& cert) {
  if (cert.verdict != CertificateVerdict::certified || !cert.value) return false;
  if (static_cast<int>(cert.substitutions.size()) != cert.degree) return false;
  for (const auto& d : cert.substitutions)
    if (d.n() != cert.n || d.laurent() || membership(d) != Subalgebra::strongly_triangular) return false;
  Derivation v = evaluate(cert.input, WittAlgebra{cert.n, false}, std::span<const Derivation>(cert.substitutions));
  return !v.is_zero() && v == *cert.value;
}

namespace detail {

// Lexicographic walk over {0..bound}^r; first point where f does not vanish.
inline std::optional<std::vector<std::int64_t>> first_nonvanishing(const Polynomial& f, int bound) {
  int r = f.vars().size();
  std::vector<std::int64_t> s(static_cast<std::size_t>(r), 0);
  std::vector<Rational> point(static_cast<std::size_t>(r), Rational(0));
  for (;;) {
    if (eval(f, point) != 0) return s;
    int k = r - 1;
    while (k >= 0 && s[static_cast<std::size_t>(k)] == bound) {
      s[static_cast<std::size_t>(k)] = 0;
      point[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) return std::nullopt;
    ++s[static_cast<std::size_t>(k)];
    point[static_cast<std::size_t>(k)] = static_cast<long>(s[static_cast<std::size_t>(k)]);
  }
}

}  // namespace detail

/// Builds a non-identity certificate for a multilinear element in y1..yd, targeting
/// ST(L_n) with n = target_n (default d). Elements that vanish modulo left symmetry
/// get verdict trivial_identity.
inline Certificate certify_nonidentity(const Combination& g, std::optional<int> target_n = std::nullopt) {
  Certificate cert;
  cert.input = g;
  LSElement nf = normal_form(g);
  if (nf.is_zero()) {
    cert.verdict = CertificateVerdict::trivial_identity;
    return cert;
  }
  Word w1 = lowest_word(nf);
  const int d = w1.length();
  for (const auto& [w, c] : nf.terms()) {
    auto ls = w.letters();
    std::sort(ls.begin(), ls.end());
    for (int k = 0; k < static_cast<int>(ls.size()); ++k)
      if (static_cast<int>(ls.size()) != d || ls[static_cast<std::size_t>(k)] != k + 1)
        throw std::invalid_argument("certify needs an element multilinear in y1..y" + std::to_string(d));
  }
  for (const auto& [w, c] : g)
    if (w.max_letter() > d) throw std::invalid_argument("input uses letters beyond y" + std::to_string(d));
  const int n = target_n.value_or(d);
  if (d > n) throw std::invalid_argument("degree " + std::to_string(d) + " exceeds n = " + std::to_string(n));
  cert.degree = d;
  cert.n = n;

  // sigma(i_j) = d - j + 1 makes the lowest word special. Its image need not stay
  // the lowest word of sigma(g), so other relabelings are tried if chi(sigma(g)) = 0.
  auto letters = w1.letters();
  std::vector<int> sigma(static_cast<std::size_t>(d) + 1, 0);
  for (int j = 0; j < d; ++j) sigma[static_cast<std::size_t>(letters[static_cast<std::size_t>(j)])] = d - j;
  if (!in_W(relabel(w1, sigma))) throw std::logic_error("relabeled lowest word is not special");

  auto special_part = [&](const LSElement& e) {
    Polynomial f(VarSet::lambda(d));
    std::set<Monomial> leading;
    for (const auto& [w, c] : e.terms()) {
      if (!is_special(w)) continue;
      ChiData cd = chi(w, d);
      if (!leading.insert(leading_monomial(cd.f_w)).second)
        throw std::logic_error("two special words share a leading monomial");
      f += cd.f_w * c;
    }
    return f;
  };

  LSElement sg = relabel(nf, sigma);
  Polynomial f_g = special_part(sg);
  if (f_g.is_zero()) {
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 1);
    do {
      std::copy(perm.begin(), perm.end(), sigma.begin() + 1);
      sg = relabel(nf, sigma);
      f_g = special_part(sg);
    } while (f_g.is_zero() && std::next_permutation(perm.begin(), perm.end()));
  }
  cert.sigma.assign(sigma.begin() + 1, sigma.end());
  if (f_g.is_zero()) throw std::logic_error("f_g vanished for a nonzero element");
  cert.f_g = f_g;

  auto s = detail::first_nonvanishing(f_g, std::max(0, f_g.total_degree()));
  if (!s) throw std::logic_error("no nonvanishing grid point for f_g");
  cert.s = *s;

  auto z_values = specialize_generators(d, cert.s);
  for (int i = 1; i <= d; ++i)
    cert.substitutions.push_back(embed(z_values[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)] - 1)], n));

  Derivation value = evaluate(g, WittAlgebra{n, false}, std::span<const Derivation>(cert.substitutions));
  Derivation predicted = embed(with_laurent(specialize(chi_element(sg, d), cert.s), false), n);
  if (value != predicted) throw std::logic_error("direct evaluation disagrees with s-hat(chi(sigma(g)))");
  cert.value = value;
  cert.verdict = CertificateVerdict::certified;
  cert.validated = validate(cert);
  return cert;
}

// --- text ------------------------------------------------------------------

inline std::string to_string(const LambdaDerivation& a) {
  if (a.is_zero()) return "0";
  VarSet xs = VarSet::x(a.n());
  std::string out;
  for (const auto& [key, coeff] : a.terms()) {
    std::string body;
    for (int v = 0; v < a.n(); ++v) {
      const Polynomial& e = key.exps[static_cast<std::size_t>(v)];
      if (e.is_zero()) continue;
      if (!body.empty()) body += ' ';
      body += xs.name(v);
      std::string es = to_string(e);
      if (es != "1") body += e.term_count() == 1 && es.find(' ') == std::string::npos ? "^" + es : "^(" + es + ")";
    }
    if (!body.empty()) body += ' ';
    body += "d" + std::to_string(key.dir);
    std::string cs = to_string(coeff);
    if (!out.empty()) out += " + ";
    if (cs == "1")
      out += body;
    else
      out += "(" + cs + ") " + body;
  }
  return out;
}

}  // namespace lsw
