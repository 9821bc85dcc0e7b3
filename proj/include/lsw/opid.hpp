#pragma once

// Free associative polynomials in z1..zm, their identities over matrix algebras
// (full, upper triangular, strictly upper triangular), and right operator
// identities f(R_{y1},...,R_{ym}) y of L_n and its triangular subalgebras.

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "lsw/detail/scanner.hpp"
#include "lsw/detail/tuples.hpp"
#include "lsw/freelsa.hpp"
#include "lsw/linalg.hpp"
#include "lsw/poly.hpp"
#include "lsw/sampling.hpp"
#include "lsw/witt.hpp"

namespace lsw {

using AssocWord = std::vector<int>;

// shorter words first, then lexicographic
struct AssocWordLess {
  bool operator()(const AssocWord& a, const AssocWord& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

class AssocPoly {
 public:
  using Terms = std::map<AssocWord, Rational, AssocWordLess>;

  AssocPoly() = default;

  static AssocPoly letter(int k) {
    if (k < 1) throw std::out_of_range("letters start at z1");
    AssocPoly p;
    p.add_term({k}, 1);
    return p;
  }

  static AssocPoly constant(const Rational& c) {
    AssocPoly p;
    p.add_term({}, c);
    return p;
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const AssocWord& w, const Rational& c) {
    if (c == 0) return;
    for (int k : w)
      if (k < 1) throw std::out_of_range("letters start at z1");
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int degree() const {
    int d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
    return d;
  }

  int max_letter() const {
    int m = 0;
    for (const auto& [w, c] : terms_)
      for (int k : w) m = std::max(m, k);
    return m;
  }

  /// Letters that occur, increasing.
  std::vector<int> used_letters() const {
    std::set<int> s;
    for (const auto& [w, c] : terms_) s.insert(w.begin(), w.end());
    return {s.begin(), s.end()};
  }

  AssocPoly& operator+=(const AssocPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  AssocPoly& operator-=(const AssocPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  AssocPoly& operator*=(const Rational& c) {
    if (c == 0) terms_.clear();
    for (auto& [w, x] : terms_) x *= c;
    return *this;
  }

  friend AssocPoly operator+(AssocPoly a, const AssocPoly& b) { return a += b; }
  friend AssocPoly operator-(AssocPoly a, const AssocPoly& b) { return a -= b; }
  friend AssocPoly operator*(AssocPoly a, const Rational& c) { return a *= c; }
  friend AssocPoly operator*(const Rational& c, AssocPoly a) { return a *= c; }

  friend AssocPoly operator*(const AssocPoly& a, const AssocPoly& b) {
    AssocPoly r;
    for (const auto& [u, c] : a.terms_)
      for (const auto& [v, e] : b.terms_) {
        AssocWord w = u;
        w.insert(w.end(), v.begin(), v.end());
        r.add_term(w, c * e);
      }
    return r;
  }

  friend bool operator==(const AssocPoly&, const AssocPoly&) = default;

 private:
  Terms terms_;
};

/// Reverses every word.
inline AssocPoly involution(const AssocPoly& f) {
  AssocPoly r;
  for (const auto& [w, c] : f.terms()) r.add_term(AssocWord(w.rbegin(), w.rend()), c);
  return r;
}

inline AssocPoly assoc_commutator(const AssocPoly& a, const AssocPoly& b) { return a * b - b * a; }

/// Sum over S_m of sgn(p) z_{p(1)} ... z_{p(m)}.
inline AssocPoly standard_poly(int m) {
  if (m < 1) throw std::invalid_argument("standard polynomial needs m >= 1");
  AssocWord w(static_cast<std::size_t>(m));
  std::iota(w.begin(), w.end(), 1);
  AssocPoly r;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j)
        if (w[i] > w[j]) ++inversions;
    r.add_term(w, inversions % 2 ? -1 : 1);
  } while (std::next_permutation(w.begin(), w.end()));
  return r;
}

/// Relabels z_k -> z_{sigma[k]} (sigma[0] unused).
inline AssocPoly relabel(const AssocPoly& f, std::span<const int> sigma) {
  AssocPoly r;
  for (const auto& [w, c] : f.terms()) {
    AssocWord v = w;
    for (int& k : v) {
      if (k >= static_cast<int>(sigma.size())) throw std::out_of_range("relabeling misses a letter");
      k = sigma[static_cast<std::size_t>(k)];
    }
    r.add_term(v, c);
  }
  return r;
}

// --- text ------------------------------------------------------------------

inline std::string to_string(const AssocPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : f.terms()) {
    std::string body;
    for (int k : w) {
      if (!body.empty()) body += ' ';
      body += "z" + std::to_string(k);
    }
    detail::append_term(out, c, body);
  }
  return out;
}

/// `z1 z2 - 2 z2 z1 + 1/2 z3^2`; `0` and bare constants allowed.
inline AssocPoly parse_assoc(std::string_view text) {
  detail::Scanner sc(text);
  AssocPoly out;
  if (sc.at_end()) sc.fail("empty polynomial");
  bool first = true;
  while (!sc.at_end()) {
    Rational sign = 1;
    if (sc.consume('-')) sign = -1;
    else if (!sc.consume('+') && !first) sc.fail("expected '+' or '-'");
    first = false;
    Rational coeff = 1;
    bool has_coeff = false;
    if (sc.peek_digit()) {
      coeff = sc.number();
      has_coeff = true;
    }
    AssocWord w;
    while (sc.peek_letter()) {
      sc.skip_ws();
      std::size_t at = sc.pos();
      std::string_view id = sc.identifier();
      if (id.size() < 2 || id[0] != 'z') detail::Scanner::fail_at("expected z<k>", at);
      int k = 0;
      for (char ch : id.substr(1)) {
        if (ch < '0' || ch > '9' || k > 100000) detail::Scanner::fail_at("bad letter index", at);
        k = k * 10 + (ch - '0');
      }
      if (k < 1) detail::Scanner::fail_at("letters start at z1", at);
      int power = 1;
      if (sc.peek_raw() == '^') {
        sc.consume('^');
        std::size_t pat = sc.pos();
        long p = sc.integer_raw();
        if (p < 1 || p > 64) detail::Scanner::fail_at("exponent must be in 1..64", pat);
        power = static_cast<int>(p);
      }
      w.insert(w.end(), static_cast<std::size_t>(power), k);
    }
    if (!has_coeff && w.empty()) sc.fail("expected a term");
    out.add_term(w, sign * coeff);
  }
  return out;
}

// --- matrix identities -----------------------------------------------------

namespace detail {

inline bool entry_allowed(Subalgebra cls, int i, int j) {
  switch (cls) {
    case Subalgebra::full: return true;
    case Subalgebra::triangular: return i <= j;
    case Subalgebra::strongly_triangular: return i < j;
  }
  return false;
}

// Index of the indeterminate at entry (i, j) of the generic matrix for letter k.
inline int generic_index(int k, int i, int j, int n) { return ((k - 1) * n + i) * n + j; }

// Evaluates f on matrices, sharing common prefixes between consecutive words.
// `add_scaled(acc, x, c)` performs acc += c x in place.
template <class M, class Mul, class AddScaled>
M evaluate_words(const AssocPoly& f, const M& one, const M& zero, std::span<const M> mats, Mul mul,
                 AddScaled add_scaled) {
  std::vector<std::pair<const AssocWord*, const Rational*>> words;
  for (const auto& [w, c] : f.terms()) words.emplace_back(&w, &c);
  std::sort(words.begin(), words.end(), [](const auto& a, const auto& b) { return *a.first < *b.first; });
  std::vector<M> stack{one};
  const AssocWord* prev = nullptr;
  M total = zero;
  for (const auto& [w, c] : words) {
    std::size_t common = 0;
    if (prev)
      while (common < prev->size() && common < w->size() && (*prev)[common] == (*w)[common]) ++common;
    stack.erase(stack.begin() + static_cast<std::ptrdiff_t>(common + 1), stack.end());
    for (std::size_t k = common; k < w->size(); ++k)
      stack.push_back(mul(stack.back(), mats[static_cast<std::size_t>((*w)[k] - 1)]));
    add_scaled(total, stack.back(), *c);
    prev = w;
  }
  return total;
}

}  // namespace detail

/// f on generic matrices of the class: letter k gets entries t_{k,i,j} on the
/// allowed pattern. Entries are polynomials over VarSet::generic(m n^2).
inline PolyMatrix generic_evaluation(const AssocPoly& f, int n, Subalgebra cls) {
  if (n < 1) throw std::invalid_argument("matrix size must be positive");
  int m = f.max_letter();
  VarSet vars = VarSet::generic(std::max(1, m) * n * n);
  std::vector<PolyMatrix> mats;
  for (int k = 1; k <= m; ++k) {
    PolyMatrix a(n, vars);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (detail::entry_allowed(cls, i, j)) a.at(i, j) = Polynomial::variable(vars, detail::generic_index(k, i, j, n));
    mats.push_back(std::move(a));
  }
  PolyMatrix zero(n, vars);
  return detail::evaluate_words<PolyMatrix>(
      f, PolyMatrix::identity(n, vars), zero, std::span<const PolyMatrix>(mats),
      [](const PolyMatrix& a, const PolyMatrix& b) { return a * b; },
      [n](PolyMatrix& acc, const PolyMatrix& x, const Rational& c) {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (!x.at(i, j).is_zero()) acc.at(i, j) += x.at(i, j) * c;
      });
}

/// f evaluated on concrete rational matrices (letter k -> mats[k-1]).
inline RationalMatrix evaluate_assoc(const AssocPoly& f, std::span<const RationalMatrix> mats, std::size_t n) {
  if (static_cast<int>(mats.size()) < f.max_letter()) throw std::invalid_argument("not enough matrices");
  return detail::evaluate_words<RationalMatrix>(
      f, RationalMatrix::identity(n), RationalMatrix(n, n), mats,
      [](const RationalMatrix& a, const RationalMatrix& b) { return a * b; },
      [](RationalMatrix& acc, const RationalMatrix& x, const Rational& c) { acc += c * x; });
}

struct MatrixDecision {
  bool identity = true;
  std::vector<RationalMatrix> witness;  // one per letter z1..zm
  std::optional<RationalMatrix> value;  // f(witness) != 0
};

struct MatrixDecideParams {
  std::size_t unit_budget = 100000;  // matrix-unit tuples tried before the generic fallback
};

namespace detail {

// Tries tuples of matrix units E_ij from the class pattern, lex order.
inline std::optional<std::vector<RationalMatrix>> matrix_unit_witness(const AssocPoly& f, int n, Subalgebra cls,
                                                                      std::size_t budget) {
  int m = f.max_letter();
  std::vector<std::pair<int, int>> units;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (entry_allowed(cls, i, j)) units.emplace_back(i, j);
  auto used = f.used_letters();
  if (units.empty() && !used.empty()) return std::nullopt;
  std::vector<std::size_t> pick(used.size(), 0);
  std::vector<int> slot(static_cast<std::size_t>(m) + 1, -1);
  for (std::size_t u = 0; u < used.size(); ++u) slot[static_cast<std::size_t>(used[u])] = static_cast<int>(u);
  std::vector<Rational> acc(static_cast<std::size_t>(n * n));
  for (std::size_t tried = 0; tried < budget; ++tried) {
    std::fill(acc.begin(), acc.end(), Rational(0));
    for (const auto& [w, c] : f.terms()) {
      if (w.empty()) {
        for (int i = 0; i < n; ++i) acc[static_cast<std::size_t>(i * n + i)] += c;
        continue;
      }
      auto [a, b] = units[pick[static_cast<std::size_t>(slot[static_cast<std::size_t>(w[0])])]];
      bool alive = true;
      for (std::size_t k = 1; k < w.size() && alive; ++k) {
        auto [p, q] = units[pick[static_cast<std::size_t>(slot[static_cast<std::size_t>(w[k])])]];
        if (p != b) alive = false;
        else b = q;
      }
      if (alive) acc[static_cast<std::size_t>(a * n + b)] += c;
    }
    if (std::any_of(acc.begin(), acc.end(), [](const Rational& x) { return x != 0; })) {
      std::vector<RationalMatrix> out;
      for (int k = 1; k <= m; ++k) {
        RationalMatrix e(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        int s = slot[static_cast<std::size_t>(k)];
        if (s >= 0) {
          auto [i, j] = units[pick[static_cast<std::size_t>(s)]];
          e.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = 1;
        }
        out.push_back(std::move(e));
      }
      return out;
    }
    // next tuple, last slot fastest
    std::size_t k = pick.size();
    while (k > 0 && pick[k - 1] + 1 == units.size()) pick[--k] = 0;
    if (k == 0) break;
    ++pick[k - 1];
  }
  return std::nullopt;
}

// Specializes indeterminates one at a time, preferring 0, 1, -1, 2, -2, ...,
// keeping the chosen entry polynomial nonzero.
inline std::vector<Rational> nonvanishing_point(Polynomial p) {
  int vars = p.vars().size();
  std::vector<Rational> point(static_cast<std::size_t>(vars), Rational(0));
  for (int v = 0; v < vars; ++v) {
    if (!depends_on(p, v)) continue;
    for (long k = 0;; ++k) {
      long value = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
      Polynomial q = substitute(p, v, Rational(value));
      if (!q.is_zero()) {
        point[static_cast<std::size_t>(v)] = value;
        p = std::move(q);
        break;
      }
    }
  }
  return point;
}

}  // namespace detail

/// Decides whether f = 0 is an identity of M_n(k), T_n(k) or ST_n(k) via generic
/// matrices; a non-identity comes with a rational witness.
inline MatrixDecision matrix_identity_decide(const AssocPoly& f, int n, Subalgebra cls,
                                             const MatrixDecideParams& params = {}) {
  MatrixDecision out;
  PolyMatrix g = generic_evaluation(f, n, cls);
  if (g.is_zero()) return out;
  out.identity = false;
  const std::size_t un = static_cast<std::size_t>(n);
  if (auto units = detail::matrix_unit_witness(f, n, cls, params.unit_budget)) {
    out.witness = std::move(*units);
  } else {
    const Polynomial* entry = nullptr;
    for (int i = 0; i < n && !entry; ++i)
      for (int j = 0; j < n && !entry; ++j)
        if (!g.at(i, j).is_zero()) entry = &g.at(i, j);
    auto point = detail::nonvanishing_point(*entry);
    for (int k = 1; k <= f.max_letter(); ++k) {
      RationalMatrix a(un, un);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (detail::entry_allowed(cls, i, j))
            a.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                point[static_cast<std::size_t>(detail::generic_index(k, i, j, n))];
      out.witness.push_back(std::move(a));
    }
  }
  out.value = evaluate_assoc(f, out.witness, un);
  if (out.value->is_zero()) throw std::logic_error("matrix witness evaluates to zero");
  return out;
}

// --- right operator identities in L_n ---------------------------------------

/// f(R_{a1},...,R_{am}) c, i.e. sum of coefficient times operator_word_apply.
/// Words sharing a suffix reuse the partial products.
inline Derivation operator_apply(const AssocPoly& f, std::span<const Derivation> args, const Derivation& c) {
  std::vector<std::pair<AssocWord, const Rational*>> words;
  for (const auto& [w, coef] : f.terms()) {
    for (int k : w)
      if (k > static_cast<int>(args.size()))
        throw std::out_of_range("operator letter z" + std::to_string(k) + " has no argument");
    words.emplace_back(AssocWord(w.rbegin(), w.rend()), &coef);
  }
  std::sort(words.begin(), words.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Derivation> stack{c};
  const AssocWord* prev = nullptr;
  Derivation total(c.n(), c.laurent());
  for (const auto& [w, coef] : words) {
    std::size_t common = 0;
    if (prev)
      while (common < prev->size() && common < w.size() && (*prev)[common] == w[common]) ++common;
    stack.erase(stack.begin() + static_cast<std::ptrdiff_t>(common + 1), stack.end());
    for (std::size_t k = common; k < w.size(); ++k) {
      if (stack.back().is_zero()) {
        stack.push_back(stack.back());
        continue;
      }
      stack.push_back(ls_mul(stack.back(), args[static_cast<std::size_t>(w[k] - 1)]));
    }
    if (!stack.back().is_zero()) total += stack.back() * *coef;
    prev = &w;
  }
  return total;
}

/// The element f(R_{y1},...,R_{ym}) y_{m+1} of the free left-symmetric algebra,
/// as a raw combination (R_a b = b a).
inline Combination right_operator_element(const AssocPoly& f) {
  int m = f.max_letter();
  Combination out;
  for (const auto& [w, c] : f.terms()) {
    Word cur = Word::leaf(m + 1);
    for (auto it = w.rbegin(); it != w.rend(); ++it) cur = Word::product(cur, Word::leaf(*it));
    add_to(out, cur, c);
  }
  return out;
}

/// Linear derivation with Jacobian A: sum_{i,j} A_ij x_j d_i.
inline Derivation linear_derivation(const RationalMatrix& a) {
  int n = static_cast<int>(a.rows());
  Derivation d(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational& x = a.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (x == 0) continue;
      Monomial m(n);
      m.set(j, 1);
      d += Derivation::term(n, std::move(m), i + 1, x);
    }
  return d;
}

namespace detail {

// Operator polynomial with integer coefficients on single-term arguments.
class FastOperator {
 public:
  FastOperator(const AssocPoly& f, int n) : n_(n) {
    Integer lcm = 1;
    for (const auto& [w, c] : f.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    for (const auto& [w, c] : f.terms()) {
      Rational scaled = c * Rational(lcm);
      words_.push_back({AssocWord(w.rbegin(), w.rend()), to_int64(scaled)});
    }
    std::sort(words_.begin(), words_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    common_.resize(words_.size(), 0);
    for (std::size_t k = 1; k < words_.size(); ++k) {
      const auto& a = words_[k - 1].first;
      const auto& b = words_[k].first;
      std::size_t c = 0;
      while (c < a.size() && c < b.size() && a[c] == b[c]) ++c;
      common_[k] = c;
    }
  }

  // True if f(R_{args}) c != 0.
  bool nonzero(std::span<const MonomialTerm> args, const MonomialTerm& c) const {
    acc_.clear();
    stack_.assign(1, c);
    for (std::size_t k = 0; k < words_.size(); ++k) {
      const auto& w = words_[k].first;
      stack_.resize(common_[k] + 1);
      for (std::size_t p = common_[k]; p < w.size(); ++p)
        stack_.push_back(mono_mul(stack_.back(), args[static_cast<std::size_t>(w[p] - 1)], n_));
      const MonomialTerm& t = stack_.back();
      if (t.is_zero()) continue;
      std::int64_t add = t.coeff * words_[k].second;
      bool merged = false;
      for (auto& a : acc_)
        if (a.same_basis(t)) {
          a.coeff += add;
          merged = true;
          break;
        }
      if (!merged) {
        acc_.push_back(t);
        acc_.back().coeff = add;
      }
    }
    for (const auto& a : acc_)
      if (a.coeff != 0) return true;
    return false;
  }

 private:
  int n_;
  std::vector<std::pair<AssocWord, std::int64_t>> words_;
  std::vector<std::size_t> common_;
  mutable std::vector<MonomialTerm> acc_;
  mutable std::vector<MonomialTerm> stack_;
};

// Basis of the class grouped by L-degree + 1 (bucket 0 = constants).
inline std::vector<std::vector<int>> degree_buckets(const std::vector<Derivation>& basis) {
  std::vector<std::vector<int>> buckets;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    int deg = 0;
    for (int dir = 1; dir <= basis[k].n(); ++dir)
      for (const auto& [m, c] : basis[k].coeff(dir).terms()) deg = m.degree();
    if (static_cast<int>(buckets.size()) <= deg) buckets.resize(static_cast<std::size_t>(deg) + 1);
    buckets[static_cast<std::size_t>(deg)].push_back(static_cast<int>(k));
  }
  return buckets;
}

}  // namespace detail

enum class CheckMode : std::uint8_t { decide, sample };

inline std::string to_string(CheckMode m) { return m == CheckMode::decide ? "decide" : "sample"; }

inline CheckMode parse_check_mode(std::string_view s) {
  if (s == "decide" || s == "decide_via_prop1") return CheckMode::decide;
  if (s == "sample") return CheckMode::sample;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "'");
}

struct OperatorCheckParams {
  int degree_bound = 2;                  // basis L-degree bound in sample mode
  std::size_t exhaustive_limit = 100000; // basis tuples swept before random sampling
  std::size_t samples = 200;             // random tuples after the sweep
  std::uint64_t seed = 1;
  int terms_per_sample = 3;
  unsigned jobs = 1;
};

struct OperatorVerdict {
  bool identity = true;  // decided (decide mode) or not refuted (sample mode)
  CheckMode mode = CheckMode::decide;
  std::vector<Derivation> witness_args;  // a1..am
  std::optional<Derivation> witness_input;
  std::optional<Derivation> value;
  std::size_t exhaustive_checked = 0;
  std::size_t samples_checked = 0;
  bool exhaustive_complete = false;
  std::optional<MatrixDecision> matrix;
};

namespace detail {

inline OperatorVerdict decide_operator(const AssocPoly& f, int n, Subalgebra cls) {
  OperatorVerdict out;
  out.mode = CheckMode::decide;
  MatrixDecision md = matrix_identity_decide(f, n, cls);
  out.identity = md.identity;
  if (!md.identity) {
    for (const auto& a : md.witness) out.witness_args.push_back(linear_derivation(a));
    std::size_t col = 0;
    const auto& v = *md.value;
    while (col < v.cols()) {
      bool hit = false;
      for (std::size_t i = 0; i < v.rows(); ++i) hit = hit || v.at(i, col) != 0;
      if (hit) break;
      ++col;
    }
    out.witness_input = Derivation::partial_d(n, static_cast<int>(col) + 1);
    out.value = operator_apply(f, out.witness_args, *out.witness_input);
    if (out.value->is_zero()) throw std::logic_error("operator witness from matrices evaluates to zero");
  }
  out.matrix = std::move(md);
  return out;
}

}  // namespace detail

/// Sweeps all basis tuples (a_used..., c) of the class with L-degree <= bound, by
/// increasing total degree, up to `limit` tuples. Letters of f that do not occur
/// get the zero derivation.
inline OperatorVerdict exhaustive_operator_check(const AssocPoly& f, int n, Subalgebra cls, int degree_bound,
                                                 std::size_t limit) {
  if (n > kMaxFastVars) throw std::invalid_argument("exhaustive sweep supports n <= 8");
  OperatorVerdict out;
  out.mode = CheckMode::sample;
  auto basis = basis_of_class(n, cls, degree_bound);
  auto buckets = detail::degree_buckets(basis);
  std::vector<MonomialTerm> fast;
  for (const auto& b : basis) fast.push_back(to_monomial_term(b));
  detail::FastOperator op(f, n);
  int m = f.max_letter();
  auto used = f.used_letters();
  std::vector<MonomialTerm> args(static_cast<std::size_t>(m));
  std::optional<std::vector<int>> hit;
  std::size_t visited = detail::for_each_tuple_by_degree(
      buckets, static_cast<int>(used.size()) + 1, limit, [&](const std::vector<int>& items) {
        for (std::size_t u = 0; u < used.size(); ++u)
          args[static_cast<std::size_t>(used[u] - 1)] = fast[static_cast<std::size_t>(items[u])];
        if (op.nonzero(args, fast[static_cast<std::size_t>(items.back())])) {
          hit = items;
          return false;
        }
        return true;
      });
  out.exhaustive_checked = visited;
  if (hit) {
    out.identity = false;
    out.witness_args.assign(static_cast<std::size_t>(m), Derivation(n));
    for (std::size_t u = 0; u < used.size(); ++u)
      out.witness_args[static_cast<std::size_t>(used[u] - 1)] = basis[static_cast<std::size_t>((*hit)[u])];
    out.witness_input = basis[static_cast<std::size_t>(hit->back())];
    out.value = operator_apply(f, out.witness_args, *out.witness_input);
    if (out.value->is_zero()) throw std::logic_error("fast-path witness does not reproduce");
  } else {
    std::size_t total = 1;
    for (std::size_t k = 0; k <= used.size(); ++k)
      total = total > SIZE_MAX / std::max<std::size_t>(1, basis.size()) ? SIZE_MAX : total * basis.size();
    out.exhaustive_complete = visited == total;
  }
  return out;
}

/// Right operator identity check. Decide mode uses generic matrices through the
/// Jacobian representation; sample mode sweeps basis tuples, then random tuples.
inline OperatorVerdict right_operator_check(const AssocPoly& f, int n, Subalgebra cls, CheckMode mode,
                                            const OperatorCheckParams& params = {}) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (mode == CheckMode::decide) return detail::decide_operator(f, n, cls);

  OperatorVerdict out = exhaustive_operator_check(f, n, cls, params.degree_bound, params.exhaustive_limit);
  if (!out.identity || params.samples == 0) return out;

  int m = f.max_letter();
  SampleShape shape{params.degree_bound, params.terms_per_sample, 3};
  Rng rng(params.seed);
  std::vector<std::vector<Derivation>> tuples;
  for (std::size_t k = 0; k < params.samples; ++k) {
    std::vector<Derivation> t;
    for (int i = 0; i <= m; ++i) t.push_back(random_element(n, cls, shape, rng));
    tuples.push_back(std::move(t));
  }
  std::vector<std::optional<Derivation>> values(tuples.size());
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t k = begin; k < tuples.size(); k += step) {
      std::span<const Derivation> args(tuples[k].data(), static_cast<std::size_t>(m));
      Derivation v = operator_apply(f, args, tuples[k].back());
      if (!v.is_zero()) values[k] = std::move(v);
    }
  };
  unsigned jobs = std::max(1u, params.jobs);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j, jobs);
    for (auto& t : pool) t.join();
  }
  out.samples_checked = tuples.size();
  for (std::size_t k = 0; k < tuples.size(); ++k)
    if (values[k]) {
      out.identity = false;
      out.samples_checked = k + 1;
      out.witness_args.assign(tuples[k].begin(), tuples[k].begin() + m);
      out.witness_input = tuples[k].back();
      out.value = values[k];
      break;
    }
  return out;
}

}  // namespace lsw
