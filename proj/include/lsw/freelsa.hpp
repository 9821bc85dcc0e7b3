#pragma once

// The free left-symmetric algebra LS<y1, y2, ...>: nonassociative words, the
// length-then-recursive word order, reduced words and the rewriting
//   r(st) -> s(rt) + (rs)t - (sr)t      (applied where r < s)
// that brings any combination of words into the reduced-word basis.

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lsw/detail/scanner.hpp"
#include "lsw/rational.hpp"

namespace lsw {

/// A nonassociative word, stored in prefix order: 0 marks a product node, k >= 1
/// the letter y_k. Immutable value type.
class Word {
 public:
  static Word leaf(int letter) {
    if (letter < 1) throw std::invalid_argument("letters are y1, y2, ...");
    Word w;
    w.code_.push_back(letter);
    return w;
  }

  static Word product(const Word& u, const Word& v) {
    Word w;
    w.code_.reserve(u.code_.size() + v.code_.size() + 1);
    w.code_.push_back(0);
    w.code_.insert(w.code_.end(), u.code_.begin(), u.code_.end());
    w.code_.insert(w.code_.end(), v.code_.begin(), v.code_.end());
    return w;
  }

  /// Rebuilds a word from prefix code; throws on malformed input.
  static Word from_code(std::vector<int> code) {
    if (code.empty() || extent(code, 0) != code.size()) throw std::invalid_argument("malformed word code");
    for (int c : code)
      if (c < 0) throw std::invalid_argument("malformed word code");
    Word w;
    w.code_ = std::move(code);
    return w;
  }

  bool is_leaf() const noexcept { return code_.size() == 1; }
  int letter() const {
    if (!is_leaf()) throw std::logic_error("not a single letter");
    return code_[0];
  }

  /// d(w), the number of letters.
  int length() const noexcept { return static_cast<int>((code_.size() + 1) / 2); }

  Word left() const { return sub(1); }
  Word right() const { return sub(1 + extent(code_, 1)); }

  /// [w]: the letters read left to right.
  std::vector<int> letters() const {
    std::vector<int> out;
    for (int c : code_)
      if (c != 0) out.push_back(c);
    return out;
  }

  int max_letter() const {
    int m = 0;
    for (int c : code_) m = std::max(m, c);
    return m;
  }

  /// The rightmost letter (r(w) in the lambda construction).
  int last_letter() const { return code_.back(); }

  std::span<const int> code() const noexcept { return code_; }

  friend bool operator==(const Word&, const Word&) = default;

  /// Size of the subtree that starts at `pos` in a prefix code.
  static std::size_t extent(std::span<const int> code, std::size_t pos) {
    std::size_t need = 1, i = pos;
    while (need > 0) {
      if (i >= code.size()) return code.size() + 1;  // malformed
      need += code[i] == 0 ? 1 : 0;
      need -= code[i] == 0 ? 0 : 1;
      ++i;
    }
    return i - pos;
  }

 private:
  Word sub(std::size_t pos) const {
    if (is_leaf()) throw std::logic_error("a letter has no factors");
    Word w;
    auto len = extent(code_, pos);
    w.code_.assign(code_.begin() + static_cast<std::ptrdiff_t>(pos),
                   code_.begin() + static_cast<std::ptrdiff_t>(pos + len));
    return w;
  }

  std::vector<int> code_;
};

namespace detail {

inline std::strong_ordering compare_code(std::span<const int> u, std::span<const int> v) {
  if (u.size() != v.size()) return u.size() <=> v.size();  // length rule
  if (u.size() == 1) return u[0] <=> v[0];
  std::size_t lu = Word::extent(u, 1), lv = Word::extent(v, 1);
  if (auto c = compare_code(u.subspan(1, lu), v.subspan(1, lv)); c != 0) return c;
  return compare_code(u.subspan(1 + lu), v.subspan(1 + lv));
}

}  // namespace detail

/// u < v if d(u) < d(v); equal lengths compare letters, or (u1,u2) vs (v1,v2)
/// lexicographically.
inline std::strong_ordering compare_words(const Word& u, const Word& v) {
  return detail::compare_code(u.code(), v.code());
}

struct WordLess {
  bool operator()(const Word& a, const Word& b) const { return compare_words(a, b) < 0; }
};

/// Formal linear combination of arbitrary words (not necessarily reduced).
using Combination = std::map<Word, Rational, WordLess>;

inline void add_to(Combination& c, const Word& w, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = c.try_emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) c.erase(it);
  }
}

inline Combination operator+(Combination a, const Combination& b) {
  for (const auto& [w, c] : b) add_to(a, w, c);
  return a;
}

inline Combination operator-(Combination a, const Combination& b) {
  for (const auto& [w, c] : b) add_to(a, w, -c);
  return a;
}

inline Combination operator*(const Rational& s, Combination a) {
  if (s == 0) return {};
  for (auto& [w, c] : a) c *= s;
  return a;
}

inline Combination single(const Word& w, const Rational& c = 1) {
  Combination r;
  add_to(r, w, c);
  return r;
}

/// Product of combinations, extended bilinearly on raw words.
inline Combination multiply(const Combination& a, const Combination& b) {
  Combination r;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) add_to(r, Word::product(u, v), cu * cv);
  return r;
}

namespace detail {

// Offsets (in prefix code) of nodes r(st) with r < s, in preorder.
inline std::vector<std::size_t> violations(std::span<const int> code) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < code.size(); ++p) {
    if (code[p] != 0) continue;
    std::size_t l = p + 1, lext = Word::extent(code, l);
    std::size_t r = l + lext;
    if (code[r] != 0) continue;
    std::size_t s = r + 1, sext = Word::extent(code, s);
    if (compare_code(code.subspan(l, lext), code.subspan(s, sext)) < 0) out.push_back(p);
  }
  return out;
}

inline bool contains_node(std::span<const int> code, std::size_t outer, std::size_t inner) {
  return inner > outer && inner < outer + Word::extent(code, outer);
}

}  // namespace detail

/// No subword r(st) with r < s.
inline bool is_reduced(const Word& w) { return detail::violations(w.code()).empty(); }

enum class RewriteStrategy : std::uint8_t {
  /// Smallest unreduced word first, first violating node in preorder.
  smallest_leftmost,
  /// Smallest unreduced word first, leftmost violating node with no violating node below it.
  leftmost_innermost,
  /// Largest unreduced word first, last violating node in preorder that has no
  /// violating ancestor.
  largest_rightmost_outermost,
};

namespace detail {

inline std::size_t pick_node(std::span<const int> code, RewriteStrategy strategy) {
  auto v = violations(code);
  switch (strategy) {
    case RewriteStrategy::smallest_leftmost: return v.front();
    case RewriteStrategy::leftmost_innermost:
      for (std::size_t a : v) {
        bool inner = std::none_of(v.begin(), v.end(), [&](std::size_t b) { return contains_node(code, a, b); });
        if (inner) return a;
      }
      break;
    case RewriteStrategy::largest_rightmost_outermost:
      for (auto it = v.rbegin(); it != v.rend(); ++it) {
        bool outer = std::none_of(v.begin(), v.end(), [&](std::size_t b) { return contains_node(code, b, *it); });
        if (outer) return *it;
      }
      break;
  }
  return v.front();
}

// Rewrites the node at `p` = r(st) and returns the three words with their signs.
inline std::array<std::pair<Word, int>, 3> rewrite_at(const Word& w, std::size_t p) {
  auto code = w.code();
  std::size_t l = p + 1, lext = Word::extent(code, l);
  std::size_t r = l + lext;
  std::size_t s = r + 1, sext = Word::extent(code, s);
  std::size_t t = s + sext, text = Word::extent(code, t);
  std::size_t end = t + text;
  auto seg = [&](std::size_t a, std::size_t len) { return std::vector<int>(code.begin() + static_cast<std::ptrdiff_t>(a), code.begin() + static_cast<std::ptrdiff_t>(a + len)); };
  auto R = seg(l, lext), S = seg(s, sext), T = seg(t, text);
  auto build = [&](const std::vector<int>& mid) {
    std::vector<int> out(code.begin(), code.begin() + static_cast<std::ptrdiff_t>(p));
    out.insert(out.end(), mid.begin(), mid.end());
    out.insert(out.end(), code.begin() + static_cast<std::ptrdiff_t>(end), code.end());
    return Word::from_code(std::move(out));
  };
  auto node = [](std::initializer_list<const std::vector<int>*> parts) {
    std::vector<int> out{0};
    for (auto* q : parts) out.insert(out.end(), q->begin(), q->end());
    return out;
  };
  std::vector<int> rt = node({&R, &T});
  std::vector<int> s_rt = node({&S, &rt});
  std::vector<int> rs = node({&R, &S});
  std::vector<int> rs_t = node({&rs, &T});
  std::vector<int> sr = node({&S, &R});
  std::vector<int> sr_t = node({&sr, &T});
  return {{{build(s_rt), 1}, {build(rs_t), 1}, {build(sr_t), -1}}};
}

}  // namespace detail

/// Element of LS<Y> in reduced-word normal form. Keys are reduced, ascending.
class LSElement {
 public:
  LSElement() = default;

  const Combination& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Rational coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  friend bool operator==(const LSElement&, const LSElement&) = default;

  /// Wraps an already reduced combination; throws if a key is not reduced.
  static LSElement from_reduced(Combination c) {
    for (const auto& [w, coeff] : c)
      if (!is_reduced(w)) throw std::invalid_argument("combination contains an unreduced word");
    LSElement e;
    e.terms_ = std::move(c);
    return e;
  }

 private:
  Combination terms_;
};

/// Statistics of a normal-form run, for tests of termination and monotonicity.
struct RewriteStats {
  std::size_t steps = 0;
};

/// Rewrites g into the reduced basis. Every step replaces a word by three strictly
/// larger words of the same multidegree; this is checked and a violation throws
/// std::logic_error.
inline LSElement normal_form(const Combination& g, RewriteStrategy strategy = RewriteStrategy::smallest_leftmost,
                             RewriteStats* stats = nullptr) {
  Combination pending = g;
  Combination done;
  std::size_t steps = 0;
  auto step = [&](const Word& w, const Rational& c) {
    auto p = detail::pick_node(w.code(), strategy);
    for (auto& [nw, sign] : detail::rewrite_at(w, p)) {
      if (compare_words(nw, w) <= 0) throw std::logic_error("rewrite did not increase the word");
      add_to(pending, nw, c * sign);
    }
    ++steps;
  };
  if (strategy == RewriteStrategy::largest_rightmost_outermost) {
    for (;;) {
      auto it = std::find_if(pending.rbegin(), pending.rend(), [](const auto& kv) { return !is_reduced(kv.first); });
      if (it == pending.rend()) break;
      Word w = it->first;
      Rational c = it->second;
      pending.erase(w);
      step(w, c);
    }
    done = std::move(pending);
  } else {
    // Words leave `pending` in increasing order; rewrites only create larger
    // words, so a word moved to `done` is never touched again.
    while (!pending.empty()) {
      auto it = pending.begin();
      Word w = it->first;
      Rational c = it->second;
      pending.erase(it);
      if (is_reduced(w))
        done.emplace(std::move(w), std::move(c));
      else
        step(w, c);
    }
  }
  if (stats) stats->steps = steps;
  return LSElement::from_reduced(std::move(done));
}

inline LSElement normal_form(const Word& w) { return normal_form(single(w)); }

inline Combination as_combination(const LSElement& e) { return e.terms(); }

inline LSElement operator+(const LSElement& a, const LSElement& b) {
  return LSElement::from_reduced(a.terms() + b.terms());
}

inline LSElement operator-(const LSElement& a, const LSElement& b) {
  return LSElement::from_reduced(a.terms() - b.terms());
}

inline LSElement operator*(const Rational& s, const LSElement& a) {
  return LSElement::from_reduced(s * a.terms());
}

/// Product in LS<Y>, renormalized.
inline LSElement multiply(const LSElement& a, const LSElement& b) {
  return normal_form(multiply(a.terms(), b.terms()));
}

/// The smallest word of g.
inline Word lowest_word(const LSElement& g) {
  if (g.is_zero()) throw std::domain_error("the zero element has no lowest word");
  return g.terms().begin()->first;
}

/// w = L_{w1} L_{w2} ... L_{wm} y_i with w1 >= ... >= wm.
struct LForm {
  std::vector<Word> factors;
  int tail = 0;

  friend bool operator==(const LForm&, const LForm&) = default;
};

inline LForm l_form(const Word& w) {
  if (!is_reduced(w)) throw std::invalid_argument("l_form needs a reduced word");
  LForm f;
  Word cur = w;
  while (!cur.is_leaf()) {
    f.factors.push_back(cur.left());
    cur = cur.right();
  }
  f.tail = cur.letter();
  return f;
}

inline Word rebuild(const LForm& f) {
  Word w = Word::leaf(f.tail);
  for (auto it = f.factors.rbegin(); it != f.factors.rend(); ++it) w = Word::product(*it, w);
  return w;
}

/// Every letter occurs at most once.
inline bool is_multilinear(const Word& w) {
  auto ls = w.letters();
  std::sort(ls.begin(), ls.end());
  return std::adjacent_find(ls.begin(), ls.end()) == ls.end();
}

/// [w] = y_{i1} ... y_{im} with i1, ..., i_{m-1} > i_m.
inline bool is_s_word(const Word& w) {
  auto ls = w.letters();
  for (std::size_t k = 0; k + 1 < ls.size(); ++k)
    if (ls[k] <= ls.back()) return false;
  return true;
}

/// Every subword (subtree) is an s-word.
inline bool is_special(const Word& w) {
  if (!is_s_word(w)) return false;
  if (w.is_leaf()) return true;
  return is_special(w.left()) && is_special(w.right());
}

/// Letter-wise substitution y_i -> y_{sigma(i)}; sigma is indexed from 1 (sigma[0] unused).
inline Word relabel(const Word& w, std::span<const int> sigma) {
  std::vector<int> code(w.code().begin(), w.code().end());
  for (int& c : code) {
    if (c == 0) continue;
    if (c >= static_cast<int>(sigma.size()) || sigma[static_cast<std::size_t>(c)] < 1)
      throw std::invalid_argument("relabeling undefined on y" + std::to_string(c));
    c = sigma[static_cast<std::size_t>(c)];
  }
  return Word::from_code(std::move(code));
}

inline Combination relabel(const Combination& g, std::span<const int> sigma) {
  Combination r;
  for (const auto& [w, c] : g) add_to(r, relabel(w, sigma), c);
  return r;
}

/// Relabeling followed by normal_form.
inline LSElement relabel(const LSElement& g, std::span<const int> sigma) {
  return normal_form(relabel(g.terms(), sigma));
}

/// Reduced words using each of the letters in `letters` exactly once, ascending.
inline std::vector<Word> reduced_words_on(const std::vector<int>& letters) {
  std::vector<Word> out;
  std::size_t k = letters.size();
  if (k == 0) return out;
  if (k == 1) {
    out.push_back(Word::leaf(letters[0]));
    return out;
  }
  // w = u v over a split of the letter set into nonempty parts; if v = v1 v2 we need u >= v1.
  for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
    std::vector<int> a, b;
    for (std::size_t i = 0; i < k; ++i) ((mask >> i) & 1u ? a : b).push_back(letters[i]);
    auto us = reduced_words_on(a);
    auto vs = reduced_words_on(b);
    for (const auto& u : us)
      for (const auto& v : vs) {
        if (!v.is_leaf() && compare_words(u, v.left()) < 0) continue;
        out.push_back(Word::product(u, v));
      }
  }
  std::sort(out.begin(), out.end(), WordLess{});
  return out;
}

/// All reduced words in which each of y1..yd occurs exactly once.
inline std::vector<Word> enumerate_multilinear_reduced(int d) {
  if (d < 1) throw std::invalid_argument("degree must be positive");
  std::vector<int> letters(static_cast<std::size_t>(d));
  std::iota(letters.begin(), letters.end(), 1);
  return reduced_words_on(letters);
}

/// Degree of each letter in w (index = letter).
inline std::vector<int> multidegree(const Word& w) {
  std::vector<int> deg(static_cast<std::size_t>(w.max_letter()) + 1, 0);
  for (int l : w.letters()) ++deg[static_cast<std::size_t>(l)];
  return deg;
}

/// Full linearization. Letter y_i of degree d_i is replaced by d_i fresh letters
/// (letters numbered consecutively, in increasing order of i) summed over all
/// assignments of the copies to its occurrences. Requires g homogeneous in every letter.
inline LSElement multilinearize(const Combination& g) {
  if (g.empty()) return {};
  std::vector<int> deg = multidegree(g.begin()->first);
  for (const auto& [w, c] : g) {
    auto d = multidegree(w);
    d.resize(std::max(d.size(), deg.size()), 0);
    deg.resize(d.size(), 0);
    if (d != deg) throw std::invalid_argument("multilinearize needs an element homogeneous in each letter");
  }
  std::vector<int> first_copy(deg.size(), 0);
  int next = 1;
  for (std::size_t i = 1; i < deg.size(); ++i) {
    first_copy[i] = next;
    next += deg[i];
  }
  Combination out;
  for (const auto& [w, c] : g) {
    std::vector<int> code(w.code().begin(), w.code().end());
    // positions of each letter's occurrences
    std::vector<std::vector<std::size_t>> occ(deg.size());
    for (std::size_t p = 0; p < code.size(); ++p)
      if (code[p] != 0) occ[static_cast<std::size_t>(code[p])].push_back(p);
    // iterate over the product of permutations of copies, letter by letter
    std::vector<std::vector<int>> perms(deg.size());
    for (std::size_t i = 1; i < deg.size(); ++i) {
      perms[i].resize(static_cast<std::size_t>(deg[i]));
      std::iota(perms[i].begin(), perms[i].end(), first_copy[i]);
    }
    auto rec = [&](auto&& self, std::size_t letter) -> void {
      if (letter == deg.size()) {
        add_to(out, Word::from_code(code), c);
        return;
      }
      if (deg[letter] == 0) return self(self, letter + 1);
      auto& perm = perms[letter];
      std::sort(perm.begin(), perm.end());
      do {
        for (std::size_t k = 0; k < perm.size(); ++k) code[occ[letter][k]] = perm[k];
        self(self, letter + 1);
      } while (std::next_permutation(perm.begin(), perm.end()));
    };
    rec(rec, 1);
  }
  return normal_form(out);
}

inline LSElement multilinearize(const LSElement& g) { return multilinearize(g.terms()); }

// --- evaluation in a left-symmetric target --------------------------------

/// A target algebra for substitution: bilinear product, addition, scaling and a zero test.
template <class A>
concept LeftSymmetricAlgebra = requires(const A& alg, const typename A::element_type& x, const Rational& c) {
  { alg.zero() } -> std::convertible_to<typename A::element_type>;
  { alg.multiply(x, x) } -> std::convertible_to<typename A::element_type>;
  { alg.add(x, x) } -> std::convertible_to<typename A::element_type>;
  { alg.scale(x, c) } -> std::convertible_to<typename A::element_type>;
  { alg.is_zero(x) } -> std::convertible_to<bool>;
};

namespace detail {

template <class A>
typename A::element_type evaluate_code(std::span<const int> code, const A& alg,
                                       std::span<const typename A::element_type> assignment) {
  if (code.size() == 1) {
    int letter = code[0];
    if (letter > static_cast<int>(assignment.size()))
      throw std::invalid_argument("no value assigned to y" + std::to_string(letter));
    return assignment[static_cast<std::size_t>(letter - 1)];
  }
  std::size_t l = Word::extent(code, 1);
  auto u = evaluate_code(code.subspan(1, l), alg, assignment);
  if (alg.is_zero(u)) return alg.zero();
  auto v = evaluate_code(code.subspan(1 + l), alg, assignment);
  return alg.multiply(u, v);
}

}  // namespace detail

/// Value of a word under y_k -> assignment[k-1].
template <LeftSymmetricAlgebra A>
typename A::element_type evaluate(const Word& w, const A& alg,
                                  std::span<const typename A::element_type> assignment) {
  return detail::evaluate_code(w.code(), alg, assignment);
}

/// Substitution homomorphism on raw combinations.
template <LeftSymmetricAlgebra A>
typename A::element_type evaluate(const Combination& g, const A& alg,
                                  std::span<const typename A::element_type> assignment) {
  auto total = alg.zero();
  for (const auto& [w, c] : g) total = alg.add(total, alg.scale(evaluate(w, alg, assignment), c));
  return total;
}

template <LeftSymmetricAlgebra A>
typename A::element_type evaluate(const LSElement& g, const A& alg,
                                  std::span<const typename A::element_type> assignment) {
  return evaluate(g.terms(), alg, assignment);
}

/// LS<Y> itself as a target (products renormalized).
struct FreeAlgebra {
  using element_type = LSElement;
  LSElement zero() const { return {}; }
  LSElement multiply(const LSElement& a, const LSElement& b) const { return lsw::multiply(a, b); }
  LSElement add(const LSElement& a, const LSElement& b) const { return a + b; }
  LSElement scale(const LSElement& a, const Rational& c) const { return c * a; }
  bool is_zero(const LSElement& a) const { return a.is_zero(); }
};

// --- text ------------------------------------------------------------------

/// `y3` or `(u*v)`.
inline std::string to_string(const Word& w) {
  if (w.is_leaf()) return "y" + std::to_string(w.letter());
  return "(" + to_string(w.left()) + "*" + to_string(w.right()) + ")";
}

/// Terms in increasing word order with explicit coefficients:
/// `1 (y2*(y1*y3)) + 1 ((y1*y2)*y3) - 1 ((y2*y1)*y3)`; `0` for zero.
inline std::string to_string(const Combination& g) {
  if (g.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : g) {
    bool neg = sgn(c) < 0;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    out += (neg ? Rational(-c) : c).get_str() + " " + to_string(w);
  }
  return out;
}

inline std::string to_string(const LSElement& g) { return to_string(g.terms()); }

namespace detail {

inline Word parse_word_at(Scanner& sc) {
  if (sc.consume('(')) {
    Word u = parse_word_at(sc);
    sc.expect('*');
    Word v = parse_word_at(sc);
    sc.expect(')');
    return Word::product(u, v);
  }
  sc.skip_ws();
  std::size_t at = sc.pos();
  if (sc.peek() != 'y') sc.fail("expected 'y<k>' or '('");
  std::string_view id = sc.identifier();
  int k = 0;
  for (char ch : id.substr(1)) {
    if (ch < '0' || ch > '9') Scanner::fail_at("malformed letter", at);
    k = k * 10 + (ch - '0');
  }
  if (id.size() < 2 || k < 1) Scanner::fail_at("malformed letter '" + std::string(id) + "'", at);
  return Word::leaf(k);
}

}  // namespace detail

inline Word parse_word(std::string_view text) {
  detail::Scanner sc(text);
  Word w = detail::parse_word_at(sc);
  sc.expect_end();
  return w;
}

/// Rational-weighted sum of words; a missing coefficient means 1. `0` is the empty sum.
inline Combination parse_combination(std::string_view text) {
  detail::Scanner sc(text);
  Combination g;
  if (sc.at_end()) sc.fail("empty element");
  bool first = true;
  while (!sc.at_end()) {
    Rational sign = 1;
    if (sc.consume('-'))
      sign = -1;
    else if (!sc.consume('+') && !first)
      sc.fail("expected '+' or '-'");
    Rational c = 1;
    if (sc.peek_digit()) {
      c = sc.number();
      if (first && c == 0 && sc.at_end()) return g;
    }
    first = false;
    Word w = detail::parse_word_at(sc);
    add_to(g, w, sign * c);
  }
  return g;
}

}  // namespace lsw
