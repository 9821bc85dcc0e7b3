#include <gtest/gtest.h>

#include <numeric>

#include "generators.hpp"
#include "lsw/freelsa.hpp"
#include "lsw/witt.hpp"
#include "oracles.hpp"

using namespace lsw;

namespace {

Word W(const std::string& s) { return parse_word(s); }
Combination C(const std::string& s) { return parse_combination(s); }

Word relabel_with(const Word& w, const std::map<int, int>& sigma) {
  std::vector<int> s(static_cast<std::size_t>(w.max_letter()) + 1, 0);
  for (const auto& [a, b] : sigma)
    if (a < static_cast<int>(s.size())) s[static_cast<std::size_t>(a)] = b;
  return relabel(w, s);
}

// strictly decreasing values along the letter sequence, drawn from 1..top
std::map<int, int> decreasing_on(const std::vector<int>& letters, int top, gen::Rng& rng) {
  std::vector<int> pool(static_cast<std::size_t>(top));
  std::iota(pool.begin(), pool.end(), 1);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(letters.size());
  std::sort(pool.rbegin(), pool.rend());
  std::map<int, int> sigma;
  for (std::size_t k = 0; k < letters.size(); ++k) sigma[letters[k]] = pool[k];
  return sigma;
}

oracle::TreeP tree_of(const Word& w) {
  if (w.is_leaf()) return oracle::leaf(w.letter());
  return oracle::node(tree_of(w.left()), tree_of(w.right()));
}

Word random_reduced(gen::Rng& rng, int len, int alphabet) {
  for (;;) {
    Word w = gen::word(rng, len, alphabet);
    if (oracle::reduced(tree_of(w))) return w;
  }
}

}  // namespace

TEST(FreeLSA, CompareExamples) {
  EXPECT_TRUE(compare_words(W("y3"), W("(y1*y2)")) < 0);
  EXPECT_TRUE(compare_words(W("(y1*y2)"), W("(y2*y1)")) < 0);
  EXPECT_TRUE(compare_words(W("((y1*y2)*y3)"), W("(y1*(y2*y3))")) > 0);
}

TEST(FreeLSA, CompareMatchesOracle) {
  gen::Rng rng(41);
  for (int k = 0; k < 2000; ++k) {
    auto a = oracle::random_tree(gen::uniform(rng, 1, 5), 3, rng);
    auto b = oracle::random_tree(gen::uniform(rng, 1, 5), 3, rng);
    auto c = compare_words(oracle::to_word(a), oracle::to_word(b));
    int o = oracle::cmp(a, b);
    ASSERT_EQ(c < 0, o < 0);
    ASSERT_EQ(c == 0, o == 0);
  }
}

TEST(FreeLSA, CompareIsStrictTotalOrder) {
  gen::Rng rng(42);
  for (int k = 0; k < 1000; ++k) {
    Word a = gen::word(rng, gen::uniform(rng, 1, 4), 2), b = gen::word(rng, gen::uniform(rng, 1, 4), 2),
         c = gen::word(rng, gen::uniform(rng, 1, 4), 2);
    auto ab = compare_words(a, b), ba = compare_words(b, a);
    ASSERT_EQ(ab < 0, ba > 0);
    ASSERT_EQ(ab == 0, a == b);
    if (ab < 0 && compare_words(b, c) < 0) ASSERT_TRUE(compare_words(a, c) < 0);
  }
}

TEST(FreeLSA, IsReducedExamples) {
  EXPECT_FALSE(is_reduced(W("(y1*(y2*y3))")));
  EXPECT_TRUE(is_reduced(W("((y1*y2)*y3)")));
  EXPECT_TRUE(is_reduced(W("(y2*(y1*y3))")));
}

TEST(FreeLSA, IsReducedMatchesOracle) {
  gen::Rng rng(43);
  for (int k = 0; k < 2000; ++k) {
    auto t = oracle::random_tree(gen::uniform(rng, 1, 6), 3, rng);
    ASSERT_EQ(is_reduced(oracle::to_word(t)), oracle::reduced(t)) << oracle::show(t);
  }
}

TEST(FreeLSA, NormalFormExamples) {
  auto nf = normal_form(W("(y1*(y2*y3))"));
  EXPECT_EQ(nf.terms(), C("(y2*(y1*y3)) + ((y1*y2)*y3) - ((y2*y1)*y3)"));
  EXPECT_EQ(normal_form(W("((y1*y2)*y3)")).terms(), C("((y1*y2)*y3)"));
  auto ls = C("((y1*y2)*y3) - (y1*(y2*y3)) - ((y2*y1)*y3) + (y2*(y1*y3))");
  EXPECT_TRUE(normal_form(ls).is_zero());
}

TEST(FreeLSA, RewriteExampleHoldsInL2) {
  gen::Rng rng(44);
  auto lhs = C("(y1*(y2*y3))");
  auto rhs = C("(y2*(y1*y3)) + ((y1*y2)*y3) - ((y2*y1)*y3)");
  WittAlgebra alg{2, false};
  for (int k = 0; k < 100; ++k) {
    std::vector<Derivation> a{gen::derivation(rng, 2), gen::derivation(rng, 2), gen::derivation(rng, 2)};
    ASSERT_EQ(evaluate(lhs, alg, std::span<const Derivation>(a)), evaluate(rhs, alg, std::span<const Derivation>(a)));
  }
}

TEST(FreeLSA, LowestWord) {
  EXPECT_EQ(lowest_word(normal_form(C("(y2*(y1*y3)) + ((y1*y2)*y3)"))), W("(y2*(y1*y3))"));
  EXPECT_EQ(lowest_word(normal_form(W("((y3*y1)*y2)"))), W("((y3*y1)*y2)"));
  EXPECT_EQ(lowest_word(normal_form(C("y1 + (y1*y2)"))), W("y1"));
  EXPECT_THROW(lowest_word(LSElement{}), std::domain_error);
}

TEST(FreeLSA, LForm) {
  auto f = l_form(W("(y3*(y2*y1))"));
  EXPECT_EQ(f.factors, (std::vector<Word>{W("y3"), W("y2")}));
  EXPECT_EQ(f.tail, 1);
  auto g = l_form(W("y1"));
  EXPECT_TRUE(g.factors.empty());
  EXPECT_EQ(g.tail, 1);
  auto h = l_form(W("((y3*y2)*y1)"));
  EXPECT_EQ(h.factors, (std::vector<Word>{W("(y3*y2)")}));
  EXPECT_EQ(h.tail, 1);
  EXPECT_THROW(l_form(W("(y1*(y2*y3))")), std::invalid_argument);
}

TEST(FreeLSA, LFormRoundTripAndOrder) {
  for (int d = 1; d <= 5; ++d)
    for (const auto& w : enumerate_multilinear_reduced(d)) {
      auto f = l_form(w);
      ASSERT_EQ(rebuild(f), w);
      for (std::size_t k = 0; k + 1 < f.factors.size(); ++k) ASSERT_TRUE(compare_words(f.factors[k], f.factors[k + 1]) >= 0);
    }
  gen::Rng rng(45);
  for (int k = 0; k < 500; ++k) {
    Word w = random_reduced(rng, gen::uniform(rng, 1, 5), 2);
    ASSERT_EQ(rebuild(l_form(w)), w);
  }
}

TEST(FreeLSA, WordPredicates) {
  EXPECT_TRUE(is_multilinear(W("((y3*y2)*y1)")));
  EXPECT_TRUE(is_special(W("((y3*y2)*y1)")));
  EXPECT_TRUE(is_multilinear(W("((y2*y3)*y1)")));
  EXPECT_FALSE(is_special(W("((y2*y3)*y1)")));
  EXPECT_FALSE(is_multilinear(W("(y1*y1)")));
  EXPECT_TRUE(is_s_word(W("((y2*y3)*y1)")));
}

TEST(FreeLSA, Relabel) {
  std::vector<int> sigma{0, 3, 2, 1};
  EXPECT_EQ(relabel(W("((y1*y2)*y3)"), sigma), W("((y3*y2)*y1)"));
  EXPECT_THROW(relabel(W("y4"), sigma), std::invalid_argument);
}

TEST(FreeLSA, DecreasingRelabelKeepsOrder) {
  gen::Rng rng(46);
  int checked = 0;
  while (checked < 1000) {
    int m = gen::uniform(rng, 1, 4), r = gen::uniform(rng, 1, 4);
    auto uv = gen::multilinear_word(rng, m + r);
    std::vector<int> letters = uv.letters();
    // split the shuffled letters into two words u, v on disjoint letters
    auto build = [&](std::vector<int> ls) {
      std::vector<Word> parts;
      for (int l : ls) parts.push_back(Word::leaf(l));
      while (parts.size() > 1) {
        std::size_t k = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(parts.size()) - 2));
        parts[k] = Word::product(parts[k], parts[k + 1]);
        parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(k) + 1);
      }
      return parts[0];
    };
    Word u = build({letters.begin(), letters.begin() + m});
    Word v = build({letters.begin() + m, letters.end()});
    if (compare_words(u, v) < 0) std::swap(u, v);
    auto seq = u.letters();
    auto vl = v.letters();
    seq.insert(seq.end(), vl.begin(), vl.end());
    auto sigma = decreasing_on(seq, 10, rng);
    ASSERT_GT(oracle::cmp(tree_of(relabel_with(u, sigma)), tree_of(relabel_with(v, sigma))), 0);
    ++checked;
  }
}

TEST(FreeLSA, DecreasingRelabelKeepsReduced) {
  gen::Rng rng(47);
  for (int k = 0; k < 1000; ++k) {
    int d = gen::uniform(rng, 1, 6);
    Word w = gen::multilinear_word(rng, d);
    while (!oracle::reduced(tree_of(w))) w = gen::multilinear_word(rng, d);
    auto sigma = decreasing_on(w.letters(), 9, rng);
    ASSERT_TRUE(oracle::reduced(tree_of(relabel_with(w, sigma)))) << to_string(w);
  }
}

TEST(FreeLSA, EnumerateCounts) {
  std::vector<std::size_t> expected{1, 2, 9, 64};
  for (int d = 1; d <= 4; ++d) {
    auto ws = enumerate_multilinear_reduced(d);
    ASSERT_EQ(ws.size(), expected[static_cast<std::size_t>(d - 1)]);
    ASSERT_EQ(ws.size(), oracle::count_reduced_multilinear(d));
    for (const auto& w : ws) ASSERT_TRUE(is_reduced(w) && is_multilinear(w) && w.length() == d);
  }
  EXPECT_EQ(enumerate_multilinear_reduced(5).size(), 625u);
  EXPECT_EQ(enumerate_multilinear_reduced(5).size(), oracle::count_reduced_multilinear(5));
  auto two = enumerate_multilinear_reduced(2);
  EXPECT_EQ(two, (std::vector<Word>{W("(y1*y2)"), W("(y2*y1)")}));
}

TEST(FreeLSA, NormalFormIdempotentAndStrategyFree) {
  gen::Rng rng(48);
  for (int k = 0; k < 500; ++k) {
    auto g = gen::combination(rng, 3, 6, 3);
    auto a = normal_form(g, RewriteStrategy::smallest_leftmost);
    auto b = normal_form(g, RewriteStrategy::leftmost_innermost);
    auto c = normal_form(g, RewriteStrategy::largest_rightmost_outermost);
    ASSERT_EQ(a, b) << to_string(g);
    ASSERT_EQ(a, c) << to_string(g);
    ASSERT_EQ(normal_form(a.terms()), a);
    for (const auto& [w, coeff] : a.terms()) ASSERT_TRUE(is_reduced(w));
  }
}

TEST(FreeLSA, NormalFormCountsSteps) {
  RewriteStats stats;
  normal_form(C("(y1*(y2*y3))"), RewriteStrategy::smallest_leftmost, &stats);
  EXPECT_EQ(stats.steps, 1u);
  normal_form(C("((y1*y2)*y3)"), RewriteStrategy::smallest_leftmost, &stats);
  EXPECT_EQ(stats.steps, 0u);
}

TEST(FreeLSA, NormalFormPreservesEvaluation) {
  gen::Rng rng(49);
  for (int n = 2; n <= 3; ++n) {
    WittAlgebra alg{n, false};
    for (int k = 0; k < 200; ++k) {
      auto g = gen::combination(rng, 3, 5, 3);
      std::vector<Derivation> a;
      for (int i = 0; i < 3; ++i) a.push_back(gen::derivation(rng, n));
      std::span<const Derivation> sp(a);
      ASSERT_EQ(evaluate(g, alg, sp), evaluate(normal_form(g), alg, sp)) << to_string(g);
    }
  }
}

TEST(FreeLSA, EvaluateExamples) {
  WittAlgebra alg{2, false};
  std::vector<Derivation> a{parse_derivation("x2 d1", 2), parse_derivation("x1 d2", 2)};
  EXPECT_EQ(evaluate(W("(y1*y2)"), alg, std::span<const Derivation>(a)), parse_derivation("x2 d2", 2));
  EXPECT_THROW(evaluate(W("(y1*y3)"), alg, std::span<const Derivation>(a)), std::invalid_argument);
  gen::Rng rng(50);
  auto ls = C("((y1*y2)*y3) - (y1*(y2*y3)) - ((y2*y1)*y3) + (y2*(y1*y3))");
  for (int k = 0; k < 50; ++k) {
    std::vector<Derivation> b{gen::derivation(rng, 2), gen::derivation(rng, 2), gen::derivation(rng, 2)};
    ASSERT_TRUE(evaluate(ls, alg, std::span<const Derivation>(b)).is_zero());
  }
}

TEST(FreeLSA, Multilinearize) {
  EXPECT_EQ(multilinearize(C("(y1*y1)")).terms(), C("(y1*y2) + (y2*y1)"));
  auto ml = normal_form(W("((y2*y1)*y3)"));
  EXPECT_EQ(multilinearize(ml), ml);
  auto cube = multilinearize(C("((y1*y1)*y1)"));
  Combination six;
  std::vector<int> p{1, 2, 3};
  do {
    add_to(six, Word::product(Word::product(Word::leaf(p[0]), Word::leaf(p[1])), Word::leaf(p[2])), 1);
  } while (std::next_permutation(p.begin(), p.end()));
  EXPECT_EQ(cube, normal_form(six));
  EXPECT_THROW(multilinearize(C("(y1*y1) + y1")), std::invalid_argument);
}

TEST(FreeLSA, MultilinearizeMatchesPolarization) {
  // substitute y1 -> y1 + y2 + y3 (degree 3 in y1) and keep the multilinear part
  gen::Rng rng(51);
  FreeAlgebra fa;
  for (int k = 0; k < 30; ++k) {
    Combination g;
    for (int t = gen::uniform(rng, 1, 3); t > 0; --t) add_to(g, gen::word(rng, 3, 1), gen::nonzero_rational(rng));
    std::vector<LSElement> sub{normal_form(C("y1 + y2 + y3"))};
    auto expanded = evaluate(g, fa, std::span<const LSElement>(sub));
    Combination multi;
    for (const auto& [w, c] : expanded.terms())
      if (is_multilinear(w)) add_to(multi, w, c);
    ASSERT_EQ(multilinearize(g), normal_form(multi)) << to_string(g);
    // equal arguments give 3! g
    std::vector<LSElement> same(3, normal_form(C("y1")));
    auto back = evaluate(multilinearize(g), fa, std::span<const LSElement>(same));
    ASSERT_EQ(back, Rational(6) * normal_form(g));
  }
}

TEST(FreeLSA, TextRoundTrip) {
  gen::Rng rng(52);
  for (int k = 0; k < 1000; ++k) {
    Word w = gen::word(rng, gen::uniform(rng, 1, 6), 12);
    ASSERT_EQ(parse_word(to_string(w)), w);
    auto g = gen::combination(rng, 4, 5, 4);
    ASSERT_EQ(parse_combination(to_string(g)), g) << to_string(g);
  }
  EXPECT_TRUE(parse_combination("0").empty());
  EXPECT_THROW(parse_word("(y1*y2"), ParseError);
  EXPECT_THROW(parse_word("(y1 y2)"), ParseError);
  EXPECT_THROW(parse_word("y0"), ParseError);
}
