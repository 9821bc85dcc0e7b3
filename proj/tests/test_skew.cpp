#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "generators.hpp"
#include "lsw/skew.hpp"
#include "oracles.hpp"

using namespace lsw;

namespace {

Derivation D(const std::string& s, int n) { return parse_derivation(s, n); }

oracle::Der dense_eval(const Word& w, const std::vector<oracle::Der>& a) {
  if (w.is_leaf()) return a[static_cast<std::size_t>(w.letter() - 1)];
  return oracle::ls_mul(dense_eval(w.left(), a), dense_eval(w.right(), a));
}

// every permutation through next_permutation, sign from the inversion count
oracle::Der naive_skew(const Word& w, const std::vector<Derivation>& args, const std::vector<Derivation>& extra) {
  const std::size_t N = args.size();
  std::vector<std::size_t> p(N);
  std::iota(p.begin(), p.end(), 0);
  oracle::Der total(static_cast<std::size_t>(args[0].n()));
  do {
    int inv = 0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) inv += p[i] > p[j];
    std::vector<oracle::Der> a;
    for (std::size_t i = 0; i < N; ++i) a.push_back(oracle::from(args[p[i]]));
    for (const auto& e : extra) a.push_back(oracle::from(e));
    auto v = dense_eval(w, a);
    for (std::size_t j = 0; j < v.size(); ++j)
      for (const auto& [e, x] : v[j]) oracle::add(total[j], e, inv % 2 ? -x : x);
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

std::vector<Derivation> random_basis_args(gen::Rng& rng, GradedBasisCursor& cur, std::size_t count, int bound,
                                          bool distinct) {
  std::size_t pool = cur.count_up_to(bound);
  std::vector<std::size_t> idx;
  while (idx.size() < count) {
    std::size_t k = static_cast<std::size_t>(gen::uniform(rng, 1, static_cast<int>(pool)));
    if (distinct && std::find(idx.begin(), idx.end(), k) != idx.end()) continue;
    idx.push_back(k);
  }
  std::vector<Derivation> out;
  for (auto k : idx) out.push_back(cur.at(k));
  return out;
}

// integer coefficients, so the dense oracle can take it
Derivation int_derivation(gen::Rng& rng, int n) {
  Derivation d(n);
  for (int t = gen::uniform(rng, 1, 2); t > 0; --t) {
    Monomial m(n);
    for (int i = 0; i < n; ++i) m.set(i, gen::uniform(rng, 0, 2));
    int c = gen::uniform(rng, 1, 3) * (gen::uniform(rng, 0, 1) ? 1 : -1);
    d += Derivation::term(n, m, gen::uniform(rng, 1, n), c);
  }
  return d;
}

}  // namespace

TEST(Skew, EofNExamples) {
  EXPECT_EQ(e_of_N(1, 1), -1);
  EXPECT_EQ(e_of_N(1, 2), -1);
  EXPECT_EQ(e_of_N(1, 3), 0);
  EXPECT_EQ(e_of_N(2, 8), 0);
  EXPECT_EQ(e_of_N(2, 7), -1);
  EXPECT_THROW(e_of_N(1, 0), std::invalid_argument);
}

TEST(Skew, EofNMatchesEnumeration) {
  for (int n = 1; n <= 4; ++n)
    for (long long N = 1; N <= 80; ++N) ASSERT_EQ(e_of_N(n, N), oracle::e_of_N(n, N)) << n << " " << N;
}

TEST(Skew, MinimalN) {
  EXPECT_EQ(minimal_skew_N(1, 0), 3);
  EXPECT_EQ(minimal_skew_N(2, 0), 8);
  EXPECT_EQ(minimal_skew_N(3, 0), 15);
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(minimal_skew_N(n, 0), n * n + 2 * n);
  for (int n = 1; n <= 3; ++n)
    for (int t = 0; t <= 12; ++t) {
      long long N = minimal_skew_N(n, t);
      ASSERT_GE(oracle::e_of_N(n, N), t);
      if (N > 1) {
        ASSERT_LT(oracle::e_of_N(n, N - 1), t);
      }
    }
  EXPECT_THROW(minimal_skew_N(1, -1), std::invalid_argument);
}

TEST(Skew, VanishingThreshold) {
  EXPECT_TRUE(prop2_applies(1, 3, 0));
  EXPECT_FALSE(prop2_applies(2, 7, 0));
  EXPECT_TRUE(prop2_applies(2, 8, 0));
  for (int n = 1; n <= 4; ++n) EXPECT_FALSE(prop2_applies(n, n * n + n, 0)) << n;
}

TEST(Skew, CursorOrder) {
  for (int n = 1; n <= 3; ++n) {
    GradedBasisCursor cur(n);
    for (int i = 1; i <= n; ++i) EXPECT_EQ(cur.at(static_cast<std::size_t>(i)), Derivation::partial_d(n, i));
    std::size_t total = cur.count_up_to(3);
    auto all = cur.take(total);
    int last = -1;
    for (std::size_t k = 1; k <= total; ++k) {
      int d = cur.degree(k);
      ASSERT_GE(d, last);
      last = d;
      auto dec = degree_decompose(all[k - 1]);
      ASSERT_EQ(dec.size(), 1u);
      ASSERT_EQ(dec.begin()->first, d);
    }
    for (std::size_t a = 0; a < total; ++a)
      for (std::size_t b = a + 1; b < total; ++b) ASSERT_NE(all[a], all[b]);
  }
  GradedBasisCursor one(1);
  EXPECT_EQ(one.at(2), D("x1 d1", 1));
  EXPECT_EQ(one.at(3), D("x1^2 d1", 1));
  EXPECT_THROW(one.at(0), std::out_of_range);
}

TEST(Skew, TwoArguments) {
  gen::Rng rng(91);
  for (int k = 0; k < 50; ++k) {
    int n = gen::uniform(rng, 1, 3);
    auto a = gen::derivation(rng, n, 2, 2, false), b = gen::derivation(rng, n, 2, 2, false);
    std::vector<Derivation> args{a, b};
    ASSERT_EQ(skew_symmetrized_eval(parse_word("(y1*y2)"), args), ls_mul(a, b) - ls_mul(b, a));
  }
}

TEST(Skew, RepeatedArgumentsVanish) {
  auto a = D("x1 d1 + d2", 2), b = D("x2^2 d1", 2);
  std::vector<Derivation> args{a, b, a};
  EXPECT_TRUE(skew_symmetrized_eval(parse_word("((y1*y2)*y3)"), args).is_zero());
}

TEST(Skew, CubicOnLine) {
  std::vector<Derivation> args{D("d1", 1), D("x1 d1", 1), D("x1^2 d1", 1)};
  EXPECT_TRUE(skew_symmetrized_eval(parse_word("((y1*y2)*y3)"), args).is_zero());
  EXPECT_TRUE(naive_skew(parse_word("((y1*y2)*y3)"), args, {}) == oracle::Der(1));
}

TEST(Skew, BelowThresholdCanSurvive) {
  // e(2) = -1 for n = 1
  std::vector<Derivation> args{D("d1", 1), D("x1 d1", 1)};
  EXPECT_EQ(skew_symmetrized_eval(parse_word("(y1*y2)"), args), D("d1", 1));
}

TEST(Skew, Errors) {
  std::vector<Derivation> args{D("d1", 1), D("x1 d1", 1)};
  EXPECT_THROW(skew_symmetrized_eval(parse_word("(y1*y1)"), args), std::invalid_argument);
  EXPECT_THROW(skew_symmetrized_eval(parse_word("((y1*y2)*y3)"), args), std::invalid_argument);
  EXPECT_THROW(skew_symmetrized_eval(parse_word("y1"), std::vector<Derivation>{}), std::invalid_argument);
}

TEST(Skew, MatchesNaiveSum) {
  gen::Rng rng(92);
  for (int k = 0; k < 120; ++k) {
    int n = gen::uniform(rng, 1, 2);
    std::size_t N = static_cast<std::size_t>(gen::uniform(rng, 2, 4));
    std::size_t t = static_cast<std::size_t>(gen::uniform(rng, 0, 1));
    Word w = gen::multilinear_word(rng, static_cast<int>(N + t));
    std::vector<Derivation> args, extra;
    // general derivations exercise the slow path, basis elements the fast one
    for (std::size_t i = 0; i < N; ++i)
      args.push_back(k % 2 ? int_derivation(rng, n) : GradedBasisCursor(n).at(static_cast<std::size_t>(gen::uniform(rng, 1, 12))));
    for (std::size_t i = 0; i < t; ++i) extra.push_back(int_derivation(rng, n));
    auto v = skew_symmetrized_eval(w, args, extra);
    ASSERT_EQ(oracle::from(v), naive_skew(w, args, extra)) << to_string(w);
  }
}

TEST(Skew, SwapNegates) {
  gen::Rng rng(93);
  for (int k = 0; k < 100; ++k) {
    int n = gen::uniform(rng, 1, 2);
    std::size_t N = static_cast<std::size_t>(gen::uniform(rng, 2, 5));
    Word w = gen::multilinear_word(rng, static_cast<int>(N));
    std::vector<Derivation> args;
    for (std::size_t i = 0; i < N; ++i) args.push_back(gen::derivation(rng, n, 2, 2, false));
    auto v = skew_symmetrized_eval(w, args);
    std::size_t i = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(N) - 1));
    std::size_t j = (i + 1 + static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(N) - 2))) % N;
    std::swap(args[i], args[j]);
    ASSERT_EQ(skew_symmetrized_eval(w, args), -v);
  }
}

TEST(Skew, JobsDoNotChangeResult) {
  gen::Rng rng(94);
  GradedBasisCursor cur(2);
  for (int k = 0; k < 20; ++k) {
    Word w = gen::multilinear_word(rng, 6);
    auto args = random_basis_args(rng, cur, 6, 2, true);
    std::vector<Derivation> general;
    for (int i = 0; i < 5; ++i) general.push_back(gen::derivation(rng, 2, 2, 2, false));
    Word u = gen::multilinear_word(rng, 5);
    auto one = skew_symmetrized_eval(w, args, {}, 1);
    auto g1 = skew_symmetrized_eval(u, general, {}, 1);
    for (unsigned jobs : {2u, 3u, 7u}) {
      ASSERT_EQ(skew_symmetrized_eval(w, args, {}, jobs), one);
      ASSERT_EQ(skew_symmetrized_eval(u, general, {}, jobs), g1);
    }
  }
}

TEST(Skew, ExhaustiveOnLine) {
  // every bracketing and letter order of degree 3
  for (const auto& t : oracle::all_multilinear(3)) {
    Word w = oracle::to_word(t);
    auto r = skew_exhaustive(w, 1, 3, 0, 3);
    ASSERT_EQ(r.samples.size(), 125u);
    ASSERT_TRUE(r.all_zero()) << to_string(w);
    ASSERT_TRUE(r.prop2);
  }
}

TEST(Skew, ExtraArgumentsAtThreshold) {
  // n = 1: e(4) = 2, so two free extra letters still give zero
  ASSERT_EQ(e_of_N(1, 4), 2);
  gen::Rng rng(95);
  GradedBasisCursor cur(1);
  for (int k = 0; k < 40; ++k) {
    Word w = gen::multilinear_word(rng, 6);
    auto args = random_basis_args(rng, cur, 4, 4, true);
    std::vector<Derivation> extra{gen::derivation(rng, 1, 3, 4, false), gen::derivation(rng, 1, 3, 4, false)};
    ASSERT_TRUE(skew_symmetrized_eval(w, args, extra).is_zero()) << to_string(w);
  }
  // three extras exceed e(4)
  bool survived = false;
  for (int k = 0; k < 40 && !survived; ++k) {
    Word w = gen::multilinear_word(rng, 7);
    auto args = random_basis_args(rng, cur, 4, 3, true);
    std::vector<Derivation> extra;
    for (int i = 0; i < 3; ++i) extra.push_back(cur.at(1));
    survived = !skew_symmetrized_eval(w, args, extra).is_zero();
  }
  EXPECT_TRUE(survived);
}

TEST(Skew, SampledCheckIsSeeded) {
  Word w = parse_word("(((y1*y2)*y3)*y4)");
  SkewCheckParams p;
  p.degree_bound = 2;
  p.samples = 10;
  p.seed = 7;
  auto a = skew_check(w, 1, 4, 0, p), b = skew_check(w, 1, 4, 0, p);
  ASSERT_EQ(a.samples.size(), 10u);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].positions, b.samples[i].positions);
    std::set<std::size_t> distinct(a.samples[i].positions.begin(), a.samples[i].positions.end());
    EXPECT_EQ(distinct.size(), 4u);
  }
  EXPECT_TRUE(a.all_zero());
  p.degree_bound = 0;
  EXPECT_THROW(skew_check(w, 1, 4, 0, p), std::invalid_argument);
}

TEST(Skew, PlaneSamples) {
  SkewCheckParams p;
  p.degree_bound = 1;
  p.samples = 5;
  p.seed = 3;
  auto r = skew_check(parse_word("(((((((y1*y2)*y3)*y4)*y5)*y6)*y7)*y8)"), 2, 8, 0, p);
  EXPECT_TRUE(r.prop2);
  EXPECT_TRUE(r.all_zero());
}
