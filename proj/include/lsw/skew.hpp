#pragma once

// Degree bookkeeping over a homogeneous basis e1, e2, ... of L_n, and skew-symmetrized
// evaluations S_N^w = sum over S_N of sgn(p) w(a_{p(1)}, ..., a_{p(N)}, extras).

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "lsw/freelsa.hpp"
#include "lsw/identity.hpp"
#include "lsw/sampling.hpp"
#include "lsw/witt.hpp"

namespace lsw {

/// Basis of L_n by degree; inside a degree, monomials in decreasing lex order, then
/// direction. Elements are produced lazily, one degree block at a time.
class GradedBasisCursor {
 public:
  explicit GradedBasisCursor(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
  }

  int n() const noexcept { return n_; }

  /// Element e_k, k >= 1.
  const Derivation& at(std::size_t k) {
    if (k == 0) throw std::out_of_range("basis positions start at 1");
    while (cache_.size() < k) extend();
    return cache_[k - 1];
  }

  /// |e_k| without materializing anything.
  int degree(std::size_t k) const {
    if (k == 0) throw std::out_of_range("basis positions start at 1");
    std::size_t seen = 0;
    for (int s = -1;; ++s) {
      seen += dim_L(n_, s).get_ui();
      if (k <= seen) return s;
    }
  }

  /// e_1 .. e_count.
  std::vector<Derivation> take(std::size_t count) {
    if (count > 0) at(count);
    return {cache_.begin(), cache_.begin() + static_cast<std::ptrdiff_t>(count)};
  }

  /// Number of basis elements of degree <= s.
  std::size_t count_up_to(int s) const {
    std::size_t c = 0;
    for (int d = -1; d <= s; ++d) c += dim_L(n_, d).get_ui();
    return c;
  }

 private:
  void extend() {
    auto block = basis_of_L(n_, next_degree_++);
    cache_.insert(cache_.end(), block.begin(), block.end());
  }

  int n_;
  int next_degree_ = -1;
  std::vector<Derivation> cache_;
};

/// e(N) = |e_1| + ... + |e_N|, from dim L_s = n C(n+s, n-1).
inline std::int64_t e_of_N(int n, std::int64_t N) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  std::int64_t e = 0, left = N;
  for (int s = -1; left > 0; ++s) {
    std::int64_t block = std::min<std::int64_t>(left, dim_L(n, s).get_si());
    e += block * s;
    left -= block;
  }
  return e;
}

/// Least N with e(N) >= t.
inline std::int64_t minimal_skew_N(int n, std::int64_t t) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (t < 0) throw std::invalid_argument("t must be nonnegative");
  std::int64_t before = 0, e = 0;
  for (int s = -1;; ++s) {
    std::int64_t dim = dim_L(n, s).get_si();
    if (s > 0 && e + s * dim >= t) {
      std::int64_t need = std::max<std::int64_t>(1, (t - e + s - 1) / s);
      return before + need;
    }
    before += dim;
    e += s * dim;
  }
}

/// Whether e(N) >= t, the condition under which S_N^w with t extra arguments vanishes.
inline bool prop2_applies(int n, std::int64_t N, std::int64_t t) { return e_of_N(n, N) >= t; }

namespace detail {

// Letters 1..N occur exactly once; the others lie in N+1..N+t.
inline void check_skew_word(const Word& w, std::size_t N, std::size_t t) {
  std::vector<int> seen(N + t + 1, 0);
  for (int k : w.letters()) {
    if (k < 1 || static_cast<std::size_t>(k) > N + t)
      throw std::invalid_argument("letter y" + std::to_string(k) + " has no argument");
    ++seen[static_cast<std::size_t>(k)];
  }
  for (std::size_t k = 1; k <= N; ++k)
    if (seen[k] != 1) throw std::invalid_argument("word must be multilinear in y1..y" + std::to_string(N));
}

// Heap's algorithm over the first k positions of `perm`; calls visit(perm, sign)
// for each of the k! arrangements. Every step is one transposition.
template <class T, class Visit>
void heap_permutations(std::vector<T>& perm, std::size_t k, int sign, Visit&& visit) {
  std::vector<std::size_t> c(k, 0);
  visit(perm, sign);
  std::size_t i = 1;
  while (i < k) {
    if (c[i] < i) {
      std::swap(perm[i % 2 == 0 ? 0 : c[i]], perm[i]);
      sign = -sign;
      visit(perm, sign);
      ++c[i];
      i = 1;
    } else {
      c[i] = 0;
      ++i;
    }
  }
}

using FastKey = std::pair<std::int8_t, std::array<std::int16_t, kMaxFastVars>>;

inline void accumulate(std::map<FastKey, std::int64_t>& acc, const MonomialTerm& t, int sign) {
  if (t.is_zero()) return;
  std::int64_t& slot = acc[{t.dir, t.exps}];
  if (__builtin_add_overflow(slot, sign * t.coeff, &slot)) throw std::overflow_error("skew sum overflows");
}

}  // namespace detail

/// Sum over p in S_N of sgn(p) w(a_{p(1)}, ..., a_{p(N)}, extra_1, ..., extra_t), where
/// letter y_{N+j} takes extra_j. Permutations are streamed; equal arguments give 0 at
/// once. `jobs` > 1 splits the sum over the cosets fixed by the last position.
inline Derivation skew_symmetrized_eval(const Word& w, std::span<const Derivation> args,
                                        std::span<const Derivation> extra = {}, unsigned jobs = 1) {
  const std::size_t N = args.size();
  if (N == 0) throw std::invalid_argument("skew sum needs at least one argument");
  detail::check_skew_word(w, N, extra.size());
  const int n = args[0].n();
  for (const auto& a : args) a.check_compatible(args[0]);
  for (const auto& a : extra) a.check_compatible(args[0]);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (args[i] == args[j]) return Derivation(n, args[0].laurent());

  auto single_integer = [](const Derivation& d) {
    if (d.n() > kMaxFastVars || d.laurent() || d.term_count() != 1) return false;
    for (const auto& c : d.coeffs())
      for (const auto& [m, x] : c.terms())
        if (!is_integer(x) || !x.get_num().fits_slong_p()) return false;
    return true;
  };
  bool fast = std::all_of(args.begin(), args.end(), single_integer) &&
              std::all_of(extra.begin(), extra.end(), single_integer);

  // coset c: argument c sits at position N-1, the rest are permuted by Heap
  std::size_t cosets = N;
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), cosets));
  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), 0);

  if (fast) {
    std::vector<MonomialTerm> fa, fe;
    for (const auto& a : args) fa.push_back(to_monomial_term(a));
    for (const auto& a : extra) fe.push_back(to_monomial_term(a));
    std::vector<std::map<detail::FastKey, std::int64_t>> partial(cosets);
    auto run = [&](unsigned worker) {
      std::vector<MonomialTerm> vals(N + fe.size());
      std::copy(fe.begin(), fe.end(), vals.begin() + static_cast<std::ptrdiff_t>(N));
      for (std::size_t c = worker; c < cosets; c += workers) {
        std::vector<std::size_t> perm = order;
        int sign = 1;
        if (c != N - 1) {
          std::swap(perm[c], perm[N - 1]);
          sign = -1;
        }
        detail::heap_permutations(perm, N - 1, sign, [&](const std::vector<std::size_t>& p, int sg) {
          for (std::size_t k = 0; k < N; ++k) vals[k] = fa[p[k]];
          detail::accumulate(partial[c], detail::fast_eval_code(w.code(), vals, n), sg);
        });
      }
    };
    if (workers == 1) {
      run(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned j = 0; j < workers; ++j) pool.emplace_back(run, j);
      for (auto& t : pool) t.join();
    }
    std::map<detail::FastKey, std::int64_t> total;
    for (const auto& part : partial)
      for (const auto& [key, v] : part) {
        std::int64_t& slot = total[key];
        if (__builtin_add_overflow(slot, v, &slot)) throw std::overflow_error("skew sum overflows");
      }
    Derivation out(n);
    for (const auto& [key, v] : total) {
      if (v == 0) continue;
      MonomialTerm t;
      t.coeff = v;
      t.dir = key.first;
      t.exps = key.second;
      out += to_derivation(t, n);
    }
    return out;
  }

  WittAlgebra alg{n, args[0].laurent()};
  std::vector<Derivation> partial(cosets, alg.zero());
  auto run = [&](unsigned worker) {
    std::vector<Derivation> vals(args.begin(), args.end());
    vals.insert(vals.end(), extra.begin(), extra.end());
    for (std::size_t c = worker; c < cosets; c += workers) {
      std::vector<std::size_t> perm = order;
      int sign = 1;
      if (c != N - 1) {
        std::swap(perm[c], perm[N - 1]);
        sign = -1;
      }
      detail::heap_permutations(perm, N - 1, sign, [&](const std::vector<std::size_t>& p, int sg) {
        for (std::size_t k = 0; k < N; ++k) vals[k] = args[p[k]];
        Derivation v = evaluate(w, alg, std::span<const Derivation>(vals));
        if (!v.is_zero()) partial[c] += v * Rational(sg);
      });
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < workers; ++j) pool.emplace_back(run, j);
    for (auto& t : pool) t.join();
  }
  Derivation total = alg.zero();
  for (const auto& p : partial) total += p;
  return total;
}

// --- checks ----------------------------------------------------------------

struct SkewSample {
  std::vector<std::size_t> positions;        // basis positions k of e_k for y1..yN
  std::vector<std::size_t> extra_positions;  // for y_{N+1}..y_{N+t}
  std::int64_t degree_sum = 0;               // sum of |e_k| over the N arguments
  bool zero = true;
  std::optional<Derivation> value;
};

struct SkewReport {
  int n = 1;
  std::int64_t N = 1;
  std::int64_t t = 0;
  std::int64_t e_N = 0;
  bool prop2 = false;
  int degree_bound = 2;
  std::size_t requested = 0;
  std::uint64_t seed = 1;
  bool exhaustive = false;
  std::vector<SkewSample> samples;

  bool all_zero() const {
    return std::all_of(samples.begin(), samples.end(), [](const SkewSample& s) { return s.zero; });
  }
};

struct SkewCheckParams {
  int degree_bound = 2;
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

namespace detail {

inline SkewReport skew_report_header(int n, std::int64_t N, std::int64_t t, const SkewCheckParams& p) {
  SkewReport r;
  r.n = n;
  r.N = N;
  r.t = t;
  r.e_N = e_of_N(n, N);
  r.prop2 = r.e_N >= t;
  r.degree_bound = p.degree_bound;
  r.requested = p.samples;
  r.seed = p.seed;
  return r;
}

inline SkewSample skew_sample(const Word& w, GradedBasisCursor& cursor, std::vector<std::size_t> pos,
                              std::vector<std::size_t> extra_pos, unsigned jobs) {
  SkewSample s;
  std::vector<Derivation> args, extra;
  for (std::size_t k : pos) {
    args.push_back(cursor.at(k));
    s.degree_sum += cursor.degree(k);
  }
  for (std::size_t k : extra_pos) extra.push_back(cursor.at(k));
  Derivation v = skew_symmetrized_eval(w, args, extra, jobs);
  s.positions = std::move(pos);
  s.extra_positions = std::move(extra_pos);
  s.zero = v.is_zero();
  if (!s.zero) s.value = std::move(v);
  return s;
}

}  // namespace detail

/// Seeded samples: N distinct basis elements of degree <= bound for y1..yN, and t
/// basis elements (repeats allowed) for the extra letters.
inline SkewReport skew_check(const Word& w, int n, std::int64_t N, std::int64_t t, const SkewCheckParams& params) {
  if (N < 1 || t < 0) throw std::invalid_argument("need N >= 1 and t >= 0");
  detail::check_skew_word(w, static_cast<std::size_t>(N), static_cast<std::size_t>(t));
  SkewReport report = detail::skew_report_header(n, N, t, params);
  GradedBasisCursor cursor(n);
  std::size_t pool = cursor.count_up_to(params.degree_bound);
  if (pool < static_cast<std::size_t>(N))
    throw std::invalid_argument("only " + std::to_string(pool) + " basis elements of degree <= " +
                                std::to_string(params.degree_bound) + ", need N = " + std::to_string(N));
  Rng rng(params.seed);
  std::vector<std::size_t> all(pool);
  std::iota(all.begin(), all.end(), 1);
  for (std::size_t s = 0; s < params.samples; ++s) {
    std::vector<std::size_t> idx = all;
    for (std::size_t k = 0; k < static_cast<std::size_t>(N); ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, pool - 1);
      std::swap(idx[k], idx[pick(rng)]);
    }
    idx.resize(static_cast<std::size_t>(N));
    std::sort(idx.begin(), idx.end());
    std::vector<std::size_t> extra;
    std::uniform_int_distribution<std::size_t> any(1, pool);
    for (std::int64_t k = 0; k < t; ++k) extra.push_back(any(rng));
    report.samples.push_back(detail::skew_sample(w, cursor, std::move(idx), std::move(extra), params.jobs));
  }
  return report;
}

/// Every tuple of basis elements of degree <= bound (N arguments and t extras). Tuples
/// with a repeated argument are included; they vanish without evaluation.
inline SkewReport skew_exhaustive(const Word& w, int n, std::int64_t N, std::int64_t t, int degree_bound,
                                  std::size_t max_tuples = 10'000'000) {
  SkewCheckParams p;
  p.degree_bound = degree_bound;
  p.samples = 0;
  detail::check_skew_word(w, static_cast<std::size_t>(N), static_cast<std::size_t>(t));
  SkewReport report = detail::skew_report_header(n, N, t, p);
  report.exhaustive = true;
  GradedBasisCursor cursor(n);
  std::size_t pool = cursor.count_up_to(degree_bound);
  std::size_t slots = static_cast<std::size_t>(N + t);
  std::size_t total = 1;
  for (std::size_t k = 0; k < slots; ++k) {
    if (total > max_tuples / pool) throw std::invalid_argument("exhaustive skew check too large");
    total *= pool;
  }
  std::vector<std::size_t> tuple(slots, 1);
  for (std::size_t count = 0; count < total; ++count) {
    std::vector<std::size_t> pos(tuple.begin(), tuple.begin() + N);
    std::vector<std::size_t> extra(tuple.begin() + N, tuple.end());
    report.samples.push_back(detail::skew_sample(w, cursor, std::move(pos), std::move(extra), 1));
    std::size_t k = slots;
    while (k > 0 && tuple[k - 1] == pool) tuple[--k] = 1;
    if (k == 0) break;
    ++tuple[k - 1];
  }
  report.requested = report.samples.size();
  return report;
}

}  // namespace lsw
