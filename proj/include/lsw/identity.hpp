#pragma once

// Searching for counterexamples to a left-symmetric identity g(y1..ym) = 0 in L_n
// or one of its triangular subalgebras.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lsw/detail/tuples.hpp"
#include "lsw/freelsa.hpp"
#include "lsw/opid.hpp"
#include "lsw/sampling.hpp"
#include "lsw/witt.hpp"

namespace lsw {

struct IdentityCheckParams {
  int degree_bound = 2;
  std::size_t exhaustive_limit = 100000;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  int terms_per_sample = 3;
};

struct IdentityVerdict {
  bool holds = true;  // no counterexample among the tuples tried
  std::vector<Derivation> witness;
  std::optional<Derivation> value;
  std::size_t exhaustive_checked = 0;
  bool exhaustive_complete = false;
  std::size_t samples_checked = 0;
};

namespace detail {

inline MonomialTerm fast_eval_code(std::span<const int> code, std::span<const MonomialTerm> vals, int n) {
  if (code.size() == 1) return vals[static_cast<std::size_t>(code[0] - 1)];
  std::size_t l = Word::extent(code, 1);
  MonomialTerm u = fast_eval_code(code.subspan(1, l), vals, n);
  if (u.is_zero()) return u;
  return mono_mul(u, fast_eval_code(code.subspan(1 + l), vals, n), n);
}

}  // namespace detail

/// Sweeps basis tuples of the class (L-degree <= bound, increasing total degree),
/// then seeded random tuples. Every witness is re-evaluated on the generic path.
inline IdentityVerdict check_identity(const Combination& g, int n, Subalgebra cls,
                                      const IdentityCheckParams& params = {}) {
  if (n < 1 || n > kMaxFastVars) throw std::invalid_argument("identity check supports 1 <= n <= 8");
  IdentityVerdict out;
  int m = 0;
  for (const auto& [w, c] : g) m = std::max(m, w.max_letter());
  WittAlgebra alg{n, false};

  auto basis = basis_of_class(n, cls, params.degree_bound);
  auto buckets = detail::degree_buckets(basis);
  std::vector<MonomialTerm> fast;
  for (const auto& b : basis) fast.push_back(to_monomial_term(b));

  Integer lcm = 1;
  for (const auto& [w, c] : g) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<std::pair<const Word*, std::int64_t>> terms;
  for (const auto& [w, c] : g) terms.emplace_back(&w, to_int64(Rational(c * Rational(lcm))));

  std::vector<MonomialTerm> vals(static_cast<std::size_t>(m));
  std::vector<MonomialTerm> acc;
  std::optional<std::vector<int>> hit;
  out.exhaustive_checked = detail::for_each_tuple_by_degree(
      buckets, m, params.exhaustive_limit, [&](const std::vector<int>& items) {
        for (int k = 0; k < m; ++k) vals[static_cast<std::size_t>(k)] = fast[static_cast<std::size_t>(items[static_cast<std::size_t>(k)])];
        acc.clear();
        for (const auto& [w, c] : terms) {
          MonomialTerm t = detail::fast_eval_code(w->code(), vals, n);
          if (t.is_zero()) continue;
          bool merged = false;
          for (auto& a : acc)
            if (a.same_basis(t)) {
              a.coeff += t.coeff * c;
              merged = true;
              break;
            }
          if (!merged) {
            acc.push_back(t);
            acc.back().coeff *= c;
          }
        }
        for (const auto& a : acc)
          if (a.coeff != 0) {
            hit = items;
            return false;
          }
        return true;
      });

  if (hit) {
    out.holds = false;
    for (int k = 0; k < m; ++k) out.witness.push_back(basis[static_cast<std::size_t>((*hit)[static_cast<std::size_t>(k)])]);
    out.value = evaluate(g, alg, std::span<const Derivation>(out.witness));
    if (out.value->is_zero()) throw std::logic_error("fast-path counterexample does not reproduce");
    return out;
  }
  std::size_t total = 1;
  for (int k = 0; k < m; ++k)
    total = total > SIZE_MAX / std::max<std::size_t>(1, basis.size()) ? SIZE_MAX : total * basis.size();
  out.exhaustive_complete = out.exhaustive_checked == total;

  SampleShape shape{params.degree_bound, params.terms_per_sample, 3};
  Rng rng(params.seed);
  for (std::size_t s = 0; s < params.samples; ++s) {
    std::vector<Derivation> args;
    for (int k = 0; k < m; ++k) args.push_back(random_element(n, cls, shape, rng));
    Derivation v = evaluate(g, alg, std::span<const Derivation>(args));
    out.samples_checked = s + 1;
    if (!v.is_zero()) {
      out.holds = false;
      out.witness = std::move(args);
      out.value = std::move(v);
      return out;
    }
  }
  return out;
}

}  // namespace lsw
