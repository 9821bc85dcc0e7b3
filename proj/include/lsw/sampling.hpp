#pragma once

// Seeded random elements of L_n and its triangular subalgebras.

#include <cstdint>
#include <random>
#include <vector>

#include "lsw/witt.hpp"

namespace lsw {

using Rng = std::mt19937_64;

struct SampleShape {
  int degree_bound = 2;  // largest L-degree of a basis term
  int terms = 3;         // basis terms per element
  int coeff_range = 3;   // coefficients drawn from [-range, range] \ {0}
};

/// Sum of `shape.terms` random basis elements of the class, with small nonzero
/// integer coefficients. Repeated picks merge, so fewer terms may survive.
inline Derivation random_element(int n, Subalgebra cls, const SampleShape& shape, Rng& rng) {
  static thread_local std::vector<Derivation> cache;
  static thread_local int cache_n = -1, cache_bound = -2;
  static thread_local Subalgebra cache_cls = Subalgebra::full;
  if (cache_n != n || cache_bound != shape.degree_bound || cache_cls != cls) {
    cache = basis_of_class(n, cls, shape.degree_bound);
    cache_n = n;
    cache_bound = shape.degree_bound;
    cache_cls = cls;
  }
  Derivation d(n);
  if (cache.empty()) return d;
  std::uniform_int_distribution<std::size_t> pick(0, cache.size() - 1);
  std::uniform_int_distribution<int> coef(1, 2 * shape.coeff_range);
  for (int k = 0; k < shape.terms; ++k) {
    int c = coef(rng) - shape.coeff_range;
    if (c <= 0) --c;
    d += cache[pick(rng)] * Rational(c);
  }
  return d;
}

}  // namespace lsw
