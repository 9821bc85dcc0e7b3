#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace lsw::detail {

// Visits tuples of `slots` items drawn from degree buckets (bucket g holds items of
// weight g), ordered by total weight, then weight composition (lex), then items (lex).
// `visit(items)` returns false to stop. At most `limit` tuples are visited; the return
// value is the number visited.
template <class Visit>
std::size_t for_each_tuple_by_degree(const std::vector<std::vector<int>>& buckets, int slots,
                                     std::size_t limit, Visit&& visit) {
  std::size_t count = 0;
  const int top = static_cast<int>(buckets.size()) - 1;
  if (slots == 0) {
    if (limit > 0) {
      std::vector<int> none;
      ++count;
      visit(none);
    }
    return count;
  }
  if (top < 0) return 0;
  std::vector<int> comp(static_cast<std::size_t>(slots));
  std::vector<int> items(static_cast<std::size_t>(slots));
  bool stop = false;

  auto run_items = [&](auto& self, int k) -> void {
    if (stop) return;
    if (k == slots) {
      if (count >= limit) {
        stop = true;
        return;
      }
      ++count;
      if (!visit(items)) stop = true;
      return;
    }
    for (int item : buckets[static_cast<std::size_t>(comp[static_cast<std::size_t>(k)])]) {
      items[static_cast<std::size_t>(k)] = item;
      self(self, k + 1);
      if (stop) return;
    }
  };

  auto run_comp = [&](auto& self, int k, int remaining) -> void {
    if (stop) return;
    if (k == slots - 1) {
      if (remaining > top || buckets[static_cast<std::size_t>(remaining)].empty()) return;
      comp[static_cast<std::size_t>(k)] = remaining;
      run_items(run_items, 0);
      return;
    }
    for (int g = 0; g <= std::min(top, remaining); ++g) {
      if (buckets[static_cast<std::size_t>(g)].empty()) continue;
      comp[static_cast<std::size_t>(k)] = g;
      self(self, k + 1, remaining - g);
      if (stop) return;
    }
  };

  for (int total = 0; total <= top * slots && !stop; ++total) run_comp(run_comp, 0, total);
  return count;
}

}  // namespace lsw::detail
