#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ghyper {

/// Visits every tuple of caps.size() nonnegative integers with sum `total`
/// and x[i] <= caps[i], in ascending lexicographic order. The visitor
/// receives a span aliasing an internal buffer; it returns false to stop.
/// Returns false if the visitor stopped early.
template <typename Visitor>
bool for_each_composition(std::int64_t total, std::span<const std::int64_t> caps,
                          Visitor&& visit) {
  const std::size_t k = caps.size();
  // suffix_cap[i] = caps[i] + ... + caps[k-1], saturated at total (all that
  // matters is whether the suffix can absorb the remainder)
  std::vector<std::int64_t> suffix_cap(k + 1, 0);
  for (std::size_t i = k; i-- > 0;) {
    const std::int64_t c = caps[i] < total ? caps[i] : total;
    suffix_cap[i] = c + suffix_cap[i + 1];
    if (suffix_cap[i] > total) suffix_cap[i] = total;
  }
  std::vector<std::int64_t> x(k, 0);

  auto rec = [&](auto&& self, std::size_t i, std::int64_t rem) -> bool {
    if (i + 1 == k) {
      if (rem > caps[i]) return true;  // nothing feasible at this leaf
      x[i] = rem;
      const bool cont = visit(std::span<const std::int64_t>(x));
      x[i] = 0;
      return cont;
    }
    const std::int64_t lo = rem - suffix_cap[i + 1] > 0 ? rem - suffix_cap[i + 1] : 0;
    const std::int64_t hi = rem < caps[i] ? rem : caps[i];
    for (std::int64_t v = lo; v <= hi; ++v) {
      x[i] = v;
      if (!self(self, i + 1, rem - v)) {
        x[i] = 0;
        return false;
      }
    }
    x[i] = 0;
    return true;
  };
  if (k == 0) return true;
  return rec(rec, 0, total);
}

/// Number of tuples for_each_composition would visit.
std::int64_t composition_count(std::int64_t total, std::span<const std::int64_t> caps);

}  // namespace ghyper
