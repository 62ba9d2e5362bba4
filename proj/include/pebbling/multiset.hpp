#pragma once

#include <cstdint>
#include <vector>

namespace pebbling {

/// Number of size-r multisets drawn from `kinds` kinds, C(kinds + r - 1, r),
/// saturating at UINT64_MAX.
inline std::uint64_t multiset_count(int kinds, int r) {
  if (r == 0) return 1;
  if (kinds <= 0) return 0;
  unsigned __int128 value = 1;
  const auto cap = static_cast<unsigned __int128>(UINT64_MAX);
  for (int i = 1; i <= r; ++i) {
    value = value * static_cast<unsigned>(kinds - 1 + i) / static_cast<unsigned>(i);
    if (value > cap) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(value);
}

/// Advances a nondecreasing sequence over 0..kinds-1 to its lexicographic
/// successor. Returns false after the last one (all kinds-1).
inline bool next_multiset(std::vector<int>& items, int kinds) {
  std::size_t i = items.size();
  while (i > 0 && items[i - 1] == kinds - 1) --i;
  if (i == 0) return false;
  const int value = items[i - 1] + 1;
  for (std::size_t j = i - 1; j < items.size(); ++j) items[j] = value;
  return true;
}

/// Count vector of a multiset over `kinds` kinds.
inline std::vector<int> multiset_counts(const std::vector<int>& items, int kinds) {
  std::vector<int> counts(static_cast<std::size_t>(kinds), 0);
  for (int x : items) ++counts[static_cast<std::size_t>(x)];
  return counts;
}

}  // namespace pebbling
