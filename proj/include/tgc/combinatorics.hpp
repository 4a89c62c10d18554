#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace tgc {

using IndexSet = std::vector<int>;

// Saturates at UINT64_MAX instead of overflowing.
inline std::uint64_t binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  unsigned __int128 acc = 1;
  for (int i = 1; i <= r; ++i) {
    acc = acc * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

// Calls f(std::span<const int>) for every r-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_combination(int n, int r, F&& f) {
  if (r < 0 || r > n) return;
  std::vector<int> idx(static_cast<std::size_t>(r));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(std::span<const int>(idx));
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Calls f(std::span<const int>) for every r-subset of pool.
template <class F>
void for_each_combination_of(const std::vector<int>& pool, int r, F&& f) {
  std::vector<int> pick(static_cast<std::size_t>(r > 0 ? r : 0));
  for_each_combination(static_cast<int>(pool.size()), r, [&](std::span<const int> c) {
    for (std::size_t i = 0; i < c.size(); ++i) pick[i] = pool[c[i]];
    f(std::span<const int>(pick));
  });
}

inline int floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return static_cast<int>(q);
}

inline int ceil_div(long long a, long long b) { return -floor_div(-a, b); }

inline int mod(long long a, long long m) {
  long long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace tgc
