#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

namespace rieszlab {

/// Multi-index alpha = (alpha_1, ..., alpha_N) of nonnegative integers.
struct MultiIndex {
  std::vector<int> entries;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e) : entries(std::move(e)) {
    for (int a : entries)
      if (a < 0) throw std::invalid_argument("MultiIndex: negative entry");
  }

  int dim() const { return static_cast<int>(entries.size()); }
  int order() const { return std::accumulate(entries.begin(), entries.end(), 0); }
  int operator[](int i) const { return entries[i]; }

  bool operator<(const MultiIndex& o) const { return entries < o.entries; }
  bool operator==(const MultiIndex& o) const { return entries == o.entries; }

  /// Unit multi-index e_j in dimension N.
  static MultiIndex unit(int N, int j) {
    std::vector<int> e(N, 0);
    e[j] = 1;
    return MultiIndex(e);
  }
};

/// All multi-indices of given order in dimension N, lexicographic.
std::vector<MultiIndex> multi_indices_of_order(int N, int order);

/// xi^alpha for a real vector xi.
double monomial(const MultiIndex& alpha, const double* xi);

}  // namespace rieszlab
