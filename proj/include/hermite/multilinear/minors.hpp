#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "hermite/multilinear/combinatorics.hpp"

namespace hermite {

/// All k x k minors of an n-row matrix on a fixed set of k columns, keyed by
/// the bitmask of the chosen rows. Laplace expansion along the last column,
/// shared across row subsets. T needs +, -, *, a zero value T{} and is_zero().
template <typename T>
std::unordered_map<std::uint64_t, T> minors_on_columns(std::size_t nrows, const Tuple& cols,
                                                       const std::function<const T*(std::size_t, std::size_t)>& entry) {
  if (nrows > 63) throw std::invalid_argument("minors_on_columns: at most 63 rows supported");
  std::unordered_map<std::uint64_t, T> level;
  level.emplace(0, T(1));
  for (std::size_t t = 0; t < cols.size(); ++t) {
    const auto c = static_cast<std::size_t>(cols[t]);
    std::unordered_map<std::uint64_t, T> next;
    for (std::size_t r = 0; r < nrows; ++r) {
      const T* v = entry(r, c);
      if (v == nullptr || v->is_zero()) continue;
      const std::uint64_t bit = std::uint64_t{1} << r;
      for (const auto& [mask, det] : level) {
        if (mask & bit) continue;
        const std::uint64_t nm = mask | bit;
        const int above = std::popcount(nm >> (r + 1));
        T term = (*v) * det;
        auto it = next.find(nm);
        if (it == next.end()) {
          if (above % 2 == 1) term = T{} - term;
          next.emplace(nm, std::move(term));
        } else if (above % 2 == 1) {
          it->second = it->second - term;
        } else {
          it->second = it->second + term;
        }
      }
    }
    level.clear();
    for (auto& [m, v] : next) {
      if (!v.is_zero()) level.emplace(m, std::move(v));
    }
    if (level.empty()) break;
  }
  return level;
}

inline std::uint64_t tuple_mask(const Tuple& t) {
  std::uint64_t m = 0;
  for (int x : t) m |= std::uint64_t{1} << x;
  return m;
}

/// Determinant of a square matrix given as rows.
template <typename T>
T determinant(const std::vector<std::vector<T>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return T(1);
  Tuple cols(n);
  for (std::size_t k = 0; k < n; ++k) cols[k] = static_cast<int>(k);
  auto minors = minors_on_columns<T>(n, cols, [&](std::size_t r, std::size_t c) { return &m[r][c]; });
  const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  auto it = minors.find(full);
  return it == minors.end() ? T{} : it->second;
}

}  // namespace hermite
