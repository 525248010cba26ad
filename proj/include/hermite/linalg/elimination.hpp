#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hermite/linalg/rational.hpp"
#include "hermite/linalg/sparse_matrix.hpp"

namespace hermite {

namespace detail {

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

// r <- r - c * p, both rows sorted by column.
inline SparseRow axpy_row(const SparseRow& r, const Rational& c, const SparseRow& p) {
  SparseRow out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, -(c * p[j].second));
      ++j;
    } else {
      Rational v = r[i].second - c * p[j].second;
      if (!v.is_zero()) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

// Markowitz elimination on one block of rows. Rows are consumed.
inline std::size_t markowitz_rank(std::vector<SparseRow> rows) {
  std::map<std::size_t, std::set<std::size_t>> col_rows;
  std::set<std::pair<std::size_t, std::size_t>> by_len;  // (nnz, row)
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    by_len.emplace(rows[r].size(), r);
    for (const auto& [c, v] : rows[r]) col_rows[c].insert(r);
  }
  std::size_t rank = 0;
  while (!by_len.empty()) {
    const std::size_t pr = by_len.begin()->second;
    by_len.erase(by_len.begin());
    SparseRow prow = std::move(rows[pr]);
    for (const auto& [c, v] : prow) col_rows[c].erase(pr);

    // Leftmost column of minimal count in the pivot row.
    std::size_t pc = prow.front().first;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    Rational pv;
    for (const auto& [c, v] : prow) {
      const std::size_t cnt = col_rows[c].size();
      if (cnt < best) {
        best = cnt;
        pc = c;
        pv = v;
      }
    }
    ++rank;
    const std::vector<std::size_t> targets(col_rows[pc].begin(), col_rows[pc].end());
    for (const std::size_t t : targets) {
      by_len.erase({rows[t].size(), t});
      for (const auto& [c, v] : rows[t]) col_rows[c].erase(t);
      Rational factor;
      for (const auto& [c, v] : rows[t]) {
        if (c == pc) {
          factor = v / pv;
          break;
        }
      }
      rows[t] = axpy_row(rows[t], factor, prow);
      if (!rows[t].empty()) {
        by_len.emplace(rows[t].size(), t);
        for (const auto& [c, v] : rows[t]) col_rows[c].insert(t);
      }
    }
    col_rows.erase(pc);
  }
  return rank;
}

/// Reduced row echelon form, pivots chosen leftmost. Returns the nonzero rows
/// and their pivot columns.
struct Rref {
  std::vector<SparseRow> rows;
  std::vector<std::size_t> pivots;
};

inline Rref rref(const SparseMatrix& m, std::size_t pivot_limit = std::numeric_limits<std::size_t>::max()) {
  auto lists = m.row_lists();
  std::vector<SparseRow> rows;
  rows.reserve(lists.size());
  for (auto& l : lists) {
    if (!l.empty()) rows.push_back(std::move(l));
  }
  Rref out;
  // pivot column -> index into out.rows
  std::map<std::size_t, std::size_t> pivot_of;
  for (auto& row : rows) {
    // Pivot rows vanish on every other pivot column, so one left-to-right
    // sweep suffices.
    SparseRow r = std::move(row);
    std::size_t pos = 0;
    while (pos < r.size()) {
      const std::size_t c = r[pos].first;
      auto it = pivot_of.find(c);
      if (it == pivot_of.end()) {
        ++pos;
        continue;
      }
      const Rational v = r[pos].second;
      r = axpy_row(r, v, out.rows[it->second]);
      pos = static_cast<std::size_t>(
          std::lower_bound(r.begin(), r.end(), c + 1,
                           [](const std::pair<std::size_t, Rational>& e, std::size_t col) { return e.first < col; }) -
          r.begin());
    }
    if (r.empty() || r.front().first >= pivot_limit) {
      if (!r.empty()) {
        // Row with no admissible pivot: keep it as an inconsistency marker.
        out.rows.push_back(std::move(r));
        out.pivots.push_back(std::numeric_limits<std::size_t>::max());
      }
      continue;
    }
    const std::size_t pc = r.front().first;
    const Rational inv = inverse(r.front().second);
    for (auto& [c, v] : r) v *= inv;
    // Clear pc from earlier pivot rows.
    for (std::size_t k = 0; k < out.rows.size(); ++k) {
      auto& other = out.rows[k];
      auto it = std::lower_bound(other.begin(), other.end(), pc,
                                 [](const std::pair<std::size_t, Rational>& e, std::size_t col) { return e.first < col; });
      if (it != other.end() && it->first == pc) {
        const Rational f = it->second;
        other = axpy_row(other, f, r);
      }
    }
    pivot_of[pc] = out.rows.size();
    out.rows.push_back(std::move(r));
    out.pivots.push_back(pc);
  }
  return out;
}

}  // namespace detail

/// Rank over Q. The matrix is split into connected components of its
/// row/column incidence graph and each block is eliminated separately.
inline std::size_t rank(const SparseMatrix& m) {
  if (m.is_zero()) return 0;
  detail::UnionFind uf(m.rows() + m.cols());
  for (const auto& e : m.entries()) uf.unite(e.row, m.rows() + e.col);
  auto lists = m.row_lists();
  std::map<std::size_t, std::vector<detail::SparseRow>> blocks;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!lists[r].empty()) blocks[uf.find(r)].push_back(std::move(lists[r]));
  }
  std::size_t total = 0;
  for (auto& [root, rows] : blocks) {
    if (rows.size() == 1) {
      ++total;
      continue;
    }
    total += detail::markowitz_rank(std::move(rows));
  }
  return total;
}

/// Basis of the right kernel. Column k is the vector with a 1 in the k-th
/// free coordinate, 0 in the other free coordinates, and pivot coordinates
/// determined by the reduced row echelon form.
inline SparseMatrix kernel_basis(const SparseMatrix& m) {
  const auto r = detail::rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto p : r.pivots) is_pivot[p] = 1;
  std::vector<std::size_t> free_index(m.cols(), 0);
  std::size_t nfree = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free_index[c] = nfree++;
  }
  std::vector<MatrixEntry> t;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) t.push_back({c, free_index[c], Rational(1)});
  }
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    const std::size_t p = r.pivots[k];
    for (const auto& [c, v] : r.rows[k]) {
      if (c != p) t.push_back({p, free_index[c], -v});
    }
  }
  return SparseMatrix::from_triplets(m.cols(), nfree, std::move(t));
}

/// x with a * x == b, or nullopt when some column of b is outside the column
/// space of a. Free variables are set to zero.
inline std::optional<SparseMatrix> solve_in_column_space(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows()) {
    throw std::invalid_argument("solve_in_column_space: row mismatch " + a.shape() + " vs " + b.shape());
  }
  const auto aug = detail::rref(hstack(a, b), a.cols());
  std::vector<MatrixEntry> t;
  for (std::size_t k = 0; k < aug.rows.size(); ++k) {
    if (aug.pivots[k] == std::numeric_limits<std::size_t>::max()) return std::nullopt;
    const std::size_t p = aug.pivots[k];
    for (const auto& [c, v] : aug.rows[k]) {
      if (c >= a.cols()) t.push_back({p, c - a.cols(), v});
    }
  }
  return SparseMatrix::from_triplets(a.cols(), b.cols(), std::move(t));
}

/// Column space of m contains column space of sub.
inline bool column_space_contains(const SparseMatrix& m, const SparseMatrix& sub) {
  return solve_in_column_space(m, sub).has_value();
}

inline bool is_invertible(const SparseMatrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

/// Inverse of a square invertible matrix.
inline SparseMatrix invert(const SparseMatrix& m) {
  if (!is_invertible(m)) throw std::domain_error("invert: matrix " + m.shape() + " is singular");
  auto x = solve_in_column_space(m, SparseMatrix::identity(m.rows()));
  return *x;
}

}  // namespace hermite
