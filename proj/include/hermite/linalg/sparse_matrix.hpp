#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hermite/linalg/rational.hpp"

namespace hermite {

struct MatrixEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  Rational value;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Immutable sparse matrix over Q. Entries are kept sorted by (row, col) and
/// never store an explicit zero.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  /// Duplicate coordinates are summed; zeros are dropped.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<MatrixEntry> triplets) {
    SparseMatrix m(rows, cols);
    for (const auto& t : triplets) {
      if (t.row >= rows || t.col >= cols) {
        throw std::out_of_range("SparseMatrix: entry (" + std::to_string(t.row) + "," + std::to_string(t.col) +
                                ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
      }
    }
    std::sort(triplets.begin(), triplets.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    m.entries_.reserve(triplets.size());
    for (auto& t : triplets) {
      if (!m.entries_.empty() && m.entries_.back().row == t.row && m.entries_.back().col == t.col) {
        m.entries_.back().value += t.value;
        if (m.entries_.back().value.is_zero()) m.entries_.pop_back();
      } else if (!t.value.is_zero()) {
        m.entries_.push_back(std::move(t));
      }
    }
    return m;
  }

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    m.entries_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) m.entries_.push_back({i, i, Rational(1)});
    return m;
  }

  static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    std::vector<MatrixEntry> t;
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("SparseMatrix::from_dense: ragged rows");
      for (std::size_t j = 0; j < c; ++j) {
        if (!rows[i][j].is_zero()) t.push_back({i, j, rows[i][j]});
      }
    }
    return from_triplets(r, c, std::move(t));
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::size_t nnz() const { return entries_.size(); }
  [[nodiscard]] bool is_zero() const { return entries_.empty(); }
  [[nodiscard]] std::span<const MatrixEntry> entries() const { return entries_; }

  [[nodiscard]] Rational at(std::size_t r, std::size_t c) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{r, c},
                               [](const MatrixEntry& e, const std::pair<std::size_t, std::size_t>& key) {
                                 return e.row != key.first ? e.row < key.first : e.col < key.second;
                               });
    if (it != entries_.end() && it->row == r && it->col == c) return it->value;
    return Rational(0);
  }

  [[nodiscard]] std::vector<std::vector<Rational>> to_dense() const {
    std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols_));
    for (const auto& e : entries_) d[e.row][e.col] = e.value;
    return d;
  }

  [[nodiscard]] SparseMatrix transpose() const {
    std::vector<MatrixEntry> t;
    t.reserve(entries_.size());
    for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
    return from_triplets(cols_, rows_, std::move(t));
  }

  [[nodiscard]] SparseMatrix scaled(const Rational& s) const {
    if (s.is_zero()) return SparseMatrix(rows_, cols_);
    SparseMatrix m = *this;
    for (auto& e : m.entries_) e.value *= s;
    return m;
  }

  /// Entries grouped by row: result[r] lists (col, value) in column order.
  [[nodiscard]] std::vector<std::vector<std::pair<std::size_t, Rational>>> row_lists() const {
    std::vector<std::vector<std::pair<std::size_t, Rational>>> out(rows_);
    for (const auto& e : entries_) out[e.row].emplace_back(e.col, e.value);
    return out;
  }

  [[nodiscard]] std::vector<std::vector<std::pair<std::size_t, Rational>>> column_lists() const {
    std::vector<std::vector<std::pair<std::size_t, Rational>>> out(cols_);
    for (const auto& e : entries_) out[e.col].emplace_back(e.row, e.value);
    return out;
  }

  [[nodiscard]] SparseMatrix select_columns(std::span<const std::size_t> cols) const {
    std::vector<std::vector<std::size_t>> where(cols_);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] >= cols_) throw std::out_of_range("SparseMatrix::select_columns");
      where[cols[k]].push_back(k);
    }
    std::vector<MatrixEntry> t;
    for (const auto& e : entries_) {
      for (auto k : where[e.col]) t.push_back({e.row, k, e.value});
    }
    return from_triplets(rows_, cols.size(), std::move(t));
  }

  [[nodiscard]] SparseMatrix select_rows(std::span<const std::size_t> rows) const {
    return transpose().select_columns(rows).transpose();
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw std::invalid_argument("SparseMatrix: product shape mismatch " + a.shape() + " * " + b.shape());
    }
    const auto brows = b.row_lists();
    std::vector<MatrixEntry> out;
    std::map<std::size_t, Rational> acc;
    std::size_t i = 0;
    const auto& ae = a.entries_;
    while (i < ae.size()) {
      const std::size_t r = ae[i].row;
      acc.clear();
      for (; i < ae.size() && ae[i].row == r; ++i) {
        for (const auto& [c, v] : brows[ae[i].col]) acc[c] += ae[i].value * v;
      }
      for (auto& [c, v] : acc) {
        if (!v.is_zero()) out.push_back({r, c, std::move(v)});
      }
    }
    SparseMatrix m(a.rows_, b.cols_);
    m.entries_ = std::move(out);
    return m;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    a.require_same_shape(b);
    std::vector<MatrixEntry> t(a.entries_.begin(), a.entries_.end());
    t.insert(t.end(), b.entries_.begin(), b.entries_.end());
    return from_triplets(a.rows_, a.cols_, std::move(t));
  }

  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return a + b.scaled(Rational(-1)); }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  [[nodiscard]] std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw std::invalid_argument("SparseMatrix: shape mismatch " + shape() + " vs " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<MatrixEntry> entries_;
};

/// Accumulates entries (summing duplicates) and produces a SparseMatrix.
class MatrixBuilder {
 public:
  MatrixBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  void add(std::size_t r, std::size_t c, const Rational& v) {
    if (v.is_zero()) return;
    if (r >= rows_ || c >= cols_) throw std::out_of_range("MatrixBuilder::add out of range");
    acc_[key(r, c)] += v;
  }

  [[nodiscard]] SparseMatrix build() const {
    std::vector<MatrixEntry> t;
    t.reserve(acc_.size());
    for (const auto& [k, v] : acc_) {
      if (!v.is_zero()) t.push_back({static_cast<std::size_t>(k / cols_), static_cast<std::size_t>(k % cols_), v});
    }
    return SparseMatrix::from_triplets(rows_, cols_, std::move(t));
  }

 private:
  [[nodiscard]] std::uint64_t key(std::size_t r, std::size_t c) const {
    return static_cast<std::uint64_t>(r) * cols_ + c;
  }
  std::size_t rows_;
  std::size_t cols_;
  std::unordered_map<std::uint64_t, Rational> acc_;
};

inline SparseMatrix hstack(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  std::vector<MatrixEntry> t(a.entries().begin(), a.entries().end());
  for (const auto& e : b.entries()) t.push_back({e.row, e.col + a.cols(), e.value});
  return SparseMatrix::from_triplets(a.rows(), a.cols() + b.cols(), std::move(t));
}

inline SparseMatrix hstack(const std::vector<SparseMatrix>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("hstack: no blocks");
  std::vector<MatrixEntry> t;
  std::size_t off = 0;
  for (const auto& b : blocks) {
    if (b.rows() != blocks.front().rows()) throw std::invalid_argument("hstack: row mismatch");
    for (const auto& e : b.entries()) t.push_back({e.row, e.col + off, e.value});
    off += b.cols();
  }
  return SparseMatrix::from_triplets(blocks.front().rows(), off, std::move(t));
}

inline SparseMatrix vstack(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  std::vector<MatrixEntry> t(a.entries().begin(), a.entries().end());
  for (const auto& e : b.entries()) t.push_back({e.row + a.rows(), e.col, e.value});
  return SparseMatrix::from_triplets(a.rows() + b.rows(), a.cols(), std::move(t));
}

/// Nonzero scalar c with a == c * b, if one exists. Two zero matrices give 1.
inline std::optional<Rational> proportionality(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::nullopt;
  if (a.nnz() != b.nnz()) return std::nullopt;
  if (a.is_zero()) return Rational(1);
  auto ae = a.entries();
  auto be = b.entries();
  const Rational c = ae[0].value / be[0].value;
  for (std::size_t k = 0; k < ae.size(); ++k) {
    if (ae[k].row != be[k].row || ae[k].col != be[k].col || ae[k].value != c * be[k].value) return std::nullopt;
  }
  return c;
}

}  // namespace hermite
