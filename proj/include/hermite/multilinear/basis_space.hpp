#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hermite/linalg/elimination.hpp"
#include "hermite/linalg/sparse_matrix.hpp"
#include "hermite/multilinear/combinatorics.hpp"

namespace hermite {

enum class SpaceKind { Free, Sym, Wedge, Divided, Tensor, Dual, Subspace };

/// A finite-dimensional space with an ordered basis of integer-tuple labels.
///
///   Free(n)         labels {k}
///   Sym/Divided     exponent vectors over the inner basis, x0^p first
///   Wedge           strictly increasing index tuples, lexicographic
///   Tensor          concatenated factor labels, row-major
///   Dual            inner labels (dual basis)
///   Subspace        {k}, column k of the spanning matrix
class BasisSpace {
 public:
  BasisSpace() : BasisSpace(free(0)) {}

  static BasisSpace free(std::size_t n, std::string name = "") {
    BasisSpace s(SpaceKind::Free, 0, {}, name.empty() ? "Q^" + std::to_string(n) : std::move(name));
    for (std::size_t k = 0; k < n; ++k) s.labels_.push_back({static_cast<int>(k)});
    s.finish();
    return s;
  }

  static BasisSpace sym(int power, const BasisSpace& inner) {
    if (power < 0) throw std::invalid_argument("BasisSpace::sym: negative power");
    BasisSpace s(SpaceKind::Sym, power, {inner}, "Sym^" + std::to_string(power) + "(" + inner.name() + ")");
    s.labels_ = exponent_vectors(static_cast<int>(inner.dim()), power);
    s.finish();
    return s;
  }

  static BasisSpace divided(int power, const BasisSpace& inner) {
    if (power < 0) throw std::invalid_argument("BasisSpace::divided: negative power");
    BasisSpace s(SpaceKind::Divided, power, {inner}, "D^" + std::to_string(power) + "(" + inner.name() + ")");
    s.labels_ = exponent_vectors(static_cast<int>(inner.dim()), power);
    s.finish();
    return s;
  }

  static BasisSpace wedge(int power, const BasisSpace& inner) {
    if (power < 0) throw std::invalid_argument("BasisSpace::wedge: negative power");
    BasisSpace s(SpaceKind::Wedge, power, {inner}, "Wedge^" + std::to_string(power) + "(" + inner.name() + ")");
    s.labels_ = combinations(static_cast<int>(inner.dim()), power);
    s.finish();
    return s;
  }

  static BasisSpace tensor(std::vector<BasisSpace> factors) {
    std::string name;
    for (std::size_t k = 0; k < factors.size(); ++k) name += (k ? " (x) " : "") + factors[k].name();
    BasisSpace s(SpaceKind::Tensor, 0, std::move(factors), name.empty() ? "Q" : name);
    std::vector<Tuple> acc{{}};
    for (const auto& f : s.inner_) {
      std::vector<Tuple> next;
      next.reserve(acc.size() * f.dim());
      for (const auto& a : acc) {
        for (const auto& l : f.labels_) {
          Tuple t = a;
          t.insert(t.end(), l.begin(), l.end());
          next.push_back(std::move(t));
        }
      }
      acc = std::move(next);
    }
    s.labels_ = std::move(acc);
    s.finish();
    return s;
  }

  static BasisSpace tensor(const BasisSpace& a, const BasisSpace& b) { return tensor(std::vector<BasisSpace>{a, b}); }

  static BasisSpace dual(const BasisSpace& inner) {
    BasisSpace s(SpaceKind::Dual, 0, {inner}, "(" + inner.name() + ")*");
    s.labels_ = inner.labels_;
    s.finish();
    return s;
  }

  /// Span of the columns of `spanning` inside `ambient`.
  static BasisSpace subspace(const BasisSpace& ambient, SparseMatrix spanning, std::string name = "") {
    if (spanning.rows() != ambient.dim()) {
      throw std::invalid_argument("BasisSpace::subspace: spanning matrix has " + std::to_string(spanning.rows()) +
                                  " rows, ambient dim is " + std::to_string(ambient.dim()));
    }
    if (rank(spanning) != spanning.cols()) {
      throw std::invalid_argument("BasisSpace::subspace: spanning matrix is rank deficient");
    }
    BasisSpace s(SpaceKind::Subspace, 0, {ambient}, name.empty() ? "V<" + ambient.name() + ">" : std::move(name));
    s.spanning_ = std::make_shared<SparseMatrix>(std::move(spanning));
    for (std::size_t k = 0; k < s.spanning_->cols(); ++k) s.labels_.push_back({static_cast<int>(k)});
    s.finish();
    return s;
  }

  [[nodiscard]] SpaceKind kind() const { return kind_; }
  [[nodiscard]] int power() const { return power_; }
  [[nodiscard]] std::size_t dim() const { return labels_.size(); }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::vector<Tuple>& labels() const { return labels_; }
  [[nodiscard]] const Tuple& label(std::size_t k) const { return labels_.at(k); }
  [[nodiscard]] std::size_t index_of(const Tuple& t) const { return index_->at(t); }
  [[nodiscard]] const BasisSpace& inner() const { return inner_.at(0); }
  [[nodiscard]] const std::vector<BasisSpace>& factors() const { return inner_; }
  [[nodiscard]] const SparseMatrix& spanning() const {
    if (!spanning_) throw std::logic_error("BasisSpace::spanning: not a subspace");
    return *spanning_;
  }

  /// Offsets for splitting a tensor label into its factor labels.
  [[nodiscard]] std::vector<Tuple> split_label(std::size_t k) const {
    if (kind_ != SpaceKind::Tensor) return {labels_.at(k)};
    std::vector<Tuple> parts;
    const Tuple& l = labels_.at(k);
    std::size_t pos = 0;
    for (const auto& f : inner_) {
      const std::size_t len = f.dim() == 0 ? 0 : f.labels_.front().size();
      parts.emplace_back(l.begin() + static_cast<std::ptrdiff_t>(pos), l.begin() + static_cast<std::ptrdiff_t>(pos + len));
      pos += len;
    }
    return parts;
  }

  /// Torus weight of basis vector k, taking Free(n) to carry the standard
  /// weights e_0..e_{n-1}.
  [[nodiscard]] Tuple weight(std::size_t k) const {
    const Tuple& l = labels_.at(k);
    switch (kind_) {
      case SpaceKind::Free: {
        Tuple w(dim(), 0);
        w[static_cast<std::size_t>(l[0])] = 1;
        return w;
      }
      case SpaceKind::Sym:
      case SpaceKind::Divided: {
        Tuple w;
        for (std::size_t i = 0; i < l.size(); ++i) {
          if (l[i] == 0) continue;
          add_scaled(w, inner().weight(i), l[i]);
        }
        if (w.empty()) w = zero_weight();
        return w;
      }
      case SpaceKind::Wedge: {
        Tuple w = zero_weight();
        for (int i : l) add_scaled(w, inner().weight(static_cast<std::size_t>(i)), 1);
        return w;
      }
      case SpaceKind::Tensor: {
        Tuple w = zero_weight();
        const auto parts = split_label(k);
        for (std::size_t f = 0; f < inner_.size(); ++f) add_scaled(w, inner_[f].weight(inner_[f].index_of(parts[f])), 1);
        return w;
      }
      case SpaceKind::Dual: {
        Tuple w = inner().weight(k);
        for (int& x : w) x = -x;
        return w;
      }
      case SpaceKind::Subspace:
        throw std::logic_error("BasisSpace::weight: subspace basis vectors are not weight vectors in general");
    }
    return {};
  }

  /// Number of torus coordinates, i.e. the dimension of the underlying Free space.
  [[nodiscard]] std::size_t torus_rank() const {
    switch (kind_) {
      case SpaceKind::Free:
        return dim();
      case SpaceKind::Tensor:
        return inner_.empty() ? 0 : inner_.front().torus_rank();
      default:
        return inner().torus_rank();
    }
  }

  friend bool operator==(const BasisSpace& a, const BasisSpace& b) {
    if (a.kind_ != b.kind_ || a.power_ != b.power_ || a.labels_ != b.labels_ || a.inner_.size() != b.inner_.size()) {
      return false;
    }
    for (std::size_t k = 0; k < a.inner_.size(); ++k) {
      if (!(a.inner_[k] == b.inner_[k])) return false;
    }
    if (a.spanning_ && b.spanning_) return *a.spanning_ == *b.spanning_;
    return !a.spanning_ && !b.spanning_;
  }

 private:
  BasisSpace(SpaceKind kind, int power, std::vector<BasisSpace> inner, std::string name)
      : kind_(kind), power_(power), inner_(std::move(inner)), name_(std::move(name)) {}

  void finish() { index_ = std::make_shared<LabelIndex>(labels_); }

  [[nodiscard]] Tuple zero_weight() const { return Tuple(torus_rank(), 0); }

  static void add_scaled(Tuple& acc, const Tuple& w, int s) {
    if (acc.empty()) acc.assign(w.size(), 0);
    for (std::size_t i = 0; i < w.size(); ++i) acc[i] += s * w[i];
  }

  SpaceKind kind_ = SpaceKind::Free;
  int power_ = 0;
  std::vector<BasisSpace> inner_;
  std::string name_;
  std::vector<Tuple> labels_;
  std::shared_ptr<const LabelIndex> index_;
  std::shared_ptr<const SparseMatrix> spanning_;
};

/// A Q-linear map with matrix of shape dim(target) x dim(source).
struct LinearMap {
  BasisSpace source;
  BasisSpace target;
  SparseMatrix matrix;

  LinearMap(BasisSpace src, BasisSpace tgt, SparseMatrix m)
      : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
    if (matrix.rows() != target.dim() || matrix.cols() != source.dim()) {
      throw std::invalid_argument("LinearMap: matrix " + matrix.shape() + " does not match " +
                                  std::to_string(target.dim()) + "x" + std::to_string(source.dim()));
    }
  }

  static LinearMap identity(const BasisSpace& v) { return {v, v, SparseMatrix::identity(v.dim())}; }
};

/// g after f.
inline LinearMap compose(const LinearMap& g, const LinearMap& f) {
  if (g.source.dim() != f.target.dim()) throw std::invalid_argument("compose: dimension mismatch");
  return {f.source, g.target, g.matrix * f.matrix};
}

/// Kronecker product of matrices, row-major on both sides.
inline SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<MatrixEntry> t;
  t.reserve(a.nnz() * b.nnz());
  for (const auto& x : a.entries()) {
    for (const auto& y : b.entries()) {
      t.push_back({x.row * b.rows() + y.row, x.col * b.cols() + y.col, x.value * y.value});
    }
  }
  return SparseMatrix::from_triplets(a.rows() * b.rows(), a.cols() * b.cols(), std::move(t));
}

inline LinearMap tensor_maps(const LinearMap& f, const LinearMap& g) {
  return {BasisSpace::tensor(f.source, g.source), BasisSpace::tensor(f.target, g.target), kron(f.matrix, g.matrix)};
}

}  // namespace hermite
