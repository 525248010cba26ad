#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hermite/graded/koszul.hpp"
#include "hermite/linalg/elimination.hpp"
#include "hermite/multilinear/basis_space.hpp"

namespace hermite {

/// Sym^n U with ordered basis x^n, x^{n-1}, ..., 1; basis vector k is x^{n-k}.
struct Sl2Space {
  int n = 0;

  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(n + 1); }
  [[nodiscard]] BasisSpace space(const std::string& name = "") const {
    return BasisSpace::free(dim(), name.empty() ? "Sym" + std::to_string(n) + "U" : name);
  }
  /// SL2 weight of x^{n-k}.
  [[nodiscard]] int weight(std::size_t k) const { return n - 2 * static_cast<int>(k); }
};

/// e(x^m) = (n - m) x^{m+1}
inline SparseMatrix sl2_raising(int n) {
  MatrixBuilder mb(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
  for (int k = 1; k <= n; ++k) mb.add(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(k), Rational(k));
  return mb.build();
}

/// f(x^m) = m x^{m-1}
inline SparseMatrix sl2_lowering(int n) {
  MatrixBuilder mb(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
  for (int k = 0; k < n; ++k) mb.add(static_cast<std::size_t>(k + 1), static_cast<std::size_t>(k), Rational(n - k));
  return mb.build();
}

/// h(x^m) = (2m - n) x^m
inline SparseMatrix sl2_cartan(int n) {
  MatrixBuilder mb(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) mb.add(static_cast<std::size_t>(k), static_cast<std::size_t>(k), Rational(n - 2 * k));
  return mb.build();
}

/// An endomorphism of V acting as a derivation on Wedge^k V.
inline SparseMatrix wedge_derivation(const SparseMatrix& op, int k) {
  if (op.rows() != op.cols()) throw std::invalid_argument("wedge_derivation: operator must be square");
  const auto v = BasisSpace::free(op.rows());
  const auto w = BasisSpace::wedge(k, v);
  const auto cols = op.column_lists();
  MatrixBuilder mb(w.dim(), w.dim());
  for (std::size_t c = 0; c < w.dim(); ++c) {
    const Tuple& I = w.label(c);
    for (std::size_t t = 0; t < I.size(); ++t) {
      Tuple rest = I;
      rest.erase(rest.begin() + static_cast<long>(t));
      for (const auto& [r, val] : cols[static_cast<std::size_t>(I[t])]) {
        // Replace slot t by r: e_r placed in slot t, then sorted.
        const Tuple single{static_cast<int>(r)};
        const int s = shuffle_sign(single, rest);
        if (s == 0) continue;
        const int back = (t % 2 == 0) ? 1 : -1;
        mb.add(w.index_of(merge_sorted(single, rest)), c, val * Rational(s * back));
      }
    }
  }
  return mb.build();
}

/// SL2 weight of a Wedge^k(Sym^b U) basis vector.
inline int sl2_wedge_weight(const Tuple& label, int b) {
  int w = 0;
  for (int i : label) w += b - 2 * i;
  return w;
}

/// Sym^{2b-2} U inside Wedge^2(Sym^b U): columns are the images of
/// x^{2b-2}, x^{2b-3}, ..., 1, starting from e_0 ^ e_1 and lowering.
inline SparseMatrix clebsch_gordan_v1(int b) {
  if (b < 1) throw std::invalid_argument("clebsch_gordan_v1: b must be positive");
  const auto w2 = BasisSpace::wedge(2, BasisSpace::free(static_cast<std::size_t>(b + 1)));
  const SparseMatrix f = wedge_derivation(sl2_lowering(b), 2);
  const int top = 2 * b - 2;
  std::vector<SparseMatrix> cols;
  cols.push_back(SparseMatrix::from_triplets(w2.dim(), 1, {{w2.index_of({0, 1}), 0, Rational(1)}}));
  for (int t = 0; t < top; ++t) cols.push_back((f * cols.back()).scaled(Rational(1, top - t)));
  return hstack(cols);
}

/// The V1 subspace of Wedge^2 V0 with V0 = Sym^b U.
inline BasisSpace sl2_v1_space(int b) {
  const auto v0 = BasisSpace::free(static_cast<std::size_t>(b + 1), "V0");
  return BasisSpace::subspace(BasisSpace::wedge(2, v0), clebsch_gordan_v1(b), "V1");
}

/// The Koszul map Wedge^2 V0 -> V0 restricted to V1 = Sym^{2b-2} U.
inline PolyMap sl2_phi_restriction(int b) {
  if (b < 2) throw std::invalid_argument("sl2_phi_restriction: b must be at least 2");
  return restrict_source(koszul_phi(b + 1), sl2_v1_space(b), clebsch_gordan_v1(b));
}

}  // namespace hermite
