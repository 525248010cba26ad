#pragma once

#include <string>
#include <vector>

#include "hermite/graded/complex.hpp"

namespace hermite {

/// Koszul complex of S = Q[z0..z_{n-1}] truncated at homological degree
/// `top`: Wedge^k V (x) S(-k), d(e_I) = sum_t (-1)^t z_{i_t} e_{I \ i_t}.
inline GradedComplex koszul_complex(int n, int top = -1) {
  if (top < 0 || top > n) top = n;
  const auto v = BasisSpace::free(static_cast<std::size_t>(n), "V");
  std::vector<GradedFreeModule> terms;
  for (int k = 0; k <= top; ++k) terms.emplace_back(BasisSpace::wedge(k, v), k);
  std::vector<PolyMap> diffs;
  for (int k = 1; k <= top; ++k) {
    const auto& src = terms[static_cast<std::size_t>(k)].summands()[0].space;
    const auto& tgt = terms[static_cast<std::size_t>(k - 1)].summands()[0].space;
    PolyMatrix m(tgt.dim(), src.dim());
    for (std::size_t c = 0; c < src.dim(); ++c) {
      const Tuple& I = src.label(c);
      for (std::size_t t = 0; t < I.size(); ++t) {
        Tuple rest = I;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(t));
        m.add(tgt.index_of(rest), c, Polynomial::variable(I[t], Rational(t % 2 == 0 ? 1 : -1)));
      }
    }
    diffs.emplace_back(n, terms[static_cast<std::size_t>(k)], terms[static_cast<std::size_t>(k - 1)], std::move(m));
  }
  return {n, 0, std::move(terms), std::move(diffs)};
}

/// The Koszul differential Wedge^2 V0 (x) S(-2) -> V0 (x) S(-1),
/// e_a ^ e_c -> z_a e_c - z_c e_a.
inline PolyMap koszul_phi(int n) {
  const auto v0 = BasisSpace::free(static_cast<std::size_t>(n), "V0");
  const auto w2 = BasisSpace::wedge(2, v0);
  PolyMatrix m(v0.dim(), w2.dim());
  for (std::size_t c = 0; c < w2.dim(); ++c) {
    const int a = w2.label(c)[0];
    const int b = w2.label(c)[1];
    m.add(static_cast<std::size_t>(b), c, Polynomial::variable(a));
    m.add(static_cast<std::size_t>(a), c, Polynomial::variable(b, Rational(-1)));
  }
  return {n, GradedFreeModule(w2, 2), GradedFreeModule(v0, 1), std::move(m)};
}

/// Restriction of a map to the subspace spanned by the columns of `spanning`,
/// with `space` as the new source generator space.
inline PolyMap restrict_source(const PolyMap& phi, const BasisSpace& space, const SparseMatrix& spanning) {
  const auto twist = phi.source().uniform_twist();
  if (!twist) throw std::invalid_argument("restrict_source: source must have a single twist");
  return {phi.nvars(), GradedFreeModule(space, *twist), phi.target(), phi.matrix() * PolyMatrix::from_constant(spanning)};
}

}  // namespace hermite
