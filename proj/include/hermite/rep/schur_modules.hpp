#pragma once

#include <stdexcept>

#include "hermite/linalg/elimination.hpp"
#include "hermite/multilinear/basis_space.hpp"
#include "hermite/rep/partitions.hpp"

namespace hermite {

/// Koszul differential Wedge^i V (x) Sym^j V -> Wedge^{i-1} V (x) Sym^{j+1} V,
/// e_I (x) m -> sum_t (-1)^t e_{I - i_t} (x) z_{i_t} m.
inline LinearMap koszul_delta(const BasisSpace& v, int i, int j) {
  if (i < 1 || j < 0) throw std::invalid_argument("koszul_delta: need i >= 1 and j >= 0");
  const auto src_w = BasisSpace::wedge(i, v);
  const auto src_s = BasisSpace::sym(j, v);
  const auto tgt_w = BasisSpace::wedge(i - 1, v);
  const auto tgt_s = BasisSpace::sym(j + 1, v);
  const auto src = BasisSpace::tensor(src_w, src_s);
  const auto tgt = BasisSpace::tensor(tgt_w, tgt_s);
  MatrixBuilder mb(tgt.dim(), src.dim());
  for (std::size_t a = 0; a < src_w.dim(); ++a) {
    const Tuple& I = src_w.label(a);
    for (std::size_t t = 0; t < I.size(); ++t) {
      Tuple rest = I;
      rest.erase(rest.begin() + static_cast<long>(t));
      const std::size_t ra = tgt_w.index_of(rest);
      const Rational sign((t % 2 == 0) ? 1 : -1);
      for (std::size_t m = 0; m < src_s.dim(); ++m) {
        Tuple e = src_s.label(m);
        ++e[static_cast<std::size_t>(I[t])];
        mb.add(ra * tgt_s.dim() + tgt_s.index_of(e), a * src_s.dim() + m, sign);
      }
    }
  }
  return {src, tgt, mb.build()};
}

/// S_{(j, 1^i)} V as the kernel of koszul_delta(v, i, j), with the canonical
/// kernel basis.
inline BasisSpace hook_schur_module(const BasisSpace& v, int i, int j) {
  const auto delta = koszul_delta(v, i, j);
  return BasisSpace::subspace(delta.source, kernel_basis(delta.matrix),
                              "S(" + std::to_string(j) + ",1^" + std::to_string(i) + ")");
}

}  // namespace hermite
