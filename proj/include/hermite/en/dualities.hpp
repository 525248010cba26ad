#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "hermite/en/schur_complexes.hpp"

namespace hermite {

namespace detail {

// Wedge^w F* -> Wedge^{f-w} F, e*_J -> sign(J, J^c) e_{J^c}.
inline std::pair<Tuple, int> wedge_complement(const Tuple& J, int f) {
  Tuple all(static_cast<std::size_t>(f));
  std::iota(all.begin(), all.end(), 0);
  Tuple K = complement_in(all, J);
  return {K, shuffle_sign(J, K)};
}

inline PolyMap constant_block(int nvars, const GradedFreeModule& src, const GradedFreeModule& tgt, MatrixBuilder& mb) {
  return {nvars, src, tgt, PolyMatrix::from_constant(mb.build())};
}

}  // namespace detail

/// A chain map whose squares were aligned by rescaling blocks; the applied
/// scalars are part of the result.
struct AlignedChainMap {
  ChainMap map;
  std::map<int, Rational> scalars;
  bool aligned = false;
};

/// The factor swap (Wedge^j F (x) Sym^{i-j} G)* -> D^{i-j}(G*) (x) Wedge^j(F*)
/// from dualize(Sym^i(phi)) to Wedge^i(phi*), shift i.
inline ChainMap duality1_map(const PolyMap& phi, int i) {
  const GradedComplex src = dualize(sym_complex(phi, i));
  const GradedComplex tgt = wedge_complex(dual_map(phi), i);
  const ENInput in(phi);
  ChainMap cm{src, tgt, i, {}};
  for (int j = 0; j <= std::min(i, in.f()); ++j) {
    const auto wedge = BasisSpace::wedge(j, in.F);
    const auto sym = BasisSpace::sym(i - j, in.G);
    const auto& s = src.term(-j);
    const auto& t = tgt.term(i - j);
    MatrixBuilder mb(t.rank(), s.rank());
    for (std::size_t a = 0; a < wedge.dim(); ++a) {
      for (std::size_t b = 0; b < sym.dim(); ++b) mb.add(b * wedge.dim() + a, a * sym.dim() + b, Rational(1));
    }
    cm.blocks.emplace(-j, detail::constant_block(in.nvars(), s, t, mb));
  }
  return cm;
}

/// Identification of Wedge^{f-g-i}(phi*) with the reformulated dual side of
/// C_i(phi) via Wedge^w F* = Wedge^{f-w} F, signs aligned square by square.
inline AlignedChainMap wedgedual_map(const PolyMap& phi, int i) {
  const ENInput in(phi);
  const int m = in.f() - in.g() - i;
  if (m < 0) throw std::invalid_argument("wedgedual_map: f - g - i must be nonnegative");
  const GradedComplex tgt = wedge_side_complex(phi, i);
  GradedComplex src = wedge_complex(dual_map(phi), m);
  const int offset = in.f() * in.twist_F - in.g() * in.twist_G;
  src = src.twisted(offset);
  AlignedChainMap out{ChainMap{src, tgt, i + 1, {}}, {}, false};
  const auto gdual = BasisSpace::dual(in.G);
  const auto fdual = BasisSpace::dual(in.F);
  for (int j = src.first_degree(); j <= src.last_degree(); ++j) {
    const auto div = BasisSpace::divided(j, gdual);
    const auto ws = BasisSpace::wedge(m - j, fdual);
    const auto wt = BasisSpace::wedge(in.f() - (m - j), in.F);
    const auto& s = src.term(j);
    const auto& t = tgt.term(i + 1 + j);
    MatrixBuilder mb(t.rank(), s.rank());
    for (std::size_t a = 0; a < div.dim(); ++a) {
      for (std::size_t w = 0; w < ws.dim(); ++w) {
        const auto [K, sign] = detail::wedge_complement(ws.label(w), in.f());
        mb.add(a * wt.dim() + wt.index_of(K), a * ws.dim() + w, Rational(sign));
      }
    }
    out.map.blocks.emplace(j, detail::constant_block(in.nvars(), s, t, mb));
  }
  auto sc = align_chain_scalars(out.map);
  out.aligned = sc.has_value();
  if (sc) out.scalars = std::move(*sc);
  return out;
}

/// Identification of dualize(C_{f-g-i}(phi)) with C_i(phi): D^k(G*)* = Sym^k G
/// and Wedge^w F* = Wedge^{f-w} F, factors swapped, signs aligned.
inline AlignedChainMap duality2_map(const PolyMap& phi, int i) {
  const ENInput in(phi);
  const int f = in.f();
  const int g = in.g();
  const int ip = f - g - i;
  const ENComplex other = en_complex(phi, ip);
  const ENComplex self = en_complex(phi, i);
  GradedComplex src = dualize(other.complex);
  const int offset = f * in.twist_F - g * in.twist_G;
  src = src.twisted(offset);
  const GradedComplex& tgt = self.complex;
  const int shift = f - g + 1;
  AlignedChainMap out{ChainMap{src, tgt, shift, {}}, {}, false};

  for (int h = other.complex.first_degree(); h <= other.complex.last_degree(); ++h) {
    const auto& s = src.term(-h);
    const auto& t = tgt.term(-h + shift);
    MatrixBuilder mb(t.rank(), s.rank());
    const bool sym_side = other.kind == ENKind::PureSym || (other.kind == ENKind::Spliced && h <= ip);
    if (sym_side) {
      // (Wedge^h F (x) Sym^{ip-h} G)* -> D^{ip-h}(G*) (x) Wedge^{f-h} F.
      const auto wedge = BasisSpace::wedge(h, in.F);
      const auto sym = BasisSpace::sym(ip - h, in.G);
      const auto wt = BasisSpace::wedge(f - h, in.F);
      for (std::size_t a = 0; a < wedge.dim(); ++a) {
        const auto [K, sign] = detail::wedge_complement(wedge.label(a), f);
        for (std::size_t b = 0; b < sym.dim(); ++b) {
          mb.add(b * wt.dim() + wt.index_of(K), a * sym.dim() + b, Rational(sign));
        }
      }
    } else {
      // (D^k(G*) (x) Wedge^w F)* -> Wedge^{f-w} F (x) Sym^k G.
      const int k = h - ip - 1;
      const int w = g + ip + k;
      const auto div = BasisSpace::divided(k, BasisSpace::dual(in.G));
      const auto wedge = BasisSpace::wedge(w, in.F);
      const auto wt = BasisSpace::wedge(f - w, in.F);
      const auto sym = BasisSpace::sym(k, in.G);
      for (std::size_t a = 0; a < div.dim(); ++a) {
        for (std::size_t b = 0; b < wedge.dim(); ++b) {
          const auto [K, sign] = detail::wedge_complement(wedge.label(b), f);
          mb.add(wt.index_of(K) * sym.dim() + a, a * wedge.dim() + b, Rational(sign));
        }
      }
    }
    out.map.blocks.emplace(-h, detail::constant_block(in.nvars(), s, t, mb));
  }
  auto sc = align_chain_scalars(out.map);
  out.aligned = sc.has_value();
  if (sc) out.scalars = std::move(*sc);
  return out;
}

}  // namespace hermite
