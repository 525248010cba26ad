#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hermite/multilinear/basis_space.hpp"
#include "hermite/multilinear/minors.hpp"

namespace hermite {

namespace detail {

inline void require_kind(const BasisSpace& s, SpaceKind k, const char* what) {
  if (s.kind() != k) throw std::invalid_argument(std::string(what) + ": unexpected space kind for " + s.name());
}

inline void require_split(int k, int p, int q, const char* what) {
  if (p < 0 || q < 0 || p + q != k) {
    throw std::invalid_argument(std::string(what) + ": invalid split (" + std::to_string(p) + "," + std::to_string(q) +
                                ") of " + std::to_string(k));
  }
}

// All a' <= a componentwise with |a'| = p.
inline void sub_exponents(const Tuple& a, int p, std::size_t pos, Tuple& cur, std::vector<Tuple>& out) {
  if (pos == a.size()) {
    if (p == 0) out.push_back(cur);
    return;
  }
  for (int x = std::min(a[pos], p); x >= 0; --x) {
    cur[pos] = x;
    sub_exponents(a, p - x, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

inline std::vector<Tuple> sub_exponents(const Tuple& a, int p) {
  std::vector<Tuple> out;
  Tuple cur(a.size(), 0);
  sub_exponents(a, p, 0, cur, out);
  return out;
}

}  // namespace detail

/// Wedge^k V -> Wedge^p V (x) Wedge^q V, e_I -> sum over p-subsets A of
/// sign(A, I\A) e_A (x) e_{I\A}.
inline LinearMap comultiply_wedge(const BasisSpace& space, int p, int q) {
  detail::require_kind(space, SpaceKind::Wedge, "comultiply_wedge");
  detail::require_split(space.power(), p, q, "comultiply_wedge");
  const auto wp = BasisSpace::wedge(p, space.inner());
  const auto wq = BasisSpace::wedge(q, space.inner());
  const auto target = BasisSpace::tensor(wp, wq);
  MatrixBuilder mb(target.dim(), space.dim());
  for (std::size_t c = 0; c < space.dim(); ++c) {
    const Tuple& I = space.label(c);
    for (const auto& pos : combinations(static_cast<int>(I.size()), p)) {
      Tuple A;
      for (int k : pos) A.push_back(I[static_cast<std::size_t>(k)]);
      const Tuple B = complement_in(I, A);
      mb.add(wp.index_of(A) * wq.dim() + wq.index_of(B), c, Rational(shuffle_sign(A, B)));
    }
  }
  return {space, target, mb.build()};
}

/// Wedge^p V (x) Wedge^q V -> Wedge^{p+q} V.
inline LinearMap multiply_wedge(int p, int q, const BasisSpace& inner) {
  const auto wp = BasisSpace::wedge(p, inner);
  const auto wq = BasisSpace::wedge(q, inner);
  const auto src = BasisSpace::tensor(wp, wq);
  const auto tgt = BasisSpace::wedge(p + q, inner);
  MatrixBuilder mb(tgt.dim(), src.dim());
  for (std::size_t a = 0; a < wp.dim(); ++a) {
    for (std::size_t b = 0; b < wq.dim(); ++b) {
      const int s = shuffle_sign(wp.label(a), wq.label(b));
      if (s == 0) continue;
      mb.add(tgt.index_of(merge_sorted(wp.label(a), wq.label(b))), a * wq.dim() + b, Rational(s));
    }
  }
  return {src, tgt, mb.build()};
}

/// Sym^p V (x) Sym^q V -> Sym^{p+q} V, monomial concatenation.
inline LinearMap multiply_sym(int p, int q, const BasisSpace& inner) {
  const auto sp = BasisSpace::sym(p, inner);
  const auto sq = BasisSpace::sym(q, inner);
  const auto src = BasisSpace::tensor(sp, sq);
  const auto tgt = BasisSpace::sym(p + q, inner);
  MatrixBuilder mb(tgt.dim(), src.dim());
  for (std::size_t a = 0; a < sp.dim(); ++a) {
    for (std::size_t b = 0; b < sq.dim(); ++b) {
      Tuple e = sp.label(a);
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += sq.label(b)[k];
      mb.add(tgt.index_of(e), a * sq.dim() + b, Rational(1));
    }
  }
  return {src, tgt, mb.build()};
}

/// Sym^k V -> Sym^p V (x) Sym^q V, the algebra map extending x -> x(x)1 + 1(x)x.
inline LinearMap comultiply_sym(const BasisSpace& space, int p, int q) {
  detail::require_kind(space, SpaceKind::Sym, "comultiply_sym");
  detail::require_split(space.power(), p, q, "comultiply_sym");
  const auto sp = BasisSpace::sym(p, space.inner());
  const auto sq = BasisSpace::sym(q, space.inner());
  const auto target = BasisSpace::tensor(sp, sq);
  MatrixBuilder mb(target.dim(), space.dim());
  for (std::size_t c = 0; c < space.dim(); ++c) {
    const Tuple& a = space.label(c);
    for (const auto& a1 : detail::sub_exponents(a, p)) {
      Tuple a2 = a;
      long coeff = 1;
      for (std::size_t k = 0; k < a.size(); ++k) {
        a2[k] -= a1[k];
        coeff *= static_cast<long>(binomial(a[k], a1[k]));
      }
      mb.add(sp.index_of(a1) * sq.dim() + sq.index_of(a2), c, Rational(coeff));
    }
  }
  return {space, target, mb.build()};
}

/// D^k V -> D^p V (x) D^q V, e^(a) -> sum over a'+a''=a of e^(a') (x) e^(a'').
inline LinearMap comultiply_divided(const BasisSpace& space, int p, int q) {
  detail::require_kind(space, SpaceKind::Divided, "comultiply_divided");
  detail::require_split(space.power(), p, q, "comultiply_divided");
  const auto dp = BasisSpace::divided(p, space.inner());
  const auto dq = BasisSpace::divided(q, space.inner());
  const auto target = BasisSpace::tensor(dp, dq);
  MatrixBuilder mb(target.dim(), space.dim());
  for (std::size_t c = 0; c < space.dim(); ++c) {
    const Tuple& a = space.label(c);
    for (const auto& a1 : detail::sub_exponents(a, p)) {
      Tuple a2 = a;
      for (std::size_t k = 0; k < a.size(); ++k) a2[k] -= a1[k];
      mb.add(dp.index_of(a1) * dq.dim() + dq.index_of(a2), c, Rational(1));
    }
  }
  return {space, target, mb.build()};
}

/// D^p V (x) D^q V -> D^{p+q} V, e^(a) e^(b) = prod C(a_i+b_i, a_i) e^(a+b).
inline LinearMap multiply_divided(int p, int q, const BasisSpace& inner) {
  const auto dp = BasisSpace::divided(p, inner);
  const auto dq = BasisSpace::divided(q, inner);
  const auto src = BasisSpace::tensor(dp, dq);
  const auto tgt = BasisSpace::divided(p + q, inner);
  MatrixBuilder mb(tgt.dim(), src.dim());
  for (std::size_t a = 0; a < dp.dim(); ++a) {
    for (std::size_t b = 0; b < dq.dim(); ++b) {
      Tuple e = dp.label(a);
      long coeff = 1;
      for (std::size_t k = 0; k < e.size(); ++k) {
        coeff *= static_cast<long>(binomial(e[k] + dq.label(b)[k], e[k]));
        e[k] += dq.label(b)[k];
      }
      mb.add(tgt.index_of(e), a * dq.dim() + b, Rational(coeff));
    }
  }
  return {src, tgt, mb.build()};
}

/// Matrix of the pairing D^k(V) x Sym^k(V*) -> Q; rows index D^k(V), columns
/// Sym^k(V*). Matching exponent vectors pair to 1.
inline SparseMatrix divided_sym_pairing(int k, const BasisSpace& inner) {
  const auto d = BasisSpace::divided(k, inner);
  return SparseMatrix::identity(d.dim());
}

/// Wedge^k f; entry (R, C) is the minor of f's matrix on rows R, columns C.
inline LinearMap wedge_power_of_map(const LinearMap& f, int k) {
  const auto src = BasisSpace::wedge(k, f.source);
  const auto tgt = BasisSpace::wedge(k, f.target);
  const auto cols = f.matrix.column_lists();
  MatrixBuilder mb(tgt.dim(), src.dim());
  std::vector<std::vector<Rational>> dense = f.matrix.to_dense();
  const std::size_t nrows = f.matrix.rows();
  if (nrows > 63) throw std::invalid_argument("wedge_power_of_map: target dimension too large");
  std::unordered_map<std::uint64_t, std::size_t> row_index;
  for (std::size_t r = 0; r < tgt.dim(); ++r) row_index.emplace(tuple_mask(tgt.label(r)), r);
  for (std::size_t c = 0; c < src.dim(); ++c) {
    auto minors = minors_on_columns<Rational>(
        nrows, src.label(c), [&](std::size_t r, std::size_t col) { return &dense[r][col]; });
    for (auto& [mask, v] : minors) mb.add(row_index.at(mask), c, v);
  }
  return {src, tgt, mb.build()};
}

/// Sym^k f in monomial bases.
inline LinearMap sym_power_of_map(const LinearMap& f, int k) {
  const auto src = BasisSpace::sym(k, f.source);
  const auto tgt = BasisSpace::sym(k, f.target);
  const auto cols = f.matrix.column_lists();
  MatrixBuilder mb(tgt.dim(), src.dim());
  for (std::size_t c = 0; c < src.dim(); ++c) {
    // Expand the product of images of the factors.
    std::map<Tuple, Rational> acc{{Tuple(tgt.inner().dim(), 0), Rational(1)}};
    const Tuple& a = src.label(c);
    for (std::size_t v = 0; v < a.size(); ++v) {
      for (int rep = 0; rep < a[v]; ++rep) {
        std::map<Tuple, Rational> next;
        for (const auto& [mono, coeff] : acc) {
          for (const auto& [r, x] : cols[v]) {
            Tuple m = mono;
            ++m[r];
            next[m] += coeff * x;
          }
        }
        acc = std::move(next);
      }
    }
    for (const auto& [mono, coeff] : acc) mb.add(tgt.index_of(mono), c, coeff);
  }
  return {src, tgt, mb.build()};
}

inline LinearMap subspace_inclusion(const BasisSpace& sub) {
  detail::require_kind(sub, SpaceKind::Subspace, "subspace_inclusion");
  return {sub, sub.inner(), sub.spanning()};
}

/// Wedge^k(sub) -> Wedge^k(ambient).
inline LinearMap induced_wedge_inclusion(const BasisSpace& sub, int k) {
  return wedge_power_of_map(subspace_inclusion(sub), k);
}

/// Swap of factors V (x) W -> W (x) V.
inline LinearMap swap_factors(const BasisSpace& v, const BasisSpace& w) {
  const auto src = BasisSpace::tensor(v, w);
  const auto tgt = BasisSpace::tensor(w, v);
  MatrixBuilder mb(tgt.dim(), src.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    for (std::size_t j = 0; j < w.dim(); ++j) mb.add(j * v.dim() + i, i * w.dim() + j, Rational(1));
  }
  return {src, tgt, mb.build()};
}

}  // namespace hermite
