#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hermite/graded/complex.hpp"
#include "hermite/multilinear/minors.hpp"
#include "hermite/multilinear/structure_maps.hpp"

namespace hermite {

enum class ENKind { PureSym, PureWedge, Spliced };

inline std::string to_string(ENKind k) {
  switch (k) {
    case ENKind::PureSym:
      return "pure-sym";
    case ENKind::PureWedge:
      return "pure-wedge";
    case ENKind::Spliced:
      return "spliced";
  }
  return "?";
}

/// A map phi: F -> G of free modules with single twists on each side.
struct ENInput {
  PolyMap phi;
  BasisSpace F;
  BasisSpace G;
  int twist_F = 0;
  int twist_G = 0;

  [[nodiscard]] int f() const { return static_cast<int>(F.dim()); }
  [[nodiscard]] int g() const { return static_cast<int>(G.dim()); }
  [[nodiscard]] int nvars() const { return phi.nvars(); }

  explicit ENInput(PolyMap map) : phi(std::move(map)) {
    const auto tf = phi.source().uniform_twist();
    const auto tg = phi.target().uniform_twist();
    if ((!tf && phi.source().rank() > 0) || (!tg && phi.target().rank() > 0)) {
      throw std::invalid_argument("ENInput: source and target must each have a single twist");
    }
    twist_F = tf.value_or(0);
    twist_G = tg.value_or(0);
    F = space_of(phi.source());
    G = space_of(phi.target());
  }

  /// Entry of phi at (row r of G, column c of F); nullptr when zero.
  [[nodiscard]] const Polynomial* entry(std::size_t r, std::size_t c) const {
    auto it = phi.matrix().entries().find({r, c});
    return it == phi.matrix().entries().end() ? nullptr : &it->second;
  }

 private:
  static BasisSpace space_of(const GradedFreeModule& m) {
    if (m.summands().size() == 1) return m.summands()[0].space;
    return BasisSpace::free(m.rank());
  }
};

struct ENComplex {
  int index = 0;
  ENKind kind = ENKind::PureSym;
  GradedComplex complex;
};

/// Dual map phi*: G* -> F*.
inline PolyMap dual_map(const PolyMap& phi) {
  return {phi.nvars(), phi.target().dual(), phi.source().dual(), phi.matrix().transpose()};
}

/// Sym^i(phi): Wedge^j F (x) Sym^{i-j} G in homological degree j, with
/// e_I (x) g^a -> sum_t (-1)^t sum_r phi(r, i_t) e_{I \ i_t} (x) g^{a + e_r}.
inline GradedComplex sym_complex(const PolyMap& map, int i) {
  if (i < 0) throw std::invalid_argument("sym_complex: negative power");
  const ENInput in(map);
  const int top = std::min(i, in.f());
  std::vector<GradedFreeModule> terms;
  std::vector<BasisSpace> wedges;
  std::vector<BasisSpace> syms;
  for (int j = 0; j <= top; ++j) {
    wedges.push_back(BasisSpace::wedge(j, in.F));
    syms.push_back(BasisSpace::sym(i - j, in.G));
    terms.emplace_back(BasisSpace::tensor(wedges.back(), syms.back()), j * in.twist_F + (i - j) * in.twist_G);
  }
  std::vector<PolyMap> diffs;
  for (int j = 1; j <= top; ++j) {
    const auto& ws = wedges[static_cast<std::size_t>(j)];
    const auto& ss = syms[static_cast<std::size_t>(j)];
    const auto& wt = wedges[static_cast<std::size_t>(j - 1)];
    const auto& st = syms[static_cast<std::size_t>(j - 1)];
    PolyMatrix m(wt.dim() * st.dim(), ws.dim() * ss.dim());
    for (std::size_t w = 0; w < ws.dim(); ++w) {
      const Tuple& I = ws.label(w);
      for (std::size_t t = 0; t < I.size(); ++t) {
        Tuple rest = I;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(t));
        const std::size_t wr = wt.index_of(rest);
        const Rational sign(t % 2 == 0 ? 1 : -1);
        for (std::size_t r = 0; r < in.G.dim(); ++r) {
          const Polynomial* p = in.entry(r, static_cast<std::size_t>(I[t]));
          if (p == nullptr) continue;
          const Polynomial coeff = *p * sign;
          for (std::size_t s = 0; s < ss.dim(); ++s) {
            Tuple a = ss.label(s);
            ++a[r];
            m.add(wr * st.dim() + st.index_of(a), w * ss.dim() + s, coeff);
          }
        }
      }
    }
    diffs.emplace_back(in.nvars(), terms[static_cast<std::size_t>(j)], terms[static_cast<std::size_t>(j - 1)],
                       std::move(m));
  }
  return {in.nvars(), 0, std::move(terms), std::move(diffs)};
}

/// Wedge^i(phi): D^j F (x) Wedge^{i-j} G in homological degree j, with
/// f^(a) (x) e_B -> sum_{s: a_s > 0} f^(a - e_s) (x) sum_r phi(r, s) e_r ^ e_B.
inline GradedComplex wedge_complex(const PolyMap& map, int i) {
  if (i < 0) throw std::invalid_argument("wedge_complex: negative power");
  const ENInput in(map);
  const int bottom = std::max(0, i - in.g());
  std::vector<GradedFreeModule> terms;
  std::vector<BasisSpace> divs;
  std::vector<BasisSpace> wedges;
  for (int j = bottom; j <= i; ++j) {
    divs.push_back(BasisSpace::divided(j, in.F));
    wedges.push_back(BasisSpace::wedge(i - j, in.G));
    terms.emplace_back(BasisSpace::tensor(divs.back(), wedges.back()), j * in.twist_F + (i - j) * in.twist_G);
  }
  std::vector<PolyMap> diffs;
  for (std::size_t k = 1; k < terms.size(); ++k) {
    const auto& ds = divs[k];
    const auto& ws = wedges[k];
    const auto& dt = divs[k - 1];
    const auto& wt = wedges[k - 1];
    PolyMatrix m(dt.dim() * wt.dim(), ds.dim() * ws.dim());
    for (std::size_t x = 0; x < ds.dim(); ++x) {
      const Tuple& a = ds.label(x);
      for (std::size_t s = 0; s < a.size(); ++s) {
        if (a[s] == 0) continue;
        Tuple a1 = a;
        --a1[s];
        const std::size_t xr = dt.index_of(a1);
        for (std::size_t r = 0; r < in.G.dim(); ++r) {
          const Polynomial* p = in.entry(r, s);
          if (p == nullptr) continue;
          for (std::size_t y = 0; y < ws.dim(); ++y) {
            const Tuple& B = ws.label(y);
            const int sign = shuffle_sign({static_cast<int>(r)}, B);
            if (sign == 0) continue;
            const Tuple merged = merge_sorted({static_cast<int>(r)}, B);
            m.add(xr * wt.dim() + wt.index_of(merged), x * ws.dim() + y, *p * Rational(sign));
          }
        }
      }
    }
    diffs.emplace_back(in.nvars(), terms[k], terms[k - 1], std::move(m));
  }
  return {in.nvars(), bottom, std::move(terms), std::move(diffs)};
}

namespace detail {

// Term k of the reformulated dual side: D^k(G*) (x) Wedge^{g+i+k} F.
struct WedgeSideTerm {
  int k;
  BasisSpace div;
  BasisSpace wedge;
  GradedFreeModule module;
};

inline std::vector<WedgeSideTerm> wedge_side_terms(const ENInput& in, int i) {
  std::vector<WedgeSideTerm> out;
  const auto gdual = BasisSpace::dual(in.G);
  for (int k = std::max(0, -(in.g() + i)); k <= in.f() - in.g() - i; ++k) {
    const int w = in.g() + i + k;
    if (w < 0 || w > in.f()) continue;
    auto div = BasisSpace::divided(k, gdual);
    auto wedge = BasisSpace::wedge(w, in.F);
    const int twist = -k * in.twist_G + w * in.twist_F - in.g() * in.twist_G;
    out.push_back({k, div, wedge, GradedFreeModule(BasisSpace::tensor(div, wedge), twist)});
  }
  return out;
}

// gamma^(a) (x) e_J -> sum_{s: a_s>0} sum_t (-1)^t phi(s, j_t) gamma^(a - e_s) (x) e_{J \ j_t}.
inline PolyMap wedge_side_differential(const ENInput& in, const WedgeSideTerm& src, const WedgeSideTerm& tgt) {
  PolyMatrix m(tgt.module.rank(), src.module.rank());
  for (std::size_t x = 0; x < src.div.dim(); ++x) {
    const Tuple& a = src.div.label(x);
    for (std::size_t s = 0; s < a.size(); ++s) {
      if (a[s] == 0) continue;
      Tuple a1 = a;
      --a1[s];
      const std::size_t xr = tgt.div.index_of(a1);
      for (std::size_t y = 0; y < src.wedge.dim(); ++y) {
        const Tuple& J = src.wedge.label(y);
        for (std::size_t t = 0; t < J.size(); ++t) {
          const Polynomial* p = in.entry(s, static_cast<std::size_t>(J[t]));
          if (p == nullptr) continue;
          Tuple rest = J;
          rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(t));
          m.add(xr * tgt.wedge.dim() + tgt.wedge.index_of(rest), x * src.wedge.dim() + y,
                *p * Rational(t % 2 == 0 ? 1 : -1));
        }
      }
    }
  }
  return {in.nvars(), src.module, tgt.module, std::move(m)};
}

}  // namespace detail

/// The dual side of C_i(phi) written with Wedge^j F* = Wedge^{f-j} F:
/// D^k(G*) (x) Wedge^{g+i+k} F in homological degree i+1+k.
inline GradedComplex wedge_side_complex(const PolyMap& map, int i) {
  const ENInput in(map);
  const auto terms = detail::wedge_side_terms(in, i);
  if (terms.empty()) throw std::invalid_argument("wedge_side_complex: no terms for i = " + std::to_string(i));
  std::vector<GradedFreeModule> mods;
  std::vector<PolyMap> diffs;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    mods.push_back(terms[k].module);
    if (k > 0) diffs.push_back(detail::wedge_side_differential(in, terms[k], terms[k - 1]));
  }
  return {in.nvars(), i + 1 + terms.front().k, std::move(mods), std::move(diffs)};
}

/// Wedge^{g+i} F -> Wedge^i F, e_J -> sum_{|A|=g} sign(A, J\A) det(phi[:, A]) e_{J\A}.
inline PolyMap splice_map(const ENInput& in, int i, const GradedFreeModule& source, const GradedFreeModule& target) {
  const auto src = BasisSpace::wedge(in.g() + i, in.F);
  const auto tgt = BasisSpace::wedge(i, in.F);
  const std::uint64_t all_rows = in.g() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << in.g()) - 1);
  std::map<Tuple, Polynomial> dets;
  for (const auto& A : combinations(in.f(), in.g())) {
    auto minors = minors_on_columns<Polynomial>(static_cast<std::size_t>(in.g()), A,
                                                [&](std::size_t r, std::size_t c) { return in.entry(r, c); });
    auto it = minors.find(all_rows);
    if (it != minors.end()) dets.emplace(A, it->second);
  }
  PolyMatrix m(tgt.dim(), src.dim());
  for (std::size_t c = 0; c < src.dim(); ++c) {
    const Tuple& J = src.label(c);
    for (const auto& pos : combinations(static_cast<int>(J.size()), in.g())) {
      Tuple A;
      for (int p : pos) A.push_back(J[static_cast<std::size_t>(p)]);
      auto it = dets.find(A);
      if (it == dets.end()) continue;
      const Tuple B = complement_in(J, A);
      m.add(tgt.index_of(B), c, it->second * Rational(shuffle_sign(A, B)));
    }
  }
  return {in.nvars(), source, target, std::move(m)};
}

/// The generalized Eagon-Northcott complex C_i(phi).
inline ENComplex en_complex(const PolyMap& map, int i) {
  const ENInput in(map);
  const int f = in.f();
  const int g = in.g();
  if (i >= f - g + 1) return {i, ENKind::PureSym, sym_complex(map, i)};
  if (i <= -1) return {i, ENKind::PureWedge, wedge_side_complex(map, i)};

  const GradedComplex sym = sym_complex(map, i);
  const GradedComplex wedge = wedge_side_complex(map, i);
  std::vector<GradedFreeModule> terms;
  std::vector<PolyMap> diffs;
  for (int h = sym.first_degree(); h <= sym.last_degree(); ++h) {
    terms.push_back(sym.term(h));
    if (h > sym.first_degree()) diffs.push_back(sym.differential(h));
  }
  // Sym^i(phi) reaches degree i only when i <= f, which holds in this range.
  terms.push_back(wedge.term(i + 1));
  diffs.push_back(splice_map(in, i, wedge.term(i + 1), sym.term(i)));
  for (int h = i + 2; h <= wedge.last_degree(); ++h) {
    terms.push_back(wedge.term(h));
    diffs.push_back(wedge.differential(h));
  }
  return {i, ENKind::Spliced, GradedComplex(in.nvars(), 0, std::move(terms), std::move(diffs))};
}

/// (b+1) x (d+1) Hankel matrix, entry (i, j) = x_{i+j}, as a map
/// Q^{d+1} (x) S(-1) -> Q^{b+1} (x) S over Q[x0..x_{d+b}].
inline PolyMap hankel_phi(int d, int b) {
  if (d < 1 || b < 1) throw std::invalid_argument("hankel_phi: d and b must be positive");
  const int n = d + b + 1;
  PolyMatrix m(static_cast<std::size_t>(b + 1), static_cast<std::size_t>(d + 1));
  for (int i = 0; i <= b; ++i) {
    for (int j = 0; j <= d; ++j) m.add(static_cast<std::size_t>(i), static_cast<std::size_t>(j), Polynomial::variable(i + j));
  }
  return {n, GradedFreeModule(BasisSpace::free(static_cast<std::size_t>(d + 1), "F"), 1),
          GradedFreeModule(BasisSpace::free(static_cast<std::size_t>(b + 1), "G"), 0), std::move(m)};
}

/// Generic g x f matrix of distinct variables x_{i,j} = z_{i*f + j}.
inline PolyMap generic_phi(int f, int g) {
  if (f < 1 || g < 1) throw std::invalid_argument("generic_phi: f and g must be positive");
  PolyMatrix m(static_cast<std::size_t>(g), static_cast<std::size_t>(f));
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < f; ++j) m.add(static_cast<std::size_t>(i), static_cast<std::size_t>(j), Polynomial::variable(i * f + j));
  }
  return {f * g, GradedFreeModule(BasisSpace::free(static_cast<std::size_t>(f), "F"), 1),
          GradedFreeModule(BasisSpace::free(static_cast<std::size_t>(g), "G"), 0), std::move(m)};
}

}  // namespace hermite
