#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hermite/graded/complex.hpp"
#include "hermite/en/schur_complexes.hpp"
#include "hermite/graded/koszul.hpp"
#include "hermite/multilinear/minors.hpp"
#include "hermite/rep/schur_modules.hpp"
#include "hermite/rep/sl2.hpp"

namespace hermite {

/// A subspace V1 of Wedge^2 V0, V0 = Q^{b+1}, given by spanning columns.
struct V1Embedding {
  int b = 0;
  BasisSpace v0;
  BasisSpace w2;
  BasisSpace v1;
  SparseMatrix spanning;
  std::string description;

  [[nodiscard]] int nvars() const { return b + 1; }
  [[nodiscard]] int dim() const { return static_cast<int>(v1.dim()); }
  /// The Koszul map restricted to V1.
  [[nodiscard]] PolyMap phi() const { return restrict_source(koszul_phi(b + 1), v1, spanning); }
};

inline V1Embedding make_embedding(int b, const SparseMatrix& spanning, std::string description) {
  if (b < 1) throw std::invalid_argument("make_embedding: b must be positive");
  const auto v0 = BasisSpace::free(static_cast<std::size_t>(b + 1), "V0");
  const auto w2 = BasisSpace::wedge(2, v0);
  if (spanning.rows() != w2.dim()) {
    throw std::invalid_argument("V1 is not inside Wedge^2 V0: spanning matrix has " + std::to_string(spanning.rows()) +
                                " rows, expected " + std::to_string(w2.dim()));
  }
  auto v1 = BasisSpace::subspace(w2, spanning, "V1");
  return {b, v0, w2, std::move(v1), spanning, std::move(description)};
}

/// V1 = Sym^{2b-2} U inside Wedge^2(Sym^b U).
inline V1Embedding sl2_embedding(int b) { return make_embedding(b, clebsch_gordan_v1(b), "sl2"); }

/// V1 = Wedge^2 V0.
inline V1Embedding full_embedding(int b) {
  const std::size_t n = binomial(b + 1, 2);
  return make_embedding(b, SparseMatrix::identity(n), "wedge2");
}

/// A (2b-1)-dimensional V1 spanned by columns with entries in [-2, 2] drawn
/// from a seeded generator; rank-deficient draws are skipped.
inline V1Embedding random_embedding(int b, std::uint64_t seed) {
  if (b < 1) throw std::invalid_argument("random_embedding: b must be positive");
  const std::size_t rows = binomial(b + 1, 2);
  const auto cols = static_cast<std::size_t>(2 * b - 1);
  if (cols > rows) throw std::invalid_argument("random_embedding: 2b-1 exceeds dim Wedge^2 V0");
  std::mt19937_64 rng(seed);
  for (;;) {
    std::vector<MatrixEntry> t;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) t.push_back({r, c, Rational(static_cast<long>(rng() % 5) - 2)});
    }
    SparseMatrix m = SparseMatrix::from_triplets(rows, cols, std::move(t));
    if (rank(m) == cols) return make_embedding(b, m, "random(seed=" + std::to_string(seed) + ")");
  }
}

/// psi_{i,j}(V1): Wedge^i V1 (x) Sym^j V0 -> S_{(i+j, 1^i)} V0.
struct PsiMap {
  int i = 0;
  int j = 0;
  BasisSpace source;
  BasisSpace target;
  /// In the kernel basis of the target.
  SparseMatrix matrix;
  /// In Wedge^i V0 (x) Sym^{i+j} V0.
  SparseMatrix ambient;
};

namespace detail {

// Columns e_I (x) z^m -> sum_R det(Phi[R, I]) z^m e_R.
inline SparseMatrix psi_ambient(const V1Embedding& emb, int i, int j) {
  const PolyMap phi = emb.phi();
  const int n = emb.nvars();
  const auto src_w = BasisSpace::wedge(i, emb.v1);
  const auto& src_s = monomial_basis(n, j);
  const auto tgt_w = BasisSpace::wedge(i, emb.v0);
  const auto& tgt_s = monomial_basis(n, i + j);
  std::vector<std::vector<const Polynomial*>> cells(static_cast<std::size_t>(n),
                                                    std::vector<const Polynomial*>(emb.v1.dim(), nullptr));
  for (const auto& [k, v] : phi.matrix().entries()) cells[k.first][k.second] = &v;
  std::vector<MatrixEntry> t;
  for (std::size_t a = 0; a < src_w.dim(); ++a) {
    const auto minors = minors_on_columns<Polynomial>(
        static_cast<std::size_t>(n), src_w.label(a), [&](std::size_t r, std::size_t c) { return cells[r][c]; });
    for (const auto& [mask, det] : minors) {
      Tuple rows;
      for (int r = 0; r < n; ++r) {
        if (mask & (std::uint64_t{1} << r)) rows.push_back(r);
      }
      const std::size_t wr = tgt_w.index_of(rows);
      for (const auto& [exps, coeff] : det.terms()) {
        const Tuple e = Polynomial::padded(exps, static_cast<std::size_t>(n));
        for (std::size_t m = 0; m < src_s.size(); ++m) {
          Tuple sum = e;
          for (int q = 0; q < n; ++q) sum[static_cast<std::size_t>(q)] += src_s[m][static_cast<std::size_t>(q)];
          t.push_back({wr * tgt_s.size() + tgt_s.index(sum), a * src_s.size() + m, coeff});
        }
      }
    }
  }
  return SparseMatrix::from_triplets(tgt_w.dim() * tgt_s.size(), src_w.dim() * src_s.size(), std::move(t));
}

}  // namespace detail

/// The Schur module S_{(j, 1^i)} V0 used as a term: Sym^j V0 itself for i = 0.
inline BasisSpace hook_term(const BasisSpace& v0, int i, int j) {
  if (i == 0) return BasisSpace::tensor(BasisSpace::wedge(0, v0), BasisSpace::sym(j, v0));
  return hook_schur_module(v0, i, j);
}

/// Kernel basis of the term as a matrix into Wedge^i V0 (x) Sym^j V0.
inline SparseMatrix hook_term_basis(const BasisSpace& term) {
  if (term.kind() == SpaceKind::Subspace) return term.spanning();
  return SparseMatrix::identity(term.dim());
}

inline PsiMap psi(const V1Embedding& emb, int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("psi: negative index");
  const auto source = BasisSpace::tensor(BasisSpace::wedge(i, emb.v1), BasisSpace::sym(j, emb.v0));
  const auto target = hook_term(emb.v0, i, i + j);
  const SparseMatrix ambient = detail::psi_ambient(emb, i, j);
  if (i == 0) return {i, j, source, target, ambient, ambient};
  auto coords = solve_in_column_space(hook_term_basis(target), ambient);
  if (!coords) throw std::logic_error("psi: image is not made of Koszul cycles");
  return {i, j, source, target, std::move(*coords), ambient};
}

/// The equivariant resolution of m^{b-1}: S_{(b-1, 1^i)} V0 (x) S(-(b-1+i)),
/// with differentials restricted from minus comultiplication.
inline GradedComplex resolution_c(int b) {
  if (b < 1) throw std::invalid_argument("resolution_c: b must be positive");
  const int n = b + 1;
  const auto v0 = BasisSpace::free(static_cast<std::size_t>(n), "V0");
  std::vector<BasisSpace> spaces;
  std::vector<GradedFreeModule> terms;
  for (int i = 0; i <= n; ++i) {
    BasisSpace s = hook_term(v0, i, b - 1);
    if (s.dim() == 0) break;
    terms.emplace_back(s, b - 1 + i);
    spaces.push_back(std::move(s));
  }
  const auto& sym = monomial_basis(n, b - 1);
  std::vector<PolyMap> diffs;
  for (std::size_t i = 1; i < spaces.size(); ++i) {
    const auto src_w = BasisSpace::wedge(static_cast<int>(i), v0);
    const auto tgt_w = BasisSpace::wedge(static_cast<int>(i) - 1, v0);
    const SparseMatrix src_basis = hook_term_basis(spaces[i]);
    const SparseMatrix tgt_basis = hook_term_basis(spaces[i - 1]);
    PolyMatrix m(spaces[i - 1].dim(), spaces[i].dim());
    for (int t = 0; t < n; ++t) {
      MatrixBuilder contract(tgt_w.dim() * sym.size(), src_w.dim() * sym.size());
      for (std::size_t a = 0; a < src_w.dim(); ++a) {
        const Tuple& I = src_w.label(a);
        auto pos = std::find(I.begin(), I.end(), t);
        if (pos == I.end()) continue;
        Tuple rest = I;
        rest.erase(rest.begin() + (pos - I.begin()));
        const Rational sign(((pos - I.begin()) % 2 == 0) ? 1 : -1);
        const std::size_t ra = tgt_w.index_of(rest);
        for (std::size_t s = 0; s < sym.size(); ++s) contract.add(ra * sym.size() + s, a * sym.size() + s, sign);
      }
      auto coords = solve_in_column_space(tgt_basis, contract.build() * src_basis);
      if (!coords) throw std::logic_error("resolution_c: comultiplication leaves the Schur module");
      for (const auto& e : coords->entries()) m.add(e.row, e.col, Polynomial::variable(t, -e.value));
    }
    diffs.emplace_back(n, terms[i], terms[i - 1], std::move(m));
  }
  return {n, 0, std::move(terms), std::move(diffs)};
}

/// f(V1)_i = psi_{i, b-1-i}(V1): Sym^{b-1}(phi|V1) -> C.
inline ChainMap f_chain(const V1Embedding& emb) {
  const int b = emb.b;
  const GradedComplex src = sym_complex(emb.phi(), b - 1);
  const GradedComplex tgt = resolution_c(b);
  ChainMap cm{src, tgt, 0, {}};
  for (int i = 0; i <= src.last_degree(); ++i) {
    const PsiMap p = psi(emb, i, b - 1 - i);
    cm.blocks.emplace(i, PolyMap(emb.nvars(), src.term(i), tgt.term(i), PolyMatrix::from_constant(p.matrix)));
  }
  return cm;
}

/// psi_{b,0}(V1) in the coordinates delta(e_0 ^ ... ^ e_b (x) z^c), c a
/// monomial of degree b-1; rows follow the standard monomial order.
inline SparseMatrix psi_top_coordinates(const V1Embedding& emb) {
  const int b = emb.b;
  const PsiMap p = psi(emb, b, 0);
  const LinearMap delta = koszul_delta(emb.v0, b + 1, b - 1);
  auto coords = solve_in_column_space(delta.matrix, p.ambient);
  if (!coords) throw std::logic_error("psi_top_coordinates: image outside S_{(b,1^b)}");
  return std::move(*coords);
}

/// Weight-then-lexicographic order used for the Hermite matrix display.
inline std::vector<std::size_t> display_order(const std::vector<Tuple>& index_lists) {
  std::vector<std::size_t> order(index_lists.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const int wx = tuple_sum(index_lists[x]);
    const int wy = tuple_sum(index_lists[y]);
    if (wx != wy) return wx < wy;
    return index_lists[x] < index_lists[y];
  });
  return order;
}

struct HermiteMatrix {
  int b = 0;
  SparseMatrix matrix;
  SparseMatrix raw;
  Rational scale;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  /// Weight of each displayed row; equal weights form diagonal blocks.
  std::vector<int> row_weights;
};

inline std::string monomial_label(const Tuple& e) {
  std::string s;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += "z" + std::to_string(k);
    if (e[k] > 1) s += "^" + std::to_string(e[k]);
  }
  return s.empty() ? "1" : s;
}

inline std::string wedge_label(const Tuple& t, const std::string& var = "v") {
  std::string s;
  for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "^" : "") + var + std::to_string(t[k]);
  return s;
}

/// psi_{b,0}(V1) in display order, scaled so the highest-weight entry is 1.
inline HermiteMatrix hermite_matrix(const V1Embedding& emb) {
  const int b = emb.b;
  const SparseMatrix raw = psi_top_coordinates(emb);
  const auto& rows = monomial_basis(emb.nvars(), b - 1);
  const auto cols = BasisSpace::wedge(b, emb.v1);
  std::vector<Tuple> row_idx;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Tuple idx;
    for (std::size_t k = 0; k < rows[r].size(); ++k) idx.insert(idx.end(), static_cast<std::size_t>(rows[r][k]), static_cast<int>(k));
    row_idx.push_back(std::move(idx));
  }
  std::vector<Tuple> col_idx;
  for (std::size_t c = 0; c < cols.dim(); ++c) col_idx.push_back(cols.label(c));
  const auto ro = display_order(row_idx);
  const auto co = display_order(col_idx);
  std::vector<std::size_t> row_pos(ro.size());
  std::vector<std::size_t> col_pos(co.size());
  for (std::size_t k = 0; k < ro.size(); ++k) row_pos[ro[k]] = k;
  for (std::size_t k = 0; k < co.size(); ++k) col_pos[co[k]] = k;
  HermiteMatrix h;
  h.b = b;
  h.raw = raw;
  const Rational corner = raw.at(ro.front(), co.front());
  if (corner.is_zero()) throw std::logic_error("hermite_matrix: highest-weight entry vanishes");
  h.scale = inverse(corner);
  std::vector<MatrixEntry> t;
  for (const auto& e : raw.entries()) t.push_back({row_pos[e.row], col_pos[e.col], e.value * h.scale});
  h.matrix = SparseMatrix::from_triplets(raw.rows(), raw.cols(), std::move(t));
  for (std::size_t r : ro) {
    h.row_labels.push_back(monomial_label(rows[r]));
    h.row_weights.push_back(tuple_sum(row_idx[r]));
  }
  for (std::size_t c : co) h.col_labels.push_back(wedge_label(col_idx[c]));
  return h;
}

/// The classical b = 3 Hermite reciprocity matrix, display order.
inline SparseMatrix classical_hermite_matrix_b3() {
  const std::vector<MatrixEntry> t{
      {0, 0, Rational(1)},  {1, 1, Rational(3)},  {2, 2, Rational(3)}, {2, 3, Rational(-3)}, {3, 3, Rational(9)},
      {4, 4, Rational(-1)}, {4, 5, Rational(1)},  {5, 4, Rational(9)}, {6, 6, Rational(-3)}, {6, 7, Rational(3)},
      {7, 7, Rational(9)},  {8, 8, Rational(3)},  {9, 9, Rational(1)}};
  return SparseMatrix::from_triplets(10, 10, t);
}

struct BlockDiff {
  /// 1-based inclusive range of rows and columns.
  std::size_t first = 0;
  std::size_t last = 0;
  bool equal = true;
};

/// Compares two matrices on the diagonal blocks cut out by equal weights and
/// also reports whether they agree off those blocks.
struct DiffReport {
  std::vector<BlockDiff> blocks;
  bool off_block_equal = true;

  [[nodiscard]] std::vector<BlockDiff> differing() const {
    std::vector<BlockDiff> out;
    for (const auto& b : blocks) {
      if (!b.equal) out.push_back(b);
    }
    return out;
  }
};

inline DiffReport diff_report(const SparseMatrix& a, const SparseMatrix& c, const std::vector<int>& weights) {
  if (a.rows() != c.rows() || a.cols() != c.cols() || a.rows() != weights.size()) {
    throw std::invalid_argument("diff_report: shape mismatch");
  }
  DiffReport rep;
  std::vector<std::size_t> block_of(weights.size());
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (k == 0 || weights[k] != weights[k - 1]) rep.blocks.push_back({k + 1, k + 1, true});
    rep.blocks.back().last = k + 1;
    block_of[k] = rep.blocks.size() - 1;
  }
  const auto ad = a.to_dense();
  const auto cd = c.to_dense();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t col = 0; col < a.cols(); ++col) {
      if (ad[r][col] == cd[r][col]) continue;
      if (block_of[r] == block_of[col]) rep.blocks[block_of[r]].equal = false;
      else rep.off_block_equal = false;
    }
  }
  return rep;
}

}  // namespace hermite
