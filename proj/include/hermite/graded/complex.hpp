#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hermite/graded/polynomial.hpp"
#include "hermite/linalg/elimination.hpp"
#include "hermite/linalg/sparse_matrix.hpp"
#include "hermite/multilinear/basis_space.hpp"
#include "hermite/util/parallel.hpp"

namespace hermite {

/// One summand V (x) S(-twist): generators spanning V, all of degree `twist`.
struct Summand {
  BasisSpace space;
  int twist = 0;
};

/// Finite direct sum of twisted free modules over S = Q[z0..z_{n-1}].
/// Generators are numbered summand by summand.
class GradedFreeModule {
 public:
  GradedFreeModule() = default;
  explicit GradedFreeModule(std::vector<Summand> summands) : summands_(std::move(summands)) { rebuild(); }
  GradedFreeModule(BasisSpace space, int twist) : GradedFreeModule(std::vector<Summand>{{std::move(space), twist}}) {}

  static GradedFreeModule zero() { return {}; }

  [[nodiscard]] const std::vector<Summand>& summands() const { return summands_; }
  [[nodiscard]] std::size_t rank() const { return twists_.size(); }
  [[nodiscard]] int twist(std::size_t gen) const { return twists_.at(gen); }
  [[nodiscard]] const std::vector<int>& twists() const { return twists_; }

  /// Generator offset of summand k.
  [[nodiscard]] std::size_t summand_offset(std::size_t k) const { return summand_offsets_.at(k); }

  /// Dimension of the degree-d piece over nvars variables.
  [[nodiscard]] std::size_t piece_dim(int nvars, int d) const {
    std::size_t total = 0;
    for (int t : twists_) total += (d - t >= 0) ? binomial(d - t + nvars - 1, nvars - 1) : 0;
    return total;
  }

  /// Offsets of each generator's block in the degree-d piece.
  [[nodiscard]] std::vector<std::size_t> piece_offsets(int nvars, int d) const {
    std::vector<std::size_t> off(twists_.size() + 1, 0);
    for (std::size_t g = 0; g < twists_.size(); ++g) {
      const int e = d - twists_[g];
      off[g + 1] = off[g] + (e >= 0 ? binomial(e + nvars - 1, nvars - 1) : 0);
    }
    return off;
  }

  [[nodiscard]] GradedFreeModule dual() const {
    std::vector<Summand> out;
    for (const auto& s : summands_) out.push_back({BasisSpace::dual(s.space), -s.twist});
    return GradedFreeModule(std::move(out));
  }

  [[nodiscard]] GradedFreeModule shifted(int by) const {
    std::vector<Summand> out = summands_;
    for (auto& s : out) s.twist += by;
    return GradedFreeModule(std::move(out));
  }

  /// Generators of lowest twist; the module is linear-shaped when all agree.
  [[nodiscard]] std::optional<int> uniform_twist() const {
    if (twists_.empty()) return std::nullopt;
    if (std::adjacent_find(twists_.begin(), twists_.end(), std::not_equal_to<>()) != twists_.end()) return std::nullopt;
    return twists_.front();
  }

 private:
  void rebuild() {
    twists_.clear();
    summand_offsets_.clear();
    for (const auto& s : summands_) {
      summand_offsets_.push_back(twists_.size());
      twists_.insert(twists_.end(), s.space.dim(), s.twist);
    }
  }

  std::vector<Summand> summands_;
  std::vector<int> twists_;
  std::vector<std::size_t> summand_offsets_;
};

/// Sparse matrix of polynomials.
class PolyMatrix {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] const std::map<Key, Polynomial>& entries() const { return entries_; }
  [[nodiscard]] bool is_zero() const { return entries_.empty(); }

  void add(std::size_t r, std::size_t c, const Polynomial& p) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("PolyMatrix::add out of range");
    if (p.is_zero()) return;
    auto [it, inserted] = entries_.emplace(Key{r, c}, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  [[nodiscard]] Polynomial at(std::size_t r, std::size_t c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? Polynomial{} : it->second;
  }

  static PolyMatrix from_constant(const SparseMatrix& m) {
    PolyMatrix p(m.rows(), m.cols());
    for (const auto& e : m.entries()) p.entries_.emplace(Key{e.row, e.col}, Polynomial(e.value));
    return p;
  }

  [[nodiscard]] PolyMatrix transpose() const {
    PolyMatrix t(cols_, rows_);
    for (const auto& [k, v] : entries_) t.entries_.emplace(Key{k.second, k.first}, v);
    return t;
  }

  [[nodiscard]] PolyMatrix scaled(const Rational& s) const {
    PolyMatrix out(rows_, cols_);
    if (s.is_zero()) return out;
    for (const auto& [k, v] : entries_) out.entries_.emplace(k, v * s);
    return out;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("PolyMatrix: product shape mismatch");
    std::vector<std::vector<std::pair<std::size_t, const Polynomial*>>> brows(b.rows_);
    for (const auto& [k, v] : b.entries_) brows[k.first].emplace_back(k.second, &v);
    PolyMatrix out(a.rows_, b.cols_);
    for (const auto& [k, v] : a.entries_) {
      for (const auto& [c, w] : brows[k.second]) out.add(k.first, c, v * *w);
    }
    return out;
  }

  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("PolyMatrix: sum shape mismatch");
    PolyMatrix out = a;
    for (const auto& [k, v] : b.entries_) out.add(k.first, k.second, v);
    return out;
  }

  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) { return a + b.scaled(Rational(-1)); }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  /// Coefficient matrix of one monomial.
  [[nodiscard]] SparseMatrix coefficient_matrix(const Tuple& exponents) const {
    std::vector<MatrixEntry> t;
    for (const auto& [k, v] : entries_) {
      Rational c = v.coefficient(exponents);
      if (!c.is_zero()) t.push_back({k.first, k.second, c});
    }
    return SparseMatrix::from_triplets(rows_, cols_, std::move(t));
  }

  /// Substitutes a rational point for the variables.
  [[nodiscard]] SparseMatrix evaluate(const std::vector<Rational>& point) const {
    std::vector<MatrixEntry> t;
    for (const auto& [k, v] : entries_) {
      Rational c = v.evaluate(point);
      if (!c.is_zero()) t.push_back({k.first, k.second, c});
    }
    return SparseMatrix::from_triplets(rows_, cols_, std::move(t));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::map<Key, Polynomial> entries_;
};

/// Homogeneous map of graded free modules; entry (r, c) has degree
/// twist(source c) - twist(target r).
class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(int nvars, GradedFreeModule source, GradedFreeModule target, PolyMatrix matrix)
      : nvars_(nvars), source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank()) {
      throw std::invalid_argument("PolyMap: matrix shape does not match module ranks");
    }
    for (const auto& [k, v] : matrix_.entries()) {
      const int deg = source_.twist(k.second) - target_.twist(k.first);
      if (!v.is_homogeneous(deg)) {
        throw std::invalid_argument("PolyMap: entry (" + std::to_string(k.first) + "," + std::to_string(k.second) +
                                    ") = " + v.str() + " is not homogeneous of degree " + std::to_string(deg));
      }
      if (static_cast<int>(v.num_vars()) > nvars_) throw std::invalid_argument("PolyMap: entry uses too many variables");
    }
  }

  static PolyMap zero(int nvars, GradedFreeModule source, GradedFreeModule target) {
    const std::size_t r = target.rank();
    const std::size_t c = source.rank();
    return {nvars, std::move(source), std::move(target), PolyMatrix(r, c)};
  }

  static PolyMap identity(int nvars, const GradedFreeModule& m) {
    return {nvars, m, m, PolyMatrix::from_constant(SparseMatrix::identity(m.rank()))};
  }

  [[nodiscard]] int nvars() const { return nvars_; }
  [[nodiscard]] const GradedFreeModule& source() const { return source_; }
  [[nodiscard]] const GradedFreeModule& target() const { return target_; }
  [[nodiscard]] const PolyMatrix& matrix() const { return matrix_; }

  [[nodiscard]] PolyMap scaled(const Rational& s) const { return {nvars_, source_, target_, matrix_.scaled(s)}; }

  /// Same matrix, modules replaced (twists must stay compatible).
  [[nodiscard]] PolyMap with_modules(GradedFreeModule source, GradedFreeModule target) const {
    return {nvars_, std::move(source), std::move(target), matrix_};
  }

 private:
  int nvars_ = 0;
  GradedFreeModule source_;
  GradedFreeModule target_;
  PolyMatrix matrix_;
};

/// g after f.
inline PolyMap compose(const PolyMap& g, const PolyMap& f) {
  if (g.source().rank() != f.target().rank()) throw std::invalid_argument("compose: PolyMap rank mismatch");
  return {std::max(g.nvars(), f.nvars()), f.source(), g.target(), g.matrix() * f.matrix()};
}

/// Matrix of `map` on degree-d pieces, in generator-major monomial bases.
inline SparseMatrix realize_matrix(const PolyMap& map, int d) {
  const int n = map.nvars();
  const auto src_off = map.source().piece_offsets(n, d);
  const auto tgt_off = map.target().piece_offsets(n, d);
  std::vector<MatrixEntry> t;
  for (const auto& [key, poly] : map.matrix().entries()) {
    const auto [r, c] = key;
    const int src_deg = d - map.source().twist(c);
    const int tgt_deg = d - map.target().twist(r);
    if (src_deg < 0 || tgt_deg < 0) continue;
    const MonomialBasis& mons = monomial_basis(n, src_deg);
    std::vector<std::pair<Tuple, const Rational*>> terms;
    for (const auto& [e, v] : poly.terms()) terms.emplace_back(Polynomial::padded(e, static_cast<std::size_t>(n)), &v);
    for (std::size_t k = 0; k < mons.size(); ++k) {
      const Tuple& mu = mons[k];
      for (const auto& [nu, v] : terms) {
        Tuple sum = mu;
        for (std::size_t x = 0; x < sum.size(); ++x) sum[x] += nu[x];
        t.push_back({tgt_off[r] + monomial_rank(sum, tgt_deg), src_off[c] + k, *v});
      }
    }
  }
  return SparseMatrix::from_triplets(tgt_off.back(), src_off.back(), std::move(t));
}

inline LinearMap realize_degree(const PolyMap& map, int d) {
  const int n = map.nvars();
  return {BasisSpace::free(map.source().piece_dim(n, d), "source_" + std::to_string(d)),
          BasisSpace::free(map.target().piece_dim(n, d), "target_" + std::to_string(d)), realize_matrix(map, d)};
}

/// Bounded complex of graded free modules, homological degrees
/// first_degree() .. last_degree(); the differential at h maps term h to
/// term h-1.
class GradedComplex {
 public:
  GradedComplex() = default;
  GradedComplex(int nvars, int first_degree, std::vector<GradedFreeModule> terms, std::vector<PolyMap> differentials)
      : nvars_(nvars), first_(first_degree), terms_(std::move(terms)), diffs_(std::move(differentials)) {
    if (terms_.empty()) throw std::invalid_argument("GradedComplex: no terms");
    if (diffs_.size() + 1 != terms_.size()) {
      throw std::invalid_argument("GradedComplex: expected " + std::to_string(terms_.size() - 1) + " differentials");
    }
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
      if (diffs_[k].source().rank() != terms_[k + 1].rank() || diffs_[k].target().rank() != terms_[k].rank()) {
        throw std::invalid_argument("GradedComplex: differential " + std::to_string(first_ + static_cast<int>(k) + 1) +
                                    " has the wrong shape");
      }
    }
  }

  [[nodiscard]] int nvars() const { return nvars_; }
  [[nodiscard]] int first_degree() const { return first_; }
  [[nodiscard]] int last_degree() const { return first_ + static_cast<int>(terms_.size()) - 1; }
  [[nodiscard]] std::size_t length() const { return terms_.size(); }

  [[nodiscard]] const GradedFreeModule& term(int h) const {
    static const GradedFreeModule empty;
    if (h < first_ || h > last_degree()) return empty;
    return terms_[static_cast<std::size_t>(h - first_)];
  }

  /// Differential out of homological degree h; zero outside the range.
  [[nodiscard]] PolyMap differential(int h) const {
    if (h <= first_ || h > last_degree()) return PolyMap::zero(nvars_, term(h), term(h - 1));
    return diffs_[static_cast<std::size_t>(h - first_ - 1)];
  }

  [[nodiscard]] std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> r;
    for (const auto& t : terms_) r.push_back(t.rank());
    return r;
  }

  [[nodiscard]] GradedComplex with_differential(int h, PolyMap d) const {
    GradedComplex c = *this;
    c.diffs_.at(static_cast<std::size_t>(h - first_ - 1)) = std::move(d);
    return c;
  }

  [[nodiscard]] GradedComplex shifted(int homological) const {
    GradedComplex c = *this;
    c.first_ += homological;
    return c;
  }

  /// Adds `by` to every twist.
  [[nodiscard]] GradedComplex twisted(int by) const {
    std::vector<GradedFreeModule> terms;
    for (const auto& t : terms_) terms.push_back(t.shifted(by));
    std::vector<PolyMap> diffs;
    for (std::size_t k = 0; k < diffs_.size(); ++k) diffs.push_back(diffs_[k].with_modules(terms[k + 1], terms[k]));
    return {nvars_, first_, std::move(terms), std::move(diffs)};
  }

 private:
  int nvars_ = 0;
  int first_ = 0;
  std::vector<GradedFreeModule> terms_;
  std::vector<PolyMap> diffs_;
};

/// Outcome of a structural check, with the first offending entry on failure.
struct CheckResult {
  bool ok = true;
  int position = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  Polynomial witness;
  std::string message;

  explicit operator bool() const { return ok; }
};

inline CheckResult verify_complex(const GradedComplex& c) {
  for (int h = c.first_degree() + 2; h <= c.last_degree(); ++h) {
    const PolyMatrix comp = c.differential(h - 1).matrix() * c.differential(h).matrix();
    if (!comp.is_zero()) {
      const auto& [k, v] = *comp.entries().begin();
      std::ostringstream os;
      os << "d" << h - 1 << " * d" << h << " has nonzero entry (" << k.first << "," << k.second << ") = " << v;
      return {false, h, k.first, k.second, v, os.str()};
    }
  }
  return {};
}

/// Dimension of homology at homological degree `position` in each internal
/// degree of [lo, hi].
inline std::vector<std::size_t> homology_dims(const GradedComplex& c, int position, int lo, int hi) {
  std::vector<std::size_t> out(static_cast<std::size_t>(std::max(0, hi - lo + 1)), 0);
  parallel_for(out.size(), [&](std::size_t k) {
    const int d = lo + static_cast<int>(k);
    const std::size_t dim = c.term(position).piece_dim(c.nvars(), d);
    if (dim == 0) return;
    const std::size_t r_out = position > c.first_degree() ? rank(realize_matrix(c.differential(position), d)) : 0;
    const std::size_t r_in = position < c.last_degree() ? rank(realize_matrix(c.differential(position + 1), d)) : 0;
    if (r_out + r_in > dim) throw std::logic_error("homology_dims: ranks exceed dimension; not a complex");
    out[k] = dim - r_out - r_in;
  });
  return out;
}

/// Dual complex Hom(C, S): terms C_h^* placed in degree -h with negated twists,
/// differentials transposed.
inline GradedComplex dualize(const GradedComplex& c) {
  std::vector<GradedFreeModule> terms;
  for (int h = c.last_degree(); h >= c.first_degree(); --h) terms.push_back(c.term(h).dual());
  std::vector<PolyMap> diffs;
  // New degree -h+1 maps to -h: transpose of d_h.
  for (int h = c.last_degree(); h > c.first_degree(); --h) {
    const auto k = static_cast<std::size_t>(c.last_degree() - h);
    diffs.emplace_back(c.nvars(), terms[k + 1], terms[k], c.differential(h).matrix().transpose());
  }
  return {c.nvars(), -c.last_degree(), std::move(terms), std::move(diffs)};
}

/// Maps source term h to target term h + shift, one PolyMap per degree.
struct ChainMap {
  GradedComplex source;
  GradedComplex target;
  int shift = 0;
  std::map<int, PolyMap> blocks;

  [[nodiscard]] PolyMap block(int h) const {
    auto it = blocks.find(h);
    if (it != blocks.end()) return it->second;
    return PolyMap::zero(source.nvars(), source.term(h), target.term(h + shift));
  }
};

inline CheckResult verify_chain_map(const ChainMap& fm) {
  for (const auto& [h, b] : fm.blocks) {
    if (b.source().rank() != fm.source.term(h).rank() || b.target().rank() != fm.target.term(h + fm.shift).rank()) {
      throw std::invalid_argument("verify_chain_map: block at degree " + std::to_string(h) + " is misaligned");
    }
  }
  const int lo = std::min(fm.source.first_degree(), fm.target.first_degree() - fm.shift);
  const int hi = std::max(fm.source.last_degree(), fm.target.last_degree() - fm.shift);
  for (int h = lo; h <= hi + 1; ++h) {
    const PolyMatrix lhs = fm.target.differential(h + fm.shift).matrix() * fm.block(h).matrix();
    const PolyMatrix rhs = fm.block(h - 1).matrix() * fm.source.differential(h).matrix();
    const PolyMatrix diff = lhs - rhs;
    if (!diff.is_zero()) {
      const auto& [k, v] = *diff.entries().begin();
      std::ostringstream os;
      os << "square at degree " << h << " fails at (" << k.first << "," << k.second << "): " << v;
      return {false, h, k.first, k.second, v, os.str()};
    }
  }
  return {};
}

/// Nonzero scalar s with a == s * b, if any.
inline std::optional<Rational> proportionality(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.entries().size() != b.entries().size()) return std::nullopt;
  if (a.is_zero()) return Rational(1);
  std::optional<Rational> s;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  for (; ia != a.entries().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return std::nullopt;
    if (!s) {
      const auto& [e, c] = *ib->second.terms().begin();
      s = ia->second.coefficient(e) / c;
      if (s->is_zero()) return std::nullopt;
    }
    if (!(ia->second == ib->second * *s)) return std::nullopt;
  }
  return s;
}

}  // namespace hermite

namespace hermite {

/// Rescales the blocks of `fm` (lowest degree kept fixed) so that every square
/// commutes exactly. Returns the scalar applied to each rescaled block, or
/// nullopt when some square does not commute up to a scalar.
inline std::optional<std::map<int, Rational>> align_chain_scalars(ChainMap& fm) {
  std::map<int, Rational> applied;
  if (fm.blocks.empty()) return applied;
  for (auto it = std::next(fm.blocks.begin()); it != fm.blocks.end(); ++it) {
    const int h = it->first;
    const PolyMatrix lhs = fm.target.differential(h + fm.shift).matrix() * it->second.matrix();
    const PolyMatrix rhs = fm.block(h - 1).matrix() * fm.source.differential(h).matrix();
    if (lhs.is_zero() && rhs.is_zero()) continue;
    auto c = proportionality(lhs, rhs);
    if (!c) return std::nullopt;
    const Rational s = inverse(*c);
    if (!s.is_one()) {
      it->second = it->second.scaled(s);
      applied.emplace(h, s);
    }
  }
  return applied;
}

}  // namespace hermite
