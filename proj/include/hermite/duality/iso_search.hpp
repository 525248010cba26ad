#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "hermite/graded/complex.hpp"
#include "hermite/linalg/elimination.hpp"
#include "hermite/multilinear/minors.hpp"

namespace hermite {

enum class IsoStatus { Found, None, NotFound };

inline std::string to_string(IsoStatus s) {
  switch (s) {
    case IsoStatus::Found: return "found";
    case IsoStatus::None: return "none";
    case IsoStatus::NotFound: return "not found";
  }
  return "?";
}

struct IsoSearchResult {
  IsoStatus status = IsoStatus::NotFound;
  std::string reason;
  /// Homological and twist offsets applied to the second complex.
  int degree_shift = 0;
  int twist_shift = 0;
  std::size_t parameters = 0;
  int seeds_tried = 0;
  std::optional<ChainMap> map;
};

namespace detail {

struct IsoUnknown {
  std::size_t block;
  std::size_t row;
  std::size_t col;
  Tuple exps;
};

inline std::vector<int> sorted_twists(const GradedFreeModule& m) {
  auto t = m.twists();
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace detail

/// Searches for a chain isomorphism c1 -> c2, after aligning first degrees and
/// twisting c2 so the lowest twists of the first terms agree.
inline IsoSearchResult generic_chain_iso_search(const GradedComplex& c1, const GradedComplex& c2, int seeds = 64,
                                                std::uint64_t seed = 1) {
  IsoSearchResult res;
  if (c1.ranks() != c2.ranks()) {
    res.status = IsoStatus::None;
    res.reason = "rank sequences differ";
    return res;
  }
  if (c1.nvars() != c2.nvars()) throw std::invalid_argument("generic_chain_iso_search: different rings");
  const int n = c1.nvars();
  const std::size_t len = c1.ranks().size();
  res.degree_shift = c2.first_degree() - c1.first_degree();
  const auto first1 = detail::sorted_twists(c1.term(c1.first_degree()));
  const auto first2 = detail::sorted_twists(c2.term(c2.first_degree()));
  res.twist_shift = first1.empty() ? 0 : first1.front() - first2.front();
  const GradedComplex d2 = c2.twisted(res.twist_shift);
  auto t1 = [&](std::size_t t) { return c1.term(c1.first_degree() + static_cast<int>(t)); };
  auto t2 = [&](std::size_t t) { return d2.term(d2.first_degree() + static_cast<int>(t)); };
  for (std::size_t t = 0; t < len; ++t) {
    if (detail::sorted_twists(t1(t)) != detail::sorted_twists(t2(t))) {
      res.status = IsoStatus::None;
      res.reason = "twist multisets differ in term " + std::to_string(t);
      return res;
    }
  }

  std::vector<detail::IsoUnknown> unknowns;
  std::vector<std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>>> cell(len);
  for (std::size_t t = 0; t < len; ++t) {
    const auto src = t1(t).twists();
    const auto tgt = t2(t).twists();
    for (std::size_t r = 0; r < tgt.size(); ++r) {
      for (std::size_t c = 0; c < src.size(); ++c) {
        const int deg = src[c] - tgt[r];
        if (deg < 0) continue;
        for (const auto& e : exponent_vectors(n, deg)) {
          cell[t][{r, c}].push_back(unknowns.size());
          unknowns.push_back({t, r, c, e});
        }
      }
    }
  }

  // d2_t X_t - X_{t-1} d1_t = 0, one equation per (t, r, c, monomial).
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, Tuple>, std::size_t> eq;
  std::vector<MatrixEntry> trip;
  auto add = [&](std::size_t t, std::size_t r, std::size_t c, Tuple e, std::size_t u, const Rational& v) {
    auto [it, _] = eq.emplace(std::make_tuple(t, r, c, std::move(e)), eq.size());
    trip.push_back({it->second, u, v});
  };
  for (std::size_t t = 1; t < len; ++t) {
    const PolyMap m1 = c1.differential(c1.first_degree() + static_cast<int>(t));
    const PolyMap m2 = d2.differential(d2.first_degree() + static_cast<int>(t));
    const PolyMatrix& dd1 = m1.matrix();
    const PolyMatrix& dd2 = m2.matrix();
    std::vector<std::vector<std::pair<std::size_t, const Polynomial*>>> d2_by_col(dd2.cols());
    for (const auto& [k, p] : dd2.entries()) d2_by_col[k.second].emplace_back(k.first, &p);
    std::vector<std::vector<std::pair<std::size_t, const Polynomial*>>> d1_by_row(dd1.rows());
    for (const auto& [k, p] : dd1.entries()) d1_by_row[k.first].emplace_back(k.second, &p);
    for (const auto& [rc, us] : cell[t]) {
      for (std::size_t u : us) {
        for (const auto& [r, p] : d2_by_col[rc.first]) {
          for (const auto& [e, v] : p->terms()) {
            add(t, r, rc.second, Polynomial::add_exponents(e, unknowns[u].exps), u, v);
          }
        }
      }
    }
    for (const auto& [rc, us] : cell[t - 1]) {
      for (std::size_t u : us) {
        for (const auto& [c, p] : d1_by_row[rc.second]) {
          for (const auto& [e, v] : p->terms()) {
            add(t, rc.first, c, Polynomial::add_exponents(e, unknowns[u].exps), u, -v);
          }
        }
      }
    }
  }
  const SparseMatrix system = SparseMatrix::from_triplets(eq.size(), unknowns.size(), std::move(trip));
  const SparseMatrix sol = kernel_basis(system);
  res.parameters = sol.cols();
  if (sol.cols() == 0) {
    res.status = IsoStatus::None;
    res.reason = "the only chain map is zero";
    return res;
  }
  const auto sol_rows = sol.row_lists();

  // Degree-zero part of block t as a linear family in the parameters.
  std::vector<SparseMatrix> family(len);
  for (std::size_t t = 0; t < len; ++t) {
    const std::size_t m = t1(t).rank();
    MatrixBuilder mb(m * m, sol.cols());
    for (const auto& [rc, us] : cell[t]) {
      for (std::size_t u : us) {
        if (!unknowns[u].exps.empty() && tuple_sum(unknowns[u].exps) != 0) continue;
        for (const auto& [p, v] : sol_rows[u]) mb.add(rc.first * m + rc.second, p, v);
      }
    }
    family[t] = mb.build();
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-9, 9);
  std::vector<std::size_t> best(len, 0);
  for (int s = 0; s < seeds; ++s) {
    ++res.seeds_tried;
    std::vector<MatrixEntry> lt;
    for (std::size_t p = 0; p < sol.cols(); ++p) lt.push_back({p, 0, Rational(dist(rng))});
    const SparseMatrix lambda = SparseMatrix::from_triplets(sol.cols(), 1, std::move(lt));
    bool all = true;
    for (std::size_t t = 0; t < len; ++t) {
      const std::size_t m = t1(t).rank();
      const SparseMatrix flat = family[t] * lambda;
      std::vector<MatrixEntry> bt;
      for (const auto& e : flat.entries()) bt.push_back({e.row / m, e.row % m, e.value});
      const std::size_t r = rank(SparseMatrix::from_triplets(m, m, std::move(bt)));
      best[t] = std::max(best[t], r);
      if (r != m) all = false;
    }
    if (!all) continue;
    const SparseMatrix coeffs = sol * lambda;
    ChainMap cm{c1, d2, res.degree_shift, {}};
    for (std::size_t t = 0; t < len; ++t) {
      PolyMatrix pm(t2(t).rank(), t1(t).rank());
      for (const auto& [rc, us] : cell[t]) {
        for (std::size_t u : us) {
          const Rational v = coeffs.at(u, 0);
          if (!v.is_zero()) pm.add(rc.first, rc.second, Polynomial::monomial(unknowns[u].exps, v));
        }
      }
      cm.blocks.emplace(c1.first_degree() + static_cast<int>(t), PolyMap(n, t1(t), t2(t), std::move(pm)));
    }
    if (!verify_chain_map(cm).ok) throw std::logic_error("generic_chain_iso_search: solution is not a chain map");
    res.status = IsoStatus::Found;
    res.map = std::move(cm);
    return res;
  }

  // Certify a block whose determinant vanishes identically on the family.
  for (std::size_t t = 0; t < len; ++t) {
    const std::size_t m = t1(t).rank();
    if (best[t] == m || m > 12) continue;
    const auto piv = detail::rref(family[t]).pivots;
    const SparseMatrix basis = family[t].select_columns(piv);
    std::vector<std::vector<Polynomial>> sym(m, std::vector<Polynomial>(m));
    for (const auto& e : basis.entries()) {
      sym[e.row / m][e.row % m] += Polynomial::variable(static_cast<int>(e.col), e.value);
    }
    if (determinant(sym).is_zero()) {
      res.status = IsoStatus::None;
      res.reason = "degree-zero part of block " + std::to_string(t) + " has identically vanishing determinant (generic rank " +
                   std::to_string(best[t]) + " < " + std::to_string(m) + ")";
      return res;
    }
  }
  res.status = IsoStatus::NotFound;
  res.reason = "not found after " + std::to_string(res.seeds_tried) + " seeds";
  return res;
}

}  // namespace hermite
