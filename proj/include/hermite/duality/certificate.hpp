#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hermite/duality/psi.hpp"
#include "hermite/en/schur_complexes.hpp"
#include "hermite/util/parallel.hpp"

namespace hermite {

/// The self-dual partner of Sym^{b-1}(phi|V1): D^k V0* (x) Wedge^{b+k} V1 in degree k.
inline GradedComplex dual_side_complex(const V1Embedding& emb) { return wedge_side_complex(emb.phi(), -1); }

namespace detail {

inline Rational divided_multiplicity(const Tuple& nu, const Tuple& a) {
  Rational m(1);
  for (std::size_t s = 0; s < nu.size(); ++s) {
    m *= Rational(static_cast<long>(binomial(nu[s] + a[s], nu[s])));
  }
  return m;
}

}  // namespace detail

/// Contracts the Wedge^b factor of the coproduct against psi_{b,0}:
/// gamma^(a) (x) e_J -> sum mult(nu, a) Psi[nu + a, K] sign(K, J \ K) e_{J \ K} (x) z^nu.
inline ChainMap h_chain(const V1Embedding& emb) {
  const int b = emb.b;
  const int n = emb.nvars();
  const GradedComplex src = dual_side_complex(emb);
  const GradedComplex tgt = sym_complex(emb.phi(), b - 1);
  const SparseMatrix top = psi_top_coordinates(emb);
  const auto top_cols = BasisSpace::wedge(b, emb.v1);
  const auto top_dense = top.to_dense();
  const auto& top_rows = monomial_basis(n, b - 1);
  const auto v0dual = BasisSpace::dual(emb.v0);
  ChainMap cm{src, tgt, 0, {}};
  for (int k = src.first_degree(); k <= src.last_degree(); ++k) {
    if (k > tgt.last_degree()) break;
    const auto div = BasisSpace::divided(k, v0dual);
    const auto wsrc = BasisSpace::wedge(b + k, emb.v1);
    const auto wtgt = BasisSpace::wedge(k, emb.v1);
    const auto& syms = monomial_basis(n, b - 1 - k);
    MatrixBuilder mb(wtgt.dim() * syms.size(), div.dim() * wsrc.dim());
    for (std::size_t x = 0; x < div.dim(); ++x) {
      const Tuple& a = div.label(x);
      for (std::size_t y = 0; y < wsrc.dim(); ++y) {
        const Tuple& J = wsrc.label(y);
        for (const Tuple& pos : combinations(b + k, b)) {
          Tuple K;
          for (int p : pos) K.push_back(J[static_cast<std::size_t>(p)]);
          const Tuple rest = complement_in(J, K);
          const std::size_t kc = top_cols.index_of(K);
          const Rational sign(shuffle_sign(K, rest));
          const std::size_t wr = wtgt.index_of(rest);
          for (std::size_t m = 0; m < syms.size(); ++m) {
            const Tuple& nu = syms[m];
            Tuple sum = nu;
            for (int s = 0; s < n; ++s) sum[static_cast<std::size_t>(s)] += a[static_cast<std::size_t>(s)];
            const Rational& v = top_dense[top_rows.index(sum)][kc];
            if (v.is_zero()) continue;
            mb.add(wr * syms.size() + m, x * wsrc.dim() + y, detail::divided_multiplicity(nu, a) * v * sign);
          }
        }
      }
    }
    cm.blocks.emplace(k, PolyMap(n, src.term(k), tgt.term(k), PolyMatrix::from_constant(mb.build())));
  }
  return cm;
}

/// A chain map whose blocks were rescaled to commute, with the scalars used.
struct ScaledChainMap {
  ChainMap map;
  std::map<int, Rational> scalars;
  bool aligned = false;
};

inline ScaledChainMap align(ChainMap cm) {
  auto s = align_chain_scalars(cm);
  ScaledChainMap out{std::move(cm), {}, s.has_value()};
  if (s) out.scalars = std::move(*s);
  return out;
}

inline ChainMap compose_chain(const ChainMap& second, const ChainMap& first) {
  ChainMap cm{first.source, second.target, first.shift + second.shift, {}};
  for (const auto& [h, blk] : first.blocks) {
    cm.blocks.emplace(h, compose(second.block(h + first.shift), blk));
  }
  return cm;
}

/// g = f(V1) o h: the dual side mapped into the resolution of m^{b-1}.
inline ScaledChainMap g_chain(const V1Embedding& emb) {
  if (emb.dim() != 2 * emb.b - 1) {
    throw std::invalid_argument("g_chain: dim V1 = " + std::to_string(emb.dim()) + ", expected " +
                                std::to_string(2 * emb.b - 1));
  }
  ScaledChainMap h = align(h_chain(emb));
  ScaledChainMap g{compose_chain(f_chain(emb), h.map), h.scalars, h.aligned};
  return g;
}

/// Wedge powers of V1 inside Wedge powers of Wedge^2 V0 on the dual side.
inline ChainMap dual_side_inclusion(const V1Embedding& emb) {
  const V1Embedding full = full_embedding(emb.b);
  const GradedComplex src = dual_side_complex(emb);
  const GradedComplex tgt = dual_side_complex(full);
  const auto v0dual = BasisSpace::dual(emb.v0);
  const auto span = emb.spanning.to_dense();
  ChainMap cm{src, tgt, 0, {}};
  for (int k = src.first_degree(); k <= src.last_degree(); ++k) {
    const int w = emb.b + k;
    const auto div = BasisSpace::divided(k, v0dual);
    const auto ws = BasisSpace::wedge(w, emb.v1);
    const auto wt = BasisSpace::wedge(w, full.v1);
    MatrixBuilder mb(div.dim() * wt.dim(), div.dim() * ws.dim());
    for (std::size_t y = 0; y < ws.dim(); ++y) {
      const auto minors = minors_on_columns<Rational>(
          span.size(), ws.label(y), [&](std::size_t r, std::size_t c) -> const Rational* {
            return span[r][c].is_zero() ? nullptr : &span[r][c];
          });
      for (const auto& [mask, det] : minors) {
        Tuple rows;
        for (std::size_t r = 0; r < span.size(); ++r) {
          if (mask & (std::uint64_t{1} << r)) rows.push_back(static_cast<int>(r));
        }
        const std::size_t yr = wt.index_of(rows);
        for (std::size_t x = 0; x < div.dim(); ++x) mb.add(x * wt.dim() + yr, x * ws.dim() + y, det);
      }
    }
    cm.blocks.emplace(k, PolyMap(emb.nvars(), src.term(k), tgt.term(k), PolyMatrix::from_constant(mb.build())));
  }
  return cm;
}

/// g for V1 = Wedge^2 V0, restricted to the dual side of V1.
inline ScaledChainMap g_chain_full(const V1Embedding& emb) {
  const V1Embedding full = full_embedding(emb.b);
  ScaledChainMap h = align(h_chain(full));
  ChainMap g = compose_chain(compose_chain(f_chain(full), h.map), dual_side_inclusion(emb));
  return align(std::move(g));
}

/// Middle homology of S <- V0 (x) S(-1) <- V1 (x) S(-2) on [0, window].
struct FiniteLengthReport {
  int window = 0;
  std::vector<std::size_t> dims;
  std::optional<int> first_vanishing;
  [[nodiscard]] bool ok() const { return first_vanishing.has_value(); }
};

inline GradedComplex koszul_module_complex(const V1Embedding& emb) {
  const int n = emb.nvars();
  PolyMatrix row(1, emb.v0.dim());
  for (int k = 0; k < n; ++k) row.add(0, static_cast<std::size_t>(k), Polynomial::variable(k));
  const GradedFreeModule s0(BasisSpace::free(1, "S"), 0);
  const GradedFreeModule s1(emb.v0, 1);
  const GradedFreeModule s2(emb.v1, 2);
  return {n, 0, {s0, s1, s2}, {PolyMap(n, s1, s0, std::move(row)), PolyMap(n, s2, s1, emb.phi().matrix())}};
}

/// The module is generated in degree 2, so one vanishing degree d >= 2
/// forces vanishing in every later degree.
inline FiniteLengthReport finite_length_check(const V1Embedding& emb, int window) {
  FiniteLengthReport rep;
  rep.window = window;
  rep.dims.assign(static_cast<std::size_t>(std::max(0, window + 1)), 0);
  const GradedComplex c = koszul_module_complex(emb);
  for (int d = 0; d <= window; ++d) {
    rep.dims[static_cast<std::size_t>(d)] = homology_dims(c, 1, d, d)[0];
    if (d >= 2 && rep.dims[static_cast<std::size_t>(d)] == 0) {
      rep.first_vanishing = d;
      break;
    }
  }
  return rep;
}

enum class CertificateStatus { Certified, PreconditionFailed, ContainmentFailed, NotInvertible, NotChainMap };

inline std::string to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::Certified: return "certified";
    case CertificateStatus::PreconditionFailed: return "precondition failed";
    case CertificateStatus::ContainmentFailed: return "containment failed";
    case CertificateStatus::NotInvertible: return "block not invertible";
    case CertificateStatus::NotChainMap: return "not a chain map";
  }
  return "?";
}

struct DegreeRecord {
  int degree = 0;
  std::size_t source_rank = 0;
  std::size_t dual_rank = 0;
  std::size_t rank_f = 0;
  std::size_t rank_g = 0;
  bool contained = false;
  bool invertible = false;
};

struct DualityCertificate {
  int b = 0;
  std::string v1;
  CertificateStatus status = CertificateStatus::PreconditionFailed;
  std::string failure;
  std::optional<int> failing_degree;
  FiniteLengthReport finite_length;
  std::map<int, Rational> scalars;
  std::vector<DegreeRecord> degrees;
  /// x_j : Sym^{b-1}(phi|V1)_j -> dual side_j.
  std::map<int, SparseMatrix> isomorphisms;
  std::vector<std::string> transcript;

  [[nodiscard]] bool ok() const { return status == CertificateStatus::Certified; }
};

inline DualityCertificate verify_self_duality(const V1Embedding& emb, int window = -1) {
  const int b = emb.b;
  DualityCertificate cert;
  cert.b = b;
  cert.v1 = emb.description;
  auto log = [&](const std::string& line) { cert.transcript.push_back(line); };
  auto fail = [&](CertificateStatus s, std::string why, std::optional<int> deg = std::nullopt) {
    cert.status = s;
    cert.failure = std::move(why);
    cert.failing_degree = deg;
    log("FAIL: " + cert.failure);
    return cert;
  };
  if (window < 0) window = 3 * b;
  if (b < 2) return fail(CertificateStatus::PreconditionFailed, "b must be at least 2");
  if (emb.dim() != 2 * b - 1) {
    return fail(CertificateStatus::PreconditionFailed,
                "dim V1 = " + std::to_string(emb.dim()) + ", expected " + std::to_string(2 * b - 1));
  }
  cert.finite_length = finite_length_check(emb, window);
  {
    std::ostringstream os;
    const int top = cert.finite_length.first_vanishing.value_or(window);
    os << "koszul module dims 0.." << top << ":";
    for (int d = 0; d <= top; ++d) os << ' ' << cert.finite_length.dims[static_cast<std::size_t>(d)];
    log(os.str());
  }
  if (!cert.finite_length.ok()) {
    return fail(CertificateStatus::PreconditionFailed,
                "finite length not established: no vanishing degree in [2, " + std::to_string(window) + "]");
  }
  log("koszul module vanishes from degree " + std::to_string(*cert.finite_length.first_vanishing));

  const ChainMap f = f_chain(emb);
  const ScaledChainMap g = g_chain(emb);
  cert.scalars = g.scalars;
  if (!g.aligned) return fail(CertificateStatus::NotChainMap, "h is not a chain map up to scalars");
  for (const auto& [k, s] : g.scalars) log("scalar h_" + std::to_string(k) + " = " + s.str());
  if (auto r = verify_chain_map(f); !r.ok) return fail(CertificateStatus::NotChainMap, "f: " + r.message, r.position);
  if (auto r = verify_chain_map(g.map); !r.ok) return fail(CertificateStatus::NotChainMap, "g: " + r.message, r.position);
  log("f and g commute with the differentials");

  const GradedComplex& sym = f.source;
  const GradedComplex& dual = g.map.source;
  const int top = sym.last_degree();
  std::vector<DegreeRecord> recs(static_cast<std::size_t>(top + 1));
  std::vector<std::optional<SparseMatrix>> xs(recs.size());
  parallel_for(recs.size(), [&](std::size_t idx) {
    const int j = static_cast<int>(idx);
    const SparseMatrix fj = f.block(j).matrix().coefficient_matrix({});
    const SparseMatrix gj = g.map.block(j).matrix().coefficient_matrix({});
    DegreeRecord& rec = recs[idx];
    rec.degree = j;
    rec.source_rank = sym.term(j).rank();
    rec.dual_rank = j <= dual.last_degree() ? dual.term(j).rank() : 0;
    rec.rank_f = rank(fj);
    rec.rank_g = rank(gj);
    xs[idx] = solve_in_column_space(gj, fj);
    rec.contained = xs[idx].has_value();
    rec.invertible = rec.contained && is_invertible(*xs[idx]);
  });
  cert.degrees = recs;
  for (const auto& rec : recs) {
    std::ostringstream os;
    os << "degree " << rec.degree << ": rank P = " << rec.source_rank << ", rank dual = " << rec.dual_rank
       << ", rank f = " << rec.rank_f << ", rank g = " << rec.rank_g << ", contained = " << rec.contained
       << ", invertible = " << rec.invertible;
    log(os.str());
  }
  for (const auto& rec : recs) {
    if (rec.source_rank != rec.dual_rank) {
      return fail(CertificateStatus::ContainmentFailed, "rank mismatch in degree " + std::to_string(rec.degree),
                  rec.degree);
    }
    if (!rec.contained || rec.rank_f != rec.rank_g) {
      return fail(CertificateStatus::ContainmentFailed,
                  "image of f not contained in image of g in degree " + std::to_string(rec.degree), rec.degree);
    }
    if (!rec.invertible) {
      return fail(CertificateStatus::NotInvertible, "x not invertible in degree " + std::to_string(rec.degree),
                  rec.degree);
    }
  }
  ChainMap x{sym, dual, 0, {}};
  for (std::size_t idx = 0; idx < xs.size(); ++idx) {
    const int j = static_cast<int>(idx);
    x.blocks.emplace(j, PolyMap(sym.nvars(), sym.term(j), dual.term(j), PolyMatrix::from_constant(*xs[idx])));
    cert.isomorphisms.emplace(j, *xs[idx]);
  }
  if (auto r = verify_chain_map(x); !r.ok) return fail(CertificateStatus::NotChainMap, "x: " + r.message, r.position);
  log("x is a chain isomorphism");
  cert.status = CertificateStatus::Certified;
  return cert;
}

}  // namespace hermite
