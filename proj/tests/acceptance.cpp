// Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic throughout.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hermite/duality/bgg.hpp"
#include "hermite/duality/certificate.hpp"
#include "hermite/duality/iso_search.hpp"
#include "hermite/duality/psi.hpp"
#include "hermite/en/dualities.hpp"
#include "hermite/en/schur_complexes.hpp"
#include "hermite/graded/koszul.hpp"
#include "hermite/multilinear/structure_maps.hpp"
#include "hermite/rep/partitions.hpp"
#include "hermite/rep/sl2.hpp"

using namespace hermite;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

SparseMatrix one_based(std::size_t n, const std::vector<std::tuple<int, int, Rational>>& cells) {
  std::vector<MatrixEntry> t;
  for (const auto& [r, c, v] : cells) t.push_back({static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1), v});
  return SparseMatrix::from_triplets(n, n, t);
}

Polynomial z(int k, Rational c = Rational(1)) { return Polynomial::variable(k, c); }

Outcome criterion1() {
  Outcome o;
  const auto phi = sl2_phi_restriction(3);
  const Rational h(1, 2);
  const Rational s(1, 6);
  const std::vector<std::vector<Polynomial>> want{
      {z(1, Rational(-1)), z(2, -h), z(3, -s), Polynomial{}, Polynomial{}},
      {z(0), Polynomial{}, z(2, -h), z(3, -h), Polynomial{}},
      {Polynomial{}, z(0, h), z(1, h), Polynomial{}, z(3, Rational(-1))},
      {Polynomial{}, Polynomial{}, z(0, s), z(1, h), z(2)}};
  o.require(phi.matrix().rows() == 4 && phi.matrix().cols() == 5, "shape");
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 5; ++c) {
      o.require(phi.matrix().at(r, c) == want[r][c],
                "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") = " + phi.matrix().at(r, c).str());
    }
  }
  return o;
}

SparseMatrix published_hermite() {
  return one_based(10, {{1, 1, Rational(1)},
                        {2, 2, Rational(3)},
                        {3, 3, Rational(6)},
                        {4, 4, Rational(3)},
                        {5, 5, Rational(2)},
                        {5, 6, Rational(-1, 2)},
                        {6, 5, Rational(6)},
                        {6, 6, Rational(3, 2)},
                        {7, 7, Rational(6)},
                        {8, 8, Rational(3)},
                        {9, 9, Rational(3)},
                        {10, 10, Rational(1)}});
}

Outcome criterion2() {
  Outcome o;
  const auto h = hermite_matrix(sl2_embedding(3));
  o.require(h.matrix == published_hermite(), "normalized psi_{3,0} differs from the published matrix");
  o.notes.push_back("normalizing scalar " + h.scale.str());
  return o;
}

Outcome criterion3() {
  Outcome o;
  const SparseMatrix want = one_based(10, {{1, 1, Rational(1)},
                                           {2, 2, Rational(3)},
                                           {3, 3, Rational(3)},
                                           {3, 4, Rational(-3)},
                                           {4, 4, Rational(9)},
                                           {5, 5, Rational(-1)},
                                           {5, 6, Rational(1)},
                                           {6, 5, Rational(9)},
                                           {7, 7, Rational(-3)},
                                           {7, 8, Rational(3)},
                                           {8, 8, Rational(9)},
                                           {9, 9, Rational(3)},
                                           {10, 10, Rational(1)}});
  const auto c = classical_hermite_matrix_b3();
  o.require(c == want, "classical matrix");
  const auto h = hermite_matrix(sl2_embedding(3));
  const auto rep = diff_report(h.matrix, c, h.row_weights);
  const auto diff = rep.differing();
  bool three = diff.size() == 3;
  for (const auto& d : diff) three = three && d.last == d.first + 1;
  o.require(three, "diff report does not isolate three 2x2 blocks");
  o.require(rep.off_block_equal, "matrices differ off the diagonal blocks");
  std::ostringstream os;
  os << "differing blocks:";
  for (const auto& d : diff) os << " rows " << d.first << "-" << d.last;
  o.notes.push_back(os.str());
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (int b = 2; b <= 4; ++b) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cert = verify_self_duality(sl2_embedding(b));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(cert.ok(), "b=" + std::to_string(b) + ": " + cert.failure);
    for (const auto& d : cert.degrees) {
      o.require(d.contained && d.invertible && d.rank_f == d.rank_g && d.source_rank == d.dual_rank,
                "b=" + std::to_string(b) + " degree " + std::to_string(d.degree));
    }
    std::ostringstream os;
    os << "b=" << b << " certified in " << std::fixed << std::setprecision(2) << secs << "s";
    if (!cert.scalars.empty()) {
      os << ", scalars";
      for (const auto& [k, s] : cert.scalars) os << " h_" << k << "=" << s;
    }
    o.notes.push_back(os.str());
    if (b == 4) o.require(secs < 300.0, "b=4 exceeded 5 minutes");
  }
  for (int b = 2; b <= 3; ++b) {
    const auto emb = sl2_embedding(b);
    const auto r = generic_chain_iso_search(sym_complex(emb.phi(), b - 1), dual_side_complex(emb));
    o.require(r.status == IsoStatus::Found, "independent search b=" + std::to_string(b) + ": " + r.reason);
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto phi = generic_phi(3, 2);
  const auto a = en_complex(phi, 2).complex;
  const auto b = en_complex(phi, -1).complex;
  o.require(a.ranks() == b.ranks(), "rank sequences differ");
  const auto r1 = generic_chain_iso_search(a, b);
  const auto r2 = generic_chain_iso_search(b, a);
  o.require(r1.status == IsoStatus::None, "C_2 -> C_{-1}: " + to_string(r1.status) + " " + r1.reason);
  o.require(r2.status == IsoStatus::None, "C_{-1} -> C_2: " + to_string(r2.status) + " " + r2.reason);
  o.notes.push_back(r1.reason);
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (int b = 2; b <= 4; ++b) {
    const auto c = resolution_c(b);
    o.require(verify_complex(c).ok, "d^2 for b=" + std::to_string(b));
    for (int pos = 1; pos <= c.last_degree(); ++pos) {
      for (auto d : homology_dims(c, pos, 0, 3 * b)) o.require(d == 0, "interior homology b=" + std::to_string(b));
    }
    for (int d = 0; d <= 3 * b; ++d) {
      const std::size_t dim = c.term(0).piece_dim(c.nvars(), d);
      const std::size_t h0 = c.last_degree() >= 1 ? dim - rank(realize_matrix(c.differential(1), d)) : dim;
      const std::size_t want = d < b - 1 ? 0 : binomial(d + b, b);
      o.require(h0 == want, "H0 b=" + std::to_string(b) + " d=" + std::to_string(d));
    }
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  for (int b = 3; b <= 4; ++b) {
    const auto emb = sl2_embedding(b);
    for (int i = 0; i < b; ++i) {
      for (int j = 0; i + j < b; ++j) {
        const auto p = psi(emb, i, j);
        o.require(rank(p.matrix) == p.source.dim(),
                  "psi_{" + std::to_string(i) + "," + std::to_string(j) + "} b=" + std::to_string(b));
      }
    }
    const auto top = psi(emb, b, 0);
    o.require(rank(top.matrix) == top.source.dim(), "psi_{b,0} b=" + std::to_string(b));
    const auto f = f_chain(emb);
    o.require(verify_chain_map(f).ok, "f not a chain map b=" + std::to_string(b));
    for (const auto& [i, blk] : f.blocks) {
      const auto m = blk.matrix().coefficient_matrix({});
      o.require(rank(m) == m.cols(), "f_" + std::to_string(i) + " b=" + std::to_string(b));
    }
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (int b = 3; b <= 4; ++b) {
    for (const auto& emb : {full_embedding(b), sl2_embedding(b)}) {
      const auto rep = bgg_generation_check(emb, BggSide::P);
      for (const auto& c : rep.checks) {
        o.require(c.ok, "b=" + std::to_string(b) + " " + emb.description + ": " + c.name);
      }
      o.require(rep.checks.size() == static_cast<std::size_t>(b - 1), "missing degrees");
    }
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  o.require(schur_dim(Partition{2, 1}, 4) == 20 && 20 == 5 * binomial(4, 3), "schur_dim (2,1) on Q^4");
  for (int b = 2; b <= 5; ++b) {
    for (int i = 2; i <= b; ++i) {
      auto got = pieri_tensor_v(Partition::hook(b - 1, i - 1));
      std::sort(got.begin(), got.end());
      std::vector<int> mid{b - 1, 2};
      mid.insert(mid.end(), static_cast<std::size_t>(i - 2), 1);
      std::vector<Partition> want{Partition::hook(b, i - 1), Partition::hook(b - 1, i)};
      if (b - 1 >= 2) want.emplace_back(mid);
      std::sort(want.begin(), want.end());
      o.require(got == want, "Pieri b=" + std::to_string(b) + " i=" + std::to_string(i));
    }
  }
  const auto bott = bott_algorithm({-4, 1, 0, 0});
  o.require(bott && bott->degree == 3 && bott->weight == Weight{0, -1, -1, -1}, "bott (-4,1,0,0)");
  for (int dim = 4; dim <= 5; ++dim) {
    for (int n = 1; n <= 4; ++n) {
      std::size_t sum = 0;
      for (const auto& p : macdonald_factors(n, dim)) sum += schur_dim(p, dim);
      o.require(sum == binomial(dim * (dim - 1) / 2, n),
                "macdonald dim=" + std::to_string(dim) + " n=" + std::to_string(n));
    }
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  std::size_t complexes = 0;
  auto check = [&](const GradedComplex& c, const std::string& what) {
    ++complexes;
    o.require(verify_complex(c).ok, "d^2 != 0: " + what);
  };
  for (int f = 1; f <= 4; ++f) {
    for (int g = 1; g <= f; ++g) {
      const auto phi = generic_phi(f, g);
      for (int i = -2; i <= f - g + 2; ++i) {
        check(en_complex(phi, i).complex, "generic " + std::to_string(f) + "x" + std::to_string(g));
      }
      for (int i = 0; i <= 3; ++i) {
        check(sym_complex(phi, i), "sym");
        check(wedge_complex(phi, i), "wedge");
      }
    }
  }
  for (const auto& [d, b] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 2}}) {
    const auto phi = hankel_phi(d, b);
    for (int i = -1; i <= d - b + 1; ++i) check(en_complex(phi, i).complex, "hankel");
  }
  for (int b = 2; b <= 4; ++b) {
    const auto phi = sl2_phi_restriction(b);
    for (int i = -1; i <= b; ++i) check(en_complex(phi, i).complex, "sl2");
    check(resolution_c(b), "resolution");
    check(dual_side_complex(sl2_embedding(b)), "dual side");
  }
  for (int f = 2; f <= 4; ++f) {
    for (int g = 1; g <= f; ++g) {
      const auto phi = generic_phi(f, g);
      for (int i = 0; i <= f - g; ++i) {
        o.require(verify_chain_map(duality1_map(phi, i)).ok, "duality1 f=" + std::to_string(f));
      }
      for (int i = g - f - 1; i <= f - g + 1; ++i) {
        if (i + g < 0) continue;
        const auto r = duality2_map(phi, i);
        o.require(r.aligned && verify_chain_map(r.map).ok, "duality2 f=" + std::to_string(f) + " g=" +
                                                                std::to_string(g) + " i=" + std::to_string(i));
      }
    }
  }
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto v = BasisSpace::free(n, "V");
    for (int k = 0; k <= 4; ++k) {
      for (int p = 0; p <= k; ++p) {
        for (int q = 0; p + q <= k; ++q) {
          const int r = k - p - q;
          const auto w = BasisSpace::wedge(k, v);
          const auto left = kron(comultiply_wedge(BasisSpace::wedge(p + q, v), p, q).matrix,
                                 SparseMatrix::identity(BasisSpace::wedge(r, v).dim())) *
                            comultiply_wedge(w, p + q, r).matrix;
          const auto right = kron(SparseMatrix::identity(BasisSpace::wedge(p, v).dim()),
                                  comultiply_wedge(BasisSpace::wedge(q + r, v), q, r).matrix) *
                             comultiply_wedge(w, p, q + r).matrix;
          o.require(left == right, "wedge coassociativity");
          const auto s = BasisSpace::sym(k, v);
          const auto sl = kron(comultiply_sym(BasisSpace::sym(p + q, v), p, q).matrix,
                               SparseMatrix::identity(BasisSpace::sym(r, v).dim())) *
                          comultiply_sym(s, p + q, r).matrix;
          const auto sr = kron(SparseMatrix::identity(BasisSpace::sym(p, v).dim()),
                               comultiply_sym(BasisSpace::sym(q + r, v), q, r).matrix) *
                          comultiply_sym(s, p, q + r).matrix;
          o.require(sl == sr, "sym coassociativity");
        }
      }
    }
  }
  const auto a = LinearMap(BasisSpace::free(4, "A"), BasisSpace::free(5, "B"), clebsch_gordan_v1(3).transpose().select_columns(std::vector<std::size_t>{0, 1, 2, 3}));
  const auto b = LinearMap(BasisSpace::free(5, "B"), BasisSpace::free(3, "C"), sl2_lowering(4).select_rows(std::vector<std::size_t>{0, 2, 4}));
  for (int k = 0; k <= 3; ++k) {
    o.require(wedge_power_of_map(compose(b, a), k).matrix == wedge_power_of_map(b, k).matrix * wedge_power_of_map(a, k).matrix,
              "wedge functoriality k=" + std::to_string(k));
    o.require(sym_power_of_map(compose(b, a), k).matrix == sym_power_of_map(b, k).matrix * sym_power_of_map(a, k).matrix,
              "sym functoriality k=" + std::to_string(k));
  }
  o.notes.push_back(std::to_string(complexes) + " complexes checked");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"sl2 restriction of the Koszul map (4x5)", criterion1},
      {"Hermite matrix psi_{3,0}(Sym^4 U)", criterion2},
      {"classical matrix and three-block diff", criterion3},
      {"self-duality certificates b=2,3,4 and independent search b=2,3", criterion4},
      {"C_2 vs C_{-1} for generic 3x2 admits no isomorphism", criterion5},
      {"resolution of m^{b-1}: exactness and H0", criterion6},
      {"injectivity of psi and of f", criterion7},
      {"generation surjectivity", criterion8},
      {"combinatorics oracles", criterion9},
      {"structural properties", criterion10}};
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << criteria[k].first << " (" << std::fixed
              << std::setprecision(2) << secs << "s)\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
    std::cout.flush();
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
