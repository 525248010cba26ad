#include <catch2/catch_amalgamated.hpp>

#include "hermite/graded/complex.hpp"
#include "hermite/rep/partitions.hpp"
#include "hermite/rep/schur_modules.hpp"
#include "hermite/rep/sl2.hpp"

using namespace hermite;

namespace {

// Character of S_lambda(Q^n) by enumerating semistandard tableaux.
WeightTable ssyt_character(const Partition& lambda, int n) {
  WeightTable t;
  std::vector<std::pair<int, int>> cells;
  for (int r = 0; r < lambda.length(); ++r) {
    for (int c = 0; c < lambda.part(r); ++c) cells.emplace_back(r, c);
  }
  std::map<std::pair<int, int>, int> fill;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == cells.size()) {
      Weight w(static_cast<std::size_t>(n), 0);
      for (const auto& [cell, v] : fill) ++w[static_cast<std::size_t>(v)];
      ++t[w];
      return;
    }
    const auto [r, c] = cells[k];
    int lo = 0;
    if (c > 0) lo = std::max(lo, fill[{r, c - 1}]);
    if (r > 0) lo = std::max(lo, fill[{r - 1, c}] + 1);
    for (int v = lo; v < n; ++v) {
      fill[{r, c}] = v;
      self(self, k + 1);
    }
    fill.erase({r, c});
  };
  rec(rec, 0);
  return t;
}

WeightTable product(const WeightTable& a, const WeightTable& b) {
  WeightTable t;
  for (const auto& [wa, ma] : a) {
    for (const auto& [wb, mb] : b) {
      Weight w = wa;
      for (std::size_t k = 0; k < w.size(); ++k) w[k] += wb[k];
      t[w] += ma * mb;
    }
  }
  return t;
}

std::vector<Partition> partitions_of(int m, int max_part, int max_len) {
  if (m == 0) return {Partition{}};
  std::vector<Partition> out;
  if (max_len == 0) return out;
  for (int p = std::min(m, max_part); p >= 1; --p) {
    for (const auto& rest : partitions_of(m - p, p, max_len - 1)) {
      std::vector<int> parts{p};
      parts.insert(parts.end(), rest.parts().begin(), rest.parts().end());
      out.emplace_back(std::move(parts));
    }
  }
  return out;
}

std::size_t total(const WeightTable& t) {
  std::size_t s = 0;
  for (const auto& [w, m] : t) s += m;
  return s;
}

BasisSpace V(int n) { return BasisSpace::free(static_cast<std::size_t>(n), "V"); }

}  // namespace

TEST_CASE("partition basics", "[rep]") {
  CHECK(Partition{3, 1, 0, 0} == Partition{3, 1});
  CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
  CHECK(Partition{3, 1}.conjugate() == Partition{2, 1, 1});
  CHECK(Partition::hook(2, 3) == Partition{2, 1, 1, 1});
  CHECK(Partition{4, 2, 1}.str() == "(4,2,1)");
}

TEST_CASE("schur_dim", "[rep]") {
  CHECK(schur_dim(Partition{1}, 4) == 4);
  CHECK(schur_dim(Partition{2, 1}, 4) == 20);
  CHECK(schur_dim(Partition{2, 1}, 4) == 5 * binomial(4, 3));
  CHECK(schur_dim(Partition{3, 1, 1, 1}, 4) == 10);
  CHECK(schur_dim(Partition{1, 1, 1, 1, 1}, 4) == 0);
  for (int n = 1; n <= 5; ++n) {
    for (int m = 0; m <= 5; ++m) {
      for (const auto& p : partitions_of(m, m, n)) CHECK(schur_dim(p, n) == total(ssyt_character(p, n)));
    }
  }
}

TEST_CASE("Schur modules as Koszul kernels", "[rep]") {
  const int b = 3;
  CHECK(hook_schur_module(V(b + 1), b, b).dim() == 10);
  for (int n = 2; n <= 4; ++n) {
    for (int i = 1; i <= n; ++i) {
      CHECK(hook_schur_module(V(n), i, 0).dim() == 0);
      for (int j = 1; j <= 3; ++j) {
        CHECK(hook_schur_module(V(n), i, j).dim() == schur_dim(Partition::hook(j, i), n));
      }
    }
  }
}

TEST_CASE("Pieri rules", "[rep]") {
  CHECK(pieri_tensor_v(Partition{}) == std::vector<Partition>{Partition{1}});
  const int b = 3;
  for (int i = 2; i <= 3; ++i) {
    auto got = pieri_tensor_v(Partition::hook(b - 1, i - 1));
    std::sort(got.begin(), got.end());
    std::vector<Partition> want{Partition::hook(b, i - 1), Partition::hook(b - 1, i)};
    std::vector<int> mid{b - 1, 2};
    mid.insert(mid.end(), static_cast<std::size_t>(i - 2), 1);
    want.emplace_back(mid);
    std::sort(want.begin(), want.end());
    CHECK(got == want);
  }
  CHECK(pieri_remove_sym_dual(Partition{2, 1}, 0) == std::vector<Partition>{Partition{2, 1}});
  CHECK(pieri_remove_sym_dual(Partition{2, 1}, 1) == std::vector<Partition>{Partition{1, 1}, Partition{2}});
}

TEST_CASE("Pieri agrees with the character product", "[rep]") {
  for (int n = 1; n <= 5; ++n) {
    const auto v = ssyt_character(Partition{1}, n);
    for (int m = 0; m <= 5; ++m) {
      for (const auto& lambda : partitions_of(m, m, n)) {
        const auto prod = product(ssyt_character(lambda, n), v);
        const auto mult = irreducible_multiplicities(prod);
        const auto pieri = pieri_tensor_v(lambda, n);
        REQUIRE(mult.size() == pieri.size());
        for (const auto& p : pieri) {
          auto it = mult.find(p.padded(n));
          REQUIRE(it != mult.end());
          CHECK(it->second == 1);
        }
      }
    }
  }
}

TEST_CASE("irreducible characters match tableaux", "[rep]") {
  for (int n = 1; n <= 4; ++n) {
    for (int m = 0; m <= 5; ++m) {
      for (const auto& p : partitions_of(m, m, n)) CHECK(irreducible_character(p.padded(n)) == ssyt_character(p, n));
    }
  }
  // Negative highest weights shift by a power of the determinant.
  const auto t = irreducible_character({0, -1, -1});
  CHECK(total(t) == 3);
  CHECK(t.count({0, -1, -1}) == 1);
  CHECK(t.count({-1, -1, 0}) == 1);
}

TEST_CASE("bott_algorithm", "[rep]") {
  const auto r = bott_algorithm({-4, 1, 0, 0});
  REQUIRE(r);
  CHECK(r->degree == 3);
  CHECK(r->weight == Weight{0, -1, -1, -1});
  CHECK_FALSE(bott_algorithm({-3, 2, 0, 0}));
  for (const auto& p : partitions_of(5, 5, 4)) {
    const auto w = p.padded(4);
    const auto d = bott_algorithm(w);
    REQUIRE(d);
    CHECK(d->degree == 0);
    CHECK(d->weight == w);
  }
}

TEST_CASE("weight tables and multiplicities", "[rep]") {
  const auto s2 = weight_table(BasisSpace::sym(2, V(2)));
  CHECK(s2 == WeightTable{{{2, 0}, 1}, {{1, 1}, 1}, {{0, 2}, 1}});

  const auto w22 = BasisSpace::wedge(2, BasisSpace::wedge(2, V(4)));
  const auto m = irreducible_multiplicities(weight_table(w22));
  CHECK(m == std::map<Weight, std::size_t>{{{2, 1, 1, 0}, 1}});

  const int b = 3;
  const auto v0 = V(b + 1);
  for (int i = 1; i <= 2; ++i) {
    const auto space =
        BasisSpace::tensor(BasisSpace::wedge(i, BasisSpace::wedge(2, v0)), BasisSpace::sym(b - 1 - i, v0));
    const auto table = weight_table(space);
    CHECK(total(table) == space.dim());
    const auto mult = irreducible_multiplicities(table);
    auto count = [&](const Partition& p) {
      auto it = mult.find(p.padded(b + 1));
      return it == mult.end() ? std::size_t{0} : it->second;
    };
    CHECK(count(Partition::hook(b - 1, i)) == 1);
    CHECK(count(Partition::hook(b, i - 1)) == 0);
    std::vector<int> mid{b - 1, 2};
    mid.insert(mid.end(), static_cast<std::size_t>(std::max(0, i - 2)), 1);
    CHECK(count(Partition(mid)) == 0);
  }
  const auto dual_table = weight_table(BasisSpace::dual(V(3)));
  CHECK(irreducible_multiplicities(dual_table) == std::map<Weight, std::size_t>{{{0, 0, -1}, 1}});
}

TEST_CASE("macdonald_factors", "[rep]") {
  CHECK(macdonald_factors(1, 4) == std::vector<Partition>{Partition{1, 1}});
  CHECK(macdonald_factors(2, 3) == std::vector<Partition>{Partition{2, 1, 1}});
  for (int dim = 4; dim <= 5; ++dim) {
    for (int n = 1; n <= 4; ++n) {
      std::size_t sum = 0;
      for (const auto& p : macdonald_factors(n, dim)) sum += schur_dim(p, dim);
      CHECK(sum == binomial(dim * (dim - 1) / 2, n));
    }
  }
  for (int n = 1; n <= 3; ++n) {
    const auto table = weight_table(BasisSpace::wedge(n, BasisSpace::wedge(2, V(4))));
    std::map<Weight, std::size_t> want;
    for (const auto& p : macdonald_factors(n, 4)) want[p.padded(4)] = 1;
    CHECK(irreducible_multiplicities(table) == want);
  }
  // (b, 2^j, 1^{b-j}) has exactly one Macdonald parent of size 2(b + j).
  const int b = 3;
  const int j = 1;
  std::vector<int> target{b};
  target.insert(target.end(), j, 2);
  target.insert(target.end(), b - j, 1);
  int parents = 0;
  for (const auto& p : macdonald_factors(b + j, b + 1)) {
    for (const auto& nu : pieri_remove_sym_dual(p, j)) parents += nu == Partition(target) ? 1 : 0;
  }
  CHECK(parents == 1);
}

TEST_CASE("Hermite dimension coincidences", "[rep]") {
  for (int b = 2; b <= 6; ++b) {
    const std::size_t v1 = static_cast<std::size_t>(2 * b - 1);
    CHECK(binomial(2 * b - 1, b) == binomial(v1, b));
    CHECK(binomial(v1, b) == schur_dim(Partition::hook(b, b), b + 1));
    CHECK(binomial(2 * b - 1, b - 1) == binomial(v1, b - 1));
    CHECK(binomial(v1, b - 1) == schur_dim(Partition{b - 1}, b + 1));
  }
}

TEST_CASE("sl2 operators", "[rep]") {
  for (int n = 0; n <= 5; ++n) {
    const auto e = sl2_raising(n);
    const auto f = sl2_lowering(n);
    CHECK(e * f - f * e == sl2_cartan(n));
  }
  const auto f = sl2_lowering(3);
  const auto wf = wedge_derivation(f, 2);
  const auto w2 = BasisSpace::wedge(2, V(4));
  // f(e0 ^ e1) = 3 e1 ^ e1 + 2 e0 ^ e2 = 2 e0 ^ e2
  const auto img = wf * SparseMatrix::from_triplets(6, 1, {{w2.index_of({0, 1}), 0, Rational(1)}});
  CHECK(img == SparseMatrix::from_triplets(6, 1, {{w2.index_of({0, 2}), 0, Rational(2)}}));
}

TEST_CASE("clebsch_gordan_v1", "[rep]") {
  CHECK(clebsch_gordan_v1(1).cols() == 1);
  CHECK(rank(clebsch_gordan_v1(2)) == 3);
  CHECK(clebsch_gordan_v1(2).rows() == 3);
  for (int b = 2; b <= 5; ++b) {
    const auto span = clebsch_gordan_v1(b);
    CHECK(rank(span) == static_cast<std::size_t>(2 * b - 1));
    const auto w2 = BasisSpace::wedge(2, V(b + 1));
    // Each column is a weight vector of weight 2b - 2 - 2t.
    const auto cols = span.column_lists();
    for (std::size_t t = 0; t < cols.size(); ++t) {
      for (const auto& [r, v] : cols[t]) CHECK(sl2_wedge_weight(w2.label(r), b) == 2 * b - 2 - 2 * static_cast<int>(t));
    }
    CHECK(column_space_contains(span, wedge_derivation(sl2_raising(b), 2) * span));
    CHECK(column_space_contains(span, wedge_derivation(sl2_lowering(b), 2) * span));
  }
}

TEST_CASE("sl2_phi_restriction", "[rep]") {
  const auto phi = sl2_phi_restriction(3);
  const auto z = [](int k, Rational c) { return Polynomial::variable(k, c); };
  const Rational half(1, 2);
  const Rational sixth(1, 6);
  PolyMatrix want(4, 5);
  want.add(0, 0, z(1, -1));
  want.add(0, 1, z(2, -half));
  want.add(0, 2, z(3, -sixth));
  want.add(1, 0, z(0, 1));
  want.add(1, 2, z(2, -half));
  want.add(1, 3, z(3, -half));
  want.add(2, 1, z(0, half));
  want.add(2, 2, z(1, half));
  want.add(2, 4, z(3, -1));
  want.add(3, 2, z(0, sixth));
  want.add(3, 3, z(1, half));
  want.add(3, 4, z(2, 1));
  CHECK(phi.matrix() == want);

  // Columns are Koszul cycles.
  PolyMatrix aug(1, 4);
  for (int k = 0; k < 4; ++k) aug.add(0, static_cast<std::size_t>(k), Polynomial::variable(k));
  CHECK((aug * phi.matrix()).is_zero());

  // Finite length of the middle homology.
  const GradedFreeModule s(BasisSpace::free(1, "S"), 0);
  const GradedComplex c(4, 0, {s, phi.target(), phi.source()},
                        {PolyMap(4, phi.target(), s, aug), phi});
  const auto h = homology_dims(c, 1, 0, 9);
  CHECK(h[2] == 1);
  for (int d = 3; d <= 9; ++d) CHECK(h[static_cast<std::size_t>(d)] == 0);
}
