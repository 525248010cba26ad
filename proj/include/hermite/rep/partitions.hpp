#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hermite/multilinear/basis_space.hpp"
#include "hermite/multilinear/combinatorics.hpp"

namespace hermite {

/// Integer tuple of fixed length; a GL weight, possibly non-dominant.
using Weight = Tuple;

/// Weakly decreasing nonnegative parts; trailing zeros are dropped.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      if (parts_[k] < 0) throw std::invalid_argument("Partition: negative part");
      if (k > 0 && parts_[k] > parts_[k - 1]) throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  }

  /// (a, 1^k)
  static Partition hook(int a, int k) {
    std::vector<int> p{a};
    p.insert(p.end(), static_cast<std::size_t>(k), 1);
    return Partition(std::move(p));
  }

  [[nodiscard]] const std::vector<int>& parts() const { return parts_; }
  [[nodiscard]] int length() const { return static_cast<int>(parts_.size()); }
  [[nodiscard]] int size() const { return tuple_sum(parts_); }
  [[nodiscard]] int part(int k) const { return k < length() ? parts_[static_cast<std::size_t>(k)] : 0; }

  [[nodiscard]] Partition conjugate() const {
    std::vector<int> c(static_cast<std::size_t>(part(0)), 0);
    for (int p : parts_) {
      for (int j = 0; j < p; ++j) ++c[static_cast<std::size_t>(j)];
    }
    return Partition(std::move(c));
  }

  /// Parts padded with zeros to length n.
  [[nodiscard]] Weight padded(int n) const {
    if (length() > n) throw std::invalid_argument("Partition::padded: too many rows");
    Weight w(parts_.begin(), parts_.end());
    w.resize(static_cast<std::size_t>(n), 0);
    return w;
  }

  [[nodiscard]] std::string str() const {
    std::string s = "(";
    for (std::size_t k = 0; k < parts_.size(); ++k) s += (k ? "," : "") + std::to_string(parts_[k]);
    return s + ")";
  }

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<int> parts_;
};

inline std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << p.str(); }

/// dim S_lambda(Q^n) by the hook-content formula.
inline std::size_t schur_dim(const Partition& lambda, int n) {
  if (lambda.length() > n) return 0;
  const Partition conj = lambda.conjugate();
  mpz_class num = 1;
  mpz_class den = 1;
  for (int r = 0; r < lambda.length(); ++r) {
    for (int c = 0; c < lambda.part(r); ++c) {
      num *= n + c - r;
      den *= (lambda.part(r) - c - 1) + (conj.part(c) - r - 1) + 1;
    }
  }
  mpz_class q = num / den;
  return q.get_ui();
}

/// Shapes obtained by adding one box (Pieri for S_lambda (x) V), at most n
/// rows when n > 0.
inline std::vector<Partition> pieri_tensor_v(const Partition& lambda, int n = 0) {
  std::vector<Partition> out;
  for (int r = 0; r <= lambda.length(); ++r) {
    if (n > 0 && r >= n) break;
    if (r > 0 && lambda.part(r) + 1 > lambda.part(r - 1)) continue;
    auto p = lambda.padded(lambda.length() + 1);
    ++p[static_cast<std::size_t>(r)];
    out.emplace_back(std::move(p));
  }
  return out;
}

/// Shapes nu with lambda / nu a horizontal strip of j boxes.
inline std::vector<Partition> pieri_remove_sym_dual(const Partition& lambda, int j) {
  std::vector<Partition> out;
  const int len = lambda.length();
  std::vector<int> nu(static_cast<std::size_t>(len), 0);
  auto rec = [&](auto&& self, int r, int removed) -> void {
    if (r == len) {
      if (removed == j) out.emplace_back(nu);
      return;
    }
    const int hi = lambda.part(r);
    const int lo = lambda.part(r + 1);
    for (int v = hi; v >= lo; --v) {
      const int rem = removed + hi - v;
      if (rem > j) break;
      nu[static_cast<std::size_t>(r)] = v;
      self(self, r + 1, rem);
    }
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

struct BottResult {
  int degree = 0;
  Weight weight;
};

/// Bott's algorithm: shift by rho, reject repeats, sort counting
/// transpositions, shift back.
inline std::optional<BottResult> bott_algorithm(const Weight& w) {
  const int n = static_cast<int>(w.size());
  Weight v = w;
  for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] += n - 1 - k;
  int swaps = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (v[static_cast<std::size_t>(a)] == v[static_cast<std::size_t>(b)]) return std::nullopt;
      if (v[static_cast<std::size_t>(a)] < v[static_cast<std::size_t>(b)]) ++swaps;
    }
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] -= n - 1 - k;
  return BottResult{swaps, v};
}

/// Weight multiplicities.
using WeightTable = std::map<Weight, std::size_t>;

inline WeightTable weight_table(const BasisSpace& space) {
  WeightTable t;
  for (std::size_t k = 0; k < space.dim(); ++k) ++t[space.weight(k)];
  return t;
}

/// Kostka number K_{lambda, mu} for a partition mu (given as a weakly
/// decreasing tuple, zeros allowed).
inline std::size_t kostka(const Partition& lambda, const Weight& mu) {
  static std::mutex mtx;
  static std::map<std::pair<Partition, Weight>, std::size_t> cache;
  if (lambda.size() != tuple_sum(mu)) return 0;
  Weight m = mu;
  while (!m.empty() && m.back() == 0) m.pop_back();
  if (m.empty()) return lambda.size() == 0 ? 1 : 0;
  {
    std::lock_guard lock(mtx);
    auto it = cache.find({lambda, m});
    if (it != cache.end()) return it->second;
  }
  const int last = m.back();
  Weight rest(m.begin(), m.end() - 1);
  std::size_t total = 0;
  if (lambda.length() <= static_cast<int>(m.size())) {
    for (const auto& nu : pieri_remove_sym_dual(lambda, last)) {
      if (nu.length() <= static_cast<int>(rest.size())) total += kostka(nu, rest);
    }
  }
  std::lock_guard lock(mtx);
  cache.emplace(std::make_pair(lambda, m), total);
  return total;
}

/// Weight table of the irreducible GL_n representation with dominant
/// highest weight w (entries may be negative).
inline WeightTable irreducible_character(const Weight& w) {
  const int n = static_cast<int>(w.size());
  if (n == 0) return {{w, 1}};
  const int shift = w.back();
  Weight p = w;
  for (int& x : p) x -= shift;
  const Partition lambda(p);
  WeightTable t;
  for (const auto& mu : exponent_vectors(n, lambda.size())) {
    Weight sorted = mu;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const std::size_t k = kostka(lambda, sorted);
    if (k == 0) continue;
    Weight v = mu;
    for (int& x : v) x += shift;
    t.emplace(std::move(v), k);
  }
  return t;
}

/// Multiplicities of irreducibles, keyed by dominant highest weight, by
/// repeated subtraction of the character of the lexicographically highest
/// remaining weight.
inline std::map<Weight, std::size_t> irreducible_multiplicities(WeightTable table) {
  std::map<Weight, std::size_t> out;
  for (auto it = table.begin(); it != table.end();) {
    if (it->second == 0) it = table.erase(it);
    else ++it;
  }
  while (!table.empty()) {
    const auto top = std::prev(table.end());
    const Weight hw = top->first;
    const std::size_t mult = top->second;
    for (std::size_t k = 1; k < hw.size(); ++k) {
      if (hw[k] > hw[k - 1]) throw std::logic_error("irreducible_multiplicities: highest weight is not dominant");
    }
    out[hw] += mult;
    for (const auto& [w, m] : irreducible_character(hw)) {
      auto jt = table.find(w);
      if (jt == table.end() || jt->second < m * mult) {
        throw std::logic_error("irreducible_multiplicities: negative multiplicity at a weight");
      }
      jt->second -= m * mult;
      if (jt->second == 0) table.erase(jt);
    }
  }
  return out;
}

/// Partition from Frobenius coordinates (a | b).
inline Partition from_frobenius(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t r = a.size();
  if (b.size() != r) throw std::invalid_argument("from_frobenius: arm and leg lists differ in length");
  const int rows = r == 0 ? 0 : b.front() + 1;
  std::vector<int> parts(static_cast<std::size_t>(rows), 0);
  for (std::size_t i = 0; i < r; ++i) parts[i] = a[i] + static_cast<int>(i) + 1;
  for (int row = static_cast<int>(r); row < rows; ++row) {
    int count = 0;
    for (std::size_t j = 0; j < r; ++j) {
      if (b[j] + static_cast<int>(j) + 1 > row) ++count;
    }
    parts[static_cast<std::size_t>(row)] = count;
  }
  return Partition(std::move(parts));
}

/// Partitions (a | a+1) of 2n with at most dim rows: the irreducible factors
/// of Wedge^n(Wedge^2 Q^dim), each with multiplicity one.
inline std::vector<Partition> macdonald_factors(int n, int dim) {
  std::vector<Partition> out;
  std::vector<int> arms;
  auto rec = [&](auto&& self, int remaining, int max_arm) -> void {
    if (remaining == 0) {
      std::vector<int> legs = arms;
      for (int& l : legs) ++l;
      Partition p = from_frobenius(arms, legs);
      if (p.length() <= dim) out.push_back(std::move(p));
      return;
    }
    for (int a = std::min(max_arm, remaining - 1); a >= 0; --a) {
      arms.push_back(a);
      self(self, remaining - (a + 1), a - 1);
      arms.pop_back();
    }
  };
  rec(rec, n, n);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hermite
