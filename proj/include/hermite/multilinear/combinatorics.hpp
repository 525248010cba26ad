#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hermite {

using Tuple = std::vector<int>;

inline std::size_t binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned long long r = 1;
  for (long i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
  }
  return static_cast<std::size_t>(r);
}

/// Strictly increasing k-subsets of {0..n-1}, lexicographic.
inline std::vector<Tuple> combinations(int n, int k) {
  std::vector<Tuple> out;
  if (k < 0 || k > n) return out;
  Tuple t(static_cast<std::size_t>(k));
  std::iota(t.begin(), t.end(), 0);
  for (;;) {
    out.push_back(t);
    int i = k - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++t[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

/// Exponent vectors of length n and total degree d, lexicographically
/// decreasing (x0^d first).
inline std::vector<Tuple> exponent_vectors(int n, int d) {
  std::vector<Tuple> out;
  if (d < 0 || n < 0) return out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Tuple cur(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int a = left; a >= 0; --a) {
      cur[static_cast<std::size_t>(pos)] = a;
      rec(pos + 1, left - a);
    }
  };
  rec(0, d);
  return out;
}

inline int tuple_sum(const Tuple& t) { return std::accumulate(t.begin(), t.end(), 0); }

/// Sign of the permutation sorting the concatenation a ++ b, where a and b
/// are each strictly increasing; 0 if they share an element.
inline int shuffle_sign(const Tuple& a, const Tuple& b) {
  std::size_t inversions = 0;
  for (int x : a) {
    for (int y : b) {
      if (x == y) return 0;
      if (x > y) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

/// Sorted union of disjoint increasing tuples.
inline Tuple merge_sorted(const Tuple& a, const Tuple& b) {
  Tuple out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Elements of `whole` not in `part` (both increasing).
inline Tuple complement_in(const Tuple& whole, const Tuple& part) {
  Tuple out;
  std::set_difference(whole.begin(), whole.end(), part.begin(), part.end(), std::back_inserter(out));
  return out;
}

/// Index lookup for a list of labels.
class LabelIndex {
 public:
  LabelIndex() = default;
  explicit LabelIndex(const std::vector<Tuple>& labels) {
    for (std::size_t k = 0; k < labels.size(); ++k) index_.emplace(labels[k], k);
  }
  [[nodiscard]] std::size_t at(const Tuple& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) throw std::out_of_range("LabelIndex: unknown label");
    return it->second;
  }
  [[nodiscard]] bool contains(const Tuple& t) const { return index_.count(t) != 0; }

 private:
  std::map<Tuple, std::size_t> index_;
};

/// Position of exponent vector `a` (length n, total d) in exponent_vectors(n, d).
inline std::size_t monomial_rank(const Tuple& a, int d) {
  const int n = static_cast<int>(a.size());
  std::size_t r = 0;
  int rem = d;
  for (int i = 0; i + 1 < n; ++i) {
    const int ai = a[static_cast<std::size_t>(i)];
    r += binomial(rem - ai + n - i - 2, n - i - 1);
    rem -= ai;
  }
  return r;
}

/// Monomials of one degree in n variables, in exponent_vectors order.
class MonomialBasis {
 public:
  MonomialBasis(int nvars, int degree) : nvars_(nvars), degree_(degree), labels_(exponent_vectors(nvars, degree)) {}
  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] const Tuple& operator[](std::size_t k) const { return labels_[k]; }
  [[nodiscard]] const std::vector<Tuple>& labels() const { return labels_; }
  [[nodiscard]] std::size_t index(const Tuple& e) const { return monomial_rank(e, degree_); }
  [[nodiscard]] int nvars() const { return nvars_; }
  [[nodiscard]] int degree() const { return degree_; }

 private:
  int nvars_;
  int degree_;
  std::vector<Tuple> labels_;
};

/// Shared per-thread cache of monomial bases.
inline const MonomialBasis& monomial_basis(int nvars, int degree) {
  thread_local std::map<std::pair<int, int>, std::unique_ptr<MonomialBasis>> cache;
  auto& slot = cache[{nvars, degree}];
  if (!slot) slot = std::make_unique<MonomialBasis>(nvars, degree);
  return *slot;
}

}  // namespace hermite
