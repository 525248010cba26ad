#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hermite/linalg/rational.hpp"
#include "hermite/multilinear/combinatorics.hpp"

namespace hermite {

/// Polynomial over Q in variables z0, z1, ... Exponent keys are stored with
/// trailing zeros removed, so polynomials in different numbers of variables
/// combine freely.
class Polynomial {
 public:
  using Terms = std::map<Tuple, Rational>;

  Polynomial() = default;
  Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Polynomial(const Rational& c) {                 // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(Tuple{}, c);
  }

  static Polynomial variable(int k, const Rational& coeff = Rational(1)) { return monomial(unit(k), coeff); }

  static Polynomial monomial(Tuple exponents, const Rational& coeff = Rational(1)) {
    Polynomial p;
    trim(exponents);
    if (!coeff.is_zero()) p.terms_.emplace(std::move(exponents), coeff);
    return p;
  }

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  /// Total degree of the first term; -1 for zero.
  [[nodiscard]] int degree() const { return terms_.empty() ? -1 : tuple_sum(terms_.begin()->first); }

  [[nodiscard]] bool is_homogeneous(int d) const {
    return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return tuple_sum(t.first) == d; });
  }

  /// Largest variable index appearing, plus one.
  [[nodiscard]] std::size_t num_vars() const {
    std::size_t n = 0;
    for (const auto& [e, c] : terms_) n = std::max(n, e.size());
    return n;
  }

  [[nodiscard]] Rational coefficient(Tuple exponents) const {
    trim(exponents);
    auto it = terms_.find(exponents);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(Tuple exponents, const Rational& c) {
    if (c.is_zero()) return;
    trim(exponents);
    auto [it, inserted] = terms_.emplace(std::move(exponents), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Value at a point; missing coordinates count as zero.
  [[nodiscard]] Rational evaluate(const std::vector<Rational>& point) const {
    Rational total;
    for (const auto& [e, c] : terms_) {
      Rational v = c;
      for (std::size_t k = 0; k < e.size(); ++k) {
        for (int r = 0; r < e[k]; ++r) v *= (k < point.size() ? point[k] : Rational(0));
      }
      total += v;
    }
    return total;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
    } else {
      for (auto& [e, c] : terms_) c *= s;
    }
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) { return Polynomial{} - a; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) out.add_term(add_exponents(ea, eb), ca * cb);
    }
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// Human-readable form such as "-1/2*z0*z2^2 + z1".
  [[nodiscard]] std::string str(const std::string& var = "z") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print in decreasing lex order of full exponent vectors.
    std::vector<std::pair<Tuple, Rational>> sorted(terms_.begin(), terms_.end());
    const std::size_t n = num_vars();
    for (auto& [e, c] : sorted) e.resize(n, 0);
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    for (const auto& [e, c] : sorted) {
      Rational coeff = c;
      if (!first) {
        os << (coeff.sign() < 0 ? " - " : " + ");
        if (coeff.sign() < 0) coeff = -coeff;
      } else if (coeff.sign() < 0 && tuple_sum(e) > 0 && coeff == Rational(-1)) {
        os << "-";
        coeff = Rational(1);
      }
      first = false;
      const bool constant = tuple_sum(e) == 0;
      if (constant || !coeff.is_one()) os << coeff << (constant ? "" : "*");
      bool firstvar = true;
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (!firstvar) os << "*";
        firstvar = false;
        os << var << k;
        if (e[k] > 1) os << "^" << e[k];
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

  static Tuple add_exponents(const Tuple& a, const Tuple& b) {
    Tuple out(std::max(a.size(), b.size()), 0);
    for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
    return out;
  }

  static void trim(Tuple& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
  }

  static Tuple padded(Tuple e, std::size_t n) {
    if (e.size() > n) throw std::out_of_range("Polynomial: exponent vector longer than variable count");
    e.resize(n, 0);
    return e;
  }

 private:
  static Tuple unit(int k) {
    Tuple e(static_cast<std::size_t>(k) + 1, 0);
    e[static_cast<std::size_t>(k)] = 1;
    return e;
  }

  Terms terms_;
};

}  // namespace hermite
