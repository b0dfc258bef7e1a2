#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "uvarov/errors.hpp"

namespace uvarov {

/// Exponent vector alpha in N_0^d with its cached total degree |alpha|.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  static MultiIndex zero(int d);
  static MultiIndex unit(int d, int i);

  int dimension() const { return static_cast<int>(exponents_.size()); }
  int degree() const { return degree_; }
  int operator[](int i) const { return exponents_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& exponents() const { return exponents_; }
  bool is_zero() const { return degree_ == 0; }

  MultiIndex operator+(const MultiIndex& other) const;
  bool operator==(const MultiIndex& other) const { return exponents_ == other.exponents_; }

  /// "(2,0,1)"
  std::string to_string() const;

 private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

/// Graded reverse-lexicographic strict order: lower total degree first, then,
/// within a degree, x_1^n > x_1^{n-1}x_2 > ... (the canonical layout of
/// every basis block in this library).
bool grevlex_less(const MultiIndex& a, const MultiIndex& b);

/// Orders descending within a degree, ascending across degrees; this is the
/// enumeration order of DegreeLayout.
struct LayoutOrder {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

struct DegreeLayout {
  int d = 0;
  int n = 0;
  std::vector<MultiIndex> indices;

  std::size_t size() const { return indices.size(); }
  /// Position of alpha within the block; throws InvalidInput if absent.
  std::size_t position(const MultiIndex& alpha) const;
};

/// All |alpha| = n in canonical order. Throws InvalidInput for d < 1 or n < 0.
DegreeLayout enumerate_degree(int d, int n);

struct Dims {
  std::uint64_t r = 0;      ///< C(n+d-1, n): size of one degree block
  std::uint64_t total = 0;  ///< C(n+d, n): dimension of polynomials of degree <= n
};

Dims dims(int d, int n);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);
/// C(n+d, n) as a double, valid well past the uint64 range.
double binomial_real(double top, int k);

/// Polynomial in d variables stored as a sparse monomial -> coefficient map.
/// Intended for oracle-scale degrees only; the monomial basis is badly
/// conditioned beyond that.
template <class T>
class BasicMonomialPoly {
 public:
  using Scalar = T;
  using Terms = std::map<MultiIndex, T, LayoutOrder>;

  BasicMonomialPoly() = default;
  explicit BasicMonomialPoly(int d) : d_(d) {
    if (d < 1) throw InvalidInput("polynomial dimension must be >= 1");
  }

  static BasicMonomialPoly constant(int d, const T& c) {
    BasicMonomialPoly p(d);
    p.add_term(MultiIndex::zero(d), c);
    return p;
  }
  /// The coordinate function x_i (0-based).
  static BasicMonomialPoly variable(int d, int i) {
    BasicMonomialPoly p(d);
    p.add_term(MultiIndex::unit(d, i), T(1));
    return p;
  }
  static BasicMonomialPoly monomial(const MultiIndex& alpha, const T& c = T(1)) {
    BasicMonomialPoly p(alpha.dimension());
    p.add_term(alpha, c);
    return p;
  }

  int dimension() const { return d_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const {
    int deg = -1;
    for (const auto& [alpha, c] : terms_) deg = std::max(deg, alpha.degree());
    return deg;
  }
  T coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? T(0) : it->second;
  }

  void add_term(const MultiIndex& alpha, const T& c) {
    if (alpha.dimension() != d_) throw InvalidInput("monomial dimension mismatch");
    if (c == T(0)) return;
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) {
      it->second += c;
      if (it->second == T(0)) terms_.erase(it);
    }
  }

  BasicMonomialPoly& operator+=(const BasicMonomialPoly& o) {
    check_same(o);
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
    return *this;
  }
  BasicMonomialPoly& operator-=(const BasicMonomialPoly& o) {
    check_same(o);
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, -c);
    return *this;
  }
  BasicMonomialPoly& operator*=(const T& s) {
    if (s == T(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [alpha, c] : terms_) c *= s;
    return *this;
  }
  friend BasicMonomialPoly operator+(BasicMonomialPoly a, const BasicMonomialPoly& b) { return a += b; }
  friend BasicMonomialPoly operator-(BasicMonomialPoly a, const BasicMonomialPoly& b) { return a -= b; }
  friend BasicMonomialPoly operator*(BasicMonomialPoly a, const T& s) { return a *= s; }
  friend BasicMonomialPoly operator*(const T& s, BasicMonomialPoly a) { return a *= s; }

  friend BasicMonomialPoly operator*(const BasicMonomialPoly& a, const BasicMonomialPoly& b) {
    a.check_same(b);
    BasicMonomialPoly out(a.d_);
    for (const auto& [ia, ca] : a.terms_)
      for (const auto& [ib, cb] : b.terms_) out.add_term(ia + ib, ca * cb);
    return out;
  }

  /// d^alpha applied termwise.
  BasicMonomialPoly partial_derivative(const MultiIndex& alpha) const {
    if (alpha.dimension() != d_) throw InvalidInput("derivative order dimension mismatch");
    BasicMonomialPoly out(d_);
    for (const auto& [beta, c] : terms_) {
      std::vector<int> e = beta.exponents();
      T factor = c;
      bool vanishes = false;
      for (int i = 0; i < d_ && !vanishes; ++i) {
        for (int k = 0; k < alpha[i]; ++k) {
          if (e[i] == 0) {
            vanishes = true;
            break;
          }
          factor *= T(e[i]);
          --e[i];
        }
      }
      if (!vanishes) out.add_term(MultiIndex(std::move(e)), factor);
    }
    return out;
  }

  /// Direct summation of c_alpha x^alpha.
  T evaluate(std::span<const T> x) const {
    if (static_cast<int>(x.size()) != d_) throw InvalidInput("evaluation point dimension mismatch");
    T sum(0);
    for (const auto& [alpha, c] : terms_) {
      T term = c;
      for (int i = 0; i < d_; ++i)
        for (int k = 0; k < alpha[i]; ++k) term *= x[static_cast<std::size_t>(i)];
      sum += term;
    }
    return sum;
  }

  template <class U>
  BasicMonomialPoly<U> cast() const {
    BasicMonomialPoly<U> out(d_);
    for (const auto& [alpha, c] : terms_) out.add_term(alpha, static_cast<U>(c));
    return out;
  }

 private:
  void check_same(const BasicMonomialPoly& o) const {
    if (o.d_ != d_) throw InvalidInput("polynomial dimension mismatch");
  }

  int d_ = 0;
  Terms terms_;
};

using MonomialPoly = BasicMonomialPoly<double>;

}  // namespace uvarov
