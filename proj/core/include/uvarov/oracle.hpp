#pragma once

#include <string>
#include <vector>

#include "uvarov/precision.hpp"
#include "uvarov/simplex_basis.hpp"
#include "uvarov/uvarov_engine.hpp"

namespace uvarov {

/// <p, q>_nu = <p, q>_mu + D p(xi)^T Lambda D q(xi), evaluated on monomial
/// polynomials with exact Dirichlet moments and exact derivative values.
struct NuInnerProduct {
  SimplexJacobiParams base;
  MassSpec mass;

  NuInnerProduct(SimplexJacobiParams base_, MassSpec mass_);
  /// No masses.
  explicit NuInnerProduct(SimplexJacobiParams base_);

  bool has_mass() const { return mass.size() > 0; }

  /// <x^a, x^b>_nu
  template <class T>
  T monomial_pair(const MultiIndex& a, const MultiIndex& b) const;

  /// d^alpha x^a at xi
  template <class T>
  static T monomial_functional(const MultiIndex& a, const MultiIndex& alpha, const Point& xi);
};

template <class T>
T NuInnerProduct::monomial_functional(const MultiIndex& a, const MultiIndex& alpha, const Point& xi) {
  T v(1);
  for (int i = 0; i < a.dimension(); ++i) {
    if (alpha[i] > a[i]) return T(0);
    for (int k = 0; k < alpha[i]; ++k) v *= T(a[i] - k);
    const T base(xi(i));
    for (int k = 0; k < a[i] - alpha[i]; ++k) v *= base;
  }
  return v;
}

template <class T>
T NuInnerProduct::monomial_pair(const MultiIndex& a, const MultiIndex& b) const {
  T v = dirichlet_moment<T>(base, a + b);
  const int d = base.d();
  const Eigen::Index N = mass.size();
  for (Eigen::Index i = 0; i < N; ++i) {
    const T fa = monomial_functional<T>(a, mass.order(static_cast<std::size_t>(i), d), mass.points[static_cast<std::size_t>(i)]);
    if (fa == T(0)) continue;
    for (Eigen::Index j = 0; j < N; ++j) {
      if (mass.lambda(i, j) == 0.0) continue;
      v += fa * T(mass.lambda(i, j)) *
           monomial_functional<T>(b, mass.order(static_cast<std::size_t>(j), d), mass.points[static_cast<std::size_t>(j)]);
    }
  }
  return v;
}

/// Bilinear form on monomial polynomials.
template <class T>
T nu_pair(const NuInnerProduct& ip, const BasicMonomialPoly<T>& p, const BasicMonomialPoly<T>& q) {
  T v(0);
  for (const auto& [a, ca] : p.terms())
    for (const auto& [b, cb] : q.terms()) v += ca * cb * ip.monomial_pair<T>(a, b);
  return v;
}

/// Dense row-major matrix in extended precision, only as much as the oracle needs.
struct HighMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<HighPrecision> data;

  HighMatrix() = default;
  HighMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, HighPrecision(0)) {}
  HighPrecision& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const HighPrecision& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

using HighVector = std::vector<HighPrecision>;

struct OracleOptions {
  /// Reverse the monomial order inside every degree (a different but equally
  /// valid graded orthonormalization).
  bool reversed_within_degree = false;
  /// Relative pivot threshold of the Cholesky factorization.
  double pivot_threshold = 1e-13;
};

/// Graded orthonormal system of nu through degree n, by Cholesky of the
/// monomial Gram matrix G = L L^T: the polynomials are q = L^{-1} m(x).
class OracleSystem {
 public:
  using HighPoly = BasicMonomialPoly<HighPrecision>;

  OracleSystem(NuInnerProduct ip, int max_degree, OracleOptions options = {});

  const NuInnerProduct& inner_product() const { return ip_; }
  int max_degree() const { return max_degree_; }
  int dimension() const { return ip_.base.d(); }
  const std::vector<MultiIndex>& monomials() const { return monomials_; }
  /// Number of monomials (and oracle polynomials) of degree <= n.
  std::size_t count(int n) const;
  std::size_t index_of(const MultiIndex& a) const;

  const HighMatrix& gram() const { return gram_; }
  const HighMatrix& cholesky() const { return L_; }
  /// q_k as a monomial polynomial; k indexes the graded order.
  const std::vector<HighPoly>& polys() const { return polys_; }

  HighVector monomial_values(const Point& x) const;
  /// q_k(x) for k < count(n).
  HighVector eval(int n, const Point& x) const;

  /// <p, q_k>_nu for k < count(deg p); p must have degree <= max_degree.
  HighVector pair_with_system(const HighPoly& p) const;
  HighPrecision pair(const HighPoly& p, const HighPoly& q) const;

  /// sum over oracle polynomials of degree <= n of q(x) q(y).
  double kernel(int n, const Point& x, const Point& y) const;

  /// min <p, p>_nu over p(x) = 1, deg p <= n, from the KKT system
  /// [2G m; m^T 0] solved directly.
  double christoffel_minimum(int n, const Point& x) const;

 private:
  HighVector coefficients(const HighPoly& p) const;

  NuInnerProduct ip_;
  int max_degree_;
  std::vector<MultiIndex> monomials_;
  std::vector<std::size_t> degree_end_;
  HighMatrix gram_;
  HighMatrix L_;
  std::vector<HighPoly> polys_;
};

/// Kernel of nu through degree n with Gram solve in exact rational
/// arithmetic. Every double input is converted exactly.
Rational exact_kernel(const NuInnerProduct& ip, int n, const Point& x, const Point& y);

/// Engine polynomials Q_n in monomial form: Q_n = sum_k C_k P_k.
std::vector<OracleSystem::HighPoly> engine_q_polys(const UvarovEngine& engine, const SimplexJacobiBasis& basis, int n);

struct ReportEntry {
  std::string check;
  int n = 0;
  double max_abs_dev = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string diagnostic;
};

struct EquivalenceReport {
  std::vector<ReportEntry> entries;
  bool all_pass() const;
};

/// Engine against oracle through degree n: nu-orthogonality of Q_j to
/// Pi_{j-1}, mutual projection residuals of the degree-j spans, H_j, and
/// K_j(nu) at the mass points plus fixed interior points. A mass
/// specification that fails validation yields a single failing entry.
EquivalenceReport equivalence_report(const SimplexJacobiParams& params, const MassSpec& mass, int n,
                                     double tolerance = 1e-9);

/// Deterministic interior test points of T^d.
std::vector<Point> sample_interior_points(int d, int count, unsigned seed);

}  // namespace uvarov
