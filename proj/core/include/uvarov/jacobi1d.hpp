#pragma once

#include <cmath>
#include <vector>

#include "uvarov/errors.hpp"

namespace uvarov {

/// Parameters of (1-t)^a (1+t)^b on [-1, 1].
struct JacobiParams {
  double a = 0.0;
  double b = 0.0;

  JacobiParams() = default;
  JacobiParams(double a_, double b_) : a(a_), b(b_) {
    if (!(a > -1.0) || !(b > -1.0)) throw InvalidInput("Jacobi parameters must satisfy a > -1, b > -1");
  }
};

struct GegenbauerParams {
  double lambda = 1.0;

  GegenbauerParams() = default;
  explicit GegenbauerParams(double l) : lambda(l) {
    if (!(l > 0.0)) throw InvalidInput("Gegenbauer index must be positive");
  }
};

/// Rising factorial (a)_k by running product.
double pochhammer(double a, int k);

/// P_n^{(a,b)}(t) with P_n(1) = C(n+a, n).
double jacobi_eval(const JacobiParams& p, int n, double t);

/// Orthonormal p_n^{(a,b)}(t) with respect to the probability-normalized weight
/// (1-t)^a (1+t)^b / (2^{a+b+1} B(a+1, b+1)); p_0 = 1.
double jacobi_orthonormal_eval(const JacobiParams& p, int n, double t);

/// p_0(t), ..., p_n(t).
std::vector<double> jacobi_orthonormal_sequence(const JacobiParams& p, int n, double t);

/// c_n such that p_n = c_n P_n.
double jacobi_orthonormal_factor(const JacobiParams& p, int n);

/// k-th derivative of P_n^{(a,b)} at t. Zero for k > n.
double jacobi_derivative(const JacobiParams& p, int n, int k, double t);

/// C_n^lambda(t) with C_n(1) = C(n + 2 lambda - 1, n).
double gegenbauer_eval(const GegenbauerParams& g, int n, double t);

/// Coefficients of the orthonormal recurrence
///   p_{k+1}(u) = (alpha_k u + beta_k) p_k(u) - gamma_k p_{k-1}(u),
/// derived from the classical one by the ratios c_{k+1}/c_k. Templated so the
/// monomial forms can be assembled in extended precision.
template <class T>
struct OrthonormalJacobiStep {
  T alpha;
  T beta;
  T gamma;
};

namespace detail {

/// (norm of P_k / norm of P_{k-1})^2 under the probability-normalized weight.
template <class T>
T jacobi_norm_sq_ratio(const T& a, const T& b, int k) {
  if (k == 1) return (a + 1) * (b + 1) / (a + b + 3);
  const T kk(k);
  return (a + kk) * (b + kk) * (2 * kk + a + b - 1) / ((a + b + kk) * kk * (2 * kk + a + b + 1));
}

}  // namespace detail

template <class T>
OrthonormalJacobiStep<T> orthonormal_jacobi_step(const T& a, const T& b, int k) {
  using std::sqrt;
  // Classical P_{k+1} = (A u + B) P_k - C P_{k-1}.
  T A, B, C;
  if (k == 0) {
    A = (a + b + 2) / 2;
    B = (a - b) / 2;
    C = T(0);
  } else {
    const T kk(k);
    const T s = 2 * kk + a + b;
    const T den = 2 * (kk + 1) * (kk + a + b + 1);
    A = (s + 1) * (s + 2) / den;
    B = (s + 1) * (a * a - b * b) / (den * s);
    C = 2 * (kk + a) * (kk + b) * (s + 2) / (den * s);
  }
  const T r_next = 1 / sqrt(detail::jacobi_norm_sq_ratio(a, b, k + 1));
  const T r_cur = k == 0 ? T(1) : 1 / sqrt(detail::jacobi_norm_sq_ratio(a, b, k));
  return {r_next * A, r_next * B, r_next * r_cur * C};
}

}  // namespace uvarov
