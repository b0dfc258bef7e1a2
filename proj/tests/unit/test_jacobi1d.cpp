#include <doctest.h>

#include <cmath>

#include "uvarov/jacobi1d.hpp"
#include "uvarov/polycore.hpp"
#include "uvarov/precision.hpp"

using namespace uvarov;

namespace {

double binom_real(double top, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v *= (top - k + i) / i;
  return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

/// Moments of the probability-normalized Jacobi weight, in extended precision:
/// E[t^k] computed from E[u^j] with u = (1+t)/2 ~ Beta(b+1, a+1).
std::vector<HighPrecision> jacobi_moments(double a, double b, int kmax) {
  std::vector<HighPrecision> mu(static_cast<std::size_t>(kmax) + 1);
  std::vector<HighPrecision> beta(static_cast<std::size_t>(kmax) + 1);
  beta[0] = 1;
  for (int j = 1; j <= kmax; ++j)
    beta[static_cast<std::size_t>(j)] =
        beta[static_cast<std::size_t>(j) - 1] * (HighPrecision(b) + j) / (HighPrecision(a) + HighPrecision(b) + 1 + j);
  for (int k = 0; k <= kmax; ++k) {
    HighPrecision s = 0;
    for (int j = 0; j <= k; ++j) {
      HighPrecision c = 1;
      for (int i = 1; i <= j; ++i) c = c * (k - j + i) / i;
      s += c * beta[static_cast<std::size_t>(j)] * pow(HighPrecision(2), j) * ((k - j) % 2 ? -1 : 1);
    }
    mu[static_cast<std::size_t>(k)] = s;
  }
  return mu;
}

}  // namespace

TEST_CASE("pochhammer") {
  CHECK(pochhammer(3.0, 2) == 12.0);
  CHECK(pochhammer(-7.25, 0) == 1.0);
  CHECK(pochhammer(0.5, 3) == doctest::Approx(1.875));
}

TEST_CASE("parameters are validated") {
  CHECK_THROWS_AS(JacobiParams(-1.0, 0.0), InvalidInput);
  CHECK_THROWS_AS(JacobiParams(0.0, -1.5), InvalidInput);
  CHECK_THROWS_AS(GegenbauerParams(0.0), InvalidInput);
}

TEST_CASE("jacobi_eval endpoint values and reflection") {
  for (auto [a, b] : {std::pair{0.0, 0.0}, {1.5, -0.5}, {-0.5, -0.5}, {2.25, 0.75}}) {
    const JacobiParams p(a, b), q(b, a);
    for (int n = 0; n <= 100; ++n) {
      CHECK(rel(jacobi_eval(p, n, 1.0), binom_real(n + a, n)) <= 1e-12);
      CHECK(rel(jacobi_eval(p, n, -1.0), (n % 2 ? -1 : 1) * binom_real(n + b, n)) <= 1e-12);
    }
    for (int n = 0; n <= 20; ++n)
      for (double t : {-0.9, -0.3, 0.0, 0.4, 0.77})
        CHECK(std::abs(jacobi_eval(p, n, -t) - (n % 2 ? -1 : 1) * jacobi_eval(q, n, t)) <=
              1e-12 * std::max(1.0, std::abs(jacobi_eval(q, n, t))));
    CHECK(jacobi_eval(p, 0, 0.123) == 1.0);
  }
}

TEST_CASE("orthonormal Jacobi values") {
  const JacobiParams cheb(-0.5, -0.5);
  for (double t : {-1.0, -0.2, 0.5, 1.0}) {
    CHECK(jacobi_orthonormal_eval(cheb, 0, t) == 1.0);
    CHECK(jacobi_orthonormal_eval(cheb, 1, t) == doctest::Approx(std::sqrt(2.0) * t));
  }
  const auto seq = jacobi_orthonormal_sequence(JacobiParams(1.0, 0.5), 6, 0.3);
  for (int n = 0; n <= 6; ++n)
    CHECK(seq[static_cast<std::size_t>(n)] == doctest::Approx(jacobi_orthonormal_eval(JacobiParams(1.0, 0.5), n, 0.3)));
}

TEST_CASE("orthonormal Jacobi Gram matrix from exact moments") {
  for (auto [a, b] : {std::pair{-0.5, -0.5}, {0.0, 0.0}, {1.5, -0.5}, {0.3, 2.7}}) {
    const JacobiParams p(a, b);
    const int N = 10;
    const auto mu = jacobi_moments(a, b, 2 * N);
    // Monomial coefficients of p_n from values at N+1 Chebyshev nodes would be
    // ill-posed; instead build them from the recurrence in extended precision.
    std::vector<std::vector<HighPrecision>> coef(N + 1, std::vector<HighPrecision>(N + 1, 0));
    coef[0][0] = 1;
    for (int k = 0; k < N; ++k) {
      const auto st = orthonormal_jacobi_step<HighPrecision>(HighPrecision(a), HighPrecision(b), k);
      for (int i = 0; i <= k; ++i) {
        coef[static_cast<std::size_t>(k) + 1][static_cast<std::size_t>(i) + 1] += st.alpha * coef[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
        coef[static_cast<std::size_t>(k) + 1][static_cast<std::size_t>(i)] += st.beta * coef[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
        if (k > 0) coef[static_cast<std::size_t>(k) + 1][static_cast<std::size_t>(i)] -= st.gamma * coef[static_cast<std::size_t>(k) - 1][static_cast<std::size_t>(i)];
      }
    }
    double worst = 0.0;
    for (int m = 0; m <= N; ++m)
      for (int n = 0; n <= N; ++n) {
        HighPrecision s = 0;
        for (int i = 0; i <= m; ++i)
          for (int j = 0; j <= n; ++j)
            s += coef[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)] * coef[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)] *
                 mu[static_cast<std::size_t>(i + j)];
        worst = std::max(worst, std::abs(static_cast<double>(s) - (m == n ? 1.0 : 0.0)));
      }
    CHECK(worst <= 1e-10);
    // The recurrence polynomials are the double-precision ones.
    for (int n = 0; n <= N; ++n) {
      HighPrecision v = 0;
      for (int i = n; i >= 0; --i) v = v * HighPrecision(0.37) + coef[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
      CHECK(std::abs(static_cast<double>(v) - jacobi_orthonormal_eval(p, n, 0.37)) <= 1e-12);
    }
  }
}

TEST_CASE("jacobi_derivative") {
  const JacobiParams p(0.7, 1.3);
  CHECK(jacobi_derivative(p, 1, 1, 0.2) == doctest::Approx((0.7 + 1.3 + 2) / 2));
  CHECK(jacobi_derivative(p, 0, 1, 0.2) == 0.0);
  CHECK(jacobi_derivative(p, 3, 4, 0.2) == 0.0);
  const double h = 1e-4, t = 0.3;
  const double fd = (jacobi_eval(p, 5, t + h) - 2 * jacobi_eval(p, 5, t) + jacobi_eval(p, 5, t - h)) / (h * h);
  CHECK(rel(jacobi_derivative(p, 5, 2, t), fd) <= 1e-6);
}

TEST_CASE("gegenbauer_eval") {
  for (double lam : {0.5, 1.0, 2.5}) {
    const GegenbauerParams g(lam);
    for (int n = 0; n <= 30; ++n) CHECK(rel(gegenbauer_eval(g, n, 1.0), binom_real(n + 2 * lam - 1, n)) <= 1e-12);
    for (int n = 0; n <= 10; ++n)
      for (double t : {0.1, 0.45, 0.9})
        CHECK(std::abs(gegenbauer_eval(g, 2 * n, -t) - gegenbauer_eval(g, 2 * n, t)) <= 1e-12 * std::max(1.0, std::abs(gegenbauer_eval(g, 2 * n, t))));
  }
  CHECK(std::abs(gegenbauer_eval(GegenbauerParams(1.0), 2, 0.5)) <= 1e-15);
}

TEST_CASE("interior Jacobi decay bound with one fitted constant") {
  // |P_n^{(a,b)}(t)| <= c n^{-1/2} (1 - t + n^{-2})^{-(a+1/2)/2} on [0, 1].
  for (auto [a, b] : {std::pair{1.0, -0.5}, {1.5, 0.5}, {0.0, 0.0}}) {
    const JacobiParams p(a, b);
    double c = 0.0;
    double c_small_n = 0.0;
    for (int n = 10; n <= 200; n += 10) {
      for (int k = 0; k <= 200; ++k) {
        const double t = k / 200.0;
        const double bound = std::pow(n, -0.5) * std::pow(1.0 - t + 1.0 / (static_cast<double>(n) * n), -(a + 0.5) / 2);
        const double ratio = std::abs(jacobi_eval(p, n, t)) / bound;
        c = std::max(c, ratio);
        if (n <= 50) c_small_n = std::max(c_small_n, ratio);
      }
    }
    CHECK(std::isfinite(c));
    // The constant does not grow with n: the larger degrees need no more than 1.5x
    // the constant fitted on n <= 50.
    CHECK(c <= 1.5 * c_small_n);
  }
}
