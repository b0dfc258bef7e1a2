#include "uvarov/jacobi1d.hpp"

#include <cmath>

namespace uvarov {

double pochhammer(double a, int k) {
  if (k < 0) throw InvalidInput("Pochhammer length must be nonnegative");
  double v = 1.0;
  for (int i = 0; i < k; ++i) v *= a + i;
  return v;
}

double jacobi_eval(const JacobiParams& p, int n, double t) {
  if (n < 0) throw InvalidInput("degree must be nonnegative");
  const double a = p.a, b = p.b;
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (t - 1.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    const double den = 2.0 * (k + 1) * (k + a + b + 1.0) * s;
    const double next = ((s + 1.0) * ((s + 2.0) * s * t + a * a - b * b) * cur -
                         2.0 * (k + a) * (k + b) * (s + 2.0) * prev) /
                        den;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> jacobi_orthonormal_sequence(const JacobiParams& p, int n, double t) {
  if (n < 0) throw InvalidInput("degree must be nonnegative");
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  out[0] = 1.0;
  double prev = 0.0;
  for (int k = 0; k < n; ++k) {
    const auto step = orthonormal_jacobi_step<double>(p.a, p.b, k);
    const double cur = out[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(k) + 1] = (step.alpha * t + step.beta) * cur - step.gamma * prev;
    prev = cur;
  }
  return out;
}

double jacobi_orthonormal_eval(const JacobiParams& p, int n, double t) {
  return jacobi_orthonormal_sequence(p, n, t).back();
}

double jacobi_orthonormal_factor(const JacobiParams& p, int n) {
  if (n < 0) throw InvalidInput("degree must be nonnegative");
  double log_norm_sq = 0.0;
  for (int k = 1; k <= n; ++k) log_norm_sq += std::log(detail::jacobi_norm_sq_ratio(p.a, p.b, k));
  return std::exp(-0.5 * log_norm_sq);
}

double jacobi_derivative(const JacobiParams& p, int n, int k, double t) {
  if (n < 0 || k < 0) throw InvalidInput("degree and derivative order must be nonnegative");
  if (k > n) return 0.0;
  // d/dt P_n^{(a,b)} = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)}
  const double scale = pochhammer(n + p.a + p.b + 1.0, k) / std::ldexp(1.0, k);
  return scale * jacobi_eval(JacobiParams(p.a + k, p.b + k), n - k, t);
}

double gegenbauer_eval(const GegenbauerParams& g, int n, double t) {
  if (n < 0) throw InvalidInput("degree must be nonnegative");
  const double l = g.lambda;
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * l * t;
  for (int k = 1; k < n; ++k) {
    const double next = (2.0 * (k + l) * t * cur - (k + 2.0 * l - 1.0) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace uvarov
