#include "uvarov/kernels.hpp"

#include <cmath>
#include <string>

#include "uvarov/jacobi1d.hpp"

namespace uvarov {

const char* to_string(KernelMethod m) {
  switch (m) {
    case KernelMethod::basis_sum:
      return "basis_sum";
    case KernelMethod::closed_form:
      return "closed_form";
    case KernelMethod::integral_form:
      return "integral_form";
  }
  return "unknown";
}

Point simplex_vertex(int d, int i) {
  if (i < 1 || i > d + 1) throw InvalidInput("vertex index " + std::to_string(i) + " outside 1.." + std::to_string(d + 1));
  Point v = Point::Zero(d);
  if (i <= d) v(i - 1) = 1.0;
  return v;
}

namespace {

/// Barycentric coordinate x_i, 1-based, with x_{d+1} = 1 - |x|.
double barycentric(const Point& x, int i) {
  if (i <= x.size()) return x(i - 1);
  return 1.0 - x.sum();
}

/// prod_{k<n} (num + k) / (den + k)
double pochhammer_ratio(double num, double den, int n) {
  double v = 1.0;
  for (int k = 0; k < n; ++k) v *= (num + k) / (den + k);
  return v;
}

}  // namespace

SimplexKernels::SimplexKernels(const SimplexJacobiBasis& basis) : basis_(basis) {
  const int dd = d();
  const Point e1 = simplex_vertex(dd, 1);
  closed_form_factor_ = sum(0, e1, e1).value / printed_vertex(0, e1, 1);
  const Point centroid = Point::Constant(dd, 1.0 / (dd + 1));
  integral_factor_ = sum(0, centroid, centroid).value / printed_integral(0, centroid, centroid, 1);
}

KernelValue SimplexKernels::sum(int n, const Point& x, const Point& y, bool cumulative) const {
  double value = 0.0;
  if (cumulative) {
    const auto bx = basis_.eval_upto(n, x);
    const auto by = basis_.eval_upto(n, y);
    for (std::size_t k = 0; k < bx.size(); ++k) value += bx[k].dot(by[k]);
  } else {
    value = basis_.eval(n, x).dot(basis_.eval(n, y));
  }
  return {n, x, y, value, KernelMethod::basis_sum};
}

double SimplexKernels::printed_vertex(int n, const Point& x, int i) const {
  const int dd = d();
  if (i < 1 || i > dd + 1) throw InvalidInput("vertex index " + std::to_string(i) + " outside 1.." + std::to_string(dd + 1));
  if (n < 0) throw InvalidInput("degree must be nonnegative");
  check_in_simplex(x, dd);
  const double lambda = basis_.params().lambda();
  const double ki = basis_.params().kappa_at(i);
  const JacobiParams jp(lambda - ki - 0.5, ki - 0.5);
  return std::ldexp(1.0, -(dd + 1)) * pochhammer_ratio(lambda, ki + 0.5, n) *
         jacobi_eval(jp, n, 2.0 * barycentric(x, i) - 1.0);
}

KernelValue SimplexKernels::vertex_closed_form(int n, const Point& x, int i, Normalization norm) const {
  double v = printed_vertex(n, x, i);
  if (norm == Normalization::calibrated) v *= closed_form_factor_;
  return {n, x, simplex_vertex(d(), i), v, KernelMethod::closed_form};
}

VertexConstants SimplexKernels::vertex_constants(int n, Normalization norm) const {
  if (n < 0) throw InvalidInput("degree must be nonnegative");
  const double sigma = basis_.params().sigma();
  const double lambda = basis_.params().lambda();
  const double scale = norm == Normalization::calibrated ? closed_form_factor_ * std::ldexp(1.0, -(d() + 1))
                                                         : std::ldexp(1.0, -(d() + 1));
  // (lambda)_n / n!
  const double lam_fact = pochhammer_ratio(lambda, 1.0, n);
  VertexConstants c;
  c.n = n;
  c.normalization = norm;
  c.C = scale * pochhammer_ratio(lambda, sigma + 0.5, n);
  c.A = scale * lam_fact * pochhammer_ratio(lambda - sigma + 0.5, sigma + 0.5, n);
  c.B = scale * (n % 2 == 0 ? 1.0 : -1.0) * lam_fact;
  return c;
}

const QuadratureRule& SimplexKernels::rule(int points, double kappa) const {
  std::lock_guard lock(rules_mutex_);
  const auto key = std::make_pair(kappa == 0.0 ? 0 : points, kappa);
  auto it = rules_.find(key);
  if (it == rules_.end()) {
    QuadratureRule r;
    if (kappa == 0.0) {
      // Weak-* limit of the normalized (1 - t^2)^{kappa - 1} as kappa -> 0.
      r.nodes = {-1.0, 1.0};
      r.weights = {0.5, 0.5};
    } else {
      r = gauss_jacobi(points, kappa - 1.0, kappa - 1.0);
    }
    it = rules_.emplace(key, std::move(r)).first;
  }
  return it->second;
}

double SimplexKernels::printed_integral(int n, const Point& x, const Point& y, int quadrature_order) const {
  const int dd = d();
  check_in_simplex(x, dd);
  check_in_simplex(y, dd);
  const auto& kappa = basis_.params().kappa();
  const GegenbauerParams g(basis_.params().lambda());

  std::vector<double> scale(static_cast<std::size_t>(dd) + 1);
  std::vector<const QuadratureRule*> rules(static_cast<std::size_t>(dd) + 1);
  for (int j = 1; j <= dd + 1; ++j) {
    const double p = std::max(barycentric(x, j), 0.0) * std::max(barycentric(y, j), 0.0);
    scale[static_cast<std::size_t>(j - 1)] = std::sqrt(p);
    rules[static_cast<std::size_t>(j - 1)] = &rule(quadrature_order, kappa[static_cast<std::size_t>(j - 1)]);
  }

  // Odometer over the tensor grid.
  const std::size_t axes = rules.size();
  std::vector<std::size_t> idx(axes, 0);
  double total = 0.0;
  while (true) {
    double arg = 0.0, w = 1.0;
    for (std::size_t a = 0; a < axes; ++a) {
      arg += scale[a] * rules[a]->nodes[idx[a]];
      w *= rules[a]->weights[idx[a]];
    }
    total += w * gegenbauer_eval(g, 2 * n, arg);
    std::size_t a = 0;
    while (a < axes && ++idx[a] == rules[a]->nodes.size()) idx[a++] = 0;
    if (a == axes) break;
  }
  return std::ldexp(total, -(dd + 1));
}

IntegralKernel SimplexKernels::integral_form(int n, const Point& x, const Point& y, int quadrature_order) const {
  if (n < 0) throw InvalidInput("degree must be nonnegative");
  if (quadrature_order < n + 1)
    throw InvalidInput("quadrature order " + std::to_string(quadrature_order) + " too small for degree " +
                       std::to_string(n) + " (need >= n + 1)");
  IntegralKernel out;
  out.as_printed = printed_integral(n, x, y, quadrature_order);
  out.calibration_factor = integral_factor_;
  out.kernel = {n, x, y, out.as_printed * integral_factor_, KernelMethod::integral_form};
  return out;
}

double SimplexKernels::christoffel(int n, const Point& x) const { return 1.0 / sum(n, x, x).value; }

}  // namespace uvarov
