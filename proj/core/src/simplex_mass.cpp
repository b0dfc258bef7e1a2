#include "uvarov/simplex_mass.hpp"

#include <cmath>
#include <string>

#include "uvarov/jacobi1d.hpp"

namespace uvarov {

VertexMassModel::VertexMassModel(int d_, double sigma_, double M_) : d(d_), sigma(sigma_), M(M_) {
  if (d < 1) throw InvalidInput("dimension must be at least 1");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidInput("sigma must be finite and >= 0");
  if (!(M >= 0.0) || !std::isfinite(M)) throw InvalidInput("mass M must be finite and >= 0");
}

std::vector<Point> VertexMassModel::vertices() const {
  std::vector<Point> v;
  for (int i = 1; i <= d + 1; ++i) v.push_back(simplex_vertex(d, i));
  return v;
}

MassSpec VertexMassModel::mass_spec() const {
  return MassSpec::diagonal(vertices(), std::vector<double>(static_cast<std::size_t>(d) + 1, M));
}

Eigen::VectorXd barycentric_coordinates(const Point& x) {
  Eigen::VectorXd b(x.size() + 1);
  b.head(x.size()) = x;
  b(x.size()) = 1.0 - x.sum();
  return b;
}

FaceLabel classify_face(const Point& x, int d, double tol) {
  check_in_simplex(x, d, tol);
  const Eigen::VectorXd b = barycentric_coordinates(x);
  FaceLabel f;
  f.active.resize(static_cast<std::size_t>(d) + 1);
  int positive = 0;
  for (int i = 0; i <= d; ++i) {
    f.active[static_cast<std::size_t>(i)] = b(i) > tol;
    positive += b(i) > tol ? 1 : 0;
  }
  f.k = positive - 1;
  return f;
}

Eigen::MatrixXd structured_inverse(const VertexMassModel& model, const VertexConstants& c) {
  const int N = model.d + 1;
  const double M = model.M;
  const double a = 1.0 + M * (c.A - c.B);
  const double b = 1.0 + M * c.A + model.d * M * c.B;
  if (!(a > 0.0) || !(b > 0.0)) throw NumericalFailure("vertex kernel matrix is not positive definite");
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(N, N) * b - Eigen::MatrixXd::Constant(N, N, M * c.B);
  return out * (M / (a * b));
}

LimitSummary estimate_limit(const std::vector<int>& degrees, const std::vector<double>& values, double tolerance) {
  if (degrees.size() != values.size()) throw InvalidInput("degrees and values differ in length");
  LimitSummary s;
  for (std::size_t i = 0; i + 1 < degrees.size(); ++i) {
    if (degrees[i + 1] != 2 * degrees[i]) throw InvalidInput("limit estimation needs dyadic degrees");
    s.estimates.push_back({degrees[i + 1], values[i + 1], 2.0 * values[i + 1] - values[i]});
  }
  if (s.estimates.size() >= 2) {
    const double last = s.estimates.back().extrapolated;
    const double prev = s.estimates[s.estimates.size() - 2].extrapolated;
    s.converged = std::abs(last - prev) < tolerance * std::max(1.0, std::abs(last));
    s.limit = last;
  } else if (!s.estimates.empty()) {
    s.limit = s.estimates.back().extrapolated;
  }
  return s;
}

VertexMassKernels::VertexMassKernels(const SimplexKernels& kernels, VertexMassModel model)
    : kernels_(kernels), model_(model) {
  const auto& p = kernels_.basis().params();
  if (p.d() != model_.d) throw InvalidInput("vertex mass model dimension differs from the basis");
  if (!p.is_symmetric() || p.sigma() != model_.sigma)
    throw InvalidInput("vertex mass model requires the basis kappa_i = sigma for all i");
}

Eigen::VectorXd VertexMassKernels::vertex_kernels(int n, const Point& x) const {
  const int N = model_.d + 1;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(N);
  if (n < 0) return v;
  for (int i = 1; i <= N; ++i) v(i - 1) = kernels_.vertex_closed_form(n, x, i).value;
  return v;
}

Eigen::MatrixXd VertexMassKernels::inverse(int n) const {
  if (n < 0) return Eigen::MatrixXd::Zero(model_.d + 1, model_.d + 1);
  return structured_inverse(model_, kernels_.vertex_constants(n));
}

Eigen::VectorXd VertexMassKernels::q_eval(int n, const Point& x) const {
  const auto& basis = kernels_.basis();
  Eigen::VectorXd q = basis.eval(n, x);
  if (n == 0 || model_.M == 0.0) return q;
  const VertexConstants c = kernels_.vertex_constants(n - 1);
  const double M = model_.M;
  const double a = 1.0 + M * (c.A - c.B);
  const double b = 1.0 + M * c.A + model_.d * M * c.B;
  const Eigen::VectorXd kx = vertex_kernels(n - 1, x);
  Eigen::VectorXd weighted = Eigen::VectorXd::Zero(q.size());
  Eigen::VectorXd plain = Eigen::VectorXd::Zero(q.size());
  for (int i = 1; i <= model_.d + 1; ++i) {
    const Eigen::VectorXd pe = basis.eval(n, simplex_vertex(model_.d, i));
    weighted += pe * kx(i - 1);
    plain += pe;
  }
  return q - (M / a) * weighted + (M * M * c.B / (a * b)) * kx.sum() * plain;
}

double VertexMassKernels::kernel(int n, const Point& x, const Point& y) const {
  const double base = kernels_.sum(n, x, y).value;
  if (model_.M == 0.0) return base;
  const Eigen::VectorXd kx = vertex_kernels(n, x);
  const Eigen::VectorXd ky = vertex_kernels(n, y);
  return base - kx.dot(inverse(n) * ky);
}

double VertexMassKernels::jacobi_square_sum(int n, const Point& x) const {
  const double lambda = model_.lambda();
  const JacobiParams jp(lambda - model_.sigma - 0.5, model_.sigma - 0.5);
  const Eigen::VectorXd b = barycentric_coordinates(x);
  double s = 0.0;
  for (int i = 0; i <= model_.d; ++i) {
    const double p = jacobi_eval(jp, n, 2.0 * b(i) - 1.0);
    s += p * p;
  }
  return s;
}

double VertexMassKernels::leading_constant() const {
  const double lambda = model_.lambda();
  const double s = model_.sigma;
  return std::exp(std::lgamma(lambda - s + 0.5) + std::lgamma(s + 0.5) - std::lgamma(lambda));
}

AsymptoticDifference VertexMassKernels::asymptotic_difference(int n, const Point& x) const {
  check_in_simplex(x, model_.d);
  AsymptoticDifference r;
  r.n = n;
  double second = 0.0;
  if (model_.M != 0.0) {
    const VertexConstants c = kernels_.vertex_constants(n);
    const double M = model_.M;
    const double a = 1.0 + M * (c.A - c.B);
    const double b = 1.0 + M * c.A + model_.d * M * c.B;
    const Eigen::VectorXd kx = vertex_kernels(n, x);
    const double first = -(M / a) * kx.squaredNorm();
    second = (M * M * c.B / (a * b)) * kx.sum() * kx.sum();
    r.lhs = first + second;
  }
  r.rhs_model = -leading_constant() * jacobi_square_sum(n, x);
  if (r.rhs_model != 0.0) r.ratio = r.lhs / r.rhs_model;
  r.b_share = r.lhs != 0.0 ? std::abs(second) / std::abs(r.lhs) : 0.0;
  return r;
}

KernelTable VertexMassKernels::limit_table(const std::vector<int>& degrees, const std::vector<Point>& points) const {
  std::vector<FaceLabel> faces;
  for (const auto& x : points) faces.push_back(classify_face(x, model_.d));
  KernelTable rows;
  for (int n : degrees) {
    const double binom = binomial_real(n + model_.d, n);
    for (std::size_t p = 0; p < points.size(); ++p) {
      const Point& x = points[p];
      KernelRow row;
      row.d = model_.d;
      row.sigma = model_.sigma;
      row.M = model_.M;
      row.n = n;
      row.point_id = static_cast<int>(p);
      row.face_k = faces[p].k;
      row.K_base = kernels_.sum(n, x, x).value;
      const AsymptoticDifference ad = asymptotic_difference(n, x);
      row.K_nu = row.K_base + ad.lhs;
      row.diff = ad.lhs;
      row.rhs_model = ad.rhs_model;
      row.ratio = ad.ratio;
      row.binom_scaled_base = row.K_base / binom;
      row.binom_scaled_nu = row.K_nu / binom;
      rows.push_back(row);
    }
  }
  return rows;
}

VertexLimitCandidates vertex_limit_candidates(int d) {
  const double two_d = std::ldexp(1.0, d);
  const double e_printed =
      std::exp(std::lgamma(d / 2.0 + 1.0) - std::lgamma(d + 0.5)) * std::sqrt(M_PI) * std::ldexp(1.0, -(d + 1));
  return {two_d + e_printed, two_d + two_d, two_d - two_d};
}

}  // namespace uvarov
