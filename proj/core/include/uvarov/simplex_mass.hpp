#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "uvarov/kernels.hpp"
#include "uvarov/uvarov_engine.hpp"

namespace uvarov {

/// Equal mass M at every vertex of T^d over the symmetric weight kappa_i = sigma.
struct VertexMassModel {
  int d = 2;
  double sigma = 0.0;
  double M = 1.0;

  VertexMassModel() = default;
  VertexMassModel(int d_, double sigma_, double M_);

  /// (d + 1)(sigma + 1/2)
  double lambda() const { return (d + 1) * (sigma + 0.5); }
  std::vector<Point> vertices() const;
  MassSpec mass_spec() const;
};

/// Face T_k^d containing a point: k + 1 barycentric coordinates are positive.
struct FaceLabel {
  int k = 0;
  std::vector<bool> active;  ///< x_1..x_{d+1} > tol
};

/// Rejects off-simplex points.
FaceLabel classify_face(const Point& x, int d, double tol = 1e-12);

/// Barycentric (x_1, ..., x_d, 1 - |x|).
Eigen::VectorXd barycentric_coordinates(const Point& x);

/// (I + M K_n)^{-1} M for the vertex kernel matrix with diagonal A and
/// off-diagonal B, via the rank-one structure.
Eigen::MatrixXd structured_inverse(const VertexMassModel& model, const VertexConstants& c);

struct AsymptoticDifference {
  int n = 0;
  double lhs = 0.0;        ///< K_n(nu; x, x) - K_n(W; x, x)
  double rhs_model = 0.0;  ///< -c sum_i [P_n^{(lambda-sigma-1/2, sigma-1/2)}(2 x_i - 1)]^2
  std::optional<double> ratio;
  double b_share = 0.0;    ///< |second correction term| / |lhs|
};

struct KernelRow {
  int d = 0;
  double sigma = 0.0;
  double M = 0.0;
  int n = 0;
  int point_id = 0;
  int face_k = 0;
  double K_base = 0.0;
  double K_nu = 0.0;
  double diff = 0.0;
  double rhs_model = 0.0;
  std::optional<double> ratio;
  double binom_scaled_base = 0.0;
  double binom_scaled_nu = 0.0;
};
using KernelTable = std::vector<KernelRow>;

/// Richardson estimate 2 f(2n) - f(n) for each consecutive dyadic pair.
struct LimitEstimate {
  int n = 0;
  double value = 0.0;
  double extrapolated = 0.0;
};

struct LimitSummary {
  std::vector<LimitEstimate> estimates;
  /// Last two extrapolations differ by < 2% of max(1, |value|).
  bool converged = false;
  double limit = 0.0;
};

/// Successive values f(n_0), f(2 n_0), ...; degrees must be dyadic.
LimitSummary estimate_limit(const std::vector<int>& degrees, const std::vector<double>& values,
                            double tolerance = 0.02);

/// Closed-form specialization of the Uvarov formulas to vertex masses.
///
/// Note the correction signs: adding mass lowers the kernel away from the
/// masses, so K_n(nu; x, x) <= K_n(W; x, x) and the leading term of the
/// difference is negative.
class VertexMassKernels {
 public:
  /// `kernels` must be built on a symmetric basis of the same dimension.
  VertexMassKernels(const SimplexKernels& kernels, VertexMassModel model);

  const VertexMassModel& model() const { return model_; }
  const SimplexKernels& kernels() const { return kernels_; }

  /// K_n(W; x, e_i), i = 1..d+1, from the closed vertex forms. n = -1 gives zeros.
  Eigen::VectorXd vertex_kernels(int n, const Point& x) const;

  Eigen::MatrixXd inverse(int n) const;
  Eigen::VectorXd q_eval(int n, const Point& x) const;
  double kernel(int n, const Point& x, const Point& y) const;
  AsymptoticDifference asymptotic_difference(int n, const Point& x) const;

  /// sum_i [P_n^{(lambda-sigma-1/2, sigma-1/2)}(2 x_i - 1)]^2
  double jacobi_square_sum(int n, const Point& x) const;
  /// Gamma(lambda - sigma + 1/2) Gamma(sigma + 1/2) / Gamma(lambda), i.e. the
  /// printed constant times 2^{d+1}.
  double leading_constant() const;

  /// Rows degree-major then point order. Base kernels use the basis sum.
  KernelTable limit_table(const std::vector<int>& degrees, const std::vector<Point>& points) const;

 private:
  const SimplexKernels& kernels_;
  VertexMassModel model_;
};

/// Candidate values of lim K_n(nu; e_i, e_i) / C(n+d, n) for sigma = 0.
struct VertexLimitCandidates {
  double printed;     ///< 2^d + Gamma(d/2+1) sqrt(pi) / (Gamma(d+1/2) 2^{d+1})
  double calibrated;  ///< 2^d + 2^d: the vertex term with the calibrated constant
  double signed_;     ///< 2^d - 2^d: same term with the correction sign of the general formula
};
VertexLimitCandidates vertex_limit_candidates(int d);

}  // namespace uvarov
