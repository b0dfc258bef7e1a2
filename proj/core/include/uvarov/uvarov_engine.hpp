#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <memory>
#include <mutex>
#include <vector>

#include "uvarov/basis_provider.hpp"
#include "uvarov/polycore.hpp"

namespace uvarov {

/// Point masses (optionally on derivative values) added to a base measure:
///   <p, q>_nu = <p, q>_mu + D p(xi)^T Lambda D q(xi),
/// where the i-th entry of D p(xi) is d^{alpha_i} p(xi_i).
struct MassSpec {
  std::vector<Point> points;
  /// Empty means plain point evaluations.
  std::vector<MultiIndex> deriv_orders;
  Eigen::MatrixXd lambda;

  static MassSpec plain(std::vector<Point> points, Eigen::MatrixXd lambda);
  static MassSpec diagonal(std::vector<Point> points, const std::vector<double>& weights);

  Eigen::Index size() const { return static_cast<Eigen::Index>(points.size()); }
  bool has_derivatives() const;
  /// Derivative order of condition i (zero multi-index in the plain case).
  MultiIndex order(std::size_t i, int d) const;

  /// Throws InvalidInput on shape errors, non-finite entries, a non-symmetric
  /// or indefinite Lambda, or repeated (xi_i, alpha_i) pairs.
  void validate(int d) const;
};

/// Cached matrices of one degree. K and G are cumulative through degree n.
struct DegreeState {
  int n = 0;
  Eigen::MatrixXd P_xi;  ///< r_n x N, column i = d^{alpha_i} P_n(xi_i)
  Eigen::MatrixXd K;     ///< N x N, sum_{k<=n} P_xi_k^T P_xi_k
  Eigen::PartialPivLU<Eigen::MatrixXd> solve;  ///< of I + Lambda K
  Eigen::MatrixXd G;     ///< (I + Lambda K)^{-1} Lambda
  Eigen::MatrixXd H;     ///< <Q_n, Q_n^T>_nu
  Eigen::MatrixXd H_inv;
};

struct HBlocks {
  Eigen::MatrixXd H;
  Eigen::MatrixXd H_inv;
};

/// Orthogonal polynomials and reproducing kernels of mu + masses, built from
/// an orthonormal basis of mu. Q_n shares its leading coefficient with P_n:
///   Q_n(x) = P_n(x) - P_xi_n G_{n-1} KK_{n-1}(xi, x).
///
/// Degree states form a chain 0..n because K_n is cumulative. extend_to() is
/// serialized; evaluations only read states that are already built, so any
/// number of threads may evaluate while one extends the chain.
class UvarovEngine {
 public:
  UvarovEngine(const BasisProvider& basis, MassSpec mass);

  const BasisProvider& basis() const { return basis_; }
  const MassSpec& mass() const { return mass_; }
  int built_degree() const { return built_.load(std::memory_order_acquire); }

  void extend_to(int n);
  /// Throws InvalidInput if degree n has not been built.
  const DegreeState& state(int n) const;

  /// KK_n(xi, x): entry i is d^{alpha_i}_u K_n(mu; u, x) at u = xi_i.
  /// n = -1 gives zeros.
  Eigen::VectorXd kernel_vector(int n, const Point& x) const;

  Eigen::VectorXd q_eval(int n, const Point& x) const;
  /// Q_n = sum_k C_k P_k; returns C_0, ..., C_n (C_n = I).
  std::vector<Eigen::MatrixXd> q_coefficients(int n) const;
  HBlocks h_blocks(int n) const;

  /// P_n(nu; x, y)
  double projection_kernel(int n, const Point& x, const Point& y) const;
  /// K_n(nu; x, y)
  double sum_kernel(int n, const Point& x, const Point& y) const;
  double christoffel(int n, const Point& x) const;

 private:
  void build_next();
  Eigen::VectorXd accumulate_kernel_vector(const std::vector<Eigen::VectorXd>& blocks, int n) const;
  /// (I + Lambda K_{n-1})^{-1} Lambda, which is Lambda at n = 0 since K_{-1} = 0.
  const Eigen::MatrixXd& G_prev(int n) const;

  const BasisProvider& basis_;
  MassSpec mass_;
  std::vector<std::unique_ptr<DegreeState>> states_;
  std::atomic<int> built_{-1};
  std::mutex extend_mutex_;
};

/// Residuals of the algebraic identities at degree n (each a max-abs value).
struct IdentityResiduals {
  double kernel_increment = 0.0;     ///< K_n - K_{n-1} - P_xi^T P_xi, relative to max(1, |K_n|)
  double kernel_vector_step = 0.0;   ///< KK_n - KK_{n-1} - P_xi^T P_n(x), relative to max(1, |KK_n|)
  double resolvent = 0.0;            ///< G_{n-1} P^T P (I+LK_n)^{-1} - (I+LK_{n-1})^{-1} + (I+LK_n)^{-1}
  double h_product = 0.0;            ///< H H_inv - I
  double g_symmetry = 0.0;           ///< G_n - G_n^T
  double projection_sum = 0.0;       ///< sum_j P_j(nu) - K_n(nu), relative to max(1, |K_n|)
  double projection_vs_q = 0.0;      ///< P_n(nu) - Q_n^T H_inv Q_n, relative to max(1, |P_n|)
  double projection_symmetry = 0.0;  ///< P_n(nu; x, y) - P_n(nu; y, x)
};

/// Evaluated at every pair of `points`.
IdentityResiduals identity_residuals(const UvarovEngine& engine, int n, const std::vector<Point>& points);

}  // namespace uvarov
