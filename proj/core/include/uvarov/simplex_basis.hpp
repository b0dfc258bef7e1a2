#pragma once

#include <Eigen/Core>
#include <vector>

#include "uvarov/basis_provider.hpp"
#include "uvarov/polycore.hpp"
#include "uvarov/precision.hpp"

namespace uvarov {

/// Jacobi weight W_kappa(x) = prod x_i^{kappa_i - 1/2} (1 - |x|)^{kappa_{d+1} - 1/2}
/// on the simplex T^d, normalized to a probability measure.
class SimplexJacobiParams {
 public:
  SimplexJacobiParams(int d, std::vector<double> kappa);
  /// kappa_1 = ... = kappa_{d+1} = sigma.
  static SimplexJacobiParams symmetric(int d, double sigma);

  int d() const { return d_; }
  const std::vector<double>& kappa() const { return kappa_; }
  /// kappa_i, 1-based as in the weight's definition.
  double kappa_at(int i) const { return kappa_[static_cast<std::size_t>(i - 1)]; }
  /// |kappa^j| = kappa_j + ... + kappa_{d+1}, 1-based j; zero past the end.
  double kappa_tail(int j) const;
  double kappa_sum() const { return kappa_tail(1); }
  /// |kappa| + (d+1)/2
  double lambda() const { return lambda_; }
  /// w_kappa, the reciprocal of the weight's integral.
  double w_norm() const { return w_norm_; }

  bool is_symmetric() const;
  /// Common value of kappa; throws InvalidInput unless symmetric.
  double sigma() const;

  bool operator==(const SimplexJacobiParams& o) const { return d_ == o.d_ && kappa_ == o.kappa_; }

 private:
  int d_;
  std::vector<double> kappa_;
  double lambda_;
  double w_norm_;
};

/// w_kappa * integral of x^alpha W_kappa over T^d, in Pochhammer form:
///   prod_i (kappa_i + 1/2)_{alpha_i} / (|kappa| + (d+1)/2)_{|alpha|}.
template <class T>
T dirichlet_moment(const SimplexJacobiParams& params, const MultiIndex& alpha) {
  if (alpha.dimension() != params.d()) throw InvalidInput("moment multi-index dimension mismatch");
  const T half = T(1) / 2;
  T num(1);
  for (int i = 0; i < params.d(); ++i) {
    const T base = T(params.kappa()[static_cast<std::size_t>(i)]) + half;
    for (int k = 0; k < alpha[i]; ++k) num *= base + k;
  }
  T lam(0);
  for (double k : params.kappa()) lam += T(k);
  lam += T(params.d() + 1) / 2;
  T den(1);
  for (int k = 0; k < alpha.degree(); ++k) den *= lam + k;
  return num / den;
}

double moment(const SimplexJacobiParams& params, const MultiIndex& alpha);

/// Throws InvalidInput unless x lies in T^d up to `tol`.
void check_in_simplex(const Point& x, int d, double tol = 1e-12);

struct BasisOptions {
  /// Highest degree whose extended-precision monomial forms are built at
  /// construction (derivatives and oracle checks need them). Negative picks a
  /// dimension-dependent default.
  int monomial_degree = -1;
  /// Compare the closed-form normalizers against exact moments up to this degree.
  int normalization_check_degree = 4;
};

/// Orthonormal basis P_alpha(W_kappa; x) of the simplex Jacobi measure, one
/// degree block at a time.
///
/// Each basis element is a product over j of a radial factor and a 1-D
/// orthonormal Jacobi polynomial in x_j / (1 - |x_{j-1}|). The ratios telescope,
/// so each factor is evaluated in homogenized form
///   G_j = s_j^{alpha_j} p_{alpha_j}^{(a_j, b_j)}((2 x_j - s_j) / s_j),  s_j = 1 - |x_{j-1}|,
/// which is a polynomial in (x_j, s_j) and stays well defined on faces where s_j = 0.
class SimplexJacobiBasis final : public BasisProvider {
 public:
  using HighPoly = BasicMonomialPoly<HighPrecision>;

  SimplexJacobiBasis(SimplexJacobiParams params, int max_degree, BasisOptions options = {});

  const SimplexJacobiParams& params() const { return params_; }
  int dimension() const override { return params_.d(); }
  int max_degree() const override { return max_degree_; }
  Eigen::Index block_size(int n) const override;
  const DegreeLayout& layout(int n) const;

  Eigen::VectorXd eval(int n, const Point& x) const override;
  std::vector<Eigen::VectorXd> eval_upto(int n, const Point& x) const override;
  /// |alpha| <= 2 and n <= monomial_degree().
  Eigen::VectorXd partial(int n, const MultiIndex& alpha, const Point& x) const override;

  /// Closed-form normalizer h_alpha of the given multi-index.
  double normalizer(const MultiIndex& alpha) const;

  int monomial_degree() const { return monomial_degree_; }
  /// Extended-precision monomial expansion of the degree-n block.
  const std::vector<HighPoly>& monomial_form(int n) const;

  /// Largest |<P_a, P_b> - delta_ab| found by the construction-time moment check.
  double normalization_deviation() const { return normalization_deviation_; }

 private:
  struct Element {
    std::vector<int> tails;  ///< |alpha^{j+1}| for j = 1..d
    double inv_h;
  };
  struct Step {
    double alpha, beta, gamma;
  };

  double jacobi_a(int j, int tail) const;
  double jacobi_b(int j) const;
  const Step& step(int j, int tail, int k) const;
  /// factors[j][tail][k] = homogenized factor of coordinate j.
  std::vector<std::vector<std::vector<double>>> factor_table(int n, const Point& x) const;
  Eigen::VectorXd assemble(int n, const std::vector<std::vector<std::vector<double>>>& factors) const;
  void build_monomial_forms();
  void verify_normalization();

  SimplexJacobiParams params_;
  int max_degree_;
  int monomial_degree_;
  int check_degree_;
  std::vector<DegreeLayout> layouts_;
  std::vector<std::vector<Element>> elements_;
  std::vector<std::vector<std::vector<Step>>> steps_;  // [j][tail][k]
  std::vector<std::vector<HighPoly>> monomial_forms_;
  double normalization_deviation_ = 0.0;
};

}  // namespace uvarov
