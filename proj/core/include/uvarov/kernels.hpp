#pragma once

#include <map>
#include <mutex>
#include <utility>

#include "uvarov/quadrature.hpp"
#include "uvarov/simplex_basis.hpp"

namespace uvarov {

enum class KernelMethod { basis_sum, closed_form, integral_form };
enum class Normalization { as_printed, calibrated };

const char* to_string(KernelMethod m);

struct KernelValue {
  int n = 0;
  Point x;
  Point y;
  double value = 0.0;
  KernelMethod method = KernelMethod::basis_sum;
};

/// Kernel values at the vertices for symmetric kappa = sigma:
///   A_n = K_n(e_i, e_i), B_n = K_n(e_i, e_j) (i != j), and the prefactor
///   C_n = (lambda)_n / (sigma + 1/2)_n of the vertex kernel.
struct VertexConstants {
  int n = 0;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  Normalization normalization = Normalization::calibrated;
};

struct IntegralKernel {
  KernelValue kernel;             ///< calibrated value
  double as_printed = 0.0;        ///< with the 2^{-(d+1)} prefactor kept
  double calibration_factor = 0.0;
};

/// e_i for 1 <= i <= d, the origin for i = d + 1.
Point simplex_vertex(int d, int i);

/// Reproducing kernels of the simplex Jacobi measure.
///
/// The basis-sum path is the ground truth. The closed vertex forms and the
/// Gegenbauer integral carry a 2^{-(d+1)} prefactor under which K_0 would not
/// be 1 for the probability-normalized measure; both are rescaled by a factor
/// measured against the basis sum at n = 0 when the object is built.
class SimplexKernels {
 public:
  explicit SimplexKernels(const SimplexJacobiBasis& basis);

  const SimplexJacobiBasis& basis() const { return basis_; }
  int d() const { return basis_.params().d(); }

  /// K_n(x, y) when cumulative, else the single-degree P_n(x, y).
  KernelValue sum(int n, const Point& x, const Point& y, bool cumulative = true) const;

  /// K_n(x, e_i) from the Jacobi closed form, 1 <= i <= d + 1.
  KernelValue vertex_closed_form(int n, const Point& x, int i,
                                 Normalization norm = Normalization::calibrated) const;

  /// Requires symmetric kappa.
  VertexConstants vertex_constants(int n, Normalization norm = Normalization::calibrated) const;

  /// Tensor Gauss-Jacobi evaluation of the Gegenbauer integral form.
  /// quadrature_order >= n + 1 points per axis; axes with kappa_j = 0 use the
  /// two-point endpoint average.
  IntegralKernel integral_form(int n, const Point& x, const Point& y, int quadrature_order) const;
  IntegralKernel integral_form(int n, const Point& x, const Point& y) const {
    return integral_form(n, x, y, 2 * n + 8);
  }

  /// 1 / K_n(x, x).
  double christoffel(int n, const Point& x) const;

  double calibration_factor() const { return closed_form_factor_; }
  double integral_calibration_factor() const { return integral_factor_; }

 private:
  double printed_vertex(int n, const Point& x, int i) const;
  double printed_integral(int n, const Point& x, const Point& y, int quadrature_order) const;
  const QuadratureRule& rule(int points, double kappa) const;

  const SimplexJacobiBasis& basis_;
  double closed_form_factor_ = 1.0;
  double integral_factor_ = 1.0;
  mutable std::mutex rules_mutex_;
  mutable std::map<std::pair<int, double>, QuadratureRule> rules_;
};

}  // namespace uvarov
