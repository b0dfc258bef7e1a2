#include "uvarov/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "uvarov/errors.hpp"

namespace uvarov {

QuadratureRule gauss_jacobi(int points, double a, double b) {
  if (points < 1) throw InvalidInput("quadrature needs at least one point");
  if (!(a > -1.0) || !(b > -1.0)) throw InvalidInput("Gauss-Jacobi parameters must exceed -1");

  // Monic recurrence coefficients of the Jacobi family.
  Eigen::VectorXd diag(points);
  Eigen::VectorXd sub(points > 1 ? points - 1 : 0);
  const double ab = a + b;
  diag(0) = (b - a) / (ab + 2.0);
  for (int k = 1; k < points; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (b * b - a * a) / (s * (s + 2.0));
    double beta;
    if (k == 1) {
      beta = 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
    } else {
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(k - 1) = std::sqrt(beta);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalFailure("Gauss-Jacobi eigenproblem did not converge");

  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(points));
  rule.weights.resize(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    const double v = solver.eigenvectors()(0, i);
    rule.weights[static_cast<std::size_t>(i)] = v * v;
  }
  return rule;
}

}  // namespace uvarov
