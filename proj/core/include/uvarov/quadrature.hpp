#pragma once

#include <vector>

namespace uvarov {

/// Nodes and weights with weights summing to one, i.e. a rule for the
/// probability measure proportional to (1-t)^a (1+t)^b on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule with `points` nodes (Golub-Welsch). Exact for
/// polynomials of degree <= 2*points - 1. Requires a, b > -1.
QuadratureRule gauss_jacobi(int points, double a, double b);

}  // namespace uvarov
