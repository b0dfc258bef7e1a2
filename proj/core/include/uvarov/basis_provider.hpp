#pragma once

#include <Eigen/Core>
#include <vector>

#include "uvarov/polycore.hpp"

namespace uvarov {

using Point = Eigen::VectorXd;

/// Orthonormal polynomial system of a base measure, exposed degree block by
/// degree block in the canonical DegreeLayout order. The Uvarov engine is
/// written against this interface only.
class BasisProvider {
 public:
  virtual ~BasisProvider() = default;

  virtual int dimension() const = 0;
  virtual int max_degree() const = 0;
  virtual Eigen::Index block_size(int n) const = 0;

  /// P_n(x), the degree-n block.
  virtual Eigen::VectorXd eval(int n, const Point& x) const = 0;

  /// P_0(x), ..., P_n(x). Override when blocks share work.
  virtual std::vector<Eigen::VectorXd> eval_upto(int n, const Point& x) const {
    std::vector<Eigen::VectorXd> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) out.push_back(eval(k, x));
    return out;
  }

  /// d^alpha P_n(x). alpha = 0 must return exactly eval(n, x).
  virtual Eigen::VectorXd partial(int n, const MultiIndex& alpha, const Point& x) const = 0;
};

}  // namespace uvarov
