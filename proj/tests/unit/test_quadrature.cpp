#include <doctest.h>

#include <cmath>

#include "uvarov/quadrature.hpp"

using namespace uvarov;

TEST_CASE("Gauss-Jacobi weights sum to one and integrate polynomials exactly") {
  for (auto [a, b] : {std::pair{0.0, 0.0}, {-0.5, -0.5}, {1.5, 0.25}, {-0.3, -0.3}}) {
    const int m = 8;
    const auto r = gauss_jacobi(m, a, b);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(m));
    double s = 0;
    for (double w : r.weights) s += w;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    // E[u^k] for u = (1+t)/2 ~ Beta(b+1, a+1), up to degree 2m-1.
    for (int k = 0; k < 2 * m; ++k) {
      double exact = 1.0;
      for (int j = 0; j < k; ++j) exact *= (b + 1 + j) / (a + b + 2 + j);
      double q = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) q += r.weights[i] * std::pow((1 + r.nodes[i]) / 2, k);
      CHECK(std::abs(q - exact) <= 1e-13);
    }
  }
}

TEST_CASE("Gauss-Legendre two-point nodes") {
  const auto r = gauss_jacobi(2, 0.0, 0.0);
  CHECK(std::abs(std::abs(r.nodes[0]) - 1.0 / std::sqrt(3.0)) <= 1e-15);
  CHECK(r.weights[0] == doctest::Approx(0.5));
}
