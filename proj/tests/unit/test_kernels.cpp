#include <doctest.h>

#include <cmath>
#include <random>

#include "uvarov/kernels.hpp"
#include "uvarov/oracle.hpp"

using namespace uvarov;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }
Point pt(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p(i++) = x;
  return p;
}
}  // namespace

TEST_CASE("K_0 is one and the d = 1 Chebyshev kernel") {
  const SimplexJacobiBasis b(SimplexJacobiParams::symmetric(1, 0.0), 100);
  const SimplexKernels k(b);
  CHECK(k.sum(0, pt({0.2}), pt({0.9})).value == doctest::Approx(1.0));
  for (int n = 0; n <= 100; ++n) {
    CHECK(rel(k.sum(n, pt({1.0}), pt({1.0})).value, 2.0 * n + 1) <= 1e-12);
    CHECK(rel(k.vertex_closed_form(n, pt({1.0}), 1).value, 2.0 * n + 1) <= 1e-12);
    CHECK(rel(k.christoffel(n, pt({1.0})), 1.0 / (2 * n + 1)) <= 1e-12);
    const auto c = k.vertex_constants(n);
    CHECK(c.B == doctest::Approx(n % 2 ? -1.0 : 1.0));
  }
  CHECK(k.calibration_factor() == doctest::Approx(4.0));
}

TEST_CASE("closed forms and vertex constants match the basis sum") {
  for (int d = 1; d <= 3; ++d)
    for (double s : {0.0, 0.5, 1.5}) {
      const SimplexJacobiBasis b(SimplexJacobiParams::symmetric(d, s), 40);
      const SimplexKernels k(b);
      CHECK(k.calibration_factor() == doctest::Approx(std::ldexp(1.0, d + 1)).epsilon(1e-13));
      const Point e1 = simplex_vertex(d, 1), e2 = simplex_vertex(d, d + 1);
      const Point x = Point::Constant(d, 0.6 / d);
      double worst = 0.0;
      for (int n = 0; n <= 40; ++n) {
        const auto c = k.vertex_constants(n);
        worst = std::max(worst, rel(c.A, k.sum(n, e1, e1).value));
        worst = std::max(worst, rel(c.B, k.sum(n, e1, e2).value));
        for (int i = 1; i <= d + 1; ++i)
          worst = std::max(worst, rel(k.vertex_closed_form(n, x, i).value, k.sum(n, x, simplex_vertex(d, i)).value));
        if (n == 0) {
          CHECK(c.A == doctest::Approx(1.0));
          CHECK(c.B == doctest::Approx(1.0));
        }
        if (d > 1 || n > 0) CHECK((c.B > 0) == (n % 2 == 0));
      }
      CHECK(worst <= 1e-10);
    }
}

TEST_CASE("closed form for non-symmetric kappa") {
  const SimplexJacobiBasis b(SimplexJacobiParams(2, {0.3, 0.7, 1.2}), 20);
  const SimplexKernels k(b);
  const Point x = pt({0.2, 0.45});
  for (int n = 0; n <= 20; ++n)
    for (int i = 1; i <= 3; ++i) CHECK(rel(k.vertex_closed_form(n, x, i).value, k.sum(n, x, simplex_vertex(2, i)).value) <= 1e-10);
  CHECK_THROWS_AS(k.vertex_constants(3), InvalidInput);
  CHECK_THROWS_AS(k.vertex_closed_form(3, x, 4), InvalidInput);
}

TEST_CASE("as-printed closed forms carry the 2^{-(d+1)} factor") {
  const SimplexJacobiBasis b(SimplexJacobiParams::symmetric(1, 0.0), 10);
  const SimplexKernels k(b);
  CHECK(k.vertex_constants(3, Normalization::as_printed).A == doctest::Approx(7.0 / 4));
}

TEST_CASE("integral representation") {
  for (double s : {0.5, 1.0}) {
    const SimplexJacobiBasis b(SimplexJacobiParams::symmetric(2, s), 10);
    const SimplexKernels k(b);
    CHECK(k.integral_calibration_factor() == doctest::Approx(8.0).epsilon(1e-12));
    const std::vector<Point> pts{pt({0.2, 0.3}), pt({0.6, 0.1}), pt({1.0 / 3, 1.0 / 3}), pt({1.0, 0.0}), pt({0.5, 0.5})};
    double worst = 0.0, worst_single = 0.0;
    for (int n = 0; n <= 10; ++n)
      for (const auto& x : pts)
        for (const auto& y : pts) {
          const double ref = k.sum(n, x, y).value;
          const double iv = k.integral_form(n, x, y).kernel.value;
          worst = std::max(worst, std::abs(iv - ref) / std::max(1.0, std::abs(ref)));
          if (n > 0) {
            const double single = iv - k.integral_form(n - 1, x, y).kernel.value;
            const double sref = k.sum(n, x, y, false).value;
            worst_single = std::max(worst_single, std::abs(single - sref) / std::max(1.0, std::abs(sref)));
          }
        }
    CHECK(worst <= 1e-8);
    CHECK(worst_single <= 1e-8);
    CHECK_THROWS_AS(k.integral_form(5, pts[0], pts[1], 5), InvalidInput);
  }
}

TEST_CASE("endpoint-average rule at sigma = 0") {
  const SimplexJacobiBasis b(SimplexJacobiParams::symmetric(2, 0.0), 12);
  const SimplexKernels k(b);
  for (int n = 0; n <= 12; ++n)
    for (int i = 1; i <= 3; ++i) {
      const Point v = simplex_vertex(2, i);
      for (const Point& x : {pt({0.2, 0.3}), simplex_vertex(2, 1), simplex_vertex(2, 3)})
        CHECK(rel(k.integral_form(n, x, v).kernel.value, k.sum(n, x, v).value) <= 1e-8);
    }
}

TEST_CASE("symmetry, positivity and monotonicity") {
  const SimplexJacobiBasis b(SimplexJacobiParams(2, {0.3, 0.7, 1.2}), 15);
  const SimplexKernels k(b);
  const Point x = pt({0.1, 0.7}), y = pt({0.4, 0.4});
  for (int n = 0; n <= 15; ++n) CHECK(std::abs(k.sum(n, x, y).value - k.sum(n, y, x).value) <= 1e-12);
  for (int i = 0; i <= 10; ++i)
    for (int j = 0; i + j <= 10; ++j) {
      const Point g = pt({i / 10.0, j / 10.0});
      double prev = 0.0;
      for (int n = 0; n <= 15; ++n) {
        const double v = k.sum(n, g, g).value;
        CHECK(v > 0.0);
        CHECK(v >= prev);
        prev = v;
      }
    }
}

TEST_CASE("reproducing property and Christoffel minimum under the base measure") {
  const auto params = SimplexJacobiParams::symmetric(2, 0.5);
  const SimplexJacobiBasis b(params, 6);
  const SimplexKernels k(b);
  const OracleSystem o(NuInnerProduct(params), 6);
  std::mt19937_64 rng(3);
  for (int n = 0; n <= 6; ++n) {
    for (const Point& x : {pt({0.2, 0.3}), pt({0.0, 1.0}), pt({0.45, 0.05})}) {
      // <K_n(x, .), p> = p(x) for p = sum of random multiples of the oracle basis.
      const auto qx = o.eval(n, x);
      OracleSystem::HighPoly p(2);
      std::vector<double> c(qx.size());
      for (auto& v : c) v = static_cast<double>(rng() % 2001) / 1000.0 - 1.0;
      for (std::size_t i = 0; i < c.size(); ++i) p += o.polys()[i] * HighPrecision(c[i]);
      // K_n(x, .) in monomial form from the basis.
      OracleSystem::HighPoly kx(2);
      const auto bx = b.eval_upto(n, x);
      for (int m = 0; m <= n; ++m)
        for (std::size_t i = 0; i < b.monomial_form(m).size(); ++i)
          kx += b.monomial_form(m)[i] * HighPrecision(bx[static_cast<std::size_t>(m)](static_cast<Eigen::Index>(i)));
      const std::vector<HighPrecision> xh{x(0), x(1)};
      CHECK(std::abs(static_cast<double>(o.pair(kx, p) - p.evaluate(xh))) <= 1e-9);
      CHECK(rel(k.christoffel(n, x), o.christoffel_minimum(n, x)) <= 1e-8);
    }
  }
  CHECK(k.christoffel(0, pt({0.3, 0.3})) == doctest::Approx(1.0));
}
