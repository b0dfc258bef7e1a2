#include "verify_suite.hpp"

#include <algorithm>
#include <cmath>

#include "uvarov/kernels.hpp"
#include "uvarov/simplex_mass.hpp"

namespace uvarov::cli {

namespace {

struct Collector {
  EquivalenceReport report;
  void add(const std::string& check, int n, double dev, double tol) {
    report.entries.push_back({check, n, dev, tol, dev <= tol, ""});
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::vector<Point> verify_points(const RunConfig& c) {
  std::vector<Point> pts = c.points;
  if (pts.empty()) {
    pts.push_back(Point::Constant(c.d, 1.0 / (c.d + 1)));
    for (auto& p : sample_interior_points(c.d, 2, 5u)) pts.push_back(p);
  }
  return pts;
}

}  // namespace

EquivalenceReport run_verify(const RunConfig& config) {
  config.validate();
  const int top = config.max_degree();
  const double tol = config.tolerance;
  const SimplexJacobiParams params = config.params();
  const int d = params.d();
  BasisOptions opts;
  opts.monomial_degree = top;
  const SimplexJacobiBasis basis(params, top, opts);
  const SimplexKernels kernels(basis);
  const std::vector<Point> pts = verify_points(config);
  Collector out;

  // Degree bookkeeping and the basis against exact moments.
  const OracleSystem plain(NuInnerProduct(params), top);
  for (int n = 0; n <= top; ++n) {
    std::uint64_t total = 0;
    for (int k = 0; k <= n; ++k) total += static_cast<std::uint64_t>(basis.block_size(k));
    out.add("dims", n, std::abs(static_cast<double>(total) - static_cast<double>(dims(d, n).total)), 0.0);

    double gram = 0.0;
    for (int m = 0; m <= n; ++m)
      for (std::size_t a = 0; a < basis.monomial_form(n).size(); ++a)
        for (std::size_t b = 0; b < basis.monomial_form(m).size(); ++b) {
          const double g = static_cast<double>(plain.pair(basis.monomial_form(n)[a], basis.monomial_form(m)[b]));
          gram = std::max(gram, std::abs(g - (m == n && a == b ? 1.0 : 0.0)));
        }
    out.add("basis_gram", n, gram, tol);

    double values = 0.0;
    for (const auto& x : pts) {
      const auto o = plain.eval(n, x);
      values = std::max(values, rel(kernels.sum(n, x, x).value, [&] {
                          HighPrecision s(0);
                          for (const auto& v : o) s += v * v;
                          return static_cast<double>(s);
                        }()));
    }
    out.add("kernel_basis_sum", n, values, tol);

    double closed = 0.0;
    double integral = 0.0;
    for (const auto& x : pts) {
      for (int i = 1; i <= d + 1; ++i) {
        const Point e = simplex_vertex(d, i);
        const double ref = kernels.sum(n, x, e).value;
        closed = std::max(closed, rel(kernels.vertex_closed_form(n, x, i).value, ref));
        integral = std::max(integral, rel(kernels.integral_form(n, x, e).kernel.value, ref));
      }
    }
    out.add("kernel_closed_form", n, closed, 1e-10);
    out.add("kernel_integral_form", n, integral, 1e-8);
  }

  const auto mass = config.mass_spec();
  if (!mass) return out.report;

  const EquivalenceReport eq = equivalence_report(params, *mass, top, tol);
  out.report.entries.insert(out.report.entries.end(), eq.entries.begin(), eq.entries.end());
  if (!eq.all_pass() && !eq.entries.empty() && eq.entries.front().check == "configuration") return out.report;

  UvarovEngine engine(basis, *mass);
  engine.extend_to(top);
  const NuInnerProduct ip(params, *mass);
  const OracleSystem oracle(ip, top);
  for (int n = 0; n <= top; ++n) {
    const IdentityResiduals r = identity_residuals(engine, n, pts);
    out.add("kernel_increment", n, r.kernel_increment, 1e-12);
    out.add("kernel_vector_step", n, r.kernel_vector_step, 1e-12);
    out.add("resolvent_identity", n, r.resolvent, 1e-10);
    out.add("h_inverse", n, r.h_product, 1e-10);
    out.add("g_symmetry", n, r.g_symmetry, 1e-12);
    out.add("projection_sum", n, r.projection_sum, 1e-10);
    out.add("projection_vs_q", n, r.projection_vs_q, 1e-10);

    double chr = 0.0;
    for (const auto& x : pts) chr = std::max(chr, rel(engine.christoffel(n, x), oracle.christoffel_minimum(n, x)));
    out.add("christoffel", n, chr, 1e-8);

    // Reproducing property: <K_n(nu; x, .), q_k>_nu = q_k(x) for the oracle basis.
    double repro = 0.0;
    for (const auto& x : pts) {
      const auto qx = oracle.eval(n, x);
      for (const auto& y : pts) {
        const auto qy = oracle.eval(n, y);
        HighPrecision s(0);
        for (std::size_t k = 0; k < qx.size(); ++k) s += qx[k] * qy[k];
        repro = std::max(repro, rel(engine.sum_kernel(n, x, y), static_cast<double>(s)));
      }
    }
    out.add("modified_kernel_oracle", n, repro, tol);
  }
  if (top <= 4) {
    for (int n = 0; n <= top; ++n) {
      const Point& x = pts.front();
      out.add("exact_rational_kernel", n, rel(engine.sum_kernel(n, x, x), exact_kernel(ip, n, x, x).convert_to<double>()),
              tol);
    }
  }

  // Vertex-mass specialization when the configuration has that shape.
  if (config.vertex_mass && !config.mass && params.is_symmetric()) {
    const VertexMassKernels vm(kernels, VertexMassModel(d, params.sigma(), *config.vertex_mass));
    for (int n = 0; n <= top; ++n) {
      out.add("vertex_mass_inverse", n, (vm.inverse(n) - engine.state(n).G).cwiseAbs().maxCoeff(), 1e-11);
      double q = 0.0;
      double k = 0.0;
      double diff = 0.0;
      for (const auto& x : pts) {
        q = std::max(q, (vm.q_eval(n, x) - engine.q_eval(n, x)).cwiseAbs().maxCoeff());
        const double ke = engine.sum_kernel(n, x, x);
        k = std::max(k, rel(vm.kernel(n, x, x), ke));
        diff = std::max(diff, rel(vm.asymptotic_difference(n, x).lhs, ke - kernels.sum(n, x, x).value));
      }
      out.add("vertex_mass_q", n, q, 1e-10);
      out.add("vertex_mass_kernel", n, k, 1e-10);
      out.add("asymptotic_difference", n, diff, 1e-10);
    }
  }
  return out.report;
}

}  // namespace uvarov::cli
