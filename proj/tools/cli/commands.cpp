#include "commands.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "output.hpp"
#include "run_config.hpp"
#include "uvarov/kernels.hpp"
#include "uvarov/simplex_mass.hpp"
#include "verify_suite.hpp"

namespace uvarov::cli {

namespace {

/// Raw flag values; merged over the JSON config.
struct Flags {
  std::string config;
  std::optional<int> d;
  std::optional<double> sigma;
  std::vector<std::string> kappa;
  std::optional<int> n;
  std::vector<int> degrees;
  std::string x, y;
  std::vector<std::string> points;
  std::optional<double> M;
  std::string out;
  std::string format;
  std::string method = "basis_sum";
  bool projection = false;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON run configuration");
  app->add_option("--d", f.d, "Dimension");
  app->add_option("--sigma", f.sigma, "Symmetric kappa_i = sigma");
  app->add_option("--kappa", f.kappa, "kappa_1..kappa_{d+1}")->delimiter(',');
  app->add_option("--out", f.out, "Output file (default stdout)");
  app->add_option("--format", f.format, "csv or json");
}

RunConfig merge(const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
  if (f.d) {
    if (!f.config.empty() && *f.d != c.d && (c.mass || !c.points.empty()))
      throw InvalidInput("--d conflicts with the config's points");
    c.d = *f.d;
  }
  if (f.sigma) {
    c.sigma = f.sigma;
    c.kappa.reset();
  }
  if (!f.kappa.empty()) {
    std::vector<double> k;
    for (const auto& s : f.kappa) k.push_back(parse_number(s));
    c.kappa = k;
    c.sigma.reset();
  }
  if (f.n) c.degrees = {*f.n};
  if (!f.degrees.empty()) c.degrees = f.degrees;
  if (!f.points.empty()) {
    c.points.clear();
    for (const auto& p : f.points) c.points.push_back(parse_point(p, c.d));
  }
  if (f.M) {
    c.vertex_mass = f.M;
    c.mass.reset();
  }
  if (!f.out.empty()) c.out = f.out;
  if (!f.format.empty()) c.format = parse_format(f.format);
  c.validate();
  return c;
}

Point require_point(const std::string& text, const RunConfig& c, const char* name, std::size_t fallback) {
  if (!text.empty()) {
    Point p = parse_point(text, c.d);
    check_in_simplex(p, c.d);
    return p;
  }
  if (c.points.size() > fallback) return c.points[fallback];
  throw InvalidInput(std::string("missing ") + name);
}

int single_degree(const RunConfig& c) {
  if (c.degrees.size() != 1) throw InvalidInput("give exactly one degree with --n");
  return c.degrees.front();
}

std::string scalar_output(const RunConfig& c, const std::string& what, int n, double value) {
  if (c.format == OutputFormat::json) {
    nlohmann::json j{{"quantity", what}, {"n", n}, {"value", value}};
    return j.dump() + "\n";
  }
  return format_double(value) + "\n";
}

std::string run_dims(const RunConfig& c) {
  const int n = single_degree(c);
  const Dims dm = dims(c.d, n);
  if (c.format == OutputFormat::json) return nlohmann::json{{"d", c.d}, {"n", n}, {"r", dm.r}, {"total", dm.total}}.dump() + "\n";
  return "r=" + std::to_string(dm.r) + ",total=" + std::to_string(dm.total) + "\n";
}

std::string run_basis(const RunConfig& c, const Flags& f) {
  const SimplexJacobiBasis basis(c.params(), c.max_degree(), BasisOptions{0, 4});
  const Point x = require_point(f.x, c, "--x", 0);
  std::ostringstream os;
  nlohmann::json arr = nlohmann::json::array();
  if (c.format == OutputFormat::csv) os << "n,position,alpha,value\n";
  for (int n : c.degrees) {
    const Eigen::VectorXd v = basis.eval(n, x);
    const auto& lay = basis.layout(n);
    for (std::size_t i = 0; i < lay.size(); ++i) {
      const double val = v(static_cast<Eigen::Index>(i));
      if (c.format == OutputFormat::csv)
        os << n << ',' << i << ",\"" << lay.indices[i].to_string() << "\"," << format_double(val) << '\n';
      else
        arr.push_back({{"n", n}, {"position", i}, {"alpha", lay.indices[i].exponents()}, {"value", val}});
    }
  }
  if (c.format == OutputFormat::json) os << arr.dump(2) << '\n';
  return os.str();
}

std::string run_kernel(const RunConfig& c, const Flags& f) {
  const int n = single_degree(c);
  const SimplexJacobiBasis basis(c.params(), n, BasisOptions{0, 4});
  const SimplexKernels kernels(basis);
  const Point x = require_point(f.x, c, "--x", 0);
  const Point y = require_point(f.y, c, "--y", 1);
  double value = 0.0;
  if (f.method == "basis_sum") {
    value = kernels.sum(n, x, y).value;
  } else if (f.method == "closed_form") {
    int vertex = 0;
    for (int i = 1; i <= c.d + 1; ++i)
      if ((simplex_vertex(c.d, i) - y).cwiseAbs().maxCoeff() == 0.0) vertex = i;
    if (vertex == 0) throw InvalidInput("closed_form needs --y at a vertex of the simplex");
    value = kernels.vertex_closed_form(n, x, vertex).value;
  } else if (f.method == "integral_form") {
    value = kernels.integral_form(n, x, y).kernel.value;
  } else {
    throw InvalidInput("unknown method '" + f.method + "'");
  }
  return scalar_output(c, "kernel", n, value);
}

std::string run_modified_kernel(const RunConfig& c, const Flags& f) {
  const int n = single_degree(c);
  const auto mass = c.mass_spec();
  if (!mass) throw InvalidInput("modified-kernel needs masses (--M or a config with masses)");
  const SimplexJacobiBasis basis(c.params(), n);
  UvarovEngine engine(basis, *mass);
  engine.extend_to(n);
  const Point x = require_point(f.x, c, "--x", 0);
  const Point y = require_point(f.y, c, "--y", 1);
  if (f.projection) return scalar_output(c, "projection_kernel", n, engine.projection_kernel(n, x, y));
  return scalar_output(c, "modified_kernel", n, engine.sum_kernel(n, x, y));
}

std::string run_christoffel(const RunConfig& c, const Flags& f) {
  const int n = single_degree(c);
  const Point x = require_point(f.x, c, "--x", 0);
  const auto mass = c.mass_spec();
  const SimplexJacobiBasis basis(c.params(), n, BasisOptions{mass && mass->has_derivatives() ? n : 0, 4});
  if (!mass) return scalar_output(c, "christoffel", n, SimplexKernels(basis).christoffel(n, x));
  UvarovEngine engine(basis, *mass);
  engine.extend_to(n);
  return scalar_output(c, "christoffel", n, engine.christoffel(n, x));
}

std::vector<Point> default_sweep_points(int d) {
  std::vector<Point> pts;
  pts.push_back(Point::Constant(d, 1.0 / (d + 1)));
  Point inner = Point::Constant(d, 0.5 / (d + 1));
  inner(0) += 0.25;
  pts.push_back(inner);
  Point edge = Point::Zero(d);
  edge(0) = 0.5;
  if (d > 1) edge(1) = 0.5;
  pts.push_back(edge);
  pts.push_back(simplex_vertex(d, 1));
  return pts;
}

std::string run_asymptotics(const RunConfig& c) {
  if (c.mass) throw InvalidInput("asymptotics uses vertex masses only (--M)");
  const double M = c.vertex_mass.value_or(1.0);
  const SimplexJacobiParams params = c.params();
  if (!params.is_symmetric()) throw InvalidInput("asymptotics needs symmetric kappa (--sigma)");
  const SimplexJacobiBasis basis(params, c.max_degree(), BasisOptions{0, 4});
  const SimplexKernels kernels(basis);
  const VertexMassKernels vm(kernels, VertexMassModel(c.d, params.sigma(), M));
  const std::vector<Point> pts = c.points.empty() ? default_sweep_points(c.d) : c.points;

  // One row per (n, point); slots are filled in parallel and emitted in order.
  std::vector<std::pair<int, std::size_t>> jobs;
  for (int n : c.degrees)
    for (std::size_t p = 0; p < pts.size(); ++p) jobs.emplace_back(n, p);
  KernelTable rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        KernelTable one = vm.limit_table({jobs[i].first}, {pts[jobs[i].second]});
        one.front().point_id = static_cast<int>(jobs[i].second);
        rows[i] = one.front();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(sweep_threads(), static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::ostringstream os;
  write_table(rows, c.format, os);
  return os.str();
}

std::string run_verify_command(const RunConfig& c, bool& all_pass) {
  const EquivalenceReport report = run_verify(c);
  all_pass = report.all_pass();
  std::ostringstream os;
  write_report(report, c.format, os);
  return os.str();
}

}  // namespace

unsigned sweep_threads() {
  const char* env = std::getenv("UVAROV_MVOP_THREADS");
  unsigned n = 0;
  if (env && *env) {
    try {
      n = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw InvalidInput("UVAROV_MVOP_THREADS must be a nonnegative integer");
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"Orthogonal polynomials and kernels on the simplex with added mass points"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "uvarov-mvop 0.1.0");
  Flags f;

  auto* dims_cmd = app.add_subcommand("dims", "Block size r_n and dim Pi_n");
  add_common(dims_cmd, f);
  dims_cmd->add_option("--n", f.n, "Degree");

  auto* basis_cmd = app.add_subcommand("basis", "Orthonormal basis block values");
  add_common(basis_cmd, f);
  basis_cmd->add_option("--n", f.n, "Degree");
  basis_cmd->add_option("--degrees", f.degrees, "Degrees")->delimiter(',');
  basis_cmd->add_option("--x", f.x, "Point (Cartesian or barycentric, comma separated)");

  auto* kernel_cmd = app.add_subcommand("kernel", "Reproducing kernel K_n(W; x, y)");
  add_common(kernel_cmd, f);
  kernel_cmd->add_option("--n", f.n, "Degree");
  kernel_cmd->add_option("--x", f.x, "First point");
  kernel_cmd->add_option("--y", f.y, "Second point");
  kernel_cmd->add_option("--method", f.method, "basis_sum, closed_form or integral_form");

  auto* mk_cmd = app.add_subcommand("modified-kernel", "Kernel K_n(nu; x, y) of the measure with masses");
  add_common(mk_cmd, f);
  mk_cmd->add_option("--n", f.n, "Degree");
  mk_cmd->add_option("--x", f.x, "First point");
  mk_cmd->add_option("--y", f.y, "Second point");
  mk_cmd->add_option("--M", f.M, "Equal mass at every vertex");
  mk_cmd->add_flag("--projection", f.projection, "Single-degree projection kernel P_n(nu; x, y)");

  auto* chr_cmd = app.add_subcommand("christoffel", "Christoffel function 1 / K_n(x, x)");
  add_common(chr_cmd, f);
  chr_cmd->add_option("--n", f.n, "Degree");
  chr_cmd->add_option("--x", f.x, "Point");
  chr_cmd->add_option("--M", f.M, "Equal mass at every vertex");

  auto* asym_cmd = app.add_subcommand("asymptotics", "Vertex-mass kernel sweep table");
  add_common(asym_cmd, f);
  asym_cmd->add_option("--M", f.M, "Equal mass at every vertex (default 1)");
  asym_cmd->add_option("--degrees", f.degrees, "Degrees")->delimiter(',');
  asym_cmd->add_option("--points", f.points, "Points, one flag per point");

  auto* verify_cmd = app.add_subcommand("verify", "Check every computation path against references");
  add_common(verify_cmd, f);
  verify_cmd->add_option("--M", f.M, "Equal mass at every vertex");
  verify_cmd->add_option("--n", f.n, "Highest degree");
  verify_cmd->add_option("--points", f.points, "Points, one flag per point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    RunConfig c = merge(f);
    std::string text;
    int code = 0;
    if (dims_cmd->parsed()) {
      text = run_dims(c);
    } else if (basis_cmd->parsed()) {
      text = run_basis(c, f);
    } else if (kernel_cmd->parsed()) {
      text = run_kernel(c, f);
    } else if (mk_cmd->parsed()) {
      text = run_modified_kernel(c, f);
    } else if (chr_cmd->parsed()) {
      text = run_christoffel(c, f);
    } else if (asym_cmd->parsed()) {
      text = run_asymptotics(c);
    } else if (verify_cmd->parsed()) {
      if (f.n) {
        c.degrees.clear();
        for (int n = 0; n <= *f.n; ++n) c.degrees.push_back(n);
      }
      bool pass = false;
      text = run_verify_command(c, pass);
      code = pass ? 0 : 2;
    }
    emit(text, c.out);
    return code;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace uvarov::cli
