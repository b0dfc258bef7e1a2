#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "output.hpp"
#include "run_config.hpp"
#include "verify_suite.hpp"

using namespace uvarov;
using namespace uvarov::cli;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
int run(std::vector<std::string> args) {
  args.insert(args.begin(), "uvarov-mvop");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return dispatch(static_cast<int>(argv.size()), argv.data());
}
fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "uvarov_cli_test";
  fs::create_directories(dir);
  return dir / name;
}
}  // namespace

TEST_CASE("number and point parsing") {
  CHECK(parse_number("0.25") == 0.25);
  CHECK(parse_number("1/3") == doctest::Approx(1.0 / 3));
  CHECK(parse_number(" -2 ") == -2.0);
  CHECK_THROWS_AS(parse_number("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_number("abc"), InvalidInput);
  CHECK_THROWS_AS(parse_number("1.5x"), InvalidInput);

  const Point c = parse_point("0.2,0.5", 2);
  CHECK(c(0) == 0.2);
  CHECK(c(1) == 0.5);
  const Point b = parse_point("1/3,1/3,1/3", 2);
  CHECK(b.size() == 2);
  CHECK(b(0) == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(parse_point("0.5,0.5,0.5", 2), InvalidInput);
  CHECK_THROWS_AS(parse_point("0.5", 2), InvalidInput);
}

TEST_CASE("config from JSON") {
  using nlohmann::json;
  const auto c = config_from_json(json::parse(R"({"d": 2, "sigma": 0.5, "vertex_mass": 2.0, "max_degree": 3,
    "points": [[0.2, 0.5], ["1/3", "1/3", "1/3"]]})"));
  CHECK(c.degrees == std::vector<int>{0, 1, 2, 3});
  CHECK(c.points.size() == 2);
  REQUIRE(c.mass_spec());
  CHECK(c.mass_spec()->lambda.isApprox(2.0 * Eigen::MatrixXd::Identity(3, 3)));

  const auto m = config_from_json(json::parse(R"({"d": 2, "masses": {"points": [[0.2, 0.2], [0.2, 0.2]],
    "lambda": [[1, 0.1], [0.1, 1]], "deriv_orders": [[0, 0], [1, 0]]}, "degrees": [2]})"));
  REQUIRE(m.mass);
  CHECK(m.mass->has_derivatives());
  CHECK(m.max_degree() == 2);

  CHECK_THROWS_AS(config_from_json(json::parse(R"({"d": 2, "bogus": 1})")), InvalidInput);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"d": 2, "sigma": -0.7})")).validate(), InvalidInput);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"d": 2, "kappa": [0, 0]})")).validate(), InvalidInput);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"d": 2, "masses": {"points": [[0.2, 0.2]], "lambda": [-1]}})"))
                      .validate(),
                  InvalidInput);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), InvalidInput);
}

TEST_CASE("table output") {
  std::ostringstream empty;
  write_table({}, OutputFormat::csv, empty);
  CHECK(empty.str() == std::string(kKernelTableHeader) + "\n");

  KernelRow r;
  r.d = 2;
  r.sigma = 0.5;
  r.M = 1;
  r.n = 4;
  r.K_base = 1.0 / 3;
  r.K_nu = 0.1;
  r.diff = r.K_nu - r.K_base;
  r.ratio = 0.875;
  KernelRow s = r;
  s.ratio.reset();
  std::ostringstream js;
  write_table({r, s}, OutputFormat::json, js);
  const auto back = parse_table_json(js.str());
  REQUIRE(back.size() == 2);
  CHECK(back[0].K_base == r.K_base);
  CHECK(back[0].ratio == r.ratio);
  CHECK_FALSE(back[1].ratio.has_value());

  std::ostringstream csv;
  write_table({s}, OutputFormat::csv, csv);
  CHECK(csv.str().find(",,") != std::string::npos);
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("asymptotics rows are degree by point") {
  const auto out = scratch("asym.json");
  REQUIRE(run({"asymptotics", "--d", "2", "--sigma", "0.5", "--degrees", "4,8,16,32", "--format", "json", "--out",
               out.string()}) == 0);
  const auto rows = parse_table_json(slurp(out));
  REQUIRE(rows.size() == 16);
  CHECK(rows[0].n == 4);
  CHECK(rows[15].n == 32);
  CHECK(rows[15].point_id == 3);
  CHECK(rows[15].face_k == 0);
}

TEST_CASE("exit codes") {
  CHECK(run({"dims", "--d", "2", "--n", "3", "--out", scratch("dims.txt").string()}) == 0);
  CHECK(slurp(scratch("dims.txt")).rfind("r=4,total=10", 0) == 0);
  CHECK(run({"kernel", "--d", "2", "--n", "3", "--x", "2,0", "--y", "0,0"}) == 1);
  CHECK(run({"kernel", "--d", "2", "--n", "3", "--x", "0.1,0.1", "--y", "0,0", "--method", "magic"}) == 1);
  CHECK(run({"dims", "--d", "0", "--n", "3"}) == 1);
}

TEST_CASE("verify is deterministic and passes") {
  const RunConfig cfg = load_config(UVAROV_SMALL_CONFIG);
  const auto a = run_verify(cfg);
  const auto b = run_verify(cfg);
  CHECK(a.all_pass());
  std::ostringstream sa, sb;
  write_report(a, OutputFormat::csv, sa);
  write_report(b, OutputFormat::csv, sb);
  CHECK(sa.str() == sb.str());

  ::setenv("UVAROV_MVOP_THREADS", "3", 1);
  CHECK(sweep_threads() == 3);
  ::unsetenv("UVAROV_MVOP_THREADS");
  CHECK(sweep_threads() >= 1);
}
