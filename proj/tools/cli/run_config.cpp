#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "uvarov/errors.hpp"

namespace uvarov::cli {

using nlohmann::json;

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw InvalidInput("unknown format '" + text + "' (expected csv or json)");
}

double parse_number(const std::string& raw) {
  std::string text = raw;
  text.erase(0, text.find_first_not_of(" \t"));
  text.erase(text.find_last_not_of(" \t") + 1);
  auto parse_plain = [&](const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw InvalidInput("cannot parse number '" + raw + "'");
    return v;
  };
  const auto slash = text.find('/');
  double v = 0.0;
  if (slash == std::string::npos) {
    v = parse_plain(text);
  } else {
    const double den = parse_plain(text.substr(slash + 1));
    if (den == 0.0) throw InvalidInput("zero denominator in '" + raw + "'");
    v = parse_plain(text.substr(0, slash)) / den;
  }
  if (!std::isfinite(v)) throw InvalidInput("non-finite number '" + raw + "'");
  return v;
}

Point point_from_values(const std::vector<double>& values, int d) {
  const auto n = static_cast<int>(values.size());
  if (n == d) return Eigen::Map<const Eigen::VectorXd>(values.data(), d);
  if (n == d + 1) {
    double s = 0.0;
    for (double v : values) s += v;
    if (std::abs(s - 1.0) > 1e-12) throw InvalidInput("barycentric coordinates must sum to 1");
    return Eigen::Map<const Eigen::VectorXd>(values.data(), d);
  }
  throw InvalidInput("point needs " + std::to_string(d) + " Cartesian or " + std::to_string(d + 1) +
                     " barycentric coordinates, got " + std::to_string(n));
}

Point parse_point(const std::string& text, int d) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(parse_number(item));
  return point_from_values(values, d);
}

SimplexJacobiParams RunConfig::params() const {
  if (kappa) return SimplexJacobiParams(d, *kappa);
  return SimplexJacobiParams::symmetric(d, sigma.value_or(0.0));
}

std::optional<MassSpec> RunConfig::mass_spec() const {
  if (mass) return mass;
  if (vertex_mass) {
    std::vector<Point> v;
    for (int i = 0; i <= d; ++i) {
      Point p = Point::Zero(d);
      if (i < d) p(i) = 1.0;
      v.push_back(p);
    }
    return MassSpec::diagonal(std::move(v), std::vector<double>(static_cast<std::size_t>(d) + 1, *vertex_mass));
  }
  return std::nullopt;
}

int RunConfig::max_degree() const {
  if (degrees.empty()) throw InvalidInput("no degree given");
  int m = 0;
  for (int n : degrees) m = std::max(m, n);
  return m;
}

void RunConfig::validate() const {
  if (d < 1) throw InvalidInput("dimension d must be at least 1");
  if (sigma && kappa) throw InvalidInput("give either sigma or kappa, not both");
  if (kappa && static_cast<int>(kappa->size()) != d + 1) throw InvalidInput("kappa needs d + 1 entries");
  for (int n : degrees)
    if (n < 0) throw InvalidInput("degrees must be nonnegative");
  for (const auto& p : points) {
    if (p.size() != d) throw InvalidInput("point dimension mismatch");
    check_in_simplex(p, d);
  }
  if (vertex_mass && !(*vertex_mass >= 0.0)) throw InvalidInput("vertex mass must be >= 0");
  if (!(tolerance > 0.0)) throw InvalidInput("tolerance must be positive");
  params();
  if (auto m = mass_spec()) m->validate(d);
}

namespace {

double number(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_number(v.get<std::string>());
  throw InvalidInput("expected a number, got " + v.dump());
}

std::vector<double> numbers(const json& v) {
  if (!v.is_array()) throw InvalidInput("expected an array, got " + v.dump());
  std::vector<double> out;
  for (const auto& e : v) out.push_back(number(e));
  return out;
}

Point point(const json& v, int d) {
  if (v.is_string()) return parse_point(v.get<std::string>(), d);
  return point_from_values(numbers(v), d);
}

MassSpec masses(const json& j, int d) {
  MassSpec m;
  for (const auto& p : j.at("points")) m.points.push_back(point(p, d));
  const auto N = static_cast<Eigen::Index>(m.points.size());
  const json& lam = j.at("lambda");
  if (lam.is_number() || lam.is_string()) {
    m.lambda = Eigen::MatrixXd::Identity(N, N) * number(lam);
  } else if (!lam.empty() && lam[0].is_array()) {
    if (static_cast<Eigen::Index>(lam.size()) != N) throw InvalidInput("lambda matrix needs one row per point");
    m.lambda.resize(N, N);
    for (Eigen::Index i = 0; i < N; ++i) {
      const auto row = numbers(lam[static_cast<std::size_t>(i)]);
      if (static_cast<Eigen::Index>(row.size()) != N) throw InvalidInput("lambda matrix must be square");
      for (Eigen::Index k = 0; k < N; ++k) m.lambda(i, k) = row[static_cast<std::size_t>(k)];
    }
  } else {
    const auto diag = numbers(lam);
    if (static_cast<Eigen::Index>(diag.size()) != N) throw InvalidInput("lambda list needs one weight per point");
    m.lambda = Eigen::MatrixXd::Zero(N, N);
    for (Eigen::Index i = 0; i < N; ++i) m.lambda(i, i) = diag[static_cast<std::size_t>(i)];
  }
  if (j.contains("deriv_orders")) {
    for (const auto& a : j.at("deriv_orders")) m.deriv_orders.emplace_back(a.get<std::vector<int>>());
  }
  return m;
}

}  // namespace

RunConfig config_from_json(const json& j) {
  static const std::vector<std::string> known = {"d", "sigma", "kappa", "masses", "vertex_mass", "degrees",
                                                 "max_degree", "points", "tolerance", "out", "format"};
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw InvalidInput("unknown config key '" + key + "'");

  try {
    RunConfig c;
    if (j.contains("d")) c.d = j.at("d").get<int>();
    if (c.d < 1) throw InvalidInput("dimension d must be at least 1");
    if (j.contains("sigma")) c.sigma = number(j.at("sigma"));
    if (j.contains("kappa")) c.kappa = numbers(j.at("kappa"));
    if (j.contains("masses")) c.mass = masses(j.at("masses"), c.d);
    if (j.contains("vertex_mass")) c.vertex_mass = number(j.at("vertex_mass"));
    if (j.contains("degrees")) c.degrees = j.at("degrees").get<std::vector<int>>();
    if (j.contains("max_degree")) {
      const int top = j.at("max_degree").get<int>();
      c.degrees.clear();
      for (int n = 0; n <= top; ++n) c.degrees.push_back(n);
    }
    if (j.contains("points"))
      for (const auto& p : j.at("points")) c.points.push_back(point(p, c.d));
    if (j.contains("tolerance")) c.tolerance = number(j.at("tolerance"));
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("format")) c.format = parse_format(j.at("format").get<std::string>());
    return c;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

}  // namespace uvarov::cli
