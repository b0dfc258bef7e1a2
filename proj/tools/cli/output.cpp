#include "output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace uvarov::cli {

using nlohmann::json;

const char* const kKernelTableHeader =
    "d,sigma,M,n,point_id,face_k,K_base,K_nu,diff,rhs_model,ratio,binom_scaled_base,binom_scaled_nu";

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

json row_json(const KernelRow& r) {
  json j;
  j["d"] = r.d;
  j["sigma"] = r.sigma;
  j["M"] = r.M;
  j["n"] = r.n;
  j["point_id"] = r.point_id;
  j["face_k"] = r.face_k;
  j["K_base"] = r.K_base;
  j["K_nu"] = r.K_nu;
  j["diff"] = r.diff;
  j["rhs_model"] = r.rhs_model;
  j["ratio"] = r.ratio ? json(*r.ratio) : json(nullptr);
  j["binom_scaled_base"] = r.binom_scaled_base;
  j["binom_scaled_nu"] = r.binom_scaled_nu;
  return j;
}

}  // namespace

void write_table(const KernelTable& rows, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::json) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(row_json(r));
    out << arr.dump(2) << '\n';
    return;
  }
  out << kKernelTableHeader << '\n';
  for (const auto& r : rows) {
    out << r.d << ',' << format_double(r.sigma) << ',' << format_double(r.M) << ',' << r.n << ',' << r.point_id << ','
        << r.face_k << ',' << format_double(r.K_base) << ',' << format_double(r.K_nu) << ',' << format_double(r.diff)
        << ',' << format_double(r.rhs_model) << ',' << (r.ratio ? format_double(*r.ratio) : std::string()) << ','
        << format_double(r.binom_scaled_base) << ',' << format_double(r.binom_scaled_nu) << '\n';
  }
}

KernelTable parse_table_json(const std::string& text) {
  const json arr = json::parse(text);
  KernelTable rows;
  for (const auto& j : arr) {
    KernelRow r;
    r.d = j.at("d").get<int>();
    r.sigma = j.at("sigma").get<double>();
    r.M = j.at("M").get<double>();
    r.n = j.at("n").get<int>();
    r.point_id = j.at("point_id").get<int>();
    r.face_k = j.at("face_k").get<int>();
    r.K_base = j.at("K_base").get<double>();
    r.K_nu = j.at("K_nu").get<double>();
    r.diff = j.at("diff").get<double>();
    r.rhs_model = j.at("rhs_model").get<double>();
    if (!j.at("ratio").is_null()) r.ratio = j.at("ratio").get<double>();
    r.binom_scaled_base = j.at("binom_scaled_base").get<double>();
    r.binom_scaled_nu = j.at("binom_scaled_nu").get<double>();
    rows.push_back(r);
  }
  return rows;
}

void write_report(const EquivalenceReport& report, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::json) {
    json arr = json::array();
    for (const auto& e : report.entries) {
      json j{{"check", e.check},         {"n", e.n},
             {"max_abs_dev", e.max_abs_dev}, {"tolerance", e.tolerance},
             {"status", e.pass ? "pass" : "fail"}};
      if (!e.diagnostic.empty()) j["diagnostic"] = e.diagnostic;
      arr.push_back(j);
    }
    out << arr.dump(2) << '\n';
    return;
  }
  out << "check,n,max_abs_dev,tolerance,status\n";
  for (const auto& e : report.entries)
    out << e.check << ',' << e.n << ',' << format_double(e.max_abs_dev) << ',' << format_double(e.tolerance) << ','
        << (e.pass ? "pass" : "fail") << '\n';
}

void emit(const std::string& content, const std::string& path) {
  if (path.empty()) {
    std::cout << content << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write '" + path + "'");
  f << content;
  if (!f) throw InvalidInput("failed writing '" + path + "'");
}

}  // namespace uvarov::cli
