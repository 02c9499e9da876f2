#include "csq/jsonio.hpp"

#include <cstdio>
#include <fstream>
#include <random>

namespace csq {

using nlohmann::json;

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw invalid_input_error("complex_from_json: expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json chart_point_to_json(const ChartPoint& p) {
  if (p.at_infinity) return "inf";
  if (p.dim() == 1) return complex_to_json(p.z());
  json arr = json::array();
  for (int i = 0; i < p.dim(); ++i) arr.push_back(complex_to_json(p.w(i)));
  return arr;
}

ChartPoint chart_point_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return ChartPoint::infinity();
    throw invalid_input_error("chart_point_from_json: unknown string tag");
  }
  if (!j.is_array() || j.empty()) throw invalid_input_error("chart_point_from_json: bad shape");
  if (j[0].is_number()) return ChartPoint(complex_from_json(j));
  Eigen::VectorXcd w(j.size());
  for (size_t i = 0; i < j.size(); ++i) w(i) = complex_from_json(j[i]);
  return ChartPoint(w);
}

json divisor_to_json(const Divisor& d) {
  json arr = json::array();
  for (const auto& p : d.points)
    arr.push_back({{"point", chart_point_to_json(p.point)}, {"multiplicity", p.multiplicity}});
  return {{"points", arr}, {"degree", d.degree()}};
}

Divisor divisor_from_json(const json& j) {
  Divisor d;
  for (const auto& e : j.at("points"))
    d.points.push_back({chart_point_from_json(e.at("point")), e.at("multiplicity").get<int>()});
  return d;
}

json basis_to_json(const OrthonormalBasis& b) {
  json model = {{"family", b.model.family == Family::P1_FubiniStudy ? "P1" : "PN"},
                {"n", b.model.n},
                {"m", b.model.m}};
  json coeff = json::array();
  for (int j = 0; j < b.coeffs.cols(); ++j) {
    json col = json::array();
    for (int k = 0; k < b.coeffs.rows(); ++k) col.push_back(complex_to_json(b.coeffs(k, j)));
    coeff.push_back(col);
  }
  return {{"model", model}, {"coefficients", coeff}, {"gram_residual", b.gram_residual}};
}

OrthonormalBasis basis_from_json(const json& j) {
  const json& mj = j.at("model");
  BundleModel model;
  const std::string fam = mj.at("family").get<std::string>();
  if (fam == "P1")
    model.family = Family::P1_FubiniStudy;
  else if (fam == "PN")
    model.family = Family::PN_FubiniStudy;
  else
    throw invalid_input_error("basis_from_json: unknown family tag");
  model.n = mj.at("n").get<int>();
  model.m = mj.at("m").get<int>();
  OrthonormalBasis b = build_onb(model);  // rebuild exponents and certify shape
  const json& coeff = j.at("coefficients");
  if (static_cast<int>(coeff.size()) != b.section_count())
    throw invalid_input_error("basis_from_json: coefficient count mismatch");
  for (int jj = 0; jj < b.section_count(); ++jj)
    for (int k = 0; k < b.section_count(); ++k)
      b.coeffs(k, jj) = complex_from_json(coeff[jj][k]);
  b.gram_residual = j.at("gram_residual").get<double>();
  return b;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
  fs::create_directories(dir);
  std::random_device rd;
  const fs::path tmp = dir / (path.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw invalid_input_error("write_atomic: cannot open " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw invalid_input_error("write_atomic: short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw invalid_input_error("write_atomic: rename failed for " + path.string());
  }
}

}  // namespace csq
