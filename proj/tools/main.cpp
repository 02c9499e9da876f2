#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "csq/harness.hpp"
#include "csq/jsonio.hpp"
#include "csq/multipoint.hpp"

namespace {

using csq::cplx;
using nlohmann::json;

const double kPi = std::acos(-1.0);

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const std::set<std::string>& known_scenarios() {
  static const std::set<std::string> names{
      "kernel_law",   "epsilon_constancy", "overcompleteness", "cauchy_first",
      "cauchy_second", "cauchy_third",     "mpoint_laws",      "phase_area",
      "polar_divisor", "curvature",        "plucker"};
  return names;
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw csq::invalid_input_error("cannot open config: " + path);
  json cfg;
  in >> cfg;  // throws json::parse_error on corruption
  return cfg;
}

void validate_config(const json& cfg) {
  if (!cfg.is_object()) throw csq::invalid_input_error("config: top level must be an object");
  if (cfg.value("schema", 0) != 1)
    throw csq::invalid_input_error("config: unsupported schema version");
  if (!cfg.contains("scenarios") || !cfg["scenarios"].is_array() || cfg["scenarios"].empty())
    throw csq::invalid_input_error("config: scenarios must be a nonempty array");
  for (const auto& s : cfg["scenarios"]) {
    if (!s.is_object() || !s.contains("name") || !s["name"].is_string())
      throw csq::invalid_input_error("config: each scenario needs a string name");
    if (!known_scenarios().count(s["name"].get<std::string>()))
      throw csq::invalid_input_error("config: unknown scenario '" +
                                     s["name"].get<std::string>() + "'");
    if (s.contains("params") && !s["params"].is_object())
      throw csq::invalid_input_error("config: params must be an object");
  }
  if (cfg.contains("quadrature") && !cfg["quadrature"].is_object())
    throw csq::invalid_input_error("config: quadrature must be an object");
}

csq::QuadratureSpec spec_from_config(const json& cfg) {
  csq::QuadratureSpec spec;
  if (cfg.contains("quadrature")) {
    const json& q = cfg["quadrature"];
    spec.nodes_u = q.value("nodes_u", spec.nodes_u);
    spec.nodes_v = q.value("nodes_v", spec.nodes_v);
    spec.nodes_radial = q.value("nodes_radial", spec.nodes_radial);
    spec.nodes_angular = q.value("nodes_angular", spec.nodes_angular);
    spec.refine_limit = q.value("refine_limit", spec.refine_limit);
  }
  spec.validate();
  return spec;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::string& format) {
  json cfg;
  csq::QuadratureSpec spec;
  try {
    cfg = load_config(config_path);
    validate_config(cfg);
    spec = spec_from_config(cfg);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  std::vector<csq::ScenarioReport> reports;
  bool all_passed = true;
  int index = 0;
  for (const auto& s : cfg["scenarios"]) {
    const std::string name = s["name"].get<std::string>();
    json params = s.value("params", json::object());
    if (!params.contains("seed") && cfg.contains("seed")) params["seed"] = cfg["seed"];
    csq::ScenarioReport rep;
    try {
      rep = csq::run_scenario(name, params, spec);
    } catch (const std::exception& e) {
      rep.scenario = name;
      rep.passed = false;
      rep.metrics["error"] = e.what();
    }
    all_passed = all_passed && rep.passed;
    reports.push_back(rep);

    char fname[64];
    std::snprintf(fname, sizeof(fname), "%02d_%s.json", index++, name.c_str());
    csq::write_atomic(std::filesystem::path(out_dir) / fname, json(rep).dump(2) + "\n");
    std::cout << (rep.passed ? "[ok]   " : "[FAIL] ") << name << "  cases=" << rep.cases
              << "  max_abs=" << fmt(rep.max_abs_err) << "  max_rel=" << fmt(rep.max_rel_err)
              << "  tol=" << fmt(rep.tolerance) << "\n";
  }

  if (format == "csv") {
    std::ostringstream csv;
    csv << "scenario,cases,max_abs_err,max_rel_err,tolerance,passed,seed\n";
    for (const auto& rep : reports)
      csv << rep.scenario << ',' << rep.cases << ',' << fmt(rep.max_abs_err) << ','
          << fmt(rep.max_rel_err) << ',' << fmt(rep.tolerance) << ','
          << (rep.passed ? "true" : "false") << ',' << rep.seed << "\n";
    csq::write_atomic(std::filesystem::path(out_dir) / "summary.csv", csv.str());
  } else {
    json summary;
    summary["config"] = cfg;
    summary["passed"] = all_passed;
    summary["reports"] = json(reports);
    csq::write_atomic(std::filesystem::path(out_dir) / "summary.json",
                      summary.dump(2) + "\n");
  }
  std::cout << (all_passed ? "all scenarios passed" : "scenario failures present") << "\n";
  return all_passed ? 0 : 1;
}

struct Axis {
  double lo = 0.0, hi = 0.0;
  int count = 1;
};

Axis parse_axis(const std::string& s) {
  Axis a;
  char extra;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d%c", &a.lo, &a.hi, &a.count, &extra) != 3 ||
      a.count < 1)
    throw csq::invalid_input_error("bad grid axis: " + s);
  return a;
}

std::pair<Axis, Axis> parse_grid(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw csq::invalid_input_error("bad grid: " + s);
  return {parse_axis(s.substr(0, comma)), parse_axis(s.substr(comma + 1))};
}

csq::ChartPoint parse_point(const std::string& s, int n) {
  if (s == "inf") {
    if (n != 1) throw csq::invalid_input_error("point at infinity needs the P^1 model");
    return csq::ChartPoint::infinity();
  }
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
  if (static_cast<int>(vals.size()) != 2 * n)
    throw csq::invalid_input_error("point needs " + std::to_string(2 * n) +
                                   " comma-separated reals: " + s);
  Eigen::VectorXcd w(n);
  for (int i = 0; i < n; ++i) w(i) = cplx(vals[2 * i], vals[2 * i + 1]);
  return csq::ChartPoint(w);
}

std::vector<csq::ChartPoint> parse_points(const std::string& s, int n) {
  std::vector<csq::ChartPoint> pts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ';'))
    if (!tok.empty()) pts.push_back(parse_point(tok, n));
  return pts;
}

csq::BundleModel parse_model(const std::string& s) {
  csq::BundleModel model;
  if (s.rfind("P1:", 0) == 0) {
    model.family = csq::Family::P1_FubiniStudy;
    model.n = 1;
    if (std::sscanf(s.c_str(), "P1:m=%d", &model.m) != 1)
      throw csq::invalid_input_error("bad model: " + s);
  } else if (s.rfind("PN:", 0) == 0) {
    model.family = csq::Family::PN_FubiniStudy;
    if (std::sscanf(s.c_str(), "PN:n=%d,m=%d", &model.n, &model.m) != 2)
      throw csq::invalid_input_error("bad model: " + s);
  } else {
    throw csq::invalid_input_error("bad model: " + s + " (use P1:m=K or PN:n=K,m=K)");
  }
  model.validate();
  return model;
}

csq::ChartPoint rotated(const csq::ChartPoint& p, double theta) {
  if (p.at_infinity) return p;
  csq::ChartPoint q = p;
  q.w *= std::polar(1.0, theta);
  return q;
}

int cmd_table(const std::string& quantity, const std::string& model_str,
              const std::string& grid_str, const std::string& point_str,
              const std::string& points_str, int rotations, const std::string& out_path) {
  const csq::BundleModel model = parse_model(model_str);
  const csq::OrthonormalBasis basis = csq::build_onb(model);
  std::ostringstream csv;

  if (quantity == "psi" || quantity == "kernel") {
    if (grid_str.empty() || point_str.empty())
      throw csq::invalid_input_error("table: psi/kernel need --grid and --point");
    if (model.n != 1)
      throw csq::invalid_input_error("table: grids scan the one-dimensional chart");
    const auto [re_ax, im_ax] = parse_grid(grid_str);
    const csq::ChartPoint x = parse_point(point_str, model.n);
    csv << (quantity == "psi" ? "y_re,y_im,psi\n" : "y_re,y_im,re,im,modulus\n");
    for (int i = 0; i < re_ax.count; ++i)
      for (int j = 0; j < im_ax.count; ++j) {
        const double yr =
            re_ax.count == 1 ? re_ax.lo
                             : re_ax.lo + (re_ax.hi - re_ax.lo) * i / (re_ax.count - 1);
        const double yi =
            im_ax.count == 1 ? im_ax.lo
                             : im_ax.lo + (im_ax.hi - im_ax.lo) * j / (im_ax.count - 1);
        const csq::ChartPoint y{cplx(yr, yi)};
        if (quantity == "psi") {
          csv << fmt(yr) << ',' << fmt(yi) << ',' << fmt(two_point_modulus_sq(basis, x, y))
              << "\n";
        } else {
          const cplx k = coherent_kernel(basis, y, x);
          csv << fmt(yr) << ',' << fmt(yi) << ',' << fmt(k.real()) << ',' << fmt(k.imag())
              << ',' << fmt(std::abs(k)) << "\n";
        }
      }
  } else if (quantity == "mpoint") {
    const auto pts = parse_points(points_str, model.n);
    if (pts.size() < 2) throw csq::invalid_input_error("table: mpoint needs --points (>= 2)");
    csv << "theta,re,im,modulus,phase,degenerate\n";
    for (int k = 0; k < std::max(rotations, 1); ++k) {
      const double theta = 2.0 * kPi * k / std::max(rotations, 1);
      std::vector<csq::ChartPoint> rp;
      for (const auto& p : pts) rp.push_back(rotated(p, theta));
      const csq::MultiPointResult r = cyclic_m_point(basis, rp);
      csv << fmt(theta) << ',' << fmt(r.value.real()) << ',' << fmt(r.value.imag()) << ','
          << fmt(r.modulus) << ',' << fmt(r.phase) << ',' << (r.degenerate ? 1 : 0) << "\n";
    }
  } else if (quantity == "decomp") {
    const auto pts = parse_points(points_str, model.n);
    if (pts.size() != 3) throw csq::invalid_input_error("table: decomp needs exactly 3 points");
    csv << "theta,a,b,c,phi,rho\n";
    for (int k = 0; k < std::max(rotations, 1); ++k) {
      const double theta = 2.0 * kPi * k / std::max(rotations, 1);
      const csq::TriangleDecomposition d = three_point_decompose(
          basis, rotated(pts[0], theta), rotated(pts[1], theta), rotated(pts[2], theta));
      csv << fmt(theta) << ',' << fmt(d.a) << ',' << fmt(d.b) << ',' << fmt(d.c) << ','
          << fmt(d.phi) << ',' << fmt(d.rho) << "\n";
    }
  } else {
    throw csq::invalid_input_error("table: unknown quantity '" + quantity + "'");
  }

  csq::write_atomic(out_path, csv.str());
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherent-state quantization verification toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "reports", format = "json";
  auto* run = app.add_subcommand("run", "run verification scenarios from a config");
  run->add_option("--config", config_path, "JSON scenario config")->required();
  run->add_option("--out", out_dir, "output directory for reports");
  run->add_option("--format", format, "summary format")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string quantity, model_str = "P1:m=1", grid_str, point_str, points_str,
              table_out = "table.csv";
  int rotations = 1;
  auto* table = app.add_subcommand("table", "tabulate a quantity over a grid or a tuple");
  table->add_option("--quantity", quantity, "psi | kernel | mpoint | decomp")->required();
  table->add_option("--model", model_str, "P1:m=K or PN:n=K,m=K");
  table->add_option("--grid", grid_str, "re0:re1:count,im0:im1:count");
  table->add_option("--point", point_str, "fixed point re,im (or 'inf')");
  table->add_option("--points", points_str, "tuple re,im;re,im;...");
  table->add_option("--rotations", rotations, "rows under simultaneous chart rotation");
  table->add_option("--out", table_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, format);
    if (table->parsed())
      return cmd_table(quantity, model_str, grid_str, point_str, points_str, rotations,
                       table_out);
  } catch (const csq::invalid_input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
