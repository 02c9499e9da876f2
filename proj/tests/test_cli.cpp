#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CSQ_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("csq_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("run succeeds on the smoke config and writes reports") {
  const fs::path out = fresh_dir("run_ok");
  const std::string cfg = std::string(CSQ_FIXTURE_DIR) + "/smoke_run.json";
  CHECK(run_cli("run --config " + cfg + " --out " + out.string()) == 0);
  const json summary = json::parse(slurp(out / "summary.json"));
  CHECK(summary["passed"].get<bool>());
  CHECK(summary["reports"].size() == 3);
  CHECK(fs::exists(out / "00_plucker.json"));
  const json rep = json::parse(slurp(out / "00_plucker.json"));
  CHECK(rep["passed"].get<bool>());
  fs::remove_all(out);
}

TEST_CASE("run writes a csv summary on request") {
  const fs::path out = fresh_dir("run_csv");
  const std::string cfg = std::string(CSQ_FIXTURE_DIR) + "/smoke_run.json";
  CHECK(run_cli("run --config " + cfg + " --out " + out.string() + " --format csv") == 0);
  const std::string csv = slurp(out / "summary.csv");
  CHECK(csv.rfind("scenario,cases,max_abs_err", 0) == 0);
  CHECK(csv.find("plucker") != std::string::npos);
  fs::remove_all(out);
}

TEST_CASE("corrupted configs exit with status 2") {
  const fs::path dir = fresh_dir("bad_cfg");
  const fs::path cfg = dir / "broken.json";
  std::ofstream(cfg) << "{ this is not json";
  CHECK(run_cli("run --config " + cfg.string() + " --out " + (dir / "out").string()) == 2);
  fs::remove_all(dir);
}

TEST_CASE("unknown scenarios are config errors") {
  const fs::path dir = fresh_dir("bad_name");
  const fs::path cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({"schema": 1, "scenarios": [{"name": "bogus"}]})";
  CHECK(run_cli("run --config " + cfg.string() + " --out " + (dir / "out").string()) == 2);
  fs::remove_all(dir);
}

TEST_CASE("missing required flags exit with status 2") {
  CHECK(run_cli("run") == 2);
}

TEST_CASE("scenario failures exit with status 1") {
  const fs::path dir = fresh_dir("fail");
  const fs::path cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({"schema": 1, "scenarios": [
    {"name": "plucker", "params": {"pairs": 4, "tolerance": 1e-30, "seed": 3}}]})";
  CHECK(run_cli("run --config " + cfg.string() + " --out " + (dir / "out").string()) == 1);
  const json summary = json::parse(slurp(dir / "out" / "summary.json"));
  CHECK_FALSE(summary["passed"].get<bool>());
  fs::remove_all(dir);
}

TEST_CASE("psi tables carry the closed-form values") {
  const fs::path dir = fresh_dir("table_psi");
  const fs::path out = dir / "psi.csv";
  CHECK(run_cli("table --quantity psi --model P1:m=2 --point 0,0 --grid 1:1:1,0:0:1 --out " +
                out.string()) == 0);
  std::ifstream in(out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "y_re,y_im,psi");
  // psi(0, 1) = 1/(1+1)^m = 1/4 for m = 2
  const double psi = std::stod(row.substr(row.rfind(',') + 1));
  CHECK(std::abs(psi - 0.25) < 1e-10);
  fs::remove_all(dir);
}

TEST_CASE("decomp tables are rotation invariant") {
  const fs::path dir = fresh_dir("table_dec");
  const fs::path out = dir / "dec.csv";
  CHECK(run_cli("table --quantity decomp --model P1:m=1 --points '0,0;1,0;0,1' "
                "--rotations 3 --out " +
                out.string()) == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "theta,a,b,c,phi,rho");
  double first_phi = 0.0;
  int rows = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> vals;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    REQUIRE(vals.size() == 6);
    if (rows == 0) first_phi = vals[4];
    CHECK(std::abs(vals[4] - first_phi) < 1e-9);
    ++rows;
  }
  CHECK(rows == 3);
  const double quarter_pi = std::acos(-1.0) / 4.0;
  CHECK(std::abs(first_phi - quarter_pi) < 1e-9);
  fs::remove_all(dir);
}

TEST_CASE("malformed table flags exit with status 2") {
  CHECK(run_cli("table --quantity nope --out /tmp/na.csv") == 2);
  CHECK(run_cli("table --quantity psi --model P1:m=1 --out /tmp/na.csv") == 2);
  CHECK(run_cli("table --quantity psi --model P9:m=1 --grid 0:1:2,0:1:2 --point 0,0 "
                "--out /tmp/na.csv") == 2);
}
