#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "csq/jsonio.hpp"

using namespace csq;
using nlohmann::json;

TEST_CASE("complex round trip") {
  const cplx z{1.5, -2.25};
  CHECK(complex_from_json(complex_to_json(z)) == z);
  CHECK_THROWS_AS(complex_from_json(json::array({1.0})), invalid_input_error);
  CHECK_THROWS_AS(complex_from_json(json("nope")), invalid_input_error);
}

TEST_CASE("chart point round trip") {
  const ChartPoint p{cplx(0.5, 0.25)};
  const ChartPoint back = chart_point_from_json(chart_point_to_json(p));
  CHECK_FALSE(back.at_infinity);
  CHECK(back.z() == p.z());

  const ChartPoint inf = chart_point_from_json(chart_point_to_json(ChartPoint::infinity()));
  CHECK(inf.at_infinity);

  Eigen::VectorXcd w(2);
  w << cplx(1, 2), cplx(-3, 4);
  const ChartPoint q = chart_point_from_json(chart_point_to_json(ChartPoint(w)));
  CHECK(q.dim() == 2);
  CHECK(q.w(1) == cplx(-3, 4));
}

TEST_CASE("divisor round trip") {
  Divisor d;
  d.points.push_back({ChartPoint(cplx(-0.5, -0.5)), 2});
  d.points.push_back({ChartPoint::infinity(), 1});
  const Divisor back = divisor_from_json(divisor_to_json(d));
  REQUIRE(back.points.size() == 2);
  CHECK(back.points[0].multiplicity == 2);
  CHECK(back.points[1].point.at_infinity);
  CHECK(back.degree() == 3);
}

TEST_CASE("basis round trip preserves coefficients") {
  const OrthonormalBasis b = build_onb({Family::P1_FubiniStudy, 1, 2});
  const OrthonormalBasis back = basis_from_json(basis_to_json(b));
  CHECK(back.model.m == 2);
  CHECK(back.gram_residual == b.gram_residual);
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) CHECK(back.coeffs(k, j) == b.coeffs(k, j));
}

TEST_CASE("atomic writes land complete") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "csq_jsonio_test";
  fs::create_directories(dir);
  const fs::path target = dir / "out.txt";
  write_atomic(target, "first\n");
  write_atomic(target, "second\n");
  std::ifstream in(target);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "second\n");
  fs::remove_all(dir);
}
