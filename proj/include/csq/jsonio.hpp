#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "csq/coherent.hpp"
#include "csq/divisors.hpp"

namespace csq {

/// Complex numbers serialize as [re, im].
nlohmann::json complex_to_json(const cplx& z);
cplx complex_from_json(const nlohmann::json& j);

/// Chart points serialize as [re, im], "inf", or arrays of [re, im].
nlohmann::json chart_point_to_json(const ChartPoint& p);
ChartPoint chart_point_from_json(const nlohmann::json& j);

nlohmann::json divisor_to_json(const Divisor& d);
Divisor divisor_from_json(const nlohmann::json& j);

/// Basis fixture: model, coefficients over the monomial frame
/// (coefficients[j][k] = coefficient of monomial k in section j), and the
/// certified gram_residual.
nlohmann::json basis_to_json(const OrthonormalBasis& b);
OrthonormalBasis basis_from_json(const nlohmann::json& j);

/// Writes content to path atomically (temp file in the same directory,
/// then rename).
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace csq
