#pragma once

#include <stdexcept>
#include <string>

namespace csq {

/// Base class for all library errors.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct invalid_point_error : error {
  explicit invalid_point_error(const std::string& msg) : error(msg) {}
};

struct chart_mismatch_error : error {
  explicit chart_mismatch_error(const std::string& msg) : error(msg) {}
};

struct degenerate_geodesic_error : error {
  explicit degenerate_geodesic_error(const std::string& msg) : error(msg) {}
};

struct degenerate_triangle_error : error {
  explicit degenerate_triangle_error(const std::string& msg) : error(msg) {}
};

struct invalid_parameter_error : error {
  explicit invalid_parameter_error(const std::string& msg) : error(msg) {}
};

struct frame_vanishing_error : error {
  explicit frame_vanishing_error(const std::string& msg) : error(msg) {}
};

struct degenerate_basis_error : error {
  explicit degenerate_basis_error(const std::string& msg) : error(msg) {}
};

struct infinite_diastasis_error : error {
  explicit infinite_diastasis_error(const std::string& msg) : error(msg) {}
};

struct arity_error : error {
  explicit arity_error(const std::string& msg) : error(msg) {}
};

struct not_a_root_error : error {
  explicit not_a_root_error(const std::string& msg) : error(msg) {}
};

struct invalid_input_error : error {
  explicit invalid_input_error(const std::string& msg) : error(msg) {}
};

/// Quadrature failed to converge within the refinement limit.
/// Carries the last successive-difference estimate.
struct accuracy_error : error {
  double residual;
  accuracy_error(const std::string& msg, double res) : error(msg), residual(res) {}
};

}  // namespace csq
