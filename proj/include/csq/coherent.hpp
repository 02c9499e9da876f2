#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "csq/bundles.hpp"
#include "csq/projective.hpp"

namespace csq {

/// Local frame (nonvanishing holomorphic section) used to lift chart
/// points into the bundle. MonomialPower k is the section with
/// representing function z^k in the standard chart (zeta^{m-k} in the
/// second chart of P^1); k = 0 is the constant frame. Custom frames are
/// given by their representing function on the standard chart.
struct Frame {
  enum class Kind { MonomialPower, SectionIndex, Custom };
  Kind kind = Kind::MonomialPower;
  int index = 0;
  std::function<cplx(const ChartPoint&)> fn;

  static Frame constant_one() { return Frame{}; }
  static Frame monomial(int k) { return Frame{Kind::MonomialPower, k, nullptr}; }
  static Frame section(int j) { return Frame{Kind::SectionIndex, j, nullptr}; }
  static Frame custom(std::function<cplx(const ChartPoint&)> f) {
    return Frame{Kind::Custom, 0, std::move(f)};
  }
};

/// Orthonormal basis of the space of holomorphic sections, stored as
/// coefficients over the monomial frame: section j has representing
/// function sum_k coeffs(k, j) * mono_k(w), where mono_k enumerates the
/// monomials w^alpha with |alpha| <= m (plain powers z^k on P^1).
/// gram_residual is the certified max deviation |<s_i, s_j> - delta_ij|
/// re-measured at a refined quadrature (0 for the closed-form family).
struct OrthonormalBasis {
  BundleModel model;
  Eigen::MatrixXcd coeffs;
  std::vector<Eigen::VectorXi> exponents;  // exponents[k] = alpha for mono_k
  double gram_residual = 0.0;

  int section_count() const { return static_cast<int>(coeffs.cols()); }

  /// Representing function of monomial k at x (uses the second chart for
  /// P^1 points at infinity).
  cplx monomial_value(int k, const ChartPoint& x) const;

  /// Representing function of section j at x.
  cplx section_value(int j, const ChartPoint& x) const;

  /// Section j as a chart function.
  ChartFunction section(int j) const;

  /// Representing function of the frame at x; throws frame_vanishing_error
  /// if it vanishes there.
  cplx frame_value(const Frame& frame, const ChartPoint& x) const;

  /// A frame guaranteed not to vanish at x (constant frame at finite
  /// points, top monomial at infinity).
  Frame natural_frame(const ChartPoint& x) const;
};

/// Coherent vector e_q for the lift q = scale * frame(x), expanded over
/// the basis sections: e_q = sum_j coeffs[j] s_j with
/// coeffs[j] = conj(qhat(s_j)). Rescaling q by c divides coeffs by conj(c).
struct CoherentVector {
  Eigen::VectorXcd coeffs;
  ChartPoint x;
  cplx scale{1.0, 0.0};
};

/// Builds the orthonormal basis of holomorphic sections for the model:
/// monomial Gram by chart quadrature for the P1 family, closed-form Gram
/// for the PN family, followed by a Cholesky orthonormalization (pure
/// column scaling when the Gram is diagonal). Throws degenerate_basis_error
/// if the Gram is not positive definite.
OrthonormalBasis build_onb(const BundleModel& model, const QuadratureSpec& spec = {});

/// Coherent vector of the lift q = scale * frame(x).
CoherentVector coherent_vector(const OrthonormalBasis& basis, const ChartPoint& x,
                               const Frame& frame = Frame::constant_one(),
                               cplx scale = cplx(1.0, 0.0));

/// Coherent kernel <e_{s(x)}, e_{s(y)}> for the common frame s; equals
/// sum_j shat_j(x) conj(shat_j(y)) / (fhat(x) conj(fhat(y))). Holomorphic
/// in x, antiholomorphic in y; Hermitian under argument swap.
cplx coherent_kernel(const OrthonormalBasis& basis, const ChartPoint& x, const ChartPoint& y,
                     const Frame& frame = Frame::constant_one());

/// Coherent-state embedding x -> (shat_0(x) : ... : shat_N(x)) into CP^N.
ProjectivePoint coherent_embedding(const OrthonormalBasis& basis, const ChartPoint& x);

/// Rawnsley epsilon function eps(x) = hhat(x) sum_j |shat_j(x)|^2;
/// constant (= dim / vol) for these models.
double epsilon_function(const OrthonormalBasis& basis, const ChartPoint& x);

/// Max |G_ij - delta_ij| where G_ij = int <s_i, P_x s_j> eps(x) Omega(x)
/// reconstructs the Gram from the coherent projectors P_x. Quantifies the
/// overcompleteness identity; P1 family only (needs quadrature).
double overcompleteness_residual(const OrthonormalBasis& basis, const QuadratureSpec& spec = {});

}  // namespace csq
