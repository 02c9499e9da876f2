#pragma once

#include <vector>

namespace csq {

/// One-dimensional quadrature rule on a finite interval.
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes on [-1, 1].
/// Nodes are found by Newton iteration on the Legendre recurrence;
/// accurate to machine precision for n up to several thousand.
Rule1D gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [a, b].
Rule1D gauss_legendre(int n, double a, double b);

/// Uniform periodic rule (rectangle rule) on [0, 2*pi); exact for
/// trigonometric polynomials of degree < n.
Rule1D periodic_uniform(int n);

}  // namespace csq
