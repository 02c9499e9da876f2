#include "csq/quadrature.hpp"

#include <cmath>

#include "csq/errors.hpp"

namespace csq {

Rule1D gauss_legendre(int n) {
  if (n < 1) throw invalid_parameter_error("gauss_legendre: need at least one node");
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = std::acos(-1.0);
  // Roots come in symmetric pairs; solve for the non-negative half.
  for (int k = 0; k < (n + 1) / 2; ++k) {
    double x = std::cos(pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_n(x) and P'_n(x).
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // One recurrence pass at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - k] = x;
    rule.weights[n - 1 - k] = w;
    rule.nodes[k] = -x;
    rule.weights[k] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;  // exact midpoint for odd n
  return rule;
}

Rule1D gauss_legendre(int n, double a, double b) {
  Rule1D rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

Rule1D periodic_uniform(int n) {
  if (n < 1) throw invalid_parameter_error("periodic_uniform: need at least one node");
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.assign(n, 2.0 * std::acos(-1.0) / n);
  for (int i = 0; i < n; ++i) rule.nodes[i] = 2.0 * std::acos(-1.0) * i / n;
  return rule;
}

}  // namespace csq
