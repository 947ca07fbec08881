#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "special.hpp"

namespace dnaga {

// Physicists' Gauss-Hermite rule: integrates f(y) e^{-y^2} dy exactly for
// polynomials of degree <= 2*order-1.
struct GaussHermiteRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// Implicit-QL eigensolver for a symmetric tridiagonal matrix, tracking only
// the first component of each eigenvector (all Golub-Welsch needs).
inline void tridiag_eig_first_row(std::vector<double>& d, std::vector<double>& e,
                                  std::vector<double>& z) {
  int n = static_cast<int>(d.size());
  z.assign(n, 0.0);
  if (n == 0) return;
  z[0] = 1.0;
  if (n == 1) return;
  e.push_back(0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw NumericalError("gauss_hermite: eigensolver failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::fabs(r) : -std::fabs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          f = z[i + 1];
          z[i + 1] = s * z[i] + c * f;
          z[i] = c * z[i] - s * f;
        }
        if (r == 0.0 && m - 1 >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace detail

inline GaussHermiteRule gauss_hermite(int order) {
  if (order < 1 || order > 512) throw std::invalid_argument("gauss_hermite: order out of range [1, 512]");
  // Jacobi matrix for Hermite: zero diagonal, offdiag sqrt(i/2)
  std::vector<double> d(order, 0.0), e(order > 1 ? order - 1 : 0), z;
  for (int i = 1; i < order; ++i) e[i - 1] = std::sqrt(0.5 * i);
  detail::tridiag_eig_first_row(d, e, z);
  const double sqrt_pi = 1.772453850905516027298167;
  std::vector<int> idx(order);
  for (int i = 0; i < order; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
  GaussHermiteRule rule;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = d[idx[i]];
    rule.weights[i] = sqrt_pi * z[idx[i]] * z[idx[i]];
  }
  // enforce exact symmetry about 0
  for (int i = 0, j = order - 1; i < j; ++i, --j) {
    double a = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    rule.nodes[i] = -a;
    rule.nodes[j] = a;
    double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.weights[i] = rule.weights[j] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

}  // namespace dnaga
