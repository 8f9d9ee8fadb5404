#pragma once

#include <concepts>
#include <vector>

namespace dunkl {

// Jacobi polynomial P_n^{(p,q)}(x) by upward three-term recurrence.
// Exact for polynomials up to rounding; no domain checks.
template <std::floating_point T>
T jacobi_recurrence(int n, T p, T q, T x) {
  if (n == 0) return T(1);
  T prev = T(1);
  T curr = (p + q + 2) * x / 2 + (p - q) / 2;
  for (int k = 2; k <= n; ++k) {
    const T s = 2 * k + p + q;
    const T a1 = 2 * k * (k + p + q) * (s - 2);
    const T a2 = (s - 1) * (p * p - q * q);
    const T a3 = (s - 2) * (s - 1) * s;
    const T a4 = 2 * (k + p - 1) * (k + q - 1) * s;
    const T next = ((a2 + a3 * x) * curr - a4 * prev) / a1;
    prev = curr;
    curr = next;
  }
  return curr;
}

// Associated Laguerre L_n^{sigma}(x) by upward recurrence.
template <std::floating_point T>
T laguerre_recurrence(int n, T sigma, T x) {
  if (n == 0) return T(1);
  T prev = T(1);
  T curr = 1 + sigma - x;
  for (int k = 1; k < n; ++k) {
    const T next = ((2 * k + 1 + sigma - x) * curr - (k + sigma) * prev) / (k + 1);
    prev = curr;
    curr = next;
  }
  return curr;
}

// Checked entry points. DomainError for n < 0, p <= -1, q <= -1 or
// |x| > 1 (jacobi), sigma <= -1 or x < 0 (laguerre), x <= 0 (log_gamma).
double jacobi(int n, double p, double q, double x);
double laguerre(int n, double sigma, double x);
double log_gamma(double x);

// Nodes and weights of an n-point Gauss rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Weight (1 - x)^p (1 + x)^q on [-1, 1].
QuadratureRule gauss_jacobi(int n, double p, double q);
// Weight y^sigma e^{-y} on [0, inf).
QuadratureRule gauss_laguerre(int n, double sigma);
// Unit weight on [-1, 1].
QuadratureRule gauss_legendre(int n);

}  // namespace dunkl
