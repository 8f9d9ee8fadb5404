#include "dunkl/specfun.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "dunkl/error.hpp"

namespace dunkl {

double jacobi(int n, double p, double q, double x) {
  if (n < 0) throw DomainError("jacobi: negative degree");
  if (!(p > -1.0) || !(q > -1.0)) throw DomainError("jacobi: parameters must exceed -1");
  if (!(std::abs(x) <= 1.0)) throw DomainError("jacobi: argument outside [-1, 1]");
  return jacobi_recurrence(n, p, q, x);
}

double laguerre(int n, double sigma, double x) {
  if (n < 0) throw DomainError("laguerre: negative degree");
  if (!(sigma > -1.0)) throw DomainError("laguerre: sigma must exceed -1");
  if (!(x >= 0.0)) throw DomainError("laguerre: argument must be nonnegative");
  return laguerre_recurrence(n, sigma, x);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  return std::lgamma(x);
}

namespace {

// Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix built
// from the monic recurrence x p_k = p_{k+1} + a_k p_k + b_k p_{k-1}.
QuadratureRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag_sq,
                            double mu0) {
  const Eigen::Index n = diag.size();
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  if (n == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::VectorXd sub = offdiag_sq.cwiseSqrt();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw Error("Golub-Welsch eigen-solve failed");
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    rule.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace

QuadratureRule gauss_jacobi(int n, double p, double q) {
  if (n < 1) throw DomainError("gauss_jacobi: need at least one node");
  if (!(p > -1.0) || !(q > -1.0)) throw DomainError("gauss_jacobi: parameters must exceed -1");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(n > 1 ? n - 1 : 0);
  const double pq = p + q;
  diag(0) = (q - p) / (pq + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + pq;
    diag(k) = (q * q - p * p) / (s * (s + 2.0));
    if (k == 1) {
      // (k + p + q) cancels against (s - 1); written out to survive p + q = -1.
      off(0) = 4.0 * (1.0 + p) * (1.0 + q) / ((2.0 + pq) * (2.0 + pq) * (3.0 + pq));
    } else {
      off(k - 1) = 4.0 * k * (k + p) * (k + q) * (k + pq) / (s * s * (s + 1.0) * (s - 1.0));
    }
  }
  const double mu0 = std::exp((pq + 1.0) * std::log(2.0) + std::lgamma(p + 1.0) +
                              std::lgamma(q + 1.0) - std::lgamma(pq + 2.0));
  return golub_welsch(diag, off, mu0);
}

QuadratureRule gauss_laguerre(int n, double sigma) {
  if (n < 1) throw DomainError("gauss_laguerre: need at least one node");
  if (!(sigma > -1.0)) throw DomainError("gauss_laguerre: sigma must exceed -1");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + sigma + 1.0;
  for (int k = 1; k < n; ++k) off(k - 1) = k * (k + sigma);
  return golub_welsch(diag, off, std::exp(std::lgamma(sigma + 1.0)));
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) off(k - 1) = double(k) * k / (4.0 * k * k - 1.0);
  return golub_welsch(diag, off, 2.0);
}

}  // namespace dunkl
