#include "dunkl/params.hpp"

#include <cmath>
#include <string>

#include "dunkl/error.hpp"

namespace dunkl {

void ModelParams::validate() const {
  const double mus[3] = {mu1, mu2, mu3};
  for (int j = 0; j < 3; ++j) {
    if (!(mus[j] > -0.5)) {
      throw DomainError("mu" + std::to_string(j + 1) + " must exceed -1/2, got " +
                        std::to_string(mus[j]));
    }
  }
  if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("couplings must be finite");
}

Parity parity_from_int(int e) {
  if (e == 1) return Parity::Even;
  if (e == -1) return Parity::Odd;
  throw DomainError("parity must be +1 or -1, got " + std::to_string(e));
}

void QuantumNumbers::validate() const {
  if (n < 0 || n_theta < 0 || n_phi < 0) {
    throw DomainError("quantum numbers must be nonnegative");
  }
}

std::string to_string(AzimuthalBranch branch) {
  return branch == AzimuthalBranch::Principal ? "principal" : "parity_consistent";
}

AzimuthalBranch azimuthal_branch_from_string(const std::string& name) {
  if (name == "principal") return AzimuthalBranch::Principal;
  if (name == "parity_consistent") return AzimuthalBranch::ParityConsistent;
  throw DomainError("unknown azimuthal branch '" + name + "'");
}

double compute_delta(const ModelParams& params) {
  return params.mu1 + params.mu2 + params.mu3 + 1.0;
}

double compute_alpha(const ModelParams& params, const ParitySector& sector) {
  const double shift = params.mu2 - 0.5 * sign(sector.e2);
  const double radicand = shift * shift + 2.0 * params.a / (params.hbar * params.hbar);
  if (radicand < 0.0) throw NegativeRadicand("alpha", radicand);
  return std::sqrt(radicand);
}

double azimuthal_jacobi_parameter(const ModelParams& params, const ParitySector& sector,
                                  AzimuthalBranch branch) {
  const double alpha = compute_alpha(params, sector);
  if (branch == AzimuthalBranch::Principal) return alpha;
  const double shift = params.mu2 - 0.5 * sign(sector.e2);
  return shift < 0.0 ? -alpha : alpha;
}

double compute_m_squared(const QuantumNumbers& nq, const ModelParams& params,
                         const ParitySector& sector, double alpha) {
  const double base = 2.0 * nq.n_phi + 1.0 + params.mu1 - 0.5 * sign(sector.e1) + alpha;
  const double s = params.mu1 + params.mu2;
  return base * base - s * s;
}

double compute_beta(double m_squared, const ModelParams& params) {
  const double s = params.mu1 + params.mu2;
  const double radicand = m_squared + params.b / (params.hbar * params.hbar) + s * s;
  if (radicand < 0.0) throw NegativeRadicand("beta", radicand);
  return std::sqrt(radicand);
}

double compute_lambda(const QuantumNumbers& nq, const ModelParams& params,
                      const ParitySector& sector, double beta) {
  const double base = 2.0 * nq.n_theta + 1.0 + params.mu3 - 0.5 * sign(sector.e3) + beta;
  const double shift = 0.5 + params.mu1 + params.mu2 + params.mu3;
  return base * base - params.b / (params.hbar * params.hbar) - shift * shift;
}

double compute_sigma(double delta, double lambda) {
  const double radicand = 0.25 + delta * (delta - 1.0) + lambda;
  if (radicand < 0.0) throw NegativeRadicand("sigma", radicand);
  return std::sqrt(radicand);
}

double invariant_eigenvalue(int n, double sigma, double hbar) {
  return hbar * (2.0 * n + sigma + 1.0);
}

SpectralConstants compute_spectral(const ModelParams& params, const ParitySector& sector,
                                   const QuantumNumbers& nq, AzimuthalBranch branch) {
  params.validate();
  nq.validate();
  SpectralConstants c;
  c.branch = branch;
  c.delta = compute_delta(params);
  if (!(c.delta > 0.0)) throw DomainError("delta must be positive");
  c.alpha = compute_alpha(params, sector);
  c.alpha_jacobi = azimuthal_jacobi_parameter(params, sector, branch);
  if (!(c.alpha_jacobi > -1.0)) {
    throw DomainError("azimuthal Jacobi parameter " + std::to_string(c.alpha_jacobi) +
                      " <= -1: branch is not normalizable");
  }
  c.m_squared = compute_m_squared(nq, params, sector, c.alpha_jacobi);
  c.beta = compute_beta(c.m_squared, params);
  c.lambda = compute_lambda(nq, params, sector, c.beta);
  c.sigma = compute_sigma(c.delta, c.lambda);
  c.energy = invariant_eigenvalue(nq.n, c.sigma, params.hbar);
  return c;
}

}  // namespace dunkl
