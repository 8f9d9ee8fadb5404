#pragma once

#include <string>

namespace dunkl {

// Deformation parameters, angular couplings and hbar.
//
// The reflection terms of the Dunkl operators carry mu1, mu2, mu3; the
// angular potential is U = (b/2) cot^2(theta) + a / (sin^2(theta) sin^2(phi)),
// with a and b in units of hbar^2.
struct ModelParams {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double mu3 = 0.0;
  double a = 0.0;
  double b = 0.0;
  double hbar = 1.0;

  // Throws DomainError unless every mu_j > -1/2 and hbar > 0.
  void validate() const;
};

// Eigenvalue of a reflection operator.
enum class Parity : int { Even = 1, Odd = -1 };

constexpr double sign(Parity p) noexcept { return static_cast<double>(static_cast<int>(p)); }

// Throws DomainError for anything but +1 / -1.
Parity parity_from_int(int e);

// Joint eigenvalues of R1 (phi -> pi - phi), R2 (phi -> -phi) and
// R3 (theta -> pi - theta) on a separable eigenfunction.
struct ParitySector {
  Parity e1 = Parity::Even;
  Parity e2 = Parity::Even;
  Parity e3 = Parity::Even;
};

struct QuantumNumbers {
  int n = 0;        // radial
  int n_theta = 0;  // polar
  int n_phi = 0;    // azimuthal

  void validate() const;
};

// Which Frobenius root the azimuthal function takes at phi = 0.
//
// Principal: exponent 1/2 - mu2 + alpha, Jacobi parameter +alpha (the
// printed closed form). ParityConsistent: Jacobi parameter
// sgn(mu2 - e2/2) * alpha, which at a = 0 reduces to mu2 - e2/2 so the
// undeformed sector has the sin-power (1 - e2)/2.
enum class AzimuthalBranch { Principal, ParityConsistent };

std::string to_string(AzimuthalBranch branch);
AzimuthalBranch azimuthal_branch_from_string(const std::string& name);

struct SpectralConstants {
  double delta = 0.0;
  double alpha = 0.0;            // nonnegative root
  double alpha_jacobi = 0.0;     // signed Jacobi parameter actually used
  double m_squared = 0.0;
  double beta = 0.0;
  double lambda = 0.0;
  double sigma = 0.0;
  double energy = 0.0;           // eigenvalue of the invariant
  AzimuthalBranch branch = AzimuthalBranch::Principal;
};

double compute_delta(const ModelParams& params);

// sqrt((mu2 - e2/2)^2 + 2a/hbar^2); throws NegativeRadicand.
double compute_alpha(const ModelParams& params, const ParitySector& sector);

// Signed Jacobi parameter for the requested branch.
double azimuthal_jacobi_parameter(const ModelParams& params, const ParitySector& sector,
                                  AzimuthalBranch branch);

// [2 n_phi + 1 + mu1 - e1/2 + alpha]^2 - (mu1 + mu2)^2. `alpha` is the
// Jacobi parameter of the azimuthal polynomial (negative on the
// complementary branch).
double compute_m_squared(const QuantumNumbers& nq, const ModelParams& params,
                         const ParitySector& sector, double alpha);

double compute_beta(double m_squared, const ModelParams& params);

double compute_lambda(const QuantumNumbers& nq, const ModelParams& params,
                      const ParitySector& sector, double beta);

double compute_sigma(double delta, double lambda);

// E = hbar (2n + sigma + 1).
double invariant_eigenvalue(int n, double sigma, double hbar);

// All of the above in order. Fails on the first negative radicand, which is
// named in the exception.
SpectralConstants compute_spectral(const ModelParams& params, const ParitySector& sector,
                                   const QuantumNumbers& nq,
                                   AzimuthalBranch branch = AzimuthalBranch::Principal);

}  // namespace dunkl
