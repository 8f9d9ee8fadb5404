#pragma once

// Closed-form azimuthal and polar eigenfunctions on the fundamental domain
// (0, pi/2), their extension to the sphere through the reflection parities,
// and finite-difference residuals of the separated angular equations.

#include <cstddef>
#include <span>
#include <vector>

#include "dunkl/grid.hpp"
#include "dunkl/params.hpp"

namespace dunkl {

struct AngularMode {
  ModelParams params;
  ParitySector sector;
  QuantumNumbers nq;
  SpectralConstants constants;
  double c_theta = 1.0;
  double c_phi = 1.0;

  // Phi = C cos^{phi_cos} sin^{phi_sin} P_{n_phi}^{(phi_jacobi_a, phi_jacobi_b)}(cos 2 phi)
  double phi_sin_exponent() const;
  double phi_cos_exponent() const;
  double phi_jacobi_a() const { return constants.alpha_jacobi; }
  double phi_jacobi_b() const;
  // Theta = C cos^{theta_cos} sin^{theta_sin} P_{n_theta}^{(beta, mu3 - e3/2)}(cos 2 theta)
  double theta_sin_exponent() const;
  double theta_cos_exponent() const;
  double theta_jacobi_a() const { return constants.beta; }
  double theta_jacobi_b() const;
};

// Builds the spectral constants and fixes c_theta, c_phi so that
//   int_0^{2pi} |sin phi|^{2mu2} |cos phi|^{2mu1} Phi^2 dphi = 1,
//   int_0^{pi} |sin theta|^{1+2mu1+2mu2} |cos theta|^{2mu3} Theta^2 dtheta = 1,
// by Gauss-Jacobi quadrature in x = cos(2 angle).
AngularMode make_angular_mode(const ModelParams& params, const ParitySector& sector,
                              const QuantumNumbers& nq,
                              AzimuthalBranch branch = AzimuthalBranch::Principal);

// Closed forms; DomainError outside the open interval (0, pi/2).
double eval_phi(const AngularMode& mode, double phi);
double eval_theta(const AngularMode& mode, double theta);

enum class AngleKind { Theta, Phi };

// Extends fundamental-domain samples on the half-offset nodes of an
// AngularGrid to all nodes. For phi the input holds n_phi/4 samples at
// phi_j, j < n_phi/4, and Phi(pi - phi) = e1 Phi(phi), Phi(-phi) = e2 Phi(phi)
// fill the rest. For theta the input holds n_theta/2 samples and
// Theta(pi - theta) = e3 Theta(theta).
// Throws InconsistentParity when the sin exponent of Phi is an integer whose
// parity under phi -> -phi differs from e2.
std::vector<double> extend_by_parity(const AngularMode& mode, std::span<const double> fundamental,
                                     AngleKind which);

// Theta(theta_i) Phi(phi_j) on every node of the grid.
AngularField mode_field(const AngularMode& mode, const AngularGridPtr& grid);

// Uniform grid on [margin, pi/2 - margin], endpoints included.
GridPtr fundamental_grid(std::size_t nodes, double margin = 0.05);

// max_i |(L - eigenvalue) F|_i / max_i |F| over interior nodes of `grid`, with
// L the separated azimuthal (polar) operator after R_j -> e_j. Evaluated in
// long double with fourth-order central differences.
double residual_phi(const AngularMode& mode, const Grid1D& grid);
double residual_theta(const AngularMode& mode, const Grid1D& grid);

// Maps x = cos(2 angle) Gauss-Jacobi nodes to the fundamental domain:
//   int_0^{pi/2} sin^{2A+1} cos^{2B+1} g dangle ~= sum_i weight_i g(angle_i).
struct AngleQuadrature {
  std::vector<double> angles;
  std::vector<double> weights;
};
AngleQuadrature fundamental_quadrature(int nodes, double jacobi_a, double jacobi_b);

}  // namespace dunkl
