#pragma once

// Radial eigenfunctions of the invariant, the time-dependent total state on a
// product grid, Dunkl-measure quadrature and snapshot export.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "dunkl/angular.hpp"
#include "dunkl/ermakov.hpp"
#include "dunkl/grid.hpp"
#include "dunkl/kernels.hpp"
#include "dunkl/params.hpp"

namespace dunkl {

// R(kappa) = c_r kappa^{sigma+1/2} exp(-kappa^2 / (2 hbar)) L_n^sigma(kappa^2 / hbar),
// normalised so that int_0^inf R^2 dkappa = 1.
struct RadialMode {
  int n = 0;
  double sigma = 0.5;
  double hbar = 1.0;
  double c_r = 1.0;
};

// c_r from Gauss-Laguerre quadrature in y = kappa^2 / hbar.
RadialMode make_radial_mode(int n, double sigma, double hbar);

// Closed form c_r = sqrt(2 n! / (hbar^{sigma+1} Gamma(n + sigma + 1))) via log_gamma.
double radial_norm_closed_form(int n, double sigma, double hbar);

double eval_radial(const RadialMode& mode, double kappa);

// Uniform grid [margin, kappa_max] with kappa_max = sqrt(hbar (4n + 2 sigma + 30)).
GridPtr radial_residual_grid(const RadialMode& mode, std::size_t nodes, double margin = 0.05);

// max_i |R'' + (1/hbar^2)[2E - kappa^2 - hbar^2 (delta(delta-1) + lambda) / kappa^2] R| / max|R|
// with E = hbar (2n + sigma + 1) from mode, delta and lambda from `spectral`.
// Long double, fourth-order central differences on interior nodes.
double radial_residual(const RadialMode& mode, const SpectralConstants& spectral, const Grid1D& grid);

// One separable eigenstate Psi_{n, n_theta, n_phi} of the invariant.
struct Mode {
  AngularMode angular;
  RadialMode radial;
};

Mode make_mode(const ModelParams& params, const ParitySector& sector, const QuantumNumbers& nq,
               AzimuthalBranch branch = AzimuthalBranch::Principal);

// Radius beyond which every listed mode is below Gaussian-tail truncation:
// rho_max sqrt(hbar (4n + 2 sigma + 30)), maximised over modes.
double truncation_radius(const std::vector<Mode>& modes, double rho_max);

// Product grid for snapshots of one parity sector. Angles are Gauss-Jacobi
// nodes on the fundamental domain (0, pi/2); the weights already contain the
// Dunkl measure and the parity factors 2 (theta) and 4 (phi), so
// sum w_r w_theta w_phi conj(a) b is the full-space inner product.
struct SnapshotGrid {
  ModelParams params;
  ParitySector sector;
  AzimuthalBranch branch = AzimuthalBranch::Principal;
  GridPtr radial;
  std::vector<double> radial_weights;  // h r^{2 delta}
  std::vector<double> theta;
  std::vector<double> theta_weights;
  std::vector<double> phi;
  std::vector<double> phi_weights;

  ProductShape shape() const { return {radial->size(), theta.size(), phi.size()}; }
};

using SnapshotGridPtr = std::shared_ptr<const SnapshotGrid>;

// Angular rules are exact for products of modes sharing `reference`'s
// azimuthal exponents; the polar rule uses the reference beta, which should
// be the smallest beta among the modes that will be compared.
SnapshotGridPtr make_snapshot_grid(const AngularMode& reference, std::size_t radial_nodes,
                                   double r_max, std::size_t theta_nodes = 48,
                                   std::size_t phi_nodes = 24);

// Gram matrix <Psi_a, Psi_b> of the listed modes at sample k, from separate
// radial, polar and azimuthal integrals with the rules of `grid`. Agrees with
// norm_integral on assembled snapshots without storing them.
std::vector<std::vector<std::complex<double>>> mode_gram_matrix(const std::vector<Mode>& modes,
                                                                const EPSolution& ep, std::size_t k,
                                                                const TimeProfile& profile,
                                                                const SnapshotGridPtr& grid);

// Psi sampled on a SnapshotGrid, layout [theta][phi][r].
struct StateSnapshot {
  double time = 0.0;
  double rho = 1.0;
  double rho_dot = 0.0;
  double mass = 1.0;
  double eta = 0.0;     // phase of the first component, -(2n+1+sigma) int dt/(M rho^2)
  double lambda = 0.0;  // shared angular eigenvalue, NaN for mixed angular content
  SnapshotGridPtr grid;
  std::vector<cplx> values;
};

// Radial factor of Psi at one instant,
//   r^{-delta} rho^{-1/2} R(r / rho) exp(i M rhodot r^2 / (2 hbar rho)) exp(i eta),
// with eta = -(2n + 1 + sigma) * phase_integral. `reduced` multiplies by r^delta.
GridField radial_factor(const Mode& mode, const EPState& state, double mass, const GridPtr& grid,
                        bool reduced = false);

// Total state at sample `k` of the Ermakov-Pinney solution.
StateSnapshot assemble_psi(const Mode& mode, const EPSolution& ep, std::size_t k,
                           const TimeProfile& profile, const SnapshotGridPtr& grid);

// sum_i c_i Psi_i; all states must share grid and time. lambda is kept only
// when all components agree.
StateSnapshot superpose(const std::vector<std::complex<double>>& coeffs,
                        const std::vector<StateSnapshot>& states);

// Full-space inner product under the Dunkl measure. GridMismatch for
// snapshots on different grids.
std::complex<double> norm_integral(const StateSnapshot& a, const StateSnapshot& b,
                                   Exec exec = Exec::Parallel);

// <Psi| I(t) |Psi> / <Psi|Psi> with I from the snapshot's rho, rho_dot, mass
// and angular eigenvalue. DomainError for mixed angular content.
double invariant_expectation(const StateSnapshot& state, Exec exec = Exec::Parallel);

// CSV with columns r,theta,phi,re_psi,im_psi on the fundamental-domain nodes.
// Every line of `header` is written first, prefixed by "# ".
void write_snapshot_csv(const std::filesystem::path& path, const StateSnapshot& s,
                        const std::vector<std::string>& header);

// Binary dump, little-endian throughout:
//   char[8] "DKLSNAP1"; uint64 n_r, n_theta, n_phi;
//   double time, rho, rho_dot, mass, eta;
//   double r[n_r], theta[n_theta], phi[n_phi];
//   double (re, im) pairs in [theta][phi][r] order.
void write_snapshot_binary(const std::filesystem::path& path, const StateSnapshot& s);

struct SnapshotDump {
  double time = 0.0;
  double rho = 1.0;
  double rho_dot = 0.0;
  double mass = 1.0;
  double eta = 0.0;
  std::vector<double> r;
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<cplx> values;
};

// Throws ConfigError on a bad magic number or a truncated file.
SnapshotDump read_snapshot_binary(const std::filesystem::path& path);

}  // namespace dunkl
