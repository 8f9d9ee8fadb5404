#pragma once

// Discretized Dunkl operators, the generator algebra {T1, T2, T3} and the
// Hamiltonian / invariant acting on radial fields of one angular sector.
//
// Radial operators act on the radial factor g(r) of psi = g(r) Theta Phi; the
// angular part of p^2 + 2U/r^2 is replaced by hbar^2 lambda / r^2.

#include <array>

#include "dunkl/grid.hpp"
#include "dunkl/kernels.hpp"
#include "dunkl/params.hpp"

namespace dunkl {

// f composed with a reflection. On a symmetric Grid1D any axis maps x -> -x.
// Throws AsymmetricGrid on radial / interval grids or for axis outside 1..3.
GridField reflect(const GridField& f, int axis);

// axis 1: phi -> pi - phi, axis 2: phi -> -phi, axis 3: theta -> pi - theta.
AngularField reflect(const AngularField& f, int axis);

// f'(x) + (mu / x)(f(x) - f(-x)) on a symmetric grid.
GridField dunkl_derivative(const GridField& f, double mu);

// P_{r,delta} f = (hbar / i)(f' + delta f / r).
GridField radial_momentum(const GridField& f, double delta, double hbar);

// P_{r,delta}^2 f = -hbar^2 (f'' + 2 delta f' / r + delta (delta - 1) f / r^2).
GridField radial_momentum_sq(const GridField& f, double delta, double hbar);

// Full L_D^2 on the sphere.
AngularField dunkl_angular_momentum_sq(const AngularField& f, const ModelParams& params,
                                       Exec exec = Exec::Parallel);

// L_D^2 + 2U, whose separable eigenvalue is hbar^2 lambda.
AngularField angular_hamiltonian(const AngularField& f, const ModelParams& params,
                                 Exec exec = Exec::Parallel);

enum class Generator { T1 = 1, T2 = 2, T3 = 3 };

// T1 = P^2 + hbar^2 (delta (delta - 1) + lambda) / r^2, T2 = r^2,
// T3 = r P + P r.
GridField apply_T(Generator k, const GridField& f, const ModelParams& params,
                  double lambda_angular);

// |[T1,T2] f + 2 i hbar T3 f|, |[T2,T3] f - 4 i hbar T2 f| and
// |[T1,T3] f + 4 i hbar T1 f|, each divided by |f| (discrete l2 norms).
std::array<double, 3> commutator_defects(const GridField& f, const ModelParams& params,
                                         double lambda_angular);

// Instantaneous auxiliary-trajectory data entering the invariant.
struct InvariantState {
  double rho = 1.0;
  double rho_dot = 0.0;
  double mass = 1.0;
};

// I = 1/2 [ (1/rho^2 + M^2 rhodot^2) T2 + rho^2 T1 - M rho rhodot T3 ].
GridField apply_invariant(const GridField& f, const ModelParams& params, double lambda_angular,
                          const InvariantState& state);

// I' = 1/2 [ rho^2 T1 + T2 / rho^2 ], the invariant after the Gaussian
// gauge transformation.
GridField apply_transformed_invariant(const GridField& f, const ModelParams& params,
                                      double lambda_angular, double rho);

// H = T1 / (2M) + M omega^2 T2 / 2 on the fixed angular sector.
GridField apply_hamiltonian(const GridField& f, const ModelParams& params, double lambda_angular,
                            double mass, double omega_sq);

// The same Hamiltonian assembled as I/(M rho^2) - (1/(2 M rho^4) + M rhodot^2/(2 rho^2)) r^2
// + (rhodot / (2 rho)) T3 + M omega^2 r^2 / 2.
GridField apply_hamiltonian_via_invariant(const GridField& f, const ModelParams& params,
                                          double lambda_angular, const InvariantState& state,
                                          double omega_sq);

// Inner product sum_i h r_i^{2 delta} conj(a_i) b_i (radial part of the
// Dunkl measure).
cplx radial_inner(const GridField& a, const GridField& b, double delta);

}  // namespace dunkl
