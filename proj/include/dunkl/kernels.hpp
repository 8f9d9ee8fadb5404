#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::parallel with the same
// signature; the dispatchers at the bottom pick one by Exec. Tests require
// the two to agree and bench/ compares their speed.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

#include "dunkl/grid.hpp"

namespace dunkl {

enum class Exec { Serial, Parallel };

// Coefficients of the Dunkl angular operator and of the angular potential.
struct AngularCoefficients {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double mu3 = 0.0;
  double a = 0.0;
  double b = 0.0;
  double hbar = 1.0;
  bool include_potential = false;  // add 2U(theta, phi)
};

// Sizes of a snapshot laid out as [theta][phi][r] (radial index fastest).
struct ProductShape {
  std::size_t n_r = 0;
  std::size_t n_theta = 0;
  std::size_t n_phi = 0;
  std::size_t size() const noexcept { return n_r * n_theta * n_phi; }
  std::size_t lines() const noexcept { return n_theta * n_phi; }
};

// Operator applied to one contiguous radial line: (in, out).
using LineOperator = std::function<void(std::span<const cplx>, std::span<cplx>)>;

namespace kernels {

namespace serial {
// out = (L_D^2 [+ 2U]) f on the full angular grid. Theta stencils continue
// through the poles (theta -> -theta is phi -> phi + pi), phi is periodic.
void angular_operator(const AngularGrid& grid, std::span<const double> f,
                      const AngularCoefficients& coef, std::span<double> out);
// out[t][p][r] = radial[r] * theta[t] * phi[p]
void product_assemble(std::span<const cplx> radial, std::span<const double> theta,
                      std::span<const double> phi, std::span<cplx> out);
// sum_{t,p,r} w_t w_p w_r conj(a) b
cplx separable_inner(const ProductShape& shape, std::span<const double> w_r,
                     std::span<const double> w_theta, std::span<const double> w_phi,
                     std::span<const cplx> a, std::span<const cplx> b);
void apply_lines(const ProductShape& shape, std::span<const cplx> in, const LineOperator& op,
                 std::span<cplx> out);
}  // namespace serial

namespace parallel {
void angular_operator(const AngularGrid& grid, std::span<const double> f,
                      const AngularCoefficients& coef, std::span<double> out);
void product_assemble(std::span<const cplx> radial, std::span<const double> theta,
                      std::span<const double> phi, std::span<cplx> out);
cplx separable_inner(const ProductShape& shape, std::span<const double> w_r,
                     std::span<const double> w_theta, std::span<const double> w_phi,
                     std::span<const cplx> a, std::span<const cplx> b);
void apply_lines(const ProductShape& shape, std::span<const cplx> in, const LineOperator& op,
                 std::span<cplx> out);
}  // namespace parallel

inline void angular_operator(const AngularGrid& grid, std::span<const double> f,
                             const AngularCoefficients& coef, std::span<double> out,
                             Exec exec = Exec::Parallel) {
  exec == Exec::Serial ? serial::angular_operator(grid, f, coef, out)
                       : parallel::angular_operator(grid, f, coef, out);
}

inline void product_assemble(std::span<const cplx> radial, std::span<const double> theta,
                             std::span<const double> phi, std::span<cplx> out,
                             Exec exec = Exec::Parallel) {
  exec == Exec::Serial ? serial::product_assemble(radial, theta, phi, out)
                       : parallel::product_assemble(radial, theta, phi, out);
}

inline cplx separable_inner(const ProductShape& shape, std::span<const double> w_r,
                            std::span<const double> w_theta, std::span<const double> w_phi,
                            std::span<const cplx> a, std::span<const cplx> b,
                            Exec exec = Exec::Parallel) {
  return exec == Exec::Serial ? serial::separable_inner(shape, w_r, w_theta, w_phi, a, b)
                              : parallel::separable_inner(shape, w_r, w_theta, w_phi, a, b);
}

inline void apply_lines(const ProductShape& shape, std::span<const cplx> in,
                        const LineOperator& op, std::span<cplx> out,
                        Exec exec = Exec::Parallel) {
  exec == Exec::Serial ? serial::apply_lines(shape, in, op, out)
                       : parallel::apply_lines(shape, in, op, out);
}

}  // namespace kernels

// Number of worker threads the parallel kernels use (1 without OpenMP).
int max_threads();
void set_threads(int n);

}  // namespace dunkl
