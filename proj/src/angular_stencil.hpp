#pragma once

// Pointwise evaluation of the Dunkl angular operator, shared by the serial
// and OpenMP kernels so both run the exact same arithmetic.

#include <cmath>
#include <cstddef>

#include "dunkl/finite_difference.hpp"
#include "dunkl/kernels.hpp"

namespace dunkl::kernels::detail {

inline double angular_point(const AngularGrid& grid, const double* f,
                            const AngularCoefficients& c, std::size_t i, std::size_t j) {
  const std::size_t nt = grid.n_theta();
  const std::size_t np = grid.n_phi();
  const double ht = grid.theta_spacing();
  const double hp = grid.phi_spacing();
  const double th = grid.theta()[i];
  const double ph = grid.phi()[j];

  // Theta neighbours, continued through the poles.
  const auto at_theta = [&](std::ptrdiff_t k) {
    const auto n = static_cast<std::ptrdiff_t>(nt);
    std::size_t jj = j;
    if (k < 0) {
      k = -1 - k;
      jj = (j + np / 2) % np;
    } else if (k >= n) {
      k = 2 * n - 1 - k;
      jj = (j + np / 2) % np;
    }
    return f[grid.index(static_cast<std::size_t>(k), jj)];
  };
  const auto ii = static_cast<std::ptrdiff_t>(i);
  const double fm2 = at_theta(ii - 2), fm1 = at_theta(ii - 1), f0 = f[grid.index(i, j)];
  const double fp1 = at_theta(ii + 1), fp2 = at_theta(ii + 2);
  const double d1t = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * ht);
  const double d2t = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * ht * ht);

  const double* row = f + grid.index(i, 0);
  const double d1p = fd::periodic_first(row, j, np, 1, hp);
  const double d2p = fd::periodic_second(row, j, np, 1, hp);

  const double st = std::sin(th), ct = std::cos(th);
  const double sp = std::sin(ph), cp = std::cos(ph);

  const double r3 = f[grid.index(grid.mirror_theta(i), j)];
  const double r1 = f[grid.index(i, grid.mirror_phi_r1(j))];
  const double r2 = f[grid.index(i, grid.mirror_phi_r2(j))];

  const double phi_part = d2p + 2.0 * (c.mu2 * cp / sp - c.mu1 * sp / cp) * d1p -
                          c.mu1 / (cp * cp) * (f0 - r1) - c.mu2 / (sp * sp) * (f0 - r2);
  const double brace = d2t + 2.0 * ((0.5 + c.mu1 + c.mu2) * ct / st - c.mu3 * st / ct) * d1t -
                       c.mu3 / (ct * ct) * (f0 - r3) + phi_part / (st * st);
  double value = -c.hbar * c.hbar * brace;
  if (c.include_potential) {
    const double cot = ct / st;
    value += (c.b * cot * cot + 2.0 * c.a / (st * st * sp * sp)) * f0;
  }
  return value;
}

}  // namespace dunkl::kernels::detail
