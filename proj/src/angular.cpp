#include "dunkl/angular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dunkl/error.hpp"
#include "dunkl/specfun.hpp"

namespace dunkl {

namespace {

using ld = long double;

constexpr double kHalfPi = std::numbers::pi / 2.0;

double parity_exponent(Parity e) { return 0.5 * (1.0 - sign(e)); }

template <typename T>
T int_power(T x, double k) {
  return k == 0.0 ? T(1) : x;
}

template <typename T>
T phi_closed_form(const AngularMode& m, T phi) {
  const T s = std::sin(phi);
  const T c = std::cos(phi);
  return T(m.c_phi) * int_power(c, m.phi_cos_exponent()) * std::pow(s, T(m.phi_sin_exponent())) *
         jacobi_recurrence(m.nq.n_phi, T(m.phi_jacobi_a()), T(m.phi_jacobi_b()), std::cos(2 * phi));
}

template <typename T>
T theta_closed_form(const AngularMode& m, T theta) {
  const T s = std::sin(theta);
  const T c = std::cos(theta);
  return T(m.c_theta) * int_power(c, m.theta_cos_exponent()) *
         std::pow(s, T(m.theta_sin_exponent())) *
         jacobi_recurrence(m.nq.n_theta, T(m.theta_jacobi_a()), T(m.theta_jacobi_b()),
                           std::cos(2 * theta));
}

void require_fundamental(double angle, const char* name) {
  if (!(angle > 0.0 && angle < kHalfPi)) {
    throw DomainError(std::string(name) + " outside the fundamental domain (0, pi/2)");
  }
}

// Shared driver for the two residuals: samples F on a long-double copy of
// the grid, applies F'' + p(x) F' - q(x) F + eigenvalue F with central
// stencils and reports the normalized maximum.
template <typename Closed, typename Coeffs>
double residual(const Grid1D& grid, Closed&& closed, Coeffs&& coeffs, ld eigenvalue) {
  const std::size_t n = grid.size();
  if (n < 6) throw DomainError("residual needs at least 6 nodes");
  if (!(grid[0] > 0.0) || !(grid[n - 1] < kHalfPi)) {
    throw DomainError("residual grid must lie inside (0, pi/2)");
  }
  const ld lo = grid[0];
  const ld h = (static_cast<ld>(grid[n - 1]) - lo) / static_cast<ld>(n - 1);
  std::vector<ld> x(n), f(n);
  for (std::size_t k = 0; k < n; ++k) {
    x[k] = lo + static_cast<ld>(k) * h;
    f[k] = closed(x[k]);
  }
  ld worst = 0;
  ld scale = 0;
  for (std::size_t k = 0; k < n; ++k) scale = std::max(scale, std::abs(f[k]));
  for (std::size_t k = 2; k + 2 < n; ++k) {
    const ld d1 = (f[k - 2] - 8 * f[k - 1] + 8 * f[k + 1] - f[k + 2]) / (12 * h);
    const ld d2 = (-f[k - 2] + 16 * f[k - 1] - 30 * f[k] + 16 * f[k + 1] - f[k + 2]) / (12 * h * h);
    ld p, q;
    coeffs(x[k], p, q);
    const ld r = d2 + p * d1 - q * f[k] + eigenvalue * f[k];
    worst = std::max(worst, std::abs(r));
  }
  return static_cast<double>(worst / scale);
}

}  // namespace

double AngularMode::phi_sin_exponent() const { return 0.5 - params.mu2 + constants.alpha_jacobi; }
double AngularMode::phi_cos_exponent() const { return parity_exponent(sector.e1); }
double AngularMode::phi_jacobi_b() const { return params.mu1 - 0.5 * sign(sector.e1); }
double AngularMode::theta_sin_exponent() const {
  return constants.beta - params.mu1 - params.mu2;
}
double AngularMode::theta_cos_exponent() const { return parity_exponent(sector.e3); }
double AngularMode::theta_jacobi_b() const { return params.mu3 - 0.5 * sign(sector.e3); }

AngleQuadrature fundamental_quadrature(int nodes, double jacobi_a, double jacobi_b) {
  const QuadratureRule rule = gauss_jacobi(nodes, jacobi_a, jacobi_b);
  const double scale = std::exp2(-jacobi_a - jacobi_b - 2.0);
  AngleQuadrature q;
  q.angles.resize(rule.nodes.size());
  q.weights.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    q.angles[i] = 0.5 * std::acos(rule.nodes[i]);
    q.weights[i] = scale * rule.weights[i];
  }
  return q;
}

AngularMode make_angular_mode(const ModelParams& params, const ParitySector& sector,
                              const QuantumNumbers& nq, AzimuthalBranch branch) {
  AngularMode mode;
  mode.params = params;
  mode.sector = sector;
  mode.nq = nq;
  mode.constants = compute_spectral(params, sector, nq, branch);
  if (!(mode.phi_jacobi_b() > -1.0) || !(mode.theta_jacobi_b() > -1.0)) {
    throw DomainError("angular mode is not normalizable for these deformation parameters");
  }

  // Phi^2 |sin|^{2mu2} |cos|^{2mu1} = sin^{2A+1} cos^{2B+1} P^2 exactly, so an
  // (n+2)-point rule is exact; four copies of the fundamental domain.
  {
    const auto q = fundamental_quadrature(nq.n_phi + 2, mode.phi_jacobi_a(), mode.phi_jacobi_b());
    double sum = 0.0;
    for (std::size_t i = 0; i < q.angles.size(); ++i) {
      const double p = jacobi_recurrence(nq.n_phi, mode.phi_jacobi_a(), mode.phi_jacobi_b(),
                                         std::cos(2.0 * q.angles[i]));
      sum += q.weights[i] * p * p;
    }
    mode.c_phi = 1.0 / std::sqrt(4.0 * sum);
  }
  {
    const auto q =
        fundamental_quadrature(nq.n_theta + 2, mode.theta_jacobi_a(), mode.theta_jacobi_b());
    double sum = 0.0;
    for (std::size_t i = 0; i < q.angles.size(); ++i) {
      const double p = jacobi_recurrence(nq.n_theta, mode.theta_jacobi_a(),
                                         mode.theta_jacobi_b(), std::cos(2.0 * q.angles[i]));
      sum += q.weights[i] * p * p;
    }
    mode.c_theta = 1.0 / std::sqrt(2.0 * sum);
  }
  return mode;
}

double eval_phi(const AngularMode& mode, double phi) {
  require_fundamental(phi, "phi");
  return phi_closed_form(mode, phi);
}

double eval_theta(const AngularMode& mode, double theta) {
  require_fundamental(theta, "theta");
  return theta_closed_form(mode, theta);
}

std::vector<double> extend_by_parity(const AngularMode& mode, std::span<const double> fundamental,
                                     AngleKind which) {
  const std::size_t m = fundamental.size();
  if (which == AngleKind::Theta) {
    const double e3 = sign(mode.sector.e3);
    const std::size_t n = 2 * m;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i < m ? fundamental[i] : e3 * fundamental[n - 1 - i];
    return out;
  }

  const double s = mode.phi_sin_exponent();
  const double rounded = std::round(s);
  if (std::abs(s - rounded) < 1e-12) {
    const double natural = (static_cast<long long>(rounded) % 2 == 0) ? 1.0 : -1.0;
    if (natural != sign(mode.sector.e2)) {
      throw InconsistentParity("sin^" + std::to_string(s) +
                               "(phi) has parity opposite to e2 under phi -> -phi");
    }
  }
  const double e1 = sign(mode.sector.e1);
  const double e2 = sign(mode.sector.e2);
  const std::size_t n = 4 * m;
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n / 2; ++j) {
    out[j] = j < m ? fundamental[j] : e1 * fundamental[n / 2 - 1 - j];
  }
  for (std::size_t j = n / 2; j < n; ++j) out[j] = e2 * out[n - 1 - j];
  return out;
}

AngularField mode_field(const AngularMode& mode, const AngularGridPtr& grid) {
  const std::size_t nt = grid->n_theta();
  const std::size_t np = grid->n_phi();
  std::vector<double> th(nt / 2), ph(np / 4);
  for (std::size_t i = 0; i < th.size(); ++i) th[i] = eval_theta(mode, grid->theta()[i]);
  for (std::size_t j = 0; j < ph.size(); ++j) ph[j] = eval_phi(mode, grid->phi()[j]);
  const auto theta_full = extend_by_parity(mode, th, AngleKind::Theta);
  const auto phi_full = extend_by_parity(mode, ph, AngleKind::Phi);
  AngularField out{grid, std::vector<double>(grid->size())};
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t j = 0; j < np; ++j) out.at(i, j) = theta_full[i] * phi_full[j];
  }
  return out;
}

GridPtr fundamental_grid(std::size_t nodes, double margin) {
  if (!(margin > 0.0 && margin < kHalfPi / 2.0)) throw DomainError("margin outside (0, pi/4)");
  return Grid1D::interval(margin, kHalfPi - margin, nodes);
}

double residual_phi(const AngularMode& mode, const Grid1D& grid) {
  const ld mu1 = mode.params.mu1, mu2 = mode.params.mu2;
  const ld hbar = mode.params.hbar;
  const ld e1 = sign(mode.sector.e1), e2 = sign(mode.sector.e2);
  const ld pot = 2 * static_cast<ld>(mode.params.a) / (hbar * hbar);
  return residual(
      grid, [&](ld x) { return phi_closed_form<ld>(mode, x); },
      [&](ld x, ld& p, ld& q) {
        const ld s = std::sin(x), c = std::cos(x);
        p = 2 * (mu2 * c / s - mu1 * s / c);
        q = mu1 * (1 - e1) / (c * c) + (mu2 * (1 - e2) + pot) / (s * s);
      },
      static_cast<ld>(mode.constants.m_squared));
}

double residual_theta(const AngularMode& mode, const Grid1D& grid) {
  const ld mu1 = mode.params.mu1, mu2 = mode.params.mu2, mu3 = mode.params.mu3;
  const ld hbar = mode.params.hbar;
  const ld e3 = sign(mode.sector.e3);
  const ld bb = static_cast<ld>(mode.params.b) / (hbar * hbar);
  const ld m2 = mode.constants.m_squared;
  return residual(
      grid, [&](ld x) { return theta_closed_form<ld>(mode, x); },
      [&](ld x, ld& p, ld& q) {
        const ld s = std::sin(x), c = std::cos(x);
        p = 2 * ((ld(0.5) + mu1 + mu2) * c / s - mu3 * s / c);
        q = mu3 * (1 - e3) / (c * c) + m2 / (s * s) + bb * (c * c) / (s * s);
      },
      static_cast<ld>(mode.constants.lambda));
}

}  // namespace dunkl
