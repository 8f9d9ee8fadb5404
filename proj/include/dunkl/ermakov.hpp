#pragma once

// Time profiles M(t), omega(t), the Ermakov-Pinney trajectory
//   rho'' + (M'/M) rho' + omega^2 rho = 1 / (M^2 rho^3)
// and the Lewis-Riesenfeld phase.

#include <complex>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <vector>

#include "dunkl/grid.hpp"
#include "dunkl/params.hpp"

namespace dunkl {

// Samples (t, value) with strictly increasing t, interpolated by a modified
// Akima spline. Evaluation outside [t_front, t_back] throws DomainError;
// times within 1e-12 of the span past an end are clamped to it.
class TabulatedProfile {
 public:
  TabulatedProfile(std::vector<double> t, std::vector<double> values);

  // Two-column CSV "t,value"; blank lines and lines starting with '#' are
  // skipped, as is a first line that does not parse as numbers.
  static TabulatedProfile from_csv(const std::filesystem::path& path);

  double operator()(double t) const;
  // Fourth-order central difference of the interpolant.
  double derivative(double t) const;
  double front() const noexcept { return t_.front(); }
  double back() const noexcept { return t_.back(); }
  std::size_t size() const noexcept { return t_.size(); }

 private:
  double clamp_to_table(double t) const;

  std::vector<double> t_;
  std::vector<double> values_;
  std::function<double(double)> spline_;
  double diff_step_;
};

enum class MassKind { Constant, Exponential, Tabulated };

// Constant M0 | M0 exp(gamma t) | tabulated.
struct MassProfile {
  MassKind kind = MassKind::Constant;
  double m0 = 1.0;
  double gamma = 0.0;
  std::shared_ptr<const TabulatedProfile> table;

  double value(double t) const;
  double derivative(double t) const;
};

enum class FrequencyKind { Constant, LinearRamp, Sinusoidal, OmegaSquared, Tabulated };

// Constant omega0 | omega0 + slope t | omega0 + amplitude sin(nu t + phase) |
// constant omega^2 of either sign | tabulated omega(t).
struct FrequencyProfile {
  FrequencyKind kind = FrequencyKind::Constant;
  double omega0 = 1.0;
  double slope = 0.0;
  double amplitude = 0.0;
  double nu = 0.0;
  double phase = 0.0;
  double omega_sq = 1.0;
  std::shared_ptr<const TabulatedProfile> table;

  double omega_squared(double t) const;
};

struct TimeProfile {
  MassProfile mass;
  FrequencyProfile frequency;

  double M(double t) const { return mass.value(t); }
  double M_dot(double t) const { return mass.derivative(t); }
  double omega_sq(double t) const { return frequency.omega_squared(t); }
};

// 1 / sqrt(M(t0) omega(t0)); DomainError unless omega^2(t0) > 0.
double adiabatic_rho(const TimeProfile& profile, double t0 = 0.0);

// Trajectory on a uniform time grid. `eta` holds the unscaled phase integral
// int_{t_start}^{t} dt' / (M rho^2); phase_eta applies the quantum numbers.
struct EPSolution {
  std::vector<double> times;
  std::vector<double> rho;
  std::vector<double> rho_dot;
  std::vector<double> rho_ddot;  // right-hand side of the ODE at each sample
  std::vector<double> eta;
  std::vector<double> eta_rate;  // 1 / (M rho^2)
  double step = 0.0;
  double error_estimate = 0.0;  // max step-doubling estimate of |rho error|

  std::size_t size() const noexcept { return times.size(); }
  // Index of the sample closest to t.
  std::size_t index_of(double t) const;
};

struct EPState {
  double rho = 1.0;
  double rho_dot = 0.0;
  double eta = 0.0;
};

// Cubic Hermite interpolation between samples; DomainError outside the span.
EPState interpolate(const EPSolution& sol, double t);

// Classic RK4 from t_start to t_end (either direction) with a fixed step.
// The step is adjusted so that a whole number of steps spans the interval.
// Throws BlowUp if rho <= 0, becomes non-finite or exceeds 1e150, and
// DomainError for rho0 <= 0, step <= 0 or M <= 0 along the way.
EPSolution ep_solve(const TimeProfile& profile, double rho0, double rho_dot0, double t_end,
                    double step, double t_start = 0.0);

// max over interior samples of |rho'' + (M'/M) rho' + omega^2 rho - 1/(M^2 rho^3)|
// with rho'' from fourth-order differences of the rho_dot samples.
double ep_residual(const EPSolution& sol, const TimeProfile& profile);

// eta(t) = -(2n + 1 + sigma) int dt / (M rho^2) at every sample.
std::vector<double> phase_eta(const EPSolution& sol, int n, double sigma);

// Cumulative integral of uniformly spaced samples: composite Simpson from
// the start, with a four-point rule for the first panel.
std::vector<double> cumulative_simpson(const std::vector<double>& f, double h);

// Radial mode family F_rho(r) evaluated for a given rho on a fixed grid.
using ModeFamily = std::function<GridField(double rho)>;

// <F| i hbar d/dt - (rhodot / (2 rho)) (rP + Pr) |F> at sample k, with d/dt
// from a five-point stencil over samples k-2 .. k+2 and the radial measure
// r^{2 delta}. Needs 2 <= k < size - 2.
std::complex<double> phase_mean_check(const EPSolution& sol, std::size_t k,
                                      const ModeFamily& family, const ModelParams& params);

}  // namespace dunkl
