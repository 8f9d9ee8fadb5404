#include "dunkl/ermakov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/math/interpolators/makima.hpp>

#include "dunkl/error.hpp"
#include "dunkl/operators.hpp"

namespace dunkl {

namespace {

constexpr double kOverflow = 1e150;

bool parse_row(const std::string& line, double& t, double& v) {
  std::string a, b;
  std::stringstream ss(line);
  if (!std::getline(ss, a, ',') || !std::getline(ss, b)) return false;
  try {
    std::size_t pa = 0, pb = 0;
    t = std::stod(a, &pa);
    v = std::stod(b, &pb);
    const auto blank = [](const std::string& s, std::size_t from) {
      return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(from), s.end(),
                         [](unsigned char c) { return std::isspace(c); });
    };
    return blank(a, pa) && blank(b, pb);
  } catch (const std::exception&) {
    return false;
  }
}

struct Derivs {
  double drho;
  double dv;
};

}  // namespace

TabulatedProfile::TabulatedProfile(std::vector<double> t, std::vector<double> values)
    : t_(std::move(t)), values_(std::move(values)) {
  if (t_.size() != values_.size()) throw DomainError("tabulated profile: column length mismatch");
  if (t_.size() < 4) throw DomainError("tabulated profile needs at least 4 samples");
  for (std::size_t i = 1; i < t_.size(); ++i) {
    if (!(t_[i] > t_[i - 1])) throw DomainError("tabulated profile: t must be strictly increasing");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("tabulated profile: non-finite value");
  }
  auto spline = std::make_shared<boost::math::interpolators::makima<std::vector<double>>>(
      std::vector<double>(t_), std::vector<double>(values_));
  spline_ = [spline](double x) { return (*spline)(x); };
  diff_step_ = 1e-3 * (t_.back() - t_.front()) / static_cast<double>(t_.size() - 1);
}

TabulatedProfile TabulatedProfile::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tabulated profile " + path.string());
  std::vector<double> t, v;
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    double a = 0.0, b = 0.0;
    if (!parse_row(line, a, b)) {
      if (first) {
        first = false;
        continue;
      }
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected 't,value'");
    }
    first = false;
    t.push_back(a);
    v.push_back(b);
  }
  return TabulatedProfile(std::move(t), std::move(v));
}

double TabulatedProfile::clamp_to_table(double t) const {
  // times within rounding of the ends (e.g. t_start + k h) count as inside
  const double slack = 1e-12 * (t_.back() - t_.front());
  if (!(t >= t_.front() - slack && t <= t_.back() + slack)) {
    throw DomainError("tabulated profile evaluated outside [" + std::to_string(t_.front()) + ", " +
                      std::to_string(t_.back()) + "]");
  }
  return std::clamp(t, t_.front(), t_.back());
}

double TabulatedProfile::operator()(double t) const { return spline_(clamp_to_table(t)); }

double TabulatedProfile::derivative(double t) const {
  t = clamp_to_table(t);
  const double h = diff_step_;
  // shift the stencil inwards at the ends of the table
  const double c = std::clamp(t, t_.front() + 2 * h, t_.back() - 2 * h);
  return (spline_(c - 2 * h) - 8 * spline_(c - h) + 8 * spline_(c + h) - spline_(c + 2 * h)) / (12 * h);
}

double MassProfile::value(double t) const {
  switch (kind) {
    case MassKind::Constant: return m0;
    case MassKind::Exponential: return m0 * std::exp(gamma * t);
    case MassKind::Tabulated: return (*table)(t);
  }
  return m0;
}

double MassProfile::derivative(double t) const {
  switch (kind) {
    case MassKind::Constant: return 0.0;
    case MassKind::Exponential: return gamma * m0 * std::exp(gamma * t);
    case MassKind::Tabulated: return table->derivative(t);
  }
  return 0.0;
}

double FrequencyProfile::omega_squared(double t) const {
  double w = omega0;
  switch (kind) {
    case FrequencyKind::Constant: break;
    case FrequencyKind::LinearRamp: w = omega0 + slope * t; break;
    case FrequencyKind::Sinusoidal: w = omega0 + amplitude * std::sin(nu * t + phase); break;
    case FrequencyKind::OmegaSquared: return omega_sq;
    case FrequencyKind::Tabulated: w = (*table)(t); break;
  }
  return w * w;
}

double adiabatic_rho(const TimeProfile& profile, double t0) {
  const double w2 = profile.omega_sq(t0);
  const double m = profile.M(t0);
  if (!(w2 > 0.0)) throw DomainError("adiabatic rho needs omega^2 > 0 at the initial time");
  if (!(m > 0.0)) throw DomainError("mass must be positive");
  return 1.0 / std::sqrt(m * std::sqrt(w2));
}

std::size_t EPSolution::index_of(double t) const {
  if (times.empty()) throw DomainError("empty EP solution");
  const double k = std::round((t - times.front()) / step);
  return static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(times.size() - 1)));
}

EPState interpolate(const EPSolution& sol, double t) {
  const double lo = std::min(sol.times.front(), sol.times.back());
  const double hi = std::max(sol.times.front(), sol.times.back());
  const double slack = 1e-12 * std::max(1.0, std::abs(hi));
  if (t < lo - slack || t > hi + slack) throw DomainError("time outside the EP solution");
  const double s = (t - sol.times.front()) / sol.step;
  auto k = static_cast<std::size_t>(std::clamp(std::floor(s), 0.0, static_cast<double>(sol.size() - 2)));
  const double h = sol.step;
  const double u = s - static_cast<double>(k);
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
  auto hermite = [&](const std::vector<double>& y, const std::vector<double>& dy) {
    return h00 * y[k] + h10 * h * dy[k] + h01 * y[k + 1] + h11 * h * dy[k + 1];
  };
  EPState st;
  st.rho = hermite(sol.rho, sol.rho_dot);
  st.rho_dot = hermite(sol.rho_dot, sol.rho_ddot);
  st.eta = hermite(sol.eta, sol.eta_rate);
  return st;
}

EPSolution ep_solve(const TimeProfile& profile, double rho0, double rho_dot0, double t_end,
                    double step, double t_start) {
  if (!(rho0 > 0.0)) throw DomainError("rho0 must be positive");
  if (!(step > 0.0)) throw DomainError("step must be positive");
  const double span = t_end - t_start;
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(std::abs(span) / step)));
  const double h = span / static_cast<double>(steps);

  const auto rhs = [&](double t, double rho, double v) -> Derivs {
    if (!(rho > 0.0) || !std::isfinite(rho) || rho > kOverflow || !std::isfinite(v)) {
      throw BlowUp("Ermakov-Pinney trajectory left rho > 0 near t = " + std::to_string(t));
    }
    const double m = profile.M(t);
    if (!(m > 0.0)) throw DomainError("mass must stay positive, M(" + std::to_string(t) + ") <= 0");
    const double a = -profile.M_dot(t) / m * v - profile.omega_sq(t) * rho +
                     1.0 / (m * m * rho * rho * rho);
    return {v, a};
  };
  const auto rk4 = [&](double t, std::array<double, 2> y, double dt) {
    const Derivs k1 = rhs(t, y[0], y[1]);
    const Derivs k2 = rhs(t + dt / 2, y[0] + dt / 2 * k1.drho, y[1] + dt / 2 * k1.dv);
    const Derivs k3 = rhs(t + dt / 2, y[0] + dt / 2 * k2.drho, y[1] + dt / 2 * k2.dv);
    const Derivs k4 = rhs(t + dt, y[0] + dt * k3.drho, y[1] + dt * k3.dv);
    return std::array<double, 2>{
        y[0] + dt / 6 * (k1.drho + 2 * k2.drho + 2 * k3.drho + k4.drho),
        y[1] + dt / 6 * (k1.dv + 2 * k2.dv + 2 * k3.dv + k4.dv)};
  };

  EPSolution sol;
  sol.step = h;
  sol.times.resize(steps + 1);
  sol.rho.resize(steps + 1);
  sol.rho_dot.resize(steps + 1);
  sol.rho_ddot.resize(steps + 1);
  std::array<double, 2> y{rho0, rho_dot0};
  sol.times[0] = t_start;
  sol.rho[0] = rho0;
  sol.rho_dot[0] = rho_dot0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = t_start + h * static_cast<double>(k);
    const auto next = rk4(t, y, h);
    if (k % 2 == 0 && k + 2 <= steps) {
      const auto two = rk4(t + h, next, h);
      const auto big = rk4(t, y, 2 * h);
      sol.error_estimate = std::max(sol.error_estimate, std::abs(two[0] - big[0]) / 15.0);
    }
    y = next;
    if (!(y[0] > 0.0) || !std::isfinite(y[0]) || y[0] > kOverflow) {
      throw BlowUp("Ermakov-Pinney trajectory left rho > 0 near t = " + std::to_string(t + h));
    }
    sol.times[k + 1] = k + 1 == steps ? t_end : t_start + h * static_cast<double>(k + 1);
    sol.rho[k + 1] = y[0];
    sol.rho_dot[k + 1] = y[1];
  }
  sol.eta_rate.resize(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = sol.times[k];
    sol.rho_ddot[k] = rhs(t, sol.rho[k], sol.rho_dot[k]).dv;
    sol.eta_rate[k] = 1.0 / (profile.M(t) * sol.rho[k] * sol.rho[k]);
  }
  sol.eta = cumulative_simpson(sol.eta_rate, h);
  return sol;
}

double ep_residual(const EPSolution& sol, const TimeProfile& profile) {
  const double h = sol.step;
  double worst = 0.0;
  for (std::size_t k = 2; k + 2 < sol.size(); ++k) {
    const auto& v = sol.rho_dot;
    const double acc = (v[k - 2] - 8 * v[k - 1] + 8 * v[k + 1] - v[k + 2]) / (12 * h);
    const double t = sol.times[k];
    const double m = profile.M(t);
    const double r = acc + profile.M_dot(t) / m * v[k] + profile.omega_sq(t) * sol.rho[k] -
                     1.0 / (m * m * std::pow(sol.rho[k], 3));
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

std::vector<double> cumulative_simpson(const std::vector<double>& f, double h) {
  std::vector<double> out(f.size(), 0.0);
  if (f.size() < 2) return out;
  if (f.size() < 4) {
    for (std::size_t k = 1; k < f.size(); ++k) out[k] = out[k - 1] + h / 2 * (f[k - 1] + f[k]);
    return out;
  }
  out[1] = h / 24 * (9 * f[0] + 19 * f[1] - 5 * f[2] + f[3]);
  for (std::size_t k = 2; k < f.size(); ++k) {
    out[k] = out[k - 2] + h / 3 * (f[k - 2] + 4 * f[k - 1] + f[k]);
  }
  return out;
}

std::vector<double> phase_eta(const EPSolution& sol, int n, double sigma) {
  std::vector<double> out(sol.eta.size());
  const double scale = -(2.0 * n + 1.0 + sigma);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = scale * sol.eta[k];
  return out;
}

std::complex<double> phase_mean_check(const EPSolution& sol, std::size_t k,
                                      const ModeFamily& family, const ModelParams& params) {
  if (k < 2 || k + 2 >= sol.size()) throw DomainError("phase_mean_check needs two samples on each side");
  const double h = sol.step;
  const double delta = compute_delta(params);
  const GridField f = family(sol.rho[k]);
  const GridField fm2 = family(sol.rho[k - 2]), fm1 = family(sol.rho[k - 1]);
  const GridField fp1 = family(sol.rho[k + 1]), fp2 = family(sol.rho[k + 2]);
  GridField dt(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) {
    dt.values[i] = (fm2.values[i] - 8.0 * fm1.values[i] + 8.0 * fp1.values[i] - fp2.values[i]) / (12.0 * h);
  }
  const GridField t3 = apply_T(Generator::T3, f, params, 0.0);
  const cplx ihbar(0.0, params.hbar);
  GridField op(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) {
    op.values[i] = ihbar * dt.values[i] - sol.rho_dot[k] / (2.0 * sol.rho[k]) * t3.values[i];
  }
  return radial_inner(f, op, delta) / radial_inner(f, f, delta);
}

}  // namespace dunkl
