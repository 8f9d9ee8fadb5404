#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "doctest.h"
#include "dunkl/ermakov.hpp"
#include "dunkl/error.hpp"
#include "dunkl/specfun.hpp"

using namespace dunkl;

namespace {

TimeProfile oscillator(double omega) {
  TimeProfile p;
  p.frequency.omega0 = omega;
  return p;
}

TimeProfile driven() {
  TimeProfile p;
  p.frequency.kind = FrequencyKind::Sinusoidal;
  p.frequency.omega0 = 1.0;
  p.frequency.amplitude = 0.1;
  p.frequency.nu = 1.0;
  return p;
}

// Independent reference: Dormand-Prince on (rho, rho_dot, int dt / (M rho^2)).
std::array<double, 3> odeint_reference(const TimeProfile& prof, double rho0, double v0, double t_end) {
  using state = std::array<double, 3>;
  namespace ode = boost::numeric::odeint;
  state y{rho0, v0, 0.0};
  auto sys = [&](const state& s, state& d, double t) {
    const double m = prof.M(t);
    d[0] = s[1];
    d[1] = -prof.M_dot(t) / m * s[1] - prof.omega_sq(t) * s[0] + 1.0 / (m * m * std::pow(s[0], 3));
    d[2] = 1.0 / (m * s[0] * s[0]);
  };
  ode::integrate_adaptive(ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<state>()), sys, y,
                          0.0, t_end, 1e-4);
  return y;
}

}  // namespace

TEST_CASE("fixed point") {
  const auto sol = ep_solve(oscillator(1.0), 1.0, 0.0, 5.0, 1e-2);
  for (double r : sol.rho) CHECK(r == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(adiabatic_rho(oscillator(4.0)) == doctest::Approx(0.5));
}

TEST_CASE("driven Pinney closed form") {
  const auto sol = ep_solve(oscillator(1.0), 2.0, 0.0, 10.0, 1e-3);
  double worst = 0.0;
  for (std::size_t k = 0; k < sol.size(); ++k) {
    const double t = sol.times[k];
    const double exact = std::sqrt(4 * std::cos(t) * std::cos(t) + 0.25 * std::sin(t) * std::sin(t));
    worst = std::max(worst, std::abs(sol.rho[k] - exact));
  }
  CHECK(worst < 1e-8);
  CHECK(sol.error_estimate < 1e-8);
  CHECK(sol.times.back() == doctest::Approx(10.0));
  CHECK(ep_residual(sol, oscillator(1.0)) < 1e-8);
}

TEST_CASE("free particle") {
  const auto sol = ep_solve(oscillator(0.0), 1.0, 0.0, 4.0, 1e-3);
  for (std::size_t k = 0; k < sol.size(); k += 100) {
    CHECK(sol.rho[k] == doctest::Approx(std::sqrt(1 + sol.times[k] * sol.times[k])).epsilon(1e-10));
  }
}

TEST_CASE("global error is fourth order") {
  auto err = [](double h) {
    const auto sol = ep_solve(oscillator(1.0), 2.0, 0.0, 5.0, h);
    const double t = sol.times.back();
    return std::abs(sol.rho.back() - std::sqrt(4 * std::cos(t) * std::cos(t) + 0.25 * std::sin(t) * std::sin(t)));
  };
  CHECK(err(2e-2) / err(1e-2) > 12.0);
}

TEST_CASE("time reversal") {
  const TimeProfile prof = driven();
  const auto fwd = ep_solve(prof, 1.3, 0.2, 4.0, 1e-3);
  const auto back = ep_solve(prof, fwd.rho.back(), fwd.rho_dot.back(), 0.0, 1e-3, 4.0);
  CHECK(back.times.back() == doctest::Approx(0.0).scale(1.0));
  CHECK(std::abs(back.rho.back() - 1.3) < 1e-8);
  CHECK(std::abs(back.rho_dot.back() - 0.2) < 1e-8);
}

TEST_CASE("matches an adaptive integrator with exponential mass") {
  TimeProfile prof = driven();
  prof.mass.kind = MassKind::Exponential;
  prof.mass.gamma = 0.1;
  const double rho0 = adiabatic_rho(prof);
  const auto sol = ep_solve(prof, rho0, 0.0, 6.0, 1e-3);
  const auto ref = odeint_reference(prof, rho0, 0.0, 6.0);
  CHECK(std::abs(sol.rho.back() - ref[0]) < 1e-9);
  CHECK(std::abs(sol.rho_dot.back() - ref[1]) < 1e-9);
  CHECK(std::abs(sol.eta.back() - ref[2]) < 1e-8);
  CHECK(ep_residual(sol, prof) < 1e-7);

  // adaptive quadrature over the interpolated trajectory
  const double oracle = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double t) {
        const EPState s = interpolate(sol, t);
        return 1.0 / (prof.M(t) * s.rho * s.rho);
      },
      0.0, 6.0, 12, 1e-13);
  CHECK(std::abs(sol.eta.back() - oracle) < 1e-8);
  const auto eta = phase_eta(sol, 1, 0.5);
  CHECK(eta.back() == doctest::Approx(-3.5 * oracle).epsilon(1e-10));
}

TEST_CASE("phase examples") {
  const auto sol = ep_solve(oscillator(1.0), 1.0, 0.0, 2.0, 1e-2);
  const auto eta = phase_eta(sol, 0, 1.5);
  CHECK(eta.back() == doctest::Approx(-5.0).epsilon(1e-13));
  const auto eta2 = phase_eta(sol, 2, 0.5);
  for (std::size_t k = 0; k < sol.size(); ++k) {
    CHECK(eta2[k] == doctest::Approx(-5.5 * sol.times[k]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("cumulative simpson is fourth order") {
  auto err = [](std::size_t n) {
    const double h = 2.0 / static_cast<double>(n - 1);
    std::vector<double> f(n);
    for (std::size_t k = 0; k < n; ++k) f[k] = std::exp(h * static_cast<double>(k));
    const auto c = cumulative_simpson(f, h);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(c[k] - (std::exp(h * static_cast<double>(k)) - 1)));
    return worst;
  };
  CHECK(err(41) / err(81) > 12.0);
  CHECK(err(81) < 1e-7);
}

TEST_CASE("interpolation between samples") {
  const auto sol = ep_solve(oscillator(1.0), 2.0, 0.0, 3.0, 1e-3);
  for (double t : {0.0123, 1.5555, 2.999}) {
    const EPState s = interpolate(sol, t);
    const double c = std::cos(t), sn = std::sin(t);
    const double exact = std::sqrt(4 * c * c + 0.25 * sn * sn);
    CHECK(s.rho == doctest::Approx(exact).epsilon(1e-8));
    CHECK(s.rho_dot == doctest::Approx((-4 * c * sn + 0.25 * sn * c) / exact).epsilon(1e-7).scale(1.0));
  }
  CHECK_THROWS_AS(interpolate(sol, 3.1), DomainError);
}

TEST_CASE("positivity and blow-up") {
  TimeProfile inverted;
  inverted.frequency.kind = FrequencyKind::OmegaSquared;
  inverted.frequency.omega_sq = -1.0;
  CHECK_THROWS_AS(ep_solve(inverted, 1.0, 1.0, 400.0, 5e-2), BlowUp);
  CHECK_THROWS_AS(ep_solve(oscillator(1.0), 0.05, 0.0, 5.0, 0.5), BlowUp);
  CHECK_THROWS_AS(ep_solve(oscillator(1.0), 0.0, 0.0, 5.0, 0.1), DomainError);
  CHECK_THROWS_AS(ep_solve(oscillator(1.0), 1.0, 0.0, 5.0, 0.0), DomainError);
  CHECK_THROWS_AS(adiabatic_rho(inverted), DomainError);
  // a stable inverted run over a short window stays positive
  const auto sol = ep_solve(inverted, 1.0, 0.0, 2.0, 1e-3);
  for (double r : sol.rho) CHECK(r > 0.0);
}

TEST_CASE("frequency presets") {
  FrequencyProfile f;
  f.kind = FrequencyKind::LinearRamp;
  f.omega0 = 1.0;
  f.slope = 0.5;
  CHECK(f.omega_squared(2.0) == doctest::Approx(4.0));
  f.kind = FrequencyKind::Sinusoidal;
  f.amplitude = 0.2;
  f.nu = 2.0;
  f.phase = 0.1;
  CHECK(f.omega_squared(0.3) == doctest::Approx(std::pow(1.0 + 0.2 * std::sin(0.7), 2)));
  MassProfile m;
  m.kind = MassKind::Exponential;
  m.m0 = 2.0;
  m.gamma = 0.3;
  CHECK(m.value(1.0) == doctest::Approx(2.0 * std::exp(0.3)));
  CHECK(m.derivative(1.0) == doctest::Approx(0.6 * std::exp(0.3)));
}

TEST_CASE("tabulated profiles") {
  const auto dir = std::filesystem::temp_directory_path() / "dunkl_test_tab";
  std::filesystem::create_directories(dir);
  const auto path = dir / "mass.csv";
  {
    std::ofstream out(path);
    out << "# mass profile\nt,value\n";
    for (int k = 0; k <= 200; ++k) {
      const double t = 0.05 * k;
      out << t << "," << std::exp(0.1 * t) << "\n";
    }
  }
  const auto table = std::make_shared<const TabulatedProfile>(TabulatedProfile::from_csv(path));
  CHECK(table->size() == 201);
  CHECK((*table)(3.3) == doctest::Approx(std::exp(0.33)).epsilon(1e-6));
  CHECK(table->derivative(3.3) == doctest::Approx(0.1 * std::exp(0.33)).epsilon(1e-5));
  CHECK_THROWS_AS((*table)(11.0), DomainError);

  TimeProfile tab = driven();
  tab.mass.kind = MassKind::Tabulated;
  tab.mass.table = table;
  TimeProfile exact = driven();
  exact.mass.kind = MassKind::Exponential;
  exact.mass.gamma = 0.1;
  const auto a = ep_solve(tab, 1.0, 0.0, 5.0, 1e-3);
  const auto b = ep_solve(exact, 1.0, 0.0, 5.0, 1e-3);
  CHECK(std::abs(a.rho.back() - b.rho.back()) < 1e-5);

  // integrating up to the last table row hits it only up to rounding
  const auto full = ep_solve(tab, 1.0, 0.0, 10.0, 0.01);
  CHECK(full.times.back() == 10.0);
  CHECK((*table)(10.0 + 1e-13) == (*table)(10.0));
  CHECK_THROWS_AS((*table)(10.0 + 1e-9), DomainError);

  {
    std::ofstream out(dir / "bad.csv");
    out << "0,1\n1,2\n1,3\n2,4\n";
  }
  CHECK_THROWS_AS(TabulatedProfile::from_csv(dir / "bad.csv"), DomainError);
  {
    std::ofstream out(dir / "garbage.csv");
    out << "0,1\n1,2\nx,y\n";
  }
  CHECK_THROWS_AS(TabulatedProfile::from_csv(dir / "garbage.csv"), ConfigError);
  CHECK_THROWS_AS(TabulatedProfile::from_csv(dir / "missing.csv"), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("phase mean check vanishes") {
  ModelParams params;
  params.mu1 = 0.3;
  params.mu2 = 0.4;
  params.mu3 = 0.2;
  const double delta = compute_delta(params);
  const double sigma = compute_sigma(delta, 2.2);
  auto value = [&](std::size_t nodes) {
    const auto grid = Grid1D::radial(nodes, 10.0);
    const ModeFamily family = [&](double rho) {
      return sample(grid, [&](double r) {
        const double k = r / rho;
        return cplx(std::pow(r, -delta) / std::sqrt(rho) * std::pow(k, sigma + 0.5) * std::exp(-0.5 * k * k) *
                        laguerre(1, sigma, k * k),
                    0.0);
      });
    };
    const auto sol = ep_solve(driven(), 1.0, 0.0, 3.0, 1e-3);
    return std::abs(phase_mean_check(sol, sol.index_of(2.0), family, params));
  };
  const double coarse = value(1000), fine = value(2000);
  CHECK(fine < 1e-6);
  CHECK(coarse / fine > 4.0);

  const auto grid = Grid1D::radial(1000, 10.0);
  const ModeFamily fixed = [&](double) {
    return sample(grid, [&](double r) { return cplx(std::pow(r, 1.0 - delta) * std::exp(-r * r / 2), 0.0); });
  };
  const auto stat = ep_solve(oscillator(1.0), 1.0, 0.0, 1.0, 1e-2);
  CHECK(std::abs(phase_mean_check(stat, 10, fixed, params)) < 1e-14);
}
