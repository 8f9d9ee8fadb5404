#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "commands.hpp"
#include "dunkl/angular.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/propagator.hpp"
#include "dunkl/wavefunction.hpp"

namespace dunkl::app {

bool Check::passed() const {
  if (!std::isfinite(value)) return false;
  if (at_floor) return true;
  return lower_bound ? value >= tolerance : value < tolerance;
}

namespace {

// Gaussian times a complex polynomial of degree <= 3, centred in [5, 7] on (0, 12).
GridField random_field(std::mt19937_64& rng, const GridPtr& grid) {
  std::uniform_real_distribution<double> centre(5.0, 7.0), width(0.35, 0.6), coef(-1.0, 1.0);
  std::uniform_int_distribution<int> degree(0, 3);
  const double c = centre(rng), w = width(rng);
  std::vector<cplx> coeffs(static_cast<std::size_t>(degree(rng)) + 1);
  for (auto& a : coeffs) a = cplx(coef(rng), coef(rng));
  return sample(grid, [&](double r) {
    const double x = (r - c) / w;
    cplx p = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) p = p * x + *it;
    return p * std::exp(-0.5 * x * x);
  });
}

std::vector<AngularMode> angular_sweep(const RunConfig& c) {
  std::vector<AngularMode> modes;
  for (Parity e1 : {Parity::Even, Parity::Odd}) {
    for (Parity e3 : {Parity::Even, Parity::Odd}) {
      for (int nt = 0; nt < 3; ++nt) {
        for (int np = 0; np < 3; ++np) {
          AngularMode m = make_angular_mode(c.model, {e1, c.sector.e2, e3}, {0, nt, np}, c.branch);
          m.constants.lambda += c.verify.lambda_perturbation;
          modes.push_back(m);
        }
      }
    }
  }
  return modes;
}

std::size_t refined(std::size_t nodes) { return 2 * nodes - 1; }

Check order_check(std::string name, double coarse, double fine, double bound) {
  Check c{std::move(name), coarse / fine, bound, true};
  c.at_floor = c.value < bound && fine < kResolutionFloor;
  return c;
}

}  // namespace

std::vector<Check> run_checks(const RunConfig& c) {
  std::vector<Check> out;
  const auto nodes = static_cast<std::size_t>(c.verify.nodes);

  // separated angular equations over the 3 x 3 x 2 x 2 sweep
  {
    const auto modes = angular_sweep(c);
    const auto coarse = fundamental_grid(nodes), fine = fundamental_grid(refined(nodes));
    double pc = 0, pf = 0, tc = 0, tf = 0;
    for (const auto& m : modes) {
      pc = std::max(pc, residual_phi(m, *coarse));
      pf = std::max(pf, residual_phi(m, *fine));
      tc = std::max(tc, residual_theta(m, *coarse));
      tf = std::max(tf, residual_theta(m, *fine));
    }
    out.push_back({"residual_phi", pc, 1e-6});
    out.push_back(order_check("residual_phi_order", pc, pf, 12.0));
    out.push_back({"residual_theta", tc, 1e-6});
    out.push_back(order_check("residual_theta_order", tc, tf, 12.0));
  }

  // radial equation, n <= 3, over the angular modes of the configured sector
  {
    double rc = 0, rf = 0;
    for (int n = 0; n <= 3; ++n) {
      for (int nt = 0; nt < 3; ++nt) {
        for (int np = 0; np < 3; ++np) {
          const Mode m = make_mode(c.model, c.sector, {n, nt, np}, c.branch);
          SpectralConstants k = m.angular.constants;
          k.lambda += c.verify.lambda_perturbation;
          rc = std::max(rc, radial_residual(m.radial, k, *radial_residual_grid(m.radial, nodes)));
          rf = std::max(rf, radial_residual(m.radial, k, *radial_residual_grid(m.radial, refined(nodes))));
        }
      }
    }
    out.push_back({"residual_radial", rc, 1e-6});
    out.push_back(order_check("residual_radial_order", rc, rf, 8.0));
  }

  const Mode mode = make_mode(c.model, c.sector, c.quantum_numbers, c.branch);
  const double lambda = mode.angular.constants.lambda;

  // generator algebra on random fields
  {
    const auto n_fine = static_cast<std::size_t>(c.verify.commutator_nodes);
    const auto g_fine = Grid1D::radial(n_fine, 12.0);
    const auto g_a = Grid1D::radial(n_fine / 4, 12.0);
    const auto g_b = Grid1D::radial(n_fine / 2, 12.0);
    std::array<double, 3> worst{};
    double order = 1e300;
    for (int f = 0; f < c.verify.random_fields; ++f) {
      std::mt19937_64 rng(c.verify.seed + static_cast<std::uint64_t>(f));
      const auto d = commutator_defects(random_field(rng, g_fine), c.model, lambda);
      rng.seed(c.verify.seed + static_cast<std::uint64_t>(f));
      const auto da = commutator_defects(random_field(rng, g_a), c.model, lambda);
      rng.seed(c.verify.seed + static_cast<std::uint64_t>(f));
      const auto db = commutator_defects(random_field(rng, g_b), c.model, lambda);
      for (int k = 0; k < 3; ++k) {
        worst[k] = std::max(worst[k], d[k]);
        order = std::min(order, da[k] / db[k]);
      }
    }
    out.push_back({"commutator_T1T2", worst[0], 1e-4});
    out.push_back({"commutator_T2T3", worst[1], 1e-4});
    out.push_back({"commutator_T1T3", worst[2], 1e-4});
    out.push_back({"commutator_order", order, 12.0, true});
  }

  // auxiliary equation: closed-form oscillator case and the configured profile
  {
    TimeProfile osc;
    const auto sol = ep_solve(osc, 2.0, 0.0, 10.0, c.ep.step);
    double worst = 0.0;
    for (std::size_t k = 0; k < sol.size(); ++k) {
      const double t = sol.times[k];
      worst = std::max(worst, std::abs(sol.rho[k] - std::sqrt(4 * std::cos(t) * std::cos(t) + 0.25 * std::sin(t) * std::sin(t))));
    }
    out.push_back({"ep_pinney_oracle", worst, 1e-8});
  }
  const double rho0 = c.ep.rho0 ? *c.ep.rho0 : adiabatic_rho(c.profile);
  const auto ep = ep_solve(c.profile, rho0, c.ep.rho_dot0, c.verify.t_end, c.ep.step);
  out.push_back({"ep_residual", ep_residual(ep, c.profile), 1e-6});

  // phase condition on the mode family
  {
    const auto grid = Grid1D::radial(nodes, truncation_radius({mode}, *std::max_element(ep.rho.begin(), ep.rho.end())));
    const ModeFamily family = [&](double rho) { return radial_factor(mode, EPState{rho, 0.0, 0.0}, 1.0, grid); };
    double worst = 0.0;
    for (int j = 1; j <= 8; ++j) {
      const std::size_t k = 2 + (ep.size() - 5) * static_cast<std::size_t>(j) / 8;
      worst = std::max(worst, std::abs(phase_mean_check(ep, k, family, c.model)));
    }
    out.push_back({"lr_phase_condition", worst, 1e-6});
  }

  // orthonormality of 4 x 3 x 3 modes under the Dunkl measure
  {
    std::vector<Mode> modes;
    for (int n = 0; n < 4; ++n) {
      for (int nt = 0; nt < 3; ++nt) {
        for (int np = 0; np < 3; ++np) modes.push_back(make_mode(c.model, c.sector, {n, nt, np}, c.branch));
      }
    }
    const TimeProfile still;
    const auto ep0 = ep_solve(still, adiabatic_rho(still), 0.0, 0.0, 1e-3);
    const auto grid = make_snapshot_grid(modes.front().angular, nodes, truncation_radius(modes, 1.0));
    const auto gram = mode_gram_matrix(modes, ep0, 0, still, grid);
    double worst = 0.0;
    for (std::size_t a = 0; a < gram.size(); ++a) {
      for (std::size_t b = 0; b < gram.size(); ++b) worst = std::max(worst, std::abs(gram[a][b] - (a == b ? 1.0 : 0.0)));
    }
    out.push_back({"gram_identity", worst, 1e-7});
  }

  // invariant expectation of the analytic state and of the propagated one
  {
    PropagatorConfig pc;
    pc.nodes = static_cast<std::size_t>(c.verify.propagator_nodes);
    pc.r_max = truncation_radius({mode}, *std::max_element(ep.rho.begin(), ep.rho.end()));
    pc.step = c.verify.propagator_step;
    pc.profile = c.profile;
    pc.delta = mode.angular.constants.delta;
    pc.lambda = lambda;
    pc.hbar = c.model.hbar;
    const auto grid = pc.grid();
    const auto analytic = [&](double t) { return radial_factor(mode, interpolate(ep, t), c.profile.M(t), grid, true); };
    double dev = 0.0;
    for (int j = 0; j <= 10; ++j) {
      const double t = c.verify.t_end * j / 10.0;
      dev = std::max(dev, std::abs(invariant_expectation(pc, analytic(t), interpolate(ep, t), c.profile.M(t)) -
                                   mode.angular.constants.energy));
    }
    out.push_back({"invariant_eigenvalue", dev, 1e-6});

    GridField u0 = analytic(0.0);
    const double n0 = l2_norm(u0);
    for (auto& v : u0.values) v /= n0;
    double lo = 1e300, hi = -1e300, norm_drift = 0.0;
    const auto every = std::max<std::size_t>(1, static_cast<std::size_t>(0.05 / pc.step));
    const auto res = propagate(pc, u0, c.verify.t_end, 0, [&](std::size_t s, double t, const GridField& u) {
      norm_drift = std::max(norm_drift, std::abs(l2_norm(u) - 1.0));
      if (s % every == 0) {
        const double i = invariant_expectation(pc, u, interpolate(ep, t), c.profile.M(t));
        lo = std::min(lo, i);
        hi = std::max(hi, i);
      }
    });
    out.push_back({"propagator_norm_drift", norm_drift, 1e-9});
    out.push_back({"propagator_invariant_drift", hi - lo, 1e-5});
    out.push_back({"propagator_fidelity", fidelity(res.states.back(), analytic(res.times.back())), 0.999, true});
  }
  return out;
}

}  // namespace dunkl::app
