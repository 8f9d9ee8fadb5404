#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "dunkl/error.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/specfun.hpp"
#include "dunkl/wavefunction.hpp"

using namespace dunkl;

namespace {

ModelParams deformed() {
  ModelParams p;
  p.mu1 = 0.3;
  p.mu2 = 0.4;
  p.mu3 = 0.2;
  p.a = 0.1;
  p.b = 0.5;
  return p;
}

TimeProfile driven() {
  TimeProfile p;
  p.frequency.kind = FrequencyKind::Sinusoidal;
  p.frequency.omega0 = 1.0;
  p.frequency.amplitude = 0.2;
  p.frequency.nu = 2.0;
  return p;
}

const ParitySector kEven{};

double rho_max(const EPSolution& ep) { return *std::max_element(ep.rho.begin(), ep.rho.end()); }

}  // namespace

TEST_CASE("radial closed form shape") {
  const auto m0 = make_radial_mode(0, 1.5, 1.0);
  const double peak = std::sqrt(2.0);
  CHECK(eval_radial(m0, peak) > eval_radial(m0, peak - 1e-3));
  CHECK(eval_radial(m0, peak) > eval_radial(m0, peak + 1e-3));
  CHECK(eval_radial(m0, 1e-6) < 1e-8);
  const auto m1 = make_radial_mode(1, 0.8, 0.5);
  const double root = std::sqrt(0.5 * 1.8);
  CHECK(eval_radial(m1, root - 1e-6) * eval_radial(m1, root + 1e-6) < 0.0);
  CHECK(std::abs(eval_radial(m1, root)) < 1e-12);
  CHECK_THROWS_AS(eval_radial(m0, 0.0), DomainError);
  CHECK_THROWS_AS(make_radial_mode(-1, 1.0, 1.0), DomainError);
}

TEST_CASE("radial normalisation matches the Gamma closed form") {
  for (int n = 0; n < 5; ++n) {
    for (double sigma : {0.5, 1.5, 2.0233, 4.7}) {
      for (double hbar : {1.0, 0.5}) {
        CHECK(make_radial_mode(n, sigma, hbar).c_r ==
              doctest::Approx(radial_norm_closed_form(n, sigma, hbar)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("radial residual") {
  ModelParams und;
  auto spectral = compute_spectral(und, kEven, {0, 0, 0});
  CHECK(spectral.sigma == doctest::Approx(1.5));
  const auto m = make_radial_mode(0, spectral.sigma, 1.0);
  CHECK(radial_residual(m, spectral, *radial_residual_grid(m, 2000)) < 1e-8);

  const ModelParams p = deformed();
  for (int n = 0; n <= 3; ++n) {
    const Mode mode = make_mode(p, kEven, {n, 1, 1});
    const double fine = radial_residual(mode.radial, mode.angular.constants, *radial_residual_grid(mode.radial, 2000));
    const double coarse = radial_residual(mode.radial, mode.angular.constants, *radial_residual_grid(mode.radial, 1000));
    CHECK(fine < 1e-6);
    CHECK(coarse / fine > 12.0);
    SpectralConstants off = mode.angular.constants;
    off.lambda += 1e-3;
    CHECK(radial_residual(mode.radial, off, *radial_residual_grid(mode.radial, 2000)) > 1e-5);
  }
}

TEST_CASE("orthonormality under the Dunkl measure") {
  const ModelParams p = deformed();
  std::vector<Mode> modes;
  for (int n = 0; n < 3; ++n) {
    for (int nt = 0; nt < 2; ++nt) {
      for (int np = 0; np < 2; ++np) modes.push_back(make_mode(p, kEven, {n, nt, np}));
    }
  }
  const auto ep = ep_solve(TimeProfile{}, 1.0, 0.0, 0.0, 1e-3);
  const auto grid = make_snapshot_grid(modes.front().angular, 3000, truncation_radius(modes, 1.0));
  std::vector<StateSnapshot> s;
  for (const auto& m : modes) s.push_back(assemble_psi(m, ep, 0, TimeProfile{}, grid));
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      const cplx g = norm_integral(s[i], s[j]);
      CHECK(std::abs(g - cplx(i == j ? 1.0 : 0.0)) < 1e-8);
    }
  }
  CHECK(norm_integral(s[0], s[0], Exec::Serial).real() == doctest::Approx(1.0).epsilon(1e-8));
  const auto gram = mode_gram_matrix(modes, ep, 0, TimeProfile{}, grid);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) CHECK(std::abs(gram[i][j] - norm_integral(s[i], s[j])) < 1e-13);
  }
}

TEST_CASE("state at t = 0 equals the static eigenstate") {
  const ModelParams p = deformed();
  const Mode mode = make_mode(p, kEven, {1, 0, 1});
  const TimeProfile prof = driven();
  const auto ep = ep_solve(prof, adiabatic_rho(prof), 0.0, 1.0, 1e-3);
  const auto grid = make_snapshot_grid(mode.angular, 500, truncation_radius({mode}, rho_max(ep)));
  const auto s = assemble_psi(mode, ep, 0, prof, grid);
  CHECK(s.eta == 0.0);
  const double delta = mode.angular.constants.delta;
  for (std::size_t i = 0; i < grid->radial->size(); i += 37) {
    const double r = (*grid->radial)[i];
    const double expect = std::pow(r, -delta) * eval_radial(mode.radial, r) * eval_theta(mode.angular, grid->theta[3]) *
                          eval_phi(mode.angular, grid->phi[2]);
    CHECK(std::abs(s.values[(3 * grid->phi.size() + 2) * grid->radial->size() + i]) ==
          doctest::Approx(std::abs(expect)).epsilon(1e-13));
  }
}

TEST_CASE("norm and invariant along a driven trajectory") {
  const ModelParams p = deformed();
  const TimeProfile prof = driven();
  const auto ep = ep_solve(prof, adiabatic_rho(prof), 0.0, 5.0, 1e-3);
  const Mode m0 = make_mode(p, kEven, {0, 1, 0});
  const Mode m1 = make_mode(p, kEven, {1, 1, 0});
  const auto grid = make_snapshot_grid(m0.angular, 4000, truncation_radius({m0, m1}, rho_max(ep)), 8, 8);
  double lo = 1e300, hi = -1e300, sup_lo = 1e300, sup_hi = -1e300;
  const double e0 = m0.angular.constants.energy, e1 = m1.angular.constants.energy;
  const double c0 = std::sqrt(0.3), c1 = std::sqrt(0.7);
  for (std::size_t k = 0; k < ep.size(); k += 50) {
    const auto s0 = assemble_psi(m0, ep, k, prof, grid);
    const auto s1 = assemble_psi(m1, ep, k, prof, grid);
    CHECK(norm_integral(s0, s0).real() == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(std::abs(norm_integral(s0, s1)) < 1e-7);
    const double i0 = invariant_expectation(s0);
    CHECK(i0 == doctest::Approx(e0).epsilon(1e-6));
    lo = std::min(lo, i0);
    hi = std::max(hi, i0);
    const auto sup = superpose({c0, cplx(0.0, c1)}, {s0, s1});
    const double is = invariant_expectation(sup);
    sup_lo = std::min(sup_lo, is);
    sup_hi = std::max(sup_hi, is);
    CHECK(is == doctest::Approx(0.3 * e0 + 0.7 * e1).epsilon(1e-6));
  }
  CHECK(hi - lo < 1e-6);
  CHECK(sup_hi - sup_lo < 1e-6);
  CHECK(invariant_expectation(assemble_psi(m0, ep, 0, prof, grid), Exec::Serial) ==
        doctest::Approx(invariant_expectation(assemble_psi(m0, ep, 0, prof, grid), Exec::Parallel)).epsilon(1e-14));

  const Mode other = make_mode(p, kEven, {0, 0, 0});
  const auto mixed = superpose({1.0, 1.0}, {assemble_psi(m0, ep, 0, prof, grid), assemble_psi(other, ep, 0, prof, grid)});
  CHECK_THROWS_AS(invariant_expectation(mixed), DomainError);
}

TEST_CASE("gauge factor removes the chirp") {
  const ModelParams p = deformed();
  const Mode mode = make_mode(p, kEven, {2, 0, 0});
  const auto grid = Grid1D::radial(800, 10.0);
  const EPState st{1.3, -0.7, 0.0};
  const double mass = 1.7;
  const GridField ups = radial_factor(mode, st, mass, grid);
  const GridField f = radial_factor(mode, EPState{st.rho, 0.0, 0.0}, mass, grid);
  const GridField back = multiply(ups, [&](double r) {
    return std::polar(1.0, -mass * st.rho_dot * r * r / (2.0 * p.hbar * st.rho));
  });
  double worst = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) worst = std::max(worst, std::abs(back[i] - f[i]));
  CHECK(worst < 1e-10);

  // I'(rho) F = E F away from the origin
  const GridField ip = apply_transformed_invariant(f, p, mode.angular.constants.lambda, st.rho);
  double dev = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    scale = std::max(scale, std::abs(f[i]));
    if ((*grid)[i] > 0.5) dev = std::max(dev, std::abs(ip[i] - mode.angular.constants.energy * f[i]));
  }
  CHECK(dev / scale < 1e-5);
}

TEST_CASE("radial factor solves the time-dependent equation") {
  const ModelParams p = deformed();
  const TimeProfile prof = driven();
  const Mode mode = make_mode(p, kEven, {1, 0, 1});
  const double lam = mode.angular.constants.lambda;
  const auto ep = ep_solve(prof, adiabatic_rho(prof), 0.0, 3.0, 1e-4);
  auto residual = [&](std::size_t nodes, double tau) {
    const auto grid = Grid1D::radial(nodes, 12.0);
    const double t = 1.7;
    auto psi = [&](double s) { return radial_factor(mode, interpolate(ep, s), prof.M(s), grid); };
    const GridField dt = cplx(1.0 / (2.0 * tau)) * (psi(t + tau) - psi(t - tau));
    const GridField now = psi(t);
    const GridField h = apply_hamiltonian(now, p, lam, prof.M(t), prof.omega_sq(t));
    const GridField r = cplx(0.0, p.hbar) * dt - h;
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
      scale = std::max(scale, std::abs(now[i]));
      if ((*grid)[i] > 0.5) worst = std::max(worst, std::abs(r[i]));
    }
    return worst / scale;
  };
  const double coarse = residual(2000, 4e-3);
  const double mid = residual(2000, 2e-3);
  CHECK(coarse / mid > 3.5);
  CHECK(residual(2000, 1e-4) < 1e-5);
}

TEST_CASE("undeformed limit matches the textbook oscillator state") {
  ModelParams und;
  const TimeProfile prof = driven();
  const auto ep = ep_solve(prof, adiabatic_rho(prof), 0.0, 2.0, 1e-3);
  for (int n = 0; n < 3; ++n) {
    for (int e1 : {1, -1}) {
      const ParitySector sec{parity_from_int(e1), Parity::Odd, Parity::Even};
      const Mode mode = make_mode(und, sec, {n, 0, 0});
      const int l = 1 + (1 - e1) / 2;
      const std::size_t k = ep.index_of(1.5);
      const double rho = ep.rho[k], rd = ep.rho_dot[k], m = prof.M(ep.times[k]);
      const auto grid = Grid1D::radial(400, 8.0);
      const GridField ours = radial_factor(mode, EPState{rho, rd, ep.eta[k]}, m, grid);
      // psi_l = rho^{-3/2} (r/rho)^l L_n^{l+1/2}(r^2/rho^2) exp((i M rhodot/rho - 1/rho^2) r^2 / 2)
      //         exp(-i (2n + l + 3/2) int dt / (M rho^2))
      const double nrm = std::sqrt(2.0 * std::tgamma(n + 1.0) / std::tgamma(n + l + 1.5));
      const GridField book = sample(grid, [&](double r) {
        const double x = r / rho;
        return nrm * std::pow(rho, -1.5) * std::pow(x, l) * laguerre(n, l + 0.5, x * x) *
               std::exp(cplx(-0.5 * x * x, 0.5 * m * rd / rho * r * r - (2 * n + l + 1.5) * ep.eta[k]));
      });
      double worst = 0.0;
      for (std::size_t i = 0; i < grid->size(); ++i) worst = std::max(worst, std::abs(ours[i] - book[i]));
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("snapshot export round trip") {
  const ModelParams p = deformed();
  const Mode mode = make_mode(p, kEven, {0, 0, 0});
  const TimeProfile prof = driven();
  const auto ep = ep_solve(prof, 1.0, 0.1, 0.5, 1e-2);
  const auto grid = make_snapshot_grid(mode.angular, 40, 8.0, 6, 4);
  const auto s = assemble_psi(mode, ep, ep.size() - 1, prof, grid);
  const auto dir = std::filesystem::temp_directory_path() / "dunkl_test_snap";
  std::filesystem::create_directories(dir);
  write_snapshot_binary(dir / "s.bin", s);
  const auto d = read_snapshot_binary(dir / "s.bin");
  CHECK(d.r.size() == 40);
  CHECK(d.theta.size() == 6);
  CHECK(d.phi.size() == 4);
  CHECK(d.time == s.time);
  CHECK(d.rho == s.rho);
  CHECK(d.eta == s.eta);
  CHECK(d.values == s.values);
  CHECK(std::filesystem::file_size(dir / "s.bin") == 8 + 3 * 8 + 5 * 8 + (40 + 6 + 4) * 8 + 40 * 6 * 4 * 16);

  write_snapshot_csv(dir / "s.csv", s, {"version test", "t = 0.5"});
  std::ifstream in(dir / "s.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "# version test");
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line == "r,theta,phi,re_psi,im_psi");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 40 * 6 * 4);

  {
    std::ofstream bad(dir / "bad.bin", std::ios::binary);
    bad << "NOTASNAP";
  }
  CHECK_THROWS_AS(read_snapshot_binary(dir / "bad.bin"), ConfigError);
  std::filesystem::resize_file(dir / "s.bin", 100);
  CHECK_THROWS_AS(read_snapshot_binary(dir / "s.bin"), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("grid mismatch") {
  const ModelParams p = deformed();
  const Mode mode = make_mode(p, kEven, {0, 0, 0});
  const auto ep = ep_solve(TimeProfile{}, 1.0, 0.0, 0.1, 1e-2);
  const auto g1 = make_snapshot_grid(mode.angular, 40, 8.0, 6, 4);
  const auto g2 = make_snapshot_grid(mode.angular, 40, 8.0, 6, 4);
  const auto a = assemble_psi(mode, ep, 0, TimeProfile{}, g1);
  const auto b = assemble_psi(mode, ep, 0, TimeProfile{}, g2);
  CHECK_THROWS_AS(norm_integral(a, b), GridMismatch);
  const Mode odd = make_mode(p, ParitySector{Parity::Odd, Parity::Even, Parity::Even}, {0, 0, 0});
  CHECK_THROWS_AS(assemble_psi(odd, ep, 0, TimeProfile{}, g1), GridMismatch);
}
