#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "dunkl/angular.hpp"
#include "dunkl/error.hpp"
#include "dunkl/propagator.hpp"
#include "dunkl/wavefunction.hpp"

#ifndef DUNKL_VERSION
#define DUNKL_VERSION "unknown"
#endif

namespace dunkl::app {

namespace {

std::ofstream open_csv(const std::filesystem::path& path, const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  for (const auto& line : header) out << "# " << line << '\n';
  out << std::setprecision(17);
  return out;
}

void say(const CommandContext& ctx, const std::string& line) {
  if (ctx.log) *ctx.log << line << '\n';
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

int e(Parity p) { return static_cast<int>(p); }

double initial_rho(const RunConfig& c) {
  return c.ep.rho0 ? *c.ep.rho0 : adiabatic_rho(c.profile);
}

std::string index_name(const std::string& stem, std::size_t i, const std::string& ext) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu", i);
  return stem + "_" + buf + ext;
}

}  // namespace

std::vector<std::string> header_lines(const ResolvedConfig& config, const std::string& command) {
  std::vector<std::string> out{std::string("dunkl ") + DUNKL_VERSION, "command: " + command,
                               "config: " + config.document.dump()};
  std::string ov = "overrides:";
  for (const auto& o : config.overrides) ov += " " + o;
  out.push_back(ov);
  return out;
}

std::vector<SpectrumRow> spectrum_table(const RunConfig& c) {
  std::vector<ParitySector> sectors;
  if (c.spectrum.all_sectors) {
    for (Parity e1 : {Parity::Even, Parity::Odd}) {
      for (Parity e2 : {Parity::Even, Parity::Odd}) {
        for (Parity e3 : {Parity::Even, Parity::Odd}) sectors.push_back({e1, e2, e3});
      }
    }
  } else {
    sectors.push_back(c.sector);
  }
  std::vector<SpectrumRow> rows;
  for (const auto& s : sectors) {
    for (int n = 0; n <= c.spectrum.n_max; ++n) {
      for (int nt = 0; nt <= c.spectrum.n_theta_max; ++nt) {
        for (int np = 0; np <= c.spectrum.n_phi_max; ++np) {
          const QuantumNumbers nq{n, nt, np};
          rows.push_back({nq, s, compute_spectral(c.model, s, nq, c.branch)});
        }
      }
    }
  }
  return rows;
}

int cmd_spectrum(const CommandContext& ctx) {
  const auto rows = spectrum_table(ctx.config.run);
  const auto path = ctx.out_dir / "spectrum.csv";
  auto out = open_csv(path, header_lines(ctx.config, "spectrum"));
  out << "n,n_theta,n_phi,e1,e2,e3,alpha,m2,beta,lambda,sigma,E\n";
  for (const auto& r : rows) {
    const auto& k = r.constants;
    out << r.nq.n << ',' << r.nq.n_theta << ',' << r.nq.n_phi << ',' << e(r.sector.e1) << ','
        << e(r.sector.e2) << ',' << e(r.sector.e3) << ',' << k.alpha << ',' << k.m_squared << ','
        << k.beta << ',' << k.lambda << ',' << k.sigma << ',' << k.energy << '\n';
  }
  say(ctx, "spectrum: " + std::to_string(rows.size()) + " rows -> " + path.string());
  return kOk;
}

int cmd_modes(const CommandContext& ctx) {
  const RunConfig& c = ctx.config.run;
  const Mode mode = make_mode(c.model, c.sector, c.quantum_numbers, c.branch);
  const std::size_t half = static_cast<std::size_t>((c.modes.angular_nodes + 1) / 2);
  const AngularGrid grid(2 * half, 4 * half);
  std::vector<double> th(half), ph(half);
  for (std::size_t i = 0; i < half; ++i) {
    th[i] = eval_theta(mode.angular, grid.theta()[i]);
    ph[i] = eval_phi(mode.angular, grid.phi()[i]);
  }
  const auto theta = extend_by_parity(mode.angular, th, AngleKind::Theta);
  const auto phi = extend_by_parity(mode.angular, ph, AngleKind::Phi);
  const auto header = header_lines(ctx.config, "modes");
  {
    auto out = open_csv(ctx.out_dir / "mode_theta.csv", header);
    out << "theta,Theta\n";
    for (std::size_t i = 0; i < theta.size(); ++i) out << grid.theta()[i] << ',' << theta[i] << '\n';
  }
  {
    auto out = open_csv(ctx.out_dir / "mode_phi.csv", header);
    out << "phi,Phi\n";
    for (std::size_t j = 0; j < phi.size(); ++j) out << grid.phi()[j] << ',' << phi[j] << '\n';
  }
  {
    const double kmax = std::sqrt(mode.radial.hbar * (4.0 * mode.radial.n + 2.0 * mode.radial.sigma + 30.0));
    const auto radial = Grid1D::radial(static_cast<std::size_t>(c.modes.radial_nodes), kmax);
    auto out = open_csv(ctx.out_dir / "mode_radial.csv", header);
    out << "kappa,R\n";
    for (std::size_t i = 0; i < radial->size(); ++i) {
      out << (*radial)[i] << ',' << eval_radial(mode.radial, (*radial)[i]) << '\n';
    }
  }
  const auto& k = mode.angular.constants;
  say(ctx, "modes: lambda = " + fmt(k.lambda) + ", sigma = " + fmt(k.sigma) + ", E = " + fmt(k.energy));
  say(ctx, "modes: c_theta = " + fmt(mode.angular.c_theta) + ", c_phi = " + fmt(mode.angular.c_phi) +
               ", c_r = " + fmt(mode.radial.c_r));
  return kOk;
}

namespace {

void write_ep(const std::filesystem::path& path, const EPSolution& sol, std::size_t every,
              const std::vector<std::string>& header) {
  auto out = open_csv(path, header);
  out << "t,rho,rho_dot,eta\n";
  for (std::size_t k = 0; k < sol.size(); ++k) {
    if (k % every != 0 && k + 1 != sol.size()) continue;
    out << sol.times[k] << ',' << sol.rho[k] << ',' << sol.rho_dot[k] << ',' << sol.eta[k] << '\n';
  }
}

}  // namespace

int cmd_ep(const CommandContext& ctx) {
  const RunConfig& c = ctx.config.run;
  const auto sol = ep_solve(c.profile, initial_rho(c), c.ep.rho_dot0, c.ep.t_end, c.ep.step);
  const auto path = ctx.out_dir / "ep.csv";
  write_ep(path, sol, static_cast<std::size_t>(c.ep.output_every), header_lines(ctx.config, "ep"));
  say(ctx, "ep: " + std::to_string(sol.size()) + " steps, error estimate " + fmt(sol.error_estimate) +
               ", residual " + fmt(ep_residual(sol, c.profile)) + " -> " + path.string());
  return kOk;
}

EPTable read_ep_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  EPTable t;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "t,rho,rho_dot,eta") throw ConfigError(path.string() + " is not an ep table");
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    double v[4];
    char comma;
    if (!(row >> v[0] >> comma >> v[1] >> comma >> v[2] >> comma >> v[3])) {
      throw ConfigError("malformed row in " + path.string() + ": " + line);
    }
    t.t.push_back(v[0]);
    t.rho.push_back(v[1]);
    t.rho_dot.push_back(v[2]);
    t.eta.push_back(v[3]);
  }
  return t;
}

int cmd_evolve(const CommandContext& ctx) {
  const RunConfig& c = ctx.config.run;
  const auto& ev = c.evolve;
  const auto header = header_lines(ctx.config, "evolve");
  const Mode mode = make_mode(c.model, c.sector, c.quantum_numbers, c.branch);
  const auto ep = ep_solve(c.profile, initial_rho(c), c.ep.rho_dot0, ev.t_end, c.ep.step);
  write_ep(ctx.out_dir / "ep.csv", ep, static_cast<std::size_t>(c.ep.output_every), header);

  if (!ev.snapshot_times.empty()) {
    const double rho_max = *std::max_element(ep.rho.begin(), ep.rho.end());
    const double r_max = ev.snapshot_r_max > 0.0 ? ev.snapshot_r_max : truncation_radius({mode}, rho_max);
    const auto grid = make_snapshot_grid(mode.angular, static_cast<std::size_t>(ev.snapshot_radial_nodes),
                                         r_max, static_cast<std::size_t>(ev.snapshot_theta_nodes),
                                         static_cast<std::size_t>(ev.snapshot_phi_nodes));
    for (std::size_t i = 0; i < ev.snapshot_times.size(); ++i) {
      const auto snap = assemble_psi(mode, ep, ep.index_of(ev.snapshot_times[i]), c.profile, grid);
      auto h = header;
      h.push_back("t = " + fmt(snap.time) + ", rho = " + fmt(snap.rho) + ", rho_dot = " + fmt(snap.rho_dot) +
                  ", eta = " + fmt(snap.eta));
      if (ev.snapshot_format != "binary") write_snapshot_csv(ctx.out_dir / index_name("snapshot", i, ".csv"), snap, h);
      if (ev.snapshot_format != "csv") write_snapshot_binary(ctx.out_dir / index_name("snapshot", i, ".bin"), snap);
    }
  }

  PropagatorConfig pc;
  pc.nodes = static_cast<std::size_t>(ev.propagator_nodes);
  pc.r_max = ev.propagator_r_max;
  pc.step = ev.propagator_step;
  pc.profile = c.profile;
  pc.delta = mode.angular.constants.delta;
  pc.lambda = mode.angular.constants.lambda;
  pc.hbar = c.model.hbar;
  const auto grid = pc.grid();
  const auto analytic = [&](double t) { return radial_factor(mode, interpolate(ep, t), c.profile.M(t), grid, true); };
  const ObservableContext obs{&ep, analytic};
  std::vector<Observables> rows;
  const auto every = static_cast<std::size_t>(ev.observe_every);
  if (ev.propagate) {
    if (cfl_warning(pc, ev.t_end) && ctx.log) {
      *ctx.log << "evolve: warning, step * hbar / (h^2 M) = " << fmt(cfl_number(pc, ev.t_end))
               << " exceeds the safety factor\n";
    }
    GridField u0 = analytic(0.0);
    const double n0 = l2_norm(u0);
    for (auto& v : u0.values) v /= n0;
    rows.push_back(observe(pc, u0, 0.0, obs));
    const auto res = propagate(pc, u0, ev.t_end, 0, [&](std::size_t s, double t, const GridField& u) {
      if (s % every == 0 || std::abs(t - ev.t_end) < 0.5 * pc.step) {
        rows.push_back(observe(pc, u, t, obs));
        if (!std::isfinite(rows.back().norm)) throw BlowUp("propagated state is no longer finite");
      }
    });
    if (rows.back().time != res.times.back()) rows.push_back(observe(pc, res.states.back(), res.times.back(), obs));
  } else {
    for (std::size_t k = 0; k < ep.size(); k += every) rows.push_back(observe(pc, analytic(ep.times[k]), ep.times[k], obs));
  }
  write_observables_csv(ctx.out_dir / "observables.csv", rows, header);
  const auto& last = rows.back();
  say(ctx, "evolve: t = " + fmt(last.time) + ", norm = " + fmt(last.norm) + ", <I> = " + fmt(last.invariant) +
               " (E = " + fmt(mode.angular.constants.energy) + "), fidelity = " + fmt(last.fidelity));
  return kOk;
}

int cmd_verify(const CommandContext& ctx) {
  const auto checks = run_checks(ctx.config.run);
  const auto path = ctx.out_dir / "verify.csv";
  auto header = header_lines(ctx.config, "verify");
  header.push_back("checks named *_order or *_fidelity pass when value >= tolerance, the rest when value < tolerance");
  header.push_back("status floor: order not resolvable, finer residual already below 1e-10");
  auto out = open_csv(path, header);
  out << "name,value,tolerance,status\n";
  bool all = true;
  for (const auto& ch : checks) {
    const std::string status = !ch.passed() ? "fail" : ch.at_floor ? "floor" : "pass";
    all = all && ch.passed();
    out << ch.name << ',' << ch.value << ',' << ch.tolerance << ',' << status << '\n';
    say(ctx, ch.name + "," + fmt(ch.value) + "," + fmt(ch.tolerance) + "," + status);
  }
  return all ? kOk : kVerifyFailed;
}

}  // namespace dunkl::app
