#include "dunkl/wavefunction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>

#include "dunkl/error.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/specfun.hpp"

namespace dunkl {

namespace {

using ld = long double;

constexpr char kMagic[8] = {'D', 'K', 'L', 'S', 'N', 'A', 'P', '1'};

template <typename T>
T radial_closed_form(const RadialMode& m, T kappa) {
  const T hbar = m.hbar;
  const T y = kappa * kappa / hbar;
  return T(m.c_r) * std::pow(kappa, T(m.sigma) + T(0.5)) * std::exp(-y / 2) *
         laguerre_recurrence(m.n, T(m.sigma), y);
}

// Weights of an angle rule that turn sum w g into int measure * g, times the
// number of fundamental-domain copies.
void measure_weights(const AngleQuadrature& q, double a, double b, double sin_pow, double cos_pow,
                     double copies, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes = q.angles;
  weights.resize(q.angles.size());
  for (std::size_t i = 0; i < q.angles.size(); ++i) {
    const double s = std::sin(q.angles[i]), c = std::cos(q.angles[i]);
    weights[i] = copies * q.weights[i] * std::pow(s, sin_pow - (2 * a + 1)) * std::pow(c, cos_pow - (2 * b + 1));
  }
}

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw ConfigError("truncated snapshot file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

void require_same_grid(const StateSnapshot& a, const StateSnapshot& b) {
  if (!a.grid || a.grid != b.grid || a.values.size() != b.values.size()) {
    throw GridMismatch("snapshots live on different grids");
  }
}

}  // namespace

RadialMode make_radial_mode(int n, double sigma, double hbar) {
  if (n < 0) throw DomainError("radial quantum number must be >= 0");
  if (!(sigma > -1.0)) throw DomainError("sigma must exceed -1");
  if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
  RadialMode m{n, sigma, hbar, 1.0};
  // int R^2 dkappa = c^2 hbar^{sigma+1} / 2 * int y^sigma e^{-y} L_n^2 dy
  const QuadratureRule rule = gauss_laguerre(n + 2, sigma);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double l = laguerre(n, sigma, rule.nodes[i]);
    acc += rule.weights[i] * l * l;
  }
  m.c_r = 1.0 / std::sqrt(0.5 * std::pow(hbar, sigma + 1.0) * acc);
  return m;
}

double radial_norm_closed_form(int n, double sigma, double hbar) {
  const double log_c2 = std::log(2.0) + log_gamma(n + 1.0) - (sigma + 1.0) * std::log(hbar) -
                        log_gamma(n + sigma + 1.0);
  return std::exp(0.5 * log_c2);
}

double eval_radial(const RadialMode& mode, double kappa) {
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  return radial_closed_form(mode, kappa);
}

GridPtr radial_residual_grid(const RadialMode& mode, std::size_t nodes, double margin) {
  const double kmax = std::sqrt(mode.hbar * (4.0 * mode.n + 2.0 * mode.sigma + 30.0));
  return Grid1D::interval(margin, kmax, nodes);
}

double radial_residual(const RadialMode& mode, const SpectralConstants& spectral, const Grid1D& grid) {
  const std::size_t n = grid.size();
  if (n < 6) throw DomainError("radial residual needs at least 6 nodes");
  const ld lo = grid[0];
  const ld h = (static_cast<ld>(grid[n - 1]) - lo) / static_cast<ld>(n - 1);
  const ld hbar = mode.hbar;
  const ld energy = hbar * (2 * static_cast<ld>(mode.n) + static_cast<ld>(mode.sigma) + 1);
  const ld delta = spectral.delta;
  const ld centrifugal = delta * (delta - 1) + static_cast<ld>(spectral.lambda);
  std::vector<ld> x(n), f(n);
  ld scale = 0;
  for (std::size_t k = 0; k < n; ++k) {
    x[k] = lo + static_cast<ld>(k) * h;
    f[k] = radial_closed_form<ld>(mode, x[k]);
    scale = std::max(scale, std::abs(f[k]));
  }
  ld worst = 0;
  for (std::size_t k = 2; k + 2 < n; ++k) {
    const ld d2 = (-f[k - 2] + 16 * f[k - 1] - 30 * f[k] + 16 * f[k + 1] - f[k + 2]) / (12 * h * h);
    const ld r = d2 + (2 * energy - x[k] * x[k] - hbar * hbar * centrifugal / (x[k] * x[k])) / (hbar * hbar) * f[k];
    worst = std::max(worst, std::abs(r));
  }
  return static_cast<double>(worst / scale);
}

Mode make_mode(const ModelParams& params, const ParitySector& sector, const QuantumNumbers& nq,
               AzimuthalBranch branch) {
  Mode m;
  m.angular = make_angular_mode(params, sector, nq, branch);
  m.radial = make_radial_mode(nq.n, m.angular.constants.sigma, params.hbar);
  return m;
}

double truncation_radius(const std::vector<Mode>& modes, double rho_max) {
  double r = 0.0;
  for (const Mode& m : modes) {
    r = std::max(r, std::sqrt(m.radial.hbar * (4.0 * m.radial.n + 2.0 * m.radial.sigma + 30.0)));
  }
  return rho_max * r;
}

SnapshotGridPtr make_snapshot_grid(const AngularMode& reference, std::size_t radial_nodes,
                                   double r_max, std::size_t theta_nodes, std::size_t phi_nodes) {
  auto g = std::make_shared<SnapshotGrid>();
  g->params = reference.params;
  g->sector = reference.sector;
  g->branch = reference.constants.branch;
  g->radial = Grid1D::radial(radial_nodes, r_max);
  const double delta = compute_delta(reference.params);
  g->radial_weights.resize(radial_nodes);
  for (std::size_t i = 0; i < radial_nodes; ++i) {
    g->radial_weights[i] = g->radial->spacing() * std::pow((*g->radial)[i], 2.0 * delta);
  }
  const ModelParams& p = reference.params;
  const double ta = reference.theta_jacobi_a(), tb = reference.theta_jacobi_b();
  measure_weights(fundamental_quadrature(static_cast<int>(theta_nodes), ta, tb), ta, tb,
                  1.0 + 2.0 * p.mu1 + 2.0 * p.mu2, 2.0 * p.mu3, 2.0, g->theta, g->theta_weights);
  const double pa = reference.phi_jacobi_a(), pb = reference.phi_jacobi_b();
  measure_weights(fundamental_quadrature(static_cast<int>(phi_nodes), pa, pb), pa, pb, 2.0 * p.mu2,
                  2.0 * p.mu1, 4.0, g->phi, g->phi_weights);
  return g;
}

GridField radial_factor(const Mode& mode, const EPState& state, double mass, const GridPtr& grid,
                        bool reduced) {
  if (!(state.rho > 0.0)) throw DomainError("rho must be positive");
  const double delta = mode.angular.constants.delta;
  const double hbar = mode.radial.hbar;
  const double eta = -(2.0 * mode.radial.n + 1.0 + mode.radial.sigma) * state.eta;
  const double chirp = mass * state.rho_dot / (2.0 * hbar * state.rho);
  const double amp = 1.0 / std::sqrt(state.rho);
  return sample(grid, [&](double r) {
    const double power = reduced ? 1.0 : std::pow(r, -delta);
    return power * amp * eval_radial(mode.radial, r / state.rho) *
           std::polar(1.0, chirp * r * r + eta);
  });
}

StateSnapshot assemble_psi(const Mode& mode, const EPSolution& ep, std::size_t k,
                           const TimeProfile& profile, const SnapshotGridPtr& grid) {
  if (k >= ep.size()) throw DomainError("time index outside the Ermakov-Pinney solution");
  const auto& sec = grid->sector;
  const auto& ms = mode.angular.sector;
  if (sec.e1 != ms.e1 || sec.e2 != ms.e2 || sec.e3 != ms.e3) {
    throw GridMismatch("mode and snapshot grid belong to different parity sectors");
  }
  StateSnapshot s;
  s.time = ep.times[k];
  s.rho = ep.rho[k];
  s.rho_dot = ep.rho_dot[k];
  s.mass = profile.M(s.time);
  s.eta = -(2.0 * mode.radial.n + 1.0 + mode.radial.sigma) * ep.eta[k];
  s.lambda = mode.angular.constants.lambda;
  s.grid = grid;
  const GridField radial =
      radial_factor(mode, EPState{ep.rho[k], ep.rho_dot[k], ep.eta[k]}, s.mass, grid->radial);
  std::vector<double> theta(grid->theta.size()), phi(grid->phi.size());
  for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = eval_theta(mode.angular, grid->theta[i]);
  for (std::size_t j = 0; j < phi.size(); ++j) phi[j] = eval_phi(mode.angular, grid->phi[j]);
  s.values.resize(grid->shape().size());
  kernels::product_assemble(radial.values, theta, phi, s.values);
  return s;
}

std::vector<std::vector<cplx>> mode_gram_matrix(const std::vector<Mode>& modes,
                                                const EPSolution& ep, std::size_t k,
                                                const TimeProfile& profile,
                                                const SnapshotGridPtr& grid) {
  if (k >= ep.size()) throw DomainError("time index outside the Ermakov-Pinney solution");
  const auto& sec = grid->sector;
  const double mass = profile.M(ep.times[k]);
  std::vector<GridField> radial;
  std::vector<std::vector<double>> theta, phi;
  for (const auto& m : modes) {
    const auto& ms = m.angular.sector;
    if (sec.e1 != ms.e1 || sec.e2 != ms.e2 || sec.e3 != ms.e3) {
      throw GridMismatch("mode and snapshot grid belong to different parity sectors");
    }
    radial.push_back(radial_factor(m, EPState{ep.rho[k], ep.rho_dot[k], ep.eta[k]}, mass, grid->radial));
    std::vector<double> t(grid->theta.size()), p(grid->phi.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = eval_theta(m.angular, grid->theta[i]);
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = eval_phi(m.angular, grid->phi[j]);
    theta.push_back(std::move(t));
    phi.push_back(std::move(p));
  }
  const std::size_t n = modes.size();
  std::vector<std::vector<cplx>> gram(n, std::vector<cplx>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      cplx r = 0.0;
      for (std::size_t i = 0; i < radial[a].size(); ++i) {
        r += grid->radial_weights[i] * std::conj(radial[a][i]) * radial[b][i];
      }
      double t = 0.0, p = 0.0;
      for (std::size_t i = 0; i < theta[a].size(); ++i) t += grid->theta_weights[i] * theta[a][i] * theta[b][i];
      for (std::size_t j = 0; j < phi[a].size(); ++j) p += grid->phi_weights[j] * phi[a][j] * phi[b][j];
      gram[a][b] = r * t * p;
    }
  }
  return gram;
}

StateSnapshot superpose(const std::vector<std::complex<double>>& coeffs,
                        const std::vector<StateSnapshot>& states) {
  if (states.empty() || coeffs.size() != states.size()) {
    throw DomainError("superpose needs one coefficient per state");
  }
  StateSnapshot out = states.front();
  std::fill(out.values.begin(), out.values.end(), cplx(0.0));
  for (std::size_t s = 0; s < states.size(); ++s) {
    require_same_grid(states.front(), states[s]);
    if (states[s].time != out.time) throw GridMismatch("superposed snapshots at different times");
    if (states[s].lambda != out.lambda) out.lambda = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += coeffs[s] * states[s].values[i];
  }
  return out;
}

std::complex<double> norm_integral(const StateSnapshot& a, const StateSnapshot& b, Exec exec) {
  require_same_grid(a, b);
  const SnapshotGrid& g = *a.grid;
  return kernels::separable_inner(g.shape(), g.radial_weights, g.theta_weights, g.phi_weights, a.values,
                                  b.values, exec);
}

double invariant_expectation(const StateSnapshot& state, Exec exec) {
  if (std::isnan(state.lambda)) throw DomainError("invariant needs a single angular eigenvalue");
  const SnapshotGrid& g = *state.grid;
  const InvariantState inv{state.rho, state.rho_dot, state.mass};
  const LineOperator op = [&](std::span<const cplx> in, std::span<cplx> out) {
    const GridField f(g.radial, std::vector<cplx>(in.begin(), in.end()));
    const GridField r = apply_invariant(f, g.params, state.lambda, inv);
    std::copy(r.values.begin(), r.values.end(), out.begin());
  };
  std::vector<cplx> applied(state.values.size());
  kernels::apply_lines(g.shape(), state.values, op, applied, exec);
  const cplx num = kernels::separable_inner(g.shape(), g.radial_weights, g.theta_weights, g.phi_weights,
                                            state.values, applied, exec);
  return num.real() / norm_integral(state, state, exec).real();
}

void write_snapshot_csv(const std::filesystem::path& path, const StateSnapshot& s,
                        const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  for (const auto& line : header) out << "# " << line << "\n";
  out << "r,theta,phi,re_psi,im_psi\n";
  out << std::setprecision(17);
  const SnapshotGrid& g = *s.grid;
  const ProductShape shape = g.shape();
  for (std::size_t t = 0; t < shape.n_theta; ++t) {
    for (std::size_t p = 0; p < shape.n_phi; ++p) {
      for (std::size_t r = 0; r < shape.n_r; ++r) {
        const cplx v = s.values[(t * shape.n_phi + p) * shape.n_r + r];
        out << (*g.radial)[r] << ',' << g.theta[t] << ',' << g.phi[p] << ',' << v.real() << ','
            << v.imag() << '\n';
      }
    }
  }
}

void write_snapshot_binary(const std::filesystem::path& path, const StateSnapshot& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  const SnapshotGrid& g = *s.grid;
  out.write(kMagic, sizeof kMagic);
  put_u64(out, g.radial->size());
  put_u64(out, g.theta.size());
  put_u64(out, g.phi.size());
  for (double v : {s.time, s.rho, s.rho_dot, s.mass, s.eta}) put_f64(out, v);
  for (double r : g.radial->points()) put_f64(out, r);
  for (double t : g.theta) put_f64(out, t);
  for (double p : g.phi) put_f64(out, p);
  for (const cplx& v : s.values) {
    put_f64(out, v.real());
    put_f64(out, v.imag());
  }
}

SnapshotDump read_snapshot_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) {
    throw ConfigError(path.string() + " is not a snapshot dump");
  }
  const std::uint64_t nr = get_u64(in), nt = get_u64(in), np = get_u64(in);
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 32;
  if (nr > kLimit || nt > kLimit || np > kLimit || nr * nt * np > kLimit) {
    throw ConfigError("implausible snapshot dimensions in " + path.string());
  }
  SnapshotDump d;
  d.time = get_f64(in);
  d.rho = get_f64(in);
  d.rho_dot = get_f64(in);
  d.mass = get_f64(in);
  d.eta = get_f64(in);
  d.r.resize(nr);
  d.theta.resize(nt);
  d.phi.resize(np);
  for (auto& v : d.r) v = get_f64(in);
  for (auto& v : d.theta) v = get_f64(in);
  for (auto& v : d.phi) v = get_f64(in);
  d.values.resize(nr * nt * np);
  for (auto& v : d.values) {
    const double re = get_f64(in);
    v = cplx(re, get_f64(in));
  }
  return d;
}

}  // namespace dunkl
