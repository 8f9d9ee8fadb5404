#include "dunkl/propagator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

#include "dunkl/error.hpp"
#include "dunkl/finite_difference.hpp"

namespace dunkl {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double centrifugal(const PropagatorConfig& c) { return c.delta * (c.delta - 1.0) + c.lambda; }

void require_grid(const PropagatorConfig& c, const GridField& u) {
  if (!u.grid || u.grid->kind() != GridKind::Radial || u.grid->size() != c.nodes ||
      std::abs(u.grid->spacing() - c.r_max / static_cast<double>(c.nodes)) >
          1e-14 * u.grid->spacing()) {
    throw GridMismatch("state does not live on the propagator grid");
  }
}

double sum_sq(const GridField& u) {
  double s = 0.0;
  for (const cplx& v : u.values) s += std::norm(v);
  return s;
}

cplx dot(const GridField& a, const GridField& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// -u'' and the (2 r u' + u) pieces of T1 and T3 with fourth-order stencils.
struct Derivatives {
  std::vector<cplx> d1;
  std::vector<cplx> d2;
};

Derivatives derivatives(const GridField& u) {
  Derivatives d{std::vector<cplx>(u.size()), std::vector<cplx>(u.size())};
  const double h = u.grid->spacing();
  fd::first_derivative<cplx, double>(u.values, h, d.d1);
  fd::second_derivative<cplx, double>(u.values, h, d.d2);
  return d;
}

// <u, T1 u>, <u, T2 u>, <u, T3 u> divided by <u, u>.
struct Moments {
  double t1;
  double t2;
  double t3;
};

Moments moments(const PropagatorConfig& c, const GridField& u) {
  const Derivatives d = derivatives(u);
  const double hb2 = c.hbar * c.hbar;
  const double cent = centrifugal(c);
  cplx t1 = 0.0, t2 = 0.0, t3 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = (*u.grid)[i];
    const cplx cu = std::conj(u[i]);
    t1 += cu * (-hb2 * d.d2[i] + hb2 * cent * u[i] / (r * r));
    t2 += cu * (r * r * u[i]);
    t3 += cu * (-kI * c.hbar * (2.0 * r * d.d1[i] + u[i]));
  }
  const double n = sum_sq(u);
  return {t1.real() / n, t2.real() / n, t3.real() / n};
}

}  // namespace

void validate(const PropagatorConfig& c) {
  if (c.nodes < 8) throw DomainError("propagator grid needs at least 8 nodes");
  if (!(c.r_max > 0.0) || !std::isfinite(c.r_max)) throw DomainError("r_max must be positive");
  if (!(c.step > 0.0) || !std::isfinite(c.step)) throw DomainError("time step must be positive");
  if (!(c.hbar > 0.0)) throw DomainError("hbar must be positive");
  if (!std::isfinite(c.delta) || !std::isfinite(c.lambda)) {
    throw DomainError("sector constants must be finite");
  }
}

double cfl_number(const PropagatorConfig& c, double t_end) {
  validate(c);
  const double h = c.r_max / static_cast<double>(c.nodes);
  const std::size_t samples = 1000;
  double m_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= samples; ++k) {
    const double t = c.t_start + (t_end - c.t_start) * static_cast<double>(k) / samples;
    m_min = std::min(m_min, c.profile.M(t));
  }
  return c.step * c.hbar / (h * h * m_min);
}

bool cfl_warning(const PropagatorConfig& c, double t_end) {
  return cfl_number(c, t_end) > c.safety_factor;
}

Tridiagonal effective_radial_hamiltonian(const PropagatorConfig& c, double t) {
  validate(c);
  const GridPtr grid = c.grid();
  const double h = grid->spacing();
  const double m = c.profile.M(t);
  const double w2 = c.profile.omega_sq(t);
  const double kin = c.hbar * c.hbar / (2.0 * m * h * h);
  const double cent = c.hbar * c.hbar * centrifugal(c) / (2.0 * m);
  Tridiagonal out{std::vector<double>(c.nodes), std::vector<double>(c.nodes - 1, -kin)};
  for (std::size_t i = 0; i < c.nodes; ++i) {
    const double r = (*grid)[i];
    out.diag[i] = 2.0 * kin + cent / (r * r) + 0.5 * m * w2 * r * r;
  }
  out.diag[0] += kin;
  return out;
}

std::vector<double> lowest_eigenvalues(const Tridiagonal& h, std::size_t count) {
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(h.diag.data(), h.diag.size());
  Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(h.lower.data(), h.lower.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  const std::size_t k = std::min<std::size_t>(count, d.size());
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + k};
}

RadialEigenpairs lowest_eigenstates(const PropagatorConfig& c, double t, std::size_t count) {
  const Tridiagonal h = effective_radial_hamiltonian(c, t);
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(h.diag.data(), h.diag.size());
  Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(h.lower.data(), h.lower.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
  const GridPtr grid = c.grid();
  const double scale = 1.0 / std::sqrt(grid->spacing());
  RadialEigenpairs out;
  for (std::size_t k = 0; k < std::min<std::size_t>(count, c.nodes); ++k) {
    out.values.push_back(solver.eigenvalues()[k]);
    GridField v(grid);
    // fix the sign so the state is positive next to the origin
    const double sign = solver.eigenvectors()(0, k) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < c.nodes; ++i) v[i] = sign * scale * solver.eigenvectors()(i, k);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

PropagationResult propagate(const PropagatorConfig& c, const GridField& u0, double t_end,
                            std::size_t stride, const StepObserver& observer) {
  validate(c);
  require_grid(c, u0);
  const double h = u0.grid->spacing();
  if (std::abs(std::sqrt(h * sum_sq(u0)) - 1.0) > 1e-6) {
    throw DomainError("initial state must be normalised");
  }
  const double span = t_end - c.t_start;
  if (!std::isfinite(span) || span < 0.0) throw DomainError("t_end must not precede t_start");
  const std::size_t steps = span == 0.0 ? 0 : static_cast<std::size_t>(std::ceil(span / c.step - 1e-9));
  const double dt = steps == 0 ? 0.0 : span / static_cast<double>(steps);

  const std::size_t n = c.nodes;
  PropagationResult result;
  result.times.push_back(c.t_start);
  result.states.push_back(u0);
  GridField u = u0;
  std::vector<cplx> rhs(n), cprime(n);
  const cplx a = kI * dt / (2.0 * c.hbar);
  for (std::size_t s = 1; s <= steps; ++s) {
    const double t_mid = c.t_start + (static_cast<double>(s) - 0.5) * dt;
    const Tridiagonal H = effective_radial_hamiltonian(c, t_mid);
    // rhs = (1 - a H) u
    for (std::size_t i = 0; i < n; ++i) {
      cplx hu = H.diag[i] * u[i];
      if (i > 0) hu += H.lower[i - 1] * u[i - 1];
      if (i + 1 < n) hu += H.lower[i] * u[i + 1];
      rhs[i] = u[i] - a * hu;
    }
    // (1 + a H) u_next = rhs by the Thomas algorithm
    cplx denom = 1.0 + a * H.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) denom = 1.0 + a * H.diag[i] - a * H.lower[i - 1] * cprime[i - 1];
      if (!(std::abs(denom) > 1e-300) || !std::isfinite(std::abs(denom))) {
        throw SingularSolve("Crank-Nicolson pivot vanished at node " + std::to_string(i));
      }
      cprime[i] = i + 1 < n ? a * H.lower[i] / denom : 0.0;
      rhs[i] = (i > 0 ? rhs[i] - a * H.lower[i - 1] * rhs[i - 1] : rhs[i]) / denom;
    }
    u[n - 1] = rhs[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) u[i] = rhs[i] - cprime[i] * u[i + 1];

    const double t = c.t_start + static_cast<double>(s) * dt;
    if (observer) observer(s, t, u);
    if (s == steps || (stride > 0 && s % stride == 0)) {
      result.times.push_back(t);
      result.states.push_back(u);
    }
  }
  return result;
}

double fidelity(const GridField& a, const GridField& b) {
  if (a.size() != b.size() || (a.grid && b.grid && a.grid->size() != b.grid->size())) {
    throw GridMismatch("fidelity needs states on a common grid");
  }
  const double na = sum_sq(a), nb = sum_sq(b);
  if (!(na > 0.0) || !(nb > 0.0)) throw ZeroState("fidelity of a vanishing state");
  return std::min(1.0, std::abs(dot(a, b)) / std::sqrt(na * nb));
}

double energy_expectation(const PropagatorConfig& c, const GridField& u, double t) {
  const Moments mo = moments(c, u);
  const double m = c.profile.M(t);
  return mo.t1 / (2.0 * m) + 0.5 * m * c.profile.omega_sq(t) * mo.t2;
}

double invariant_expectation(const PropagatorConfig& c, const GridField& u, const EPState& s,
                             double mass) {
  const Moments mo = moments(c, u);
  const double r2 = s.rho * s.rho;
  return 0.5 * ((1.0 / r2 + mass * mass * s.rho_dot * s.rho_dot) * mo.t2 + r2 * mo.t1 -
                mass * s.rho * s.rho_dot * mo.t3);
}

Observables observe(const PropagatorConfig& c, const GridField& u, double t,
                    const ObservableContext& ctx) {
  require_grid(c, u);
  Observables o;
  o.time = t;
  o.norm = std::sqrt(u.grid->spacing() * sum_sq(u));
  o.energy = energy_expectation(c, u, t);
  o.invariant = ctx.ep ? invariant_expectation(c, u, interpolate(*ctx.ep, t), c.profile.M(t)) : kNaN;
  o.fidelity = ctx.reference ? fidelity(u, ctx.reference(t)) : kNaN;
  return o;
}

void write_observables_csv(const std::filesystem::path& path, const std::vector<Observables>& rows,
                           const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  for (const auto& line : header) out << "# " << line << "\n";
  out << "t,norm,energy,invariant,fidelity\n";
  out << std::setprecision(17);
  for (const auto& o : rows) {
    out << o.time << ',' << o.norm << ',' << o.energy << ',' << o.invariant << ',' << o.fidelity
        << '\n';
  }
}

}  // namespace dunkl
