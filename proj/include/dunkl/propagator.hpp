#pragma once

// Crank-Nicolson evolution of the reduced radial function u = r^delta g on
// the half-offset radial grid, with per-step observables.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "dunkl/ermakov.hpp"
#include "dunkl/grid.hpp"

namespace dunkl {

struct PropagatorConfig {
  std::size_t nodes = 4000;
  double r_max = 12.0;
  double step = 1e-4;
  TimeProfile profile;
  double delta = 1.0;
  double lambda = 0.0;
  double hbar = 1.0;
  double t_start = 0.0;
  double safety_factor = 100.0;

  GridPtr grid() const { return Grid1D::radial(nodes, r_max); }
};

// Throws DomainError for a degenerate grid, step or hbar.
void validate(const PropagatorConfig& config);

// step * hbar / (spacing^2 * min M) over [t_start, t_end]; the implicit scheme
// is stable for any value, a large one only signals poor time resolution.
double cfl_number(const PropagatorConfig& config, double t_end);
bool cfl_warning(const PropagatorConfig& config, double t_end);

// Real symmetric tridiagonal matrix; lower[i] couples i + 1 and i.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> lower;
};

// -hbar^2 / (2M) [d^2/dr^2 - (delta (delta - 1) + lambda) / r^2] + M omega^2 r^2 / 2
// with the three-point stencil, u(-r) = -u(r) across the origin and u(r_max) = 0.
Tridiagonal effective_radial_hamiltonian(const PropagatorConfig& config, double t);

// Ascending eigenvalues of a tridiagonal matrix, at most `count` of them.
std::vector<double> lowest_eigenvalues(const Tridiagonal& h, std::size_t count);

// Ascending eigenpairs; the eigenvectors are normalised so that h sum |u|^2 = 1.
struct RadialEigenpairs {
  std::vector<double> values;
  std::vector<GridField> vectors;
};
RadialEigenpairs lowest_eigenstates(const PropagatorConfig& config, double t, std::size_t count);

struct PropagationResult {
  std::vector<double> times;
  std::vector<GridField> states;
};

// Called after every step with the step index (1-based), time and state.
using StepObserver = std::function<void(std::size_t, double, const GridField&)>;

// Evolves u0 from config.t_start to t_end; the step is shrunk so a whole
// number of steps covers the interval. States are kept at the start, every
// `stride` steps (0 keeps none in between) and at the end. u0 must live on
// config.grid() (GridMismatch) with unit norm (DomainError). SingularSolve if
// a tridiagonal pivot vanishes.
PropagationResult propagate(const PropagatorConfig& config, const GridField& u0, double t_end,
                            std::size_t stride = 0, const StepObserver& observer = {});

// |<a, b>| / (|a| |b|) on a common grid. ZeroState if either vanishes.
double fidelity(const GridField& u_num, const GridField& u_analytic);

struct Observables {
  double time = 0.0;
  double norm = 0.0;
  double energy = 0.0;
  double invariant = 0.0;
  double fidelity = 0.0;
};

// Expectations use fourth-order stencils on u. The invariant needs the
// auxiliary trajectory; the fidelity needs a reference state at time t.
// Missing inputs leave NaN.
struct ObservableContext {
  const EPSolution* ep = nullptr;
  std::function<GridField(double)> reference;
};
Observables observe(const PropagatorConfig& config, const GridField& u, double t,
                    const ObservableContext& context);

// <u, H(t) u> / <u, u> and <u, I(t) u> / <u, u> in the reduced picture.
double energy_expectation(const PropagatorConfig& config, const GridField& u, double t);
double invariant_expectation(const PropagatorConfig& config, const GridField& u,
                             const EPState& state, double mass);

void write_observables_csv(const std::filesystem::path& path, const std::vector<Observables>& rows,
                           const std::vector<std::string>& header);

}  // namespace dunkl
