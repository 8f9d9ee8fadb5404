#include "dunkl/operators.hpp"

#include <cmath>
#include <vector>

#include "dunkl/error.hpp"
#include "dunkl/finite_difference.hpp"

namespace dunkl {

namespace {

constexpr cplx kI{0.0, 1.0};

GridField derivative(const GridField& f) {
  GridField out(f.grid);
  fd::first_derivative<cplx, double>(f.values, f.grid->spacing(), out.values);
  return out;
}

GridField second_derivative(const GridField& f) {
  GridField out(f.grid);
  fd::second_derivative<cplx, double>(f.values, f.grid->spacing(), out.values);
  return out;
}

void require_radial_like(const GridField& f) {
  if (f.grid->kind() == GridKind::Symmetric) {
    throw DomainError("radial operator applied on a symmetric grid");
  }
  if ((*f.grid)[0] <= 0.0) throw DomainError("radial operator needs r > 0 at every node");
}

AngularCoefficients coefficients(const ModelParams& p, bool potential) {
  return {p.mu1, p.mu2, p.mu3, p.a, p.b, p.hbar, potential};
}

}  // namespace

GridField reflect(const GridField& f, int axis) {
  if (axis < 1 || axis > 3) throw AsymmetricGrid("reflection axis must be 1, 2 or 3");
  if (f.grid->kind() != GridKind::Symmetric) {
    throw AsymmetricGrid("x -> -x does not permute the nodes of this grid");
  }
  GridField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) out.values[i] = f.values[f.grid->mirror(i)];
  return out;
}

AngularField reflect(const AngularField& f, int axis) {
  const AngularGrid& g = *f.grid;
  AngularField out{f.grid, std::vector<double>(f.values.size())};
  for (std::size_t i = 0; i < g.n_theta(); ++i) {
    for (std::size_t j = 0; j < g.n_phi(); ++j) {
      switch (axis) {
        case 1: out.at(i, j) = f.at(i, g.mirror_phi_r1(j)); break;
        case 2: out.at(i, j) = f.at(i, g.mirror_phi_r2(j)); break;
        case 3: out.at(i, j) = f.at(g.mirror_theta(i), j); break;
        default: throw AsymmetricGrid("reflection axis must be 1, 2 or 3");
      }
    }
  }
  return out;
}

GridField dunkl_derivative(const GridField& f, double mu) {
  const GridField mirrored = reflect(f, 1);
  GridField out = derivative(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    out.values[i] += mu / (*f.grid)[i] * (f.values[i] - mirrored.values[i]);
  }
  return out;
}

GridField radial_momentum(const GridField& f, double delta, double hbar) {
  require_radial_like(f);
  GridField out = derivative(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    out.values[i] = -kI * hbar * (out.values[i] + delta * f.values[i] / (*f.grid)[i]);
  }
  return out;
}

GridField radial_momentum_sq(const GridField& f, double delta, double hbar) {
  require_radial_like(f);
  const GridField d1 = derivative(f);
  GridField out = second_derivative(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = (*f.grid)[i];
    out.values[i] = -hbar * hbar *
                    (out.values[i] + 2.0 * delta * d1.values[i] / r +
                     delta * (delta - 1.0) * f.values[i] / (r * r));
  }
  return out;
}

AngularField dunkl_angular_momentum_sq(const AngularField& f, const ModelParams& params,
                                       Exec exec) {
  AngularField out{f.grid, std::vector<double>(f.values.size())};
  kernels::angular_operator(*f.grid, f.values, coefficients(params, false), out.values, exec);
  return out;
}

AngularField angular_hamiltonian(const AngularField& f, const ModelParams& params, Exec exec) {
  AngularField out{f.grid, std::vector<double>(f.values.size())};
  kernels::angular_operator(*f.grid, f.values, coefficients(params, true), out.values, exec);
  return out;
}

GridField apply_T(Generator k, const GridField& f, const ModelParams& params,
                  double lambda_angular) {
  require_radial_like(f);
  const double delta = compute_delta(params);
  const double hbar = params.hbar;
  switch (k) {
    case Generator::T1: {
      GridField out = radial_momentum_sq(f, delta, hbar);
      const double c = hbar * hbar * (delta * (delta - 1.0) + lambda_angular);
      for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = (*f.grid)[i];
        out.values[i] += c / (r * r) * f.values[i];
      }
      return out;
    }
    case Generator::T2:
      return multiply(f, [](double r) { return r * r; });
    case Generator::T3: {
      // r P f + P (r f) = (hbar / i)(2 r f' + (2 delta + 1) f)
      const GridField d1 = derivative(f);
      GridField out(f.grid);
      for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = (*f.grid)[i];
        out.values[i] = -kI * hbar * (2.0 * r * d1.values[i] + (2.0 * delta + 1.0) * f.values[i]);
      }
      return out;
    }
  }
  throw DomainError("unknown generator");
}

std::array<double, 3> commutator_defects(const GridField& f, const ModelParams& params,
                                         double lambda_angular) {
  const auto T = [&](Generator k, const GridField& g) { return apply_T(k, g, params, lambda_angular); };
  const cplx ih = kI * params.hbar;
  const GridField t1 = T(Generator::T1, f);
  const GridField t2 = T(Generator::T2, f);
  const GridField t3 = T(Generator::T3, f);
  const GridField c12 = T(Generator::T1, t2) - T(Generator::T2, t1);
  const GridField c23 = T(Generator::T2, t3) - T(Generator::T3, t2);
  const GridField c13 = T(Generator::T1, t3) - T(Generator::T3, t1);
  const double nf = l2_norm(f);
  return {l2_norm(c12 + (2.0 * ih) * t3) / nf, l2_norm(c23 - (4.0 * ih) * t2) / nf,
          l2_norm(c13 + (4.0 * ih) * t1) / nf};
}

GridField apply_invariant(const GridField& f, const ModelParams& params, double lambda_angular,
                          const InvariantState& s) {
  if (!(s.rho > 0.0)) throw DomainError("invariant needs rho > 0");
  const double coef_t1 = s.rho * s.rho;
  const double coef_t2 = 1.0 / (s.rho * s.rho) + s.mass * s.mass * s.rho_dot * s.rho_dot;
  const double coef_t3 = -s.mass * s.rho * s.rho_dot;
  const GridField t1 = apply_T(Generator::T1, f, params, lambda_angular);
  const GridField t2 = apply_T(Generator::T2, f, params, lambda_angular);
  GridField out(f.grid);
  if (coef_t3 != 0.0) {
    const GridField t3 = apply_T(Generator::T3, f, params, lambda_angular);
    for (std::size_t i = 0; i < f.size(); ++i) out.values[i] = coef_t3 * t3.values[i];
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    out.values[i] = 0.5 * (out.values[i] + coef_t1 * t1.values[i] + coef_t2 * t2.values[i]);
  }
  return out;
}

GridField apply_transformed_invariant(const GridField& f, const ModelParams& params,
                                      double lambda_angular, double rho) {
  return apply_invariant(f, params, lambda_angular, InvariantState{rho, 0.0, 1.0});
}

GridField apply_hamiltonian(const GridField& f, const ModelParams& params, double lambda_angular,
                            double mass, double omega_sq) {
  if (!(mass > 0.0)) throw DomainError("Hamiltonian needs M > 0");
  GridField out = apply_T(Generator::T1, f, params, lambda_angular);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = (*f.grid)[i];
    out.values[i] = out.values[i] / (2.0 * mass) + 0.5 * mass * omega_sq * r * r * f.values[i];
  }
  return out;
}

GridField apply_hamiltonian_via_invariant(const GridField& f, const ModelParams& params,
                                          double lambda_angular, const InvariantState& s,
                                          double omega_sq) {
  const GridField inv = apply_invariant(f, params, lambda_angular, s);
  const GridField t3 = apply_T(Generator::T3, f, params, lambda_angular);
  const double rho2 = s.rho * s.rho;
  const double quad = 1.0 / (2.0 * s.mass * rho2 * rho2) + s.mass * s.rho_dot * s.rho_dot / (2.0 * rho2);
  GridField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = (*f.grid)[i];
    out.values[i] = inv.values[i] / (s.mass * rho2) - quad * r * r * f.values[i] +
                    s.rho_dot / (2.0 * s.rho) * t3.values[i] +
                    0.5 * s.mass * omega_sq * r * r * f.values[i];
  }
  return out;
}

cplx radial_inner(const GridField& a, const GridField& b, double delta) {
  if (a.size() != b.size()) throw GridMismatch("radial_inner: size mismatch");
  const double h = a.grid->spacing();
  const bool trapezoid = a.grid->kind() == GridKind::Interval;
  cplx sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double r = (*a.grid)[i];
    double w = h * std::pow(r, 2.0 * delta);
    if (trapezoid && (i == 0 || i + 1 == a.size())) w *= 0.5;
    sum += w * std::conj(a.values[i]) * b.values[i];
  }
  return sum;
}

}  // namespace dunkl
