// Serial reference vs OpenMP kernels on snapshot-sized inputs.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "dunkl/kernels.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/propagator.hpp"

using namespace dunkl;

namespace {

struct Snapshot {
  ProductShape shape;
  std::vector<cplx> radial;
  std::vector<double> theta, phi, w_r, w_t, w_p;
  std::vector<cplx> a, b;

  explicit Snapshot(std::size_t n_r) : shape{n_r, 32, 32} {
    for (std::size_t i = 0; i < n_r; ++i) {
      const double r = (i + 0.5) * 10.0 / n_r;
      radial.emplace_back(r * std::exp(-r * r / 2), std::sin(r));
      w_r.push_back(10.0 / n_r * r * r);
    }
    for (std::size_t t = 0; t < 32; ++t) {
      theta.push_back(std::sin(0.1 * t));
      phi.push_back(std::cos(0.1 * t));
      w_t.push_back(0.05);
      w_p.push_back(0.05);
    }
    a.resize(shape.size());
    b.resize(shape.size());
    kernels::product_assemble(radial, theta, phi, a, Exec::Serial);
    kernels::product_assemble(radial, phi, theta, b, Exec::Serial);
  }
};

template <Exec E>
void BM_ProductAssemble(benchmark::State& state) {
  Snapshot s(static_cast<std::size_t>(state.range(0)));
  std::vector<cplx> out(s.shape.size());
  for (auto _ : state) {
    kernels::product_assemble(s.radial, s.theta, s.phi, out, E);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.shape.size()));
}

template <Exec E>
void BM_SeparableInner(benchmark::State& state) {
  Snapshot s(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::separable_inner(s.shape, s.w_r, s.w_t, s.w_p, s.a, s.b, E));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.shape.size()));
}

template <Exec E>
void BM_InvariantLines(benchmark::State& state) {
  Snapshot s(static_cast<std::size_t>(state.range(0)));
  const auto grid = Grid1D::radial(s.shape.n_r, 10.0);
  ModelParams p;
  p.mu1 = 0.3;
  p.mu2 = 0.4;
  p.mu3 = 0.2;
  const LineOperator op = [&](std::span<const cplx> in, std::span<cplx> out) {
    const GridField f(grid, std::vector<cplx>(in.begin(), in.end()));
    const GridField g = apply_invariant(f, p, 2.1, {1.2, 0.3, 1.0});
    std::copy(g.values.begin(), g.values.end(), out.begin());
  };
  std::vector<cplx> out(s.shape.size());
  for (auto _ : state) {
    kernels::apply_lines(s.shape, s.a, op, out, E);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.shape.size()));
}

template <Exec E>
void BM_AngularOperator(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const AngularGrid grid(n, 2 * n);
  std::vector<double> f(grid.size()), out(grid.size());
  for (std::size_t i = 0; i < grid.n_theta(); ++i) {
    for (std::size_t j = 0; j < grid.n_phi(); ++j) {
      f[grid.index(i, j)] = std::sin(grid.theta()[i]) * std::cos(grid.phi()[j]);
    }
  }
  const AngularCoefficients coef{0.3, 0.4, 0.2, 0.1, 0.5, 1.0, true};
  for (auto _ : state) {
    kernels::angular_operator(grid, f, coef, out, E);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

void BM_CrankNicolsonStep(benchmark::State& state) {
  PropagatorConfig c;
  c.nodes = static_cast<std::size_t>(state.range(0));
  c.r_max = 12.0;
  c.step = 1e-4;
  const auto u0 = sample(c.grid(), [&](double r) { return cplx(r * std::exp(-r * r / 2), 0.0); });
  const auto u = cplx(1.0 / l2_norm(u0)) * u0;
  for (auto _ : state) benchmark::DoNotOptimize(propagate(c, u, 100 * c.step).states.back().values.data());
  state.SetItemsProcessed(state.iterations() * 100 * static_cast<long>(c.nodes));
}

}  // namespace

BENCHMARK(BM_ProductAssemble<Exec::Serial>)->Arg(500)->Arg(2000);
BENCHMARK(BM_ProductAssemble<Exec::Parallel>)->Arg(500)->Arg(2000);
BENCHMARK(BM_SeparableInner<Exec::Serial>)->Arg(500)->Arg(2000);
BENCHMARK(BM_SeparableInner<Exec::Parallel>)->Arg(500)->Arg(2000);
BENCHMARK(BM_InvariantLines<Exec::Serial>)->Arg(500);
BENCHMARK(BM_InvariantLines<Exec::Parallel>)->Arg(500);
BENCHMARK(BM_AngularOperator<Exec::Serial>)->Arg(64)->Arg(256);
BENCHMARK(BM_AngularOperator<Exec::Parallel>)->Arg(64)->Arg(256);
BENCHMARK(BM_CrankNicolsonStep)->Arg(4000);

BENCHMARK_MAIN();
