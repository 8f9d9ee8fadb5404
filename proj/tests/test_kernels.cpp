#include <cmath>
#include <random>

#include "doctest.h"
#include "dunkl/kernels.hpp"

using namespace dunkl;

namespace {

std::vector<double> random_real(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (auto& x : v) x = nd(rng);
  return v;
}

std::vector<cplx> random_complex(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(nd(rng), nd(rng));
  return v;
}

}  // namespace

TEST_CASE("serial and parallel angular operator agree") {
  std::mt19937_64 rng(3);
  const AngularGrid grid(24, 40);
  const auto f = random_real(grid.size(), rng);
  for (bool pot : {false, true}) {
    const AngularCoefficients c{0.3, 0.4, 0.2, 0.1, 0.5, 1.0, pot};
    std::vector<double> a(grid.size()), b(grid.size());
    kernels::angular_operator(grid, f, c, a, Exec::Serial);
    kernels::angular_operator(grid, f, c, b, Exec::Parallel);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
  }
}

TEST_CASE("product assembly and separable inner product") {
  std::mt19937_64 rng(5);
  const ProductShape shape{37, 6, 8};
  const auto radial = random_complex(shape.n_r, rng);
  const auto theta = random_real(shape.n_theta, rng);
  const auto phi = random_real(shape.n_phi, rng);
  std::vector<cplx> s(shape.size()), p(shape.size());
  kernels::product_assemble(radial, theta, phi, s, Exec::Serial);
  kernels::product_assemble(radial, theta, phi, p, Exec::Parallel);
  CHECK(s == p);
  CHECK(s[(2 * shape.n_phi + 3) * shape.n_r + 5] == radial[5] * theta[2] * phi[3]);

  auto wr = random_real(shape.n_r, rng), wt = random_real(shape.n_theta, rng), wp = random_real(shape.n_phi, rng);
  for (auto* w : {&wr, &wt, &wp}) {
    for (auto& x : *w) x = std::abs(x);
  }
  const auto b = random_complex(shape.size(), rng);
  const cplx serial = kernels::separable_inner(shape, wr, wt, wp, s, b, Exec::Serial);
  const cplx parallel = kernels::separable_inner(shape, wr, wt, wp, s, b, Exec::Parallel);
  CHECK(std::abs(serial - parallel) <= 1e-12 * std::abs(serial));

  // self inner product of a product state factorises
  const cplx self = kernels::separable_inner(shape, wr, wt, wp, s, s, Exec::Serial);
  double nr = 0, nt = 0, np = 0;
  for (std::size_t k = 0; k < shape.n_r; ++k) nr += wr[k] * std::norm(radial[k]);
  for (std::size_t k = 0; k < shape.n_theta; ++k) nt += wt[k] * theta[k] * theta[k];
  for (std::size_t k = 0; k < shape.n_phi; ++k) np += wp[k] * phi[k] * phi[k];
  CHECK(self.real() == doctest::Approx(nr * nt * np).epsilon(1e-12));
  CHECK(std::abs(self.imag()) < 1e-12 * self.real());
}

TEST_CASE("apply_lines") {
  std::mt19937_64 rng(11);
  const ProductShape shape{16, 6, 8};
  const auto in = random_complex(shape.size(), rng);
  const LineOperator op = [](std::span<const cplx> a, std::span<cplx> out) {
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * static_cast<double>(k) + (k ? a[k - 1] : 0.0);
  };
  std::vector<cplx> s(shape.size()), p(shape.size());
  kernels::apply_lines(shape, in, op, s, Exec::Serial);
  kernels::apply_lines(shape, in, op, p, Exec::Parallel);
  CHECK(s == p);
  CHECK(s[shape.n_r + 3] == in[shape.n_r + 3] * 3.0 + in[shape.n_r + 2]);
}

TEST_CASE("thread control") {
  const int before = max_threads();
  CHECK(before >= 1);
  set_threads(1);
  CHECK(max_threads() == 1);
  set_threads(before);
}
