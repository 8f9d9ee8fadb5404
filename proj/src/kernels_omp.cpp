#include <cstddef>

#include "angular_stencil.hpp"
#include "dunkl/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dunkl {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

namespace kernels::parallel {

void angular_operator(const AngularGrid& grid, std::span<const double> f,
                      const AngularCoefficients& coef, std::span<double> out) {
  const auto nt = static_cast<std::ptrdiff_t>(grid.n_theta());
  const std::size_t np = grid.n_phi();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < nt; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    for (std::size_t j = 0; j < np; ++j) {
      out[grid.index(ii, j)] = detail::angular_point(grid, f.data(), coef, ii, j);
    }
  }
}

void product_assemble(std::span<const cplx> radial, std::span<const double> theta,
                      std::span<const double> phi, std::span<cplx> out) {
  const std::size_t nr = radial.size();
  const std::size_t np = phi.size();
  const auto lines = static_cast<std::ptrdiff_t>(theta.size() * np);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t l = 0; l < lines; ++l) {
    const auto ll = static_cast<std::size_t>(l);
    const double ang = theta[ll / np] * phi[ll % np];
    cplx* line = out.data() + ll * nr;
    for (std::size_t r = 0; r < nr; ++r) line[r] = ang * radial[r];
  }
}

cplx separable_inner(const ProductShape& shape, std::span<const double> w_r,
                     std::span<const double> w_theta, std::span<const double> w_phi,
                     std::span<const cplx> a, std::span<const cplx> b) {
  const auto lines = static_cast<std::ptrdiff_t>(shape.lines());
  double re = 0.0;
  double im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im)
  for (std::ptrdiff_t l = 0; l < lines; ++l) {
    const auto ll = static_cast<std::size_t>(l);
    const std::size_t base = ll * shape.n_r;
    cplx line = 0.0;
    for (std::size_t r = 0; r < shape.n_r; ++r) {
      line += w_r[r] * std::conj(a[base + r]) * b[base + r];
    }
    line *= w_theta[ll / shape.n_phi] * w_phi[ll % shape.n_phi];
    re += line.real();
    im += line.imag();
  }
  return {re, im};
}

void apply_lines(const ProductShape& shape, std::span<const cplx> in, const LineOperator& op,
                 std::span<cplx> out) {
  const auto lines = static_cast<std::ptrdiff_t>(shape.lines());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t l = 0; l < lines; ++l) {
    const auto ll = static_cast<std::size_t>(l);
    op(in.subspan(ll * shape.n_r, shape.n_r), out.subspan(ll * shape.n_r, shape.n_r));
  }
}

}  // namespace kernels::parallel
}  // namespace dunkl
