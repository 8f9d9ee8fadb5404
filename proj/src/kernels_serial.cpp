#include <cstddef>

#include "angular_stencil.hpp"
#include "dunkl/kernels.hpp"

namespace dunkl::kernels::serial {

void angular_operator(const AngularGrid& grid, std::span<const double> f,
                      const AngularCoefficients& coef, std::span<double> out) {
  for (std::size_t i = 0; i < grid.n_theta(); ++i) {
    for (std::size_t j = 0; j < grid.n_phi(); ++j) {
      out[grid.index(i, j)] = detail::angular_point(grid, f.data(), coef, i, j);
    }
  }
}

void product_assemble(std::span<const cplx> radial, std::span<const double> theta,
                      std::span<const double> phi, std::span<cplx> out) {
  const std::size_t nr = radial.size();
  for (std::size_t t = 0; t < theta.size(); ++t) {
    for (std::size_t p = 0; p < phi.size(); ++p) {
      const double ang = theta[t] * phi[p];
      cplx* line = out.data() + (t * phi.size() + p) * nr;
      for (std::size_t r = 0; r < nr; ++r) line[r] = ang * radial[r];
    }
  }
}

cplx separable_inner(const ProductShape& shape, std::span<const double> w_r,
                     std::span<const double> w_theta, std::span<const double> w_phi,
                     std::span<const cplx> a, std::span<const cplx> b) {
  cplx total = 0.0;
  for (std::size_t t = 0; t < shape.n_theta; ++t) {
    for (std::size_t p = 0; p < shape.n_phi; ++p) {
      const std::size_t base = (t * shape.n_phi + p) * shape.n_r;
      cplx line = 0.0;
      for (std::size_t r = 0; r < shape.n_r; ++r) {
        line += w_r[r] * std::conj(a[base + r]) * b[base + r];
      }
      total += w_theta[t] * w_phi[p] * line;
    }
  }
  return total;
}

void apply_lines(const ProductShape& shape, std::span<const cplx> in, const LineOperator& op,
                 std::span<cplx> out) {
  for (std::size_t l = 0; l < shape.lines(); ++l) {
    op(in.subspan(l * shape.n_r, shape.n_r), out.subspan(l * shape.n_r, shape.n_r));
  }
}

}  // namespace dunkl::kernels::serial
