#include "dunkl/grid.hpp"

#include <cmath>
#include <numbers>

#include "dunkl/error.hpp"

namespace dunkl {

Grid1D::Grid1D(std::vector<double> points, double spacing, GridKind kind)
    : points_(std::move(points)), spacing_(spacing), kind_(kind) {}

std::shared_ptr<const Grid1D> Grid1D::radial(std::size_t nodes, double r_max) {
  if (nodes < 6) throw DomainError("radial grid needs at least 6 nodes");
  if (!(r_max > 0.0)) throw DomainError("radial grid needs r_max > 0");
  const double h = r_max / static_cast<double>(nodes);
  std::vector<double> r(nodes);
  for (std::size_t k = 0; k < nodes; ++k) r[k] = (static_cast<double>(k) + 0.5) * h;
  return std::shared_ptr<const Grid1D>(new Grid1D(std::move(r), h, GridKind::Radial));
}

std::shared_ptr<const Grid1D> Grid1D::symmetric(std::size_t half_nodes, double x_max) {
  if (half_nodes < 3) throw DomainError("symmetric grid needs at least 3 nodes per side");
  if (!(x_max > 0.0)) throw DomainError("symmetric grid needs x_max > 0");
  const double h = x_max / static_cast<double>(half_nodes);
  const std::size_t n = 2 * half_nodes;
  std::vector<double> x(n);
  for (std::size_t k = 0; k < half_nodes; ++k) {
    const double v = (static_cast<double>(k) + 0.5) * h;
    x[half_nodes + k] = v;
    x[half_nodes - 1 - k] = -v;
  }
  return std::shared_ptr<const Grid1D>(new Grid1D(std::move(x), h, GridKind::Symmetric));
}

std::shared_ptr<const Grid1D> Grid1D::interval(double lo, double hi, std::size_t nodes) {
  if (nodes < 6) throw DomainError("interval grid needs at least 6 nodes");
  if (!(hi > lo)) throw DomainError("interval grid needs hi > lo");
  const double h = (hi - lo) / static_cast<double>(nodes - 1);
  std::vector<double> x(nodes);
  for (std::size_t k = 0; k < nodes; ++k) x[k] = lo + static_cast<double>(k) * h;
  x.back() = hi;
  return std::shared_ptr<const Grid1D>(new Grid1D(std::move(x), h, GridKind::Interval));
}

GridField::GridField(GridPtr g, std::vector<cplx> v) : grid(std::move(g)), values(std::move(v)) {
  if (!grid || grid->size() != values.size()) {
    throw GridMismatch("field size does not match its grid");
  }
}

GridField::GridField(GridPtr g) : grid(std::move(g)), values(grid ? grid->size() : 0) {}

namespace {

void require_same_grid(const GridField& a, const GridField& b) {
  if (a.grid != b.grid && (a.size() != b.size() || a.grid->spacing() != b.grid->spacing() ||
                           (*a.grid)[0] != (*b.grid)[0])) {
    throw GridMismatch("fields live on different grids");
  }
}

}  // namespace

GridField operator+(const GridField& a, const GridField& b) {
  require_same_grid(a, b);
  GridField out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = a.values[i] + b.values[i];
  return out;
}

GridField operator-(const GridField& a, const GridField& b) {
  require_same_grid(a, b);
  GridField out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = a.values[i] - b.values[i];
  return out;
}

GridField operator*(cplx s, const GridField& a) {
  GridField out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = s * a.values[i];
  return out;
}

double l2_norm(const GridField& f) {
  double sum = 0.0;
  for (const auto& v : f.values) sum += std::norm(v);
  return std::sqrt(sum * f.grid->spacing());
}

AngularGrid::AngularGrid(std::size_t n_theta, std::size_t n_phi) {
  if (n_theta < 6 || n_theta % 2 != 0) {
    throw AsymmetricGrid("angular grid needs an even n_theta >= 6");
  }
  if (n_phi < 8 || n_phi % 4 != 0) {
    throw AsymmetricGrid("angular grid needs n_phi a multiple of 4, >= 8");
  }
  using std::numbers::pi;
  h_theta_ = pi / static_cast<double>(n_theta);
  h_phi_ = 2.0 * pi / static_cast<double>(n_phi);
  theta_.resize(n_theta);
  phi_.resize(n_phi);
  for (std::size_t i = 0; i < n_theta; ++i) theta_[i] = (static_cast<double>(i) + 0.5) * h_theta_;
  for (std::size_t j = 0; j < n_phi; ++j) phi_[j] = (static_cast<double>(j) + 0.5) * h_phi_;
}

std::size_t AngularGrid::mirror_phi_r1(std::size_t j) const noexcept {
  // pi - (j + 1/2) h = (n/2 - 1 - j + 1/2) h, wrapped into [0, n).
  const std::size_t n = phi_.size();
  const std::size_t half = n / 2;
  return j < half ? half - 1 - j : n + half - 1 - j;
}

}  // namespace dunkl
