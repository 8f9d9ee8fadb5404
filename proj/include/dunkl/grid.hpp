#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace dunkl {

using cplx = std::complex<double>;

enum class GridKind {
  Radial,     // r_k = (k + 1/2) h on (0, r_max); r = 0 is never a node
  Symmetric,  // x_k = +/-(k + 1/2) h; x -> -x permutes the nodes
  Interval,   // uniform, endpoints included
};

class Grid1D {
 public:
  static std::shared_ptr<const Grid1D> radial(std::size_t nodes, double r_max);
  static std::shared_ptr<const Grid1D> symmetric(std::size_t half_nodes, double x_max);
  static std::shared_ptr<const Grid1D> interval(double lo, double hi, std::size_t nodes);

  std::span<const double> points() const noexcept { return points_; }
  double operator[](std::size_t i) const noexcept { return points_[i]; }
  std::size_t size() const noexcept { return points_.size(); }
  double spacing() const noexcept { return spacing_; }
  GridKind kind() const noexcept { return kind_; }

  // Index of the node at -x_i; only meaningful on symmetric grids.
  std::size_t mirror(std::size_t i) const noexcept { return points_.size() - 1 - i; }

 private:
  Grid1D(std::vector<double> points, double spacing, GridKind kind);

  std::vector<double> points_;
  double spacing_;
  GridKind kind_;
};

using GridPtr = std::shared_ptr<const Grid1D>;

// Complex samples on a 1D grid.
struct GridField {
  GridPtr grid;
  std::vector<cplx> values;

  GridField() = default;
  GridField(GridPtr g, std::vector<cplx> v);
  explicit GridField(GridPtr g);  // zero field

  std::size_t size() const noexcept { return values.size(); }
  cplx& operator[](std::size_t i) noexcept { return values[i]; }
  const cplx& operator[](std::size_t i) const noexcept { return values[i]; }
};

// Samples f(x_i) of a callable.
template <typename F>
GridField sample(const GridPtr& grid, F&& f) {
  GridField out(grid);
  for (std::size_t i = 0; i < grid->size(); ++i) out.values[i] = f((*grid)[i]);
  return out;
}

GridField operator+(const GridField& a, const GridField& b);
GridField operator-(const GridField& a, const GridField& b);
GridField operator*(cplx s, const GridField& a);

// Pointwise multiplication by a function of the coordinate.
template <typename F>
GridField multiply(const GridField& a, F&& f) {
  GridField out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = f((*a.grid)[i]) * a.values[i];
  return out;
}

// Discrete l2 norm sqrt(h sum |f|^2).
double l2_norm(const GridField& f);

// Full-sphere angular grid with half-offset nodes:
//   theta_i = (i + 1/2) pi / n_theta,   phi_j = (j + 1/2) 2 pi / n_phi.
// With n_theta even and n_phi a multiple of 4 the maps theta -> pi - theta,
// phi -> pi - phi and phi -> -phi permute nodes and no node sits on
// theta = pi/2 or phi in {0, pi/2, pi, 3pi/2}.
class AngularGrid {
 public:
  AngularGrid(std::size_t n_theta, std::size_t n_phi);

  std::size_t n_theta() const noexcept { return theta_.size(); }
  std::size_t n_phi() const noexcept { return phi_.size(); }
  std::span<const double> theta() const noexcept { return theta_; }
  std::span<const double> phi() const noexcept { return phi_; }
  double theta_spacing() const noexcept { return h_theta_; }
  double phi_spacing() const noexcept { return h_phi_; }
  std::size_t index(std::size_t i_theta, std::size_t j_phi) const noexcept {
    return i_theta * phi_.size() + j_phi;
  }
  std::size_t size() const noexcept { return theta_.size() * phi_.size(); }

  std::size_t mirror_theta(std::size_t i) const noexcept { return theta_.size() - 1 - i; }
  // phi -> pi - phi
  std::size_t mirror_phi_r1(std::size_t j) const noexcept;
  // phi -> -phi
  std::size_t mirror_phi_r2(std::size_t j) const noexcept { return phi_.size() - 1 - j; }

 private:
  std::vector<double> theta_;
  std::vector<double> phi_;
  double h_theta_;
  double h_phi_;
};

using AngularGridPtr = std::shared_ptr<const AngularGrid>;

// Real samples on an AngularGrid, row-major in (theta, phi).
struct AngularField {
  AngularGridPtr grid;
  std::vector<double> values;

  double& at(std::size_t i, std::size_t j) { return values[grid->index(i, j)]; }
  double at(std::size_t i, std::size_t j) const { return values[grid->index(i, j)]; }
};

}  // namespace dunkl
