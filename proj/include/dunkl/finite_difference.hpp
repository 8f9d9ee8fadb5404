#pragma once

// Fourth-order finite differences on uniform grids. Interior nodes use the
// five-point central stencils; the two nodes at each end use one-sided
// stencils of the same order.

#include <cstddef>
#include <span>

namespace dunkl::fd {

template <typename T, typename R>
void first_derivative(std::span<const T> f, R h, std::span<T> out) {
  const std::size_t n = f.size();
  const R c = R(1) / (R(12) * h);
  out[0] = (R(-25) * f[0] + R(48) * f[1] - R(36) * f[2] + R(16) * f[3] - R(3) * f[4]) * c;
  out[1] = (R(-3) * f[0] - R(10) * f[1] + R(18) * f[2] - R(6) * f[3] + f[4]) * c;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    out[i] = (f[i - 2] - R(8) * f[i - 1] + R(8) * f[i + 1] - f[i + 2]) * c;
  }
  out[n - 2] = -(R(-3) * f[n - 1] - R(10) * f[n - 2] + R(18) * f[n - 3] - R(6) * f[n - 4] +
                 f[n - 5]) * c;
  out[n - 1] = -(R(-25) * f[n - 1] + R(48) * f[n - 2] - R(36) * f[n - 3] + R(16) * f[n - 4] -
                 R(3) * f[n - 5]) * c;
}

template <typename T, typename R>
void second_derivative(std::span<const T> f, R h, std::span<T> out) {
  const std::size_t n = f.size();
  const R c = R(1) / (R(12) * h * h);
  out[0] = (R(45) * f[0] - R(154) * f[1] + R(214) * f[2] - R(156) * f[3] + R(61) * f[4] -
            R(10) * f[5]) * c;
  out[1] = (R(10) * f[0] - R(15) * f[1] - R(4) * f[2] + R(14) * f[3] - R(6) * f[4] + f[5]) * c;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    out[i] = (-f[i - 2] + R(16) * f[i - 1] - R(30) * f[i] + R(16) * f[i + 1] - f[i + 2]) * c;
  }
  out[n - 2] = (R(10) * f[n - 1] - R(15) * f[n - 2] - R(4) * f[n - 3] + R(14) * f[n - 4] -
                R(6) * f[n - 5] + f[n - 6]) * c;
  out[n - 1] = (R(45) * f[n - 1] - R(154) * f[n - 2] + R(214) * f[n - 3] - R(156) * f[n - 4] +
                R(61) * f[n - 5] - R(10) * f[n - 6]) * c;
}

// Central stencils only; valid for 2 <= i < n - 2.
template <typename T, typename R>
T central_first(std::span<const T> f, std::size_t i, R h) {
  return (f[i - 2] - R(8) * f[i - 1] + R(8) * f[i + 1] - f[i + 2]) / (R(12) * h);
}

template <typename T, typename R>
T central_second(std::span<const T> f, std::size_t i, R h) {
  return (-f[i - 2] + R(16) * f[i - 1] - R(30) * f[i] + R(16) * f[i + 1] - f[i + 2]) /
         (R(12) * h * h);
}

// Periodic five-point stencils, element stride `stride` inside `f`.
template <typename T, typename R>
T periodic_first(const T* f, std::size_t j, std::size_t n, std::size_t stride, R h) {
  const auto at = [&](std::ptrdiff_t k) {
    const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
    return f[static_cast<std::size_t>(((k % nn) + nn) % nn) * stride];
  };
  const auto jj = static_cast<std::ptrdiff_t>(j);
  return (at(jj - 2) - R(8) * at(jj - 1) + R(8) * at(jj + 1) - at(jj + 2)) / (R(12) * h);
}

template <typename T, typename R>
T periodic_second(const T* f, std::size_t j, std::size_t n, std::size_t stride, R h) {
  const auto at = [&](std::ptrdiff_t k) {
    const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
    return f[static_cast<std::size_t>(((k % nn) + nn) % nn) * stride];
  };
  const auto jj = static_cast<std::ptrdiff_t>(j);
  return (-at(jj - 2) + R(16) * at(jj - 1) - R(30) * at(jj) + R(16) * at(jj + 1) - at(jj + 2)) /
         (R(12) * h * h);
}

}  // namespace dunkl::fd
