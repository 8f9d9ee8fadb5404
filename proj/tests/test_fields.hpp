#pragma once

// Random smooth radial test fields: Gaussians times low-degree polynomials,
// centred well inside (0, 12) so they vanish at both ends of the grid.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace test {

struct RandomField {
  double centre = 6.0;
  double width = 1.0;
  std::vector<std::complex<double>> coeffs;

  std::complex<double> operator()(double r) const {
    const double x = (r - centre) / width;
    std::complex<double> poly = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) poly = poly * x + *it;
    return poly * std::exp(-0.5 * x * x);
  }
};

inline RandomField random_field(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> centre(5.0, 7.0), width(0.35, 0.6), coef(-1.0, 1.0);
  std::uniform_int_distribution<int> degree(0, 3);
  RandomField f;
  f.centre = centre(rng);
  f.width = width(rng);
  const int d = degree(rng);
  for (int k = 0; k <= d; ++k) f.coeffs.emplace_back(coef(rng), coef(rng));
  return f;
}

}  // namespace test
