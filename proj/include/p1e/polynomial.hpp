#pragma once

#include <array>
#include <vector>

namespace p1e {

/// Polynomial c[0] + c[1] x + c[2] x^2 + c[3] x^3.
struct Cubic {
  std::array<double, 4> c{0, 0, 0, 0};

  double eval(double x) const {
    return c[0] + x * (c[1] + x * (c[2] + x * c[3]));
  }
  double deriv(double x) const { return c[1] + x * (2 * c[2] + x * 3 * c[3]); }
};

/// All real roots of a cubic (degree may degrade), ascending, each polished
/// by Newton steps. Closed form: trigonometric branch for three real roots,
/// Cardano otherwise.
std::vector<double> cubic_real_roots(const Cubic& p);

/// Real roots of c[0] + c[1] x + ... + c[n] x^n via the companion matrix.
/// Roots whose imaginary part exceeds 1e-8 * (1 + |re|) are dropped.
std::vector<double> poly_real_roots(const std::vector<double>& coeffs);

}  // namespace p1e
