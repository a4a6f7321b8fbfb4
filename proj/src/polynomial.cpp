#include "p1e/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace p1e {

namespace {

constexpr double kPi = 3.14159265358979323846;

void newton_polish(const Cubic& p, double& x) {
  for (int it = 0; it < 3; ++it) {
    const double f = p.eval(x);
    const double df = p.deriv(x);
    if (df == 0.0) break;
    const double step = f / df;
    if (!std::isfinite(step)) break;
    x -= step;
  }
}

std::vector<double> quadratic_roots(double a, double b, double c) {
  // a x^2 + b x + c, stable form of the quadratic formula.
  if (a == 0.0) {
    if (b == 0.0) return {};
    return {-c / b};
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  std::vector<double> roots;
  if (q != 0.0) {
    roots.push_back(q / a);
    roots.push_back(c / q);
  } else {
    roots.push_back(0.0);
    roots.push_back(-b / a);
  }
  std::sort(roots.begin(), roots.end());
  if (disc == 0.0) roots.pop_back();
  return roots;
}

}  // namespace

std::vector<double> cubic_real_roots(const Cubic& p) {
  const double scale =
      std::max({std::abs(p.c[0]), std::abs(p.c[1]), std::abs(p.c[2]),
                std::abs(p.c[3])});
  if (scale == 0.0) return {};
  if (std::abs(p.c[3]) < 1e-14 * scale)
    return quadratic_roots(p.c[2], p.c[1], p.c[0]);

  const double a = p.c[2] / p.c[3];
  const double b = p.c[1] / p.c[3];
  const double c = p.c[0] / p.c[3];
  // Depressed form t^3 + q t + r with x = t - a/3.
  const double q = b - a * a / 3.0;
  const double r = c + a * (2.0 * a * a - 9.0 * b) / 27.0;
  const double shift = -a / 3.0;
  const double disc = 0.25 * r * r + q * q * q / 27.0;

  std::vector<double> roots;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-0.5 * r + s);
    const double v = std::cbrt(-0.5 * r - s);
    roots.push_back(u + v + shift);
  } else if (q == 0.0 && r == 0.0) {
    roots.push_back(shift);
  } else {
    // Three real roots.
    const double mag = 2.0 * std::sqrt(-q / 3.0);
    const double arg = std::clamp(
        3.0 * r / (q * mag == 0.0 ? 1.0 : q * mag), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      roots.push_back(mag * std::cos(theta - 2.0 * kPi * k / 3.0) + shift);
  }
  for (double& x : roots) newton_polish(p, x);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double x, double y) {
                            return std::abs(x - y) <=
                                   1e-12 * (1.0 + std::abs(x));
                          }),
              roots.end());
  return roots;
}

std::vector<double> poly_real_roots(const std::vector<double>& coeffs) {
  // Trim leading (highest-degree) zeros.
  int n = static_cast<int>(coeffs.size()) - 1;
  double scale = 0.0;
  for (double c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return {};
  while (n > 0 && std::abs(coeffs[n]) < 1e-14 * scale) --n;
  if (n <= 0) return {};
  if (n == 1) return {-coeffs[0] / coeffs[1]};
  if (n == 2) return quadratic_roots(coeffs[2], coeffs[1], coeffs[0]);
  if (n == 3)
    return cubic_real_roots(Cubic{{coeffs[0], coeffs[1], coeffs[2], coeffs[3]}});

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -coeffs[i] / coeffs[n];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  std::vector<double> roots;
  for (int i = 0; i < n; ++i) {
    const auto z = es.eigenvalues()[i];
    if (std::abs(z.imag()) > 1e-8 * (1.0 + std::abs(z.real()))) continue;
    double x = z.real();
    // A couple of Newton steps against the actual polynomial.
    for (int it = 0; it < 3; ++it) {
      double f = 0.0, df = 0.0;
      for (int k = n; k >= 0; --k) {
        df = df * x + f;
        f = f * x + coeffs[k];
      }
      if (df == 0.0) break;
      const double step = f / df;
      if (!std::isfinite(step)) break;
      x -= step;
    }
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace p1e
