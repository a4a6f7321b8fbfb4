#include "p1e/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace p1e {

std::array<GevpPair, 3> generalized_eigen(const SymMat3& A, const SymMat3& Bp) {
  Eigen::LLT<Mat3> llt(A.mat());
  if (llt.info() != Eigen::Success)
    fail(Err::InvalidInput, "A is not positive definite");
  {
    // Reject singular pencils up front; otherwise 1/theta below blows up.
    Eigen::SelfAdjointEigenSolver<Mat3> check(Bp.mat());
    const double scale = check.eigenvalues().cwiseAbs().maxCoeff();
    if (!(scale > 0.0) ||
        check.eigenvalues().cwiseAbs().minCoeff() < 1e-12 * scale)
      fail(Err::SingularCone, "B' is numerically singular");
  }
  // B' v = theta A v  =>  A v = (1/theta) B' v.
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat3> es(Bp.mat(), A.mat());
  if (es.info() != Eigen::Success)
    fail(Err::SingularCone, "generalized eigendecomposition failed");
  std::array<GevpPair, 3> out;
  for (int i = 0; i < 3; ++i) {
    const double theta = es.eigenvalues()[i];
    if (theta == 0.0) fail(Err::SingularCone, "zero generalized eigenvalue");
    out[i].value = 1.0 / theta;
    out[i].vector = es.eigenvectors().col(i).normalized();
  }
  return out;
}

GevpResult identify_sigma(const std::array<GevpPair, 3>& pairs,
                          double ambiguity_ratio) {
  const std::array<std::array<int, 3>, 3> idx = {
      {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
  std::array<double, 3> gaps{};
  for (int i = 0; i < 3; ++i)
    gaps[i] = rel_gap(pairs[idx[i][0]].value, pairs[idx[i][1]].value);

  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (gaps[i] < gaps[best]) best = i;
  double runner_up = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i)
    if (i != best) runner_up = std::min(runner_up, gaps[i]);
  if (!(runner_up > 0.0) || gaps[best] / runner_up >= ambiguity_ratio)
    fail(Err::AmbiguousClustering,
         "no clearly doubled eigenvalue (near-spherical degeneracy?)");

  GevpResult r;
  r.sigma2 = 0.5 * (pairs[idx[best][0]].value + pairs[idx[best][1]].value);
  r.sigma1 = pairs[idx[best][2]].value;
  r.delta1 = pairs[idx[best][2]].vector;
  r.gap = gaps[best];
  if (!(r.sigma1 * r.sigma2 < 0.0))
    fail(Err::InvalidInput,
         "generalized eigenvalues do not have opposite signs");
  return r;
}

SigmaMu mu_from_ratio(const GevpResult& g) {
  if (g.sigma2 == 0.0) fail(Err::InvalidInput, "sigma2 must be non-zero");
  return SigmaMu{g.sigma1, g.sigma1 / g.sigma2};
}

double mu_from_sigma(double sigma, double det_a, double det_bp) {
  const double radicand = (det_bp / det_a) * sigma * sigma * sigma;
  if (radicand < 0.0)
    fail(Err::NegativeRadicand, "no valid pose for these determinants/sigma");
  return -std::sqrt(radicand);
}

double sigma_from_distance(double norm_delta_sq, double tr_a_inv, double det_a,
                           double tr_bp_inv, double det_bp) {
  if (tr_bp_inv == 0.0 || !std::isfinite(1.0 / tr_bp_inv))
    fail(Err::ZeroTraceInverse, "cone has tr(B'^{-1}) = 0");
  const double diff = tr_a_inv - norm_delta_sq;
  return (det_a / det_bp) * diff * diff / (tr_bp_inv * tr_bp_inv);
}

}  // namespace p1e
