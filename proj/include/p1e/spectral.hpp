#pragma once

#include <array>

#include "p1e/core.hpp"

namespace p1e {

struct GevpPair {
  double value = 0.0;
  Vec3 vector = Vec3::Zero();  // unit Euclidean norm
};

/// Generalized eigenpairs of {A, B'}: A v = lambda B' v, with A positive
/// definite and B' an invertible cone matrix. Solved through the symmetric
/// pencil B' v = (1/lambda) A v, which keeps the eigenvalues real and the
/// eigenvectors A-orthogonal.
std::array<GevpPair, 3> generalized_eigen(const SymMat3& A, const SymMat3& Bp);

struct GevpResult {
  double sigma1 = 0.0;  // multiplicity-1 eigenvalue
  double sigma2 = 0.0;  // mean of the clustered pair
  Vec3 delta1 = Vec3::Zero();
  double gap = 0.0;  // relative spread of the clustered pair, diagnostic
};

/// Picks the closest pair as the doubled eigenvalue and the remaining one as
/// sigma. Throws AmbiguousClustering when the smallest pairwise gap is not
/// clearly smaller than the runner-up (ratio >= ambiguity_ratio).
GevpResult identify_sigma(const std::array<GevpPair, 3>& pairs,
                          double ambiguity_ratio = 0.1);

struct SigmaMu {
  double sigma = 0.0;
  double mu = 0.0;
};

/// mu = sigma1 / sigma2 (< 0 for any valid instance).
SigmaMu mu_from_ratio(const GevpResult& g);

/// mu = -sqrt((det B' / det A) sigma^3); the radicand must be non-negative.
double mu_from_sigma(double sigma, double det_a, double det_bp);

/// sigma = (det A / det B') (tr A^{-1} - ||d||^2)^2 / tr(B'^{-1})^2.
double sigma_from_distance(double norm_delta_sq, double tr_a_inv, double det_a,
                           double tr_bp_inv, double det_bp);

}  // namespace p1e
