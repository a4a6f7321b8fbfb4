#pragma once

#include <Eigen/Dense>

#include "p1e/core.hpp"

namespace p1e {

/// Image-plane ellipse in pixel coordinates. Construction re-sorts the axes
/// so semi_major >= semi_minor and normalizes the angle to [0, pi).
struct EllipseObservation {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double semi_major = 1.0;
  double semi_minor = 1.0;
  double angle = 0.0;  // major-axis direction, radians

  EllipseObservation() = default;
  EllipseObservation(const Eigen::Vector2d& center_px, double a, double b,
                     double theta);
};

struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;

  CameraIntrinsics() = default;
  CameraIntrinsics(double fx_, double fy_, double cx_, double cy_);
};

/// One candidate solution of the cone alignment equation
///   A d d^T A + mu A = sigma B',   mu = 1 - d^T A d,
/// with everything expressed in one common frame.
struct AlignmentInstance {
  SymMat3 A;
  SymMat3 Bprime;
  Vec3 delta = Vec3::Zero();  // ellipsoid center -> camera center
  double sigma = 0.0;
  double mu = 0.0;

  AlignmentInstance() = default;
  /// Validates mu against 1 - delta^T A delta (1e-9 absolute).
  AlignmentInstance(const SymMat3& a, const SymMat3& bprime, const Vec3& d,
                    double sigma_, double mu_);
};

/// Cone with vertex E tangent to the ellipsoid (C, A):
///   B = A d d^T A - (d^T A d - 1) A,  d = E - C.
/// Throws CameraInsideEllipsoid unless d^T A d > 1 (with 1e-12 margin).
ConeQuadric projection_cone(const SymMat3& A, const Vec3& C, const Vec3& E);

/// Cone through the camera center and the observed ellipse, lifted to the
/// normalized plane z = 1. The matrix keeps the raw S^T M S - Q scale; the
/// alignment scalar sigma is only meaningful relative to this construction.
ConeQuadric backprojection_cone(const EllipseObservation& obs,
                                const CameraIntrinsics& intr);

/// ||A d d^T A + mu A - sigma B'||_F / ||sigma B'||_F.
double alignment_residual(const AlignmentInstance& inst);
/// Same residual without the instance's mu consistency check; solvers use it
/// with their own (sigma, mu).
double alignment_residual(const SymMat3& A, const SymMat3& Bp,
                          const Vec3& delta, double sigma, double mu);

/// Relative Frobenius residual of the rank-one form
///   d d^T = A^{-1} - (mu/sigma) B'^{-1}.
double equivalent_residual(const AlignmentInstance& inst);

namespace detail {

/// Homogeneous conic matrix of the ellipse (value-normalized so that the
/// quadratic form at the center equals -1).
Mat3 conic_from_ellipse(const Eigen::Vector2d& center, double a, double b,
                        double angle);

struct EllipseParams {
  Eigen::Vector2d center;
  double semi_major;
  double semi_minor;
  double angle;
};

/// Center, semi-axes and major-axis angle of a real ellipse given its
/// homogeneous conic matrix (any scale). Throws DegenerateEllipse otherwise.
EllipseParams ellipse_from_conic(const Mat3& conic);

}  // namespace detail

}  // namespace p1e
