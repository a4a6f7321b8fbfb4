#pragma once

#include <Eigen/Dense>

#include <array>
#include <stdexcept>
#include <string>

namespace p1e {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Default relative gap below which two eigenvalues count as repeated.
inline constexpr double kDefaultClusterTol = 1e-6;

/// Default relative residual below which a pose counts as an exact solution.
inline constexpr double kDefaultResidualTol = 1e-8;

enum class Err {
  NonPositiveRadius,
  NotACone,
  CameraInsideEllipsoid,
  DegenerateEllipse,
  SingularCone,
  AmbiguousClustering,
  NegativeRadicand,
  NegativeRadicandK,
  ZeroTraceInverse,
  InconsistentDistance,
  DegenerateVandermonde,
  InfeasibleM,
  WrongClass,
  ImpossibleCoOccurrence,
  EmptyLocus,
  BehindCamera,
  ConfigError,
  NoIntersection,
  ParseError,
  InvalidInput,
};

const char* err_name(Err code);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& message);
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] void fail(Err code, const std::string& message);

/// |x - y| / max(|x|, |y|); zero when both vanish.
double rel_gap(double x, double y);

/// Symmetric 3x3 matrix stored as its six independent entries, so symmetry
/// is exact by construction.
class SymMat3 {
 public:
  SymMat3();
  static SymMat3 Identity();
  static SymMat3 Diagonal(double d0, double d1, double d2);
  /// Symmetrizes (m + m^T)/2 and rejects non-finite entries.
  static SymMat3 FromMatrix(const Mat3& m);

  Mat3 mat() const;
  double operator()(int i, int j) const;

  double trace() const;
  double det() const;
  SymMat3 inverse() const;
  Vec3 apply(const Vec3& v) const;
  double quad(const Vec3& v) const;  // v^T M v
  double frobenius() const;

  SymMat3 operator+(const SymMat3& o) const;
  SymMat3 operator-(const SymMat3& o) const;
  SymMat3 operator*(double s) const;

 private:
  // d00 d11 d22 o01 o02 o12
  std::array<double, 6> e_;
};

/// Proper rotation (orthonormal, det +1). Construction validates and
/// re-projects so the stored matrix meets R^T R = I and det R = 1 to 1e-12.
class Rotation3 {
 public:
  Rotation3();
  static Rotation3 Identity();
  static Rotation3 FromMatrix(const Mat3& m);
  static Rotation3 FromQuaternion(double w, double x, double y, double z);
  static Rotation3 FromAxisAngle(const Vec3& axis, double angle);
  /// Shortest rotation mapping direction a onto direction b.
  static Rotation3 FromTwoVectors(const Vec3& a, const Vec3& b);

  const Mat3& mat() const { return r_; }
  Rotation3 transpose() const;
  Vec3 operator*(const Vec3& v) const { return r_ * v; }
  Rotation3 operator*(const Rotation3& o) const;
  /// Canonical quaternion (w >= 0), coefficients (w, x, y, z).
  std::array<double, 4> quaternion() const;
  /// Geodesic angle between two rotations, in radians.
  double angle_to(const Rotation3& o) const;

 private:
  struct Unchecked {};
  Rotation3(const Mat3& m, Unchecked) : r_(m) {}
  Mat3 r_;
};

struct EllipsoidClass {
  enum class Tag { Triaxial, Spheroid, Sphere };
  Tag tag = Tag::Triaxial;
  /// Spheroid only: index of the distinct radius.
  int single_axis = -1;
  /// Spheroid only: true when 1/r_single^2 < 1/r_double^2 (elongated axis).
  bool single_less_double = false;
};

/// Classifies by the relative gaps of the shape eigenvalues 1/r^2.
EllipsoidClass classify_ellipsoid(const std::array<double, 3>& radii,
                                  double rel_tol = kDefaultClusterTol);

/// Ellipsoid (X - C)^T A (X - C) = 1 with A = R diag(1/r^2) R^T.
class EllipsoidModel {
 public:
  EllipsoidModel(const Vec3& center, const Rotation3& rotation,
                 const std::array<double, 3>& radii);

  const Vec3& center() const { return center_; }
  const Rotation3& rotation() const { return rotation_; }
  const std::array<double, 3>& radii() const { return radii_; }
  /// Eigenvalues of the shape matrix, in radii order.
  std::array<double, 3> shape_eigenvalues() const;
  SymMat3 shape_matrix() const;

 private:
  Vec3 center_;
  Rotation3 rotation_;
  std::array<double, 3> radii_;
};

SymMat3 ellipsoid_matrix(const EllipsoidModel& model);

/// Elliptic cone (X - E)^T B (X - E) = 0. B must be invertible with two
/// eigenvalues of one sign and the third of the opposite sign. Eigenvalues
/// are stored as (same-sign pair by descending magnitude, opposite-sign
/// last) and the eigenvector columns follow that order with det +1.
class ConeQuadric {
 public:
  ConeQuadric(const Vec3& vertex, const SymMat3& matrix);

  const Vec3& vertex() const { return vertex_; }
  const SymMat3& matrix() const { return matrix_; }
  const std::array<double, 3>& eigenvalues() const { return eig_; }
  const Rotation3& axes() const { return axes_; }

  double trace() const;
  double det() const;
  double inv_trace() const;  // tr(B^-1)
  double inv_det() const;

 private:
  Vec3 vertex_;
  SymMat3 matrix_;
  std::array<double, 3> eig_;
  Rotation3 axes_;
};

struct ConeClass {
  enum class Tag { NonCircularElliptic, Circular };
  Tag tag = Tag::NonCircularElliptic;
  /// Circular only: index of the multiplicity-1 eigenvalue in the stored
  /// ordering (always 2: the opposite-sign one carries the revolution axis).
  int single_index = -1;
};

ConeClass classify_cone(const ConeQuadric& cone,
                        double rel_tol = kDefaultClusterTol);
/// Convenience overload; throws NotACone if the matrix has no cone signature.
ConeClass classify_cone(const SymMat3& matrix,
                        double rel_tol = kDefaultClusterTol);

}  // namespace p1e
