#include "p1e/core.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace p1e {

const char* err_name(Err code) {
  switch (code) {
    case Err::NonPositiveRadius: return "NonPositiveRadius";
    case Err::NotACone: return "NotACone";
    case Err::CameraInsideEllipsoid: return "CameraInsideEllipsoid";
    case Err::DegenerateEllipse: return "DegenerateEllipse";
    case Err::SingularCone: return "SingularCone";
    case Err::AmbiguousClustering: return "AmbiguousClustering";
    case Err::NegativeRadicand: return "NegativeRadicand";
    case Err::NegativeRadicandK: return "NegativeRadicandK";
    case Err::ZeroTraceInverse: return "ZeroTraceInverse";
    case Err::InconsistentDistance: return "InconsistentDistance";
    case Err::DegenerateVandermonde: return "DegenerateVandermonde";
    case Err::InfeasibleM: return "InfeasibleM";
    case Err::WrongClass: return "WrongClass";
    case Err::ImpossibleCoOccurrence: return "ImpossibleCoOccurrence";
    case Err::EmptyLocus: return "EmptyLocus";
    case Err::BehindCamera: return "BehindCamera";
    case Err::ConfigError: return "ConfigError";
    case Err::NoIntersection: return "NoIntersection";
    case Err::ParseError: return "ParseError";
    case Err::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(Err code, const std::string& message)
    : std::runtime_error(std::string(err_name(code)) + ": " + message),
      code_(code) {}

void fail(Err code, const std::string& message) { throw Error(code, message); }

double rel_gap(double x, double y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  if (scale == 0.0) return 0.0;
  return std::abs(x - y) / scale;
}

// ---------------------------------------------------------------------------
// SymMat3

SymMat3::SymMat3() : e_{0, 0, 0, 0, 0, 0} {}

SymMat3 SymMat3::Identity() { return Diagonal(1, 1, 1); }

SymMat3 SymMat3::Diagonal(double d0, double d1, double d2) {
  SymMat3 s;
  s.e_ = {d0, d1, d2, 0, 0, 0};
  return s;
}

SymMat3 SymMat3::FromMatrix(const Mat3& m) {
  if (!m.allFinite()) fail(Err::InvalidInput, "non-finite matrix entries");
  SymMat3 s;
  s.e_ = {m(0, 0),
          m(1, 1),
          m(2, 2),
          0.5 * (m(0, 1) + m(1, 0)),
          0.5 * (m(0, 2) + m(2, 0)),
          0.5 * (m(1, 2) + m(2, 1))};
  return s;
}

Mat3 SymMat3::mat() const {
  Mat3 m;
  m << e_[0], e_[3], e_[4],
       e_[3], e_[1], e_[5],
       e_[4], e_[5], e_[2];
  return m;
}

double SymMat3::operator()(int i, int j) const { return mat()(i, j); }

double SymMat3::trace() const { return e_[0] + e_[1] + e_[2]; }

double SymMat3::det() const { return mat().determinant(); }

SymMat3 SymMat3::inverse() const {
  const Mat3 m = mat();
  const double d = m.determinant();
  if (std::abs(d) < 1e-300) fail(Err::InvalidInput, "singular symmetric matrix");
  return FromMatrix(m.inverse());
}

Vec3 SymMat3::apply(const Vec3& v) const { return mat() * v; }

double SymMat3::quad(const Vec3& v) const { return v.dot(mat() * v); }

double SymMat3::frobenius() const { return mat().norm(); }

SymMat3 SymMat3::operator+(const SymMat3& o) const {
  SymMat3 s;
  for (int i = 0; i < 6; ++i) s.e_[i] = e_[i] + o.e_[i];
  return s;
}

SymMat3 SymMat3::operator-(const SymMat3& o) const {
  SymMat3 s;
  for (int i = 0; i < 6; ++i) s.e_[i] = e_[i] - o.e_[i];
  return s;
}

SymMat3 SymMat3::operator*(double x) const {
  SymMat3 s;
  for (int i = 0; i < 6; ++i) s.e_[i] = e_[i] * x;
  return s;
}

// ---------------------------------------------------------------------------
// Rotation3

Rotation3::Rotation3() : r_(Mat3::Identity()) {}

Rotation3 Rotation3::Identity() { return Rotation3(); }

Rotation3 Rotation3::FromMatrix(const Mat3& m) {
  if (!m.allFinite()) fail(Err::InvalidInput, "non-finite rotation entries");
  const double ortho_err = (m.transpose() * m - Mat3::Identity()).norm();
  if (ortho_err > 1e-9 || m.determinant() < 0.0)
    fail(Err::InvalidInput, "matrix is not a proper rotation");
  // Polar projection onto SO(3) keeps the stored invariant tight.
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) {
    Mat3 u = svd.matrixU();
    u.col(2) *= -1.0;
    r = u * svd.matrixV().transpose();
  }
  return Rotation3(r, Unchecked{});
}

Rotation3 Rotation3::FromQuaternion(double w, double x, double y, double z) {
  Eigen::Quaterniond q(w, x, y, z);
  const double n = q.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    fail(Err::InvalidInput, "zero or non-finite quaternion");
  q.normalize();
  return Rotation3(q.toRotationMatrix(), Unchecked{});
}

Rotation3 Rotation3::FromAxisAngle(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0)) fail(Err::InvalidInput, "zero rotation axis");
  return Rotation3(Eigen::AngleAxisd(angle, axis / n).toRotationMatrix(),
                   Unchecked{});
}

Rotation3 Rotation3::FromTwoVectors(const Vec3& a, const Vec3& b) {
  if (!(a.norm() > 0.0) || !(b.norm() > 0.0))
    fail(Err::InvalidInput, "zero direction");
  const Eigen::Quaterniond q = Eigen::Quaterniond::FromTwoVectors(a, b);
  return Rotation3(q.toRotationMatrix(), Unchecked{});
}

Rotation3 Rotation3::transpose() const {
  return Rotation3(r_.transpose().eval(), Unchecked{});
}

Rotation3 Rotation3::operator*(const Rotation3& o) const {
  return FromMatrix(r_ * o.r_);
}

std::array<double, 4> Rotation3::quaternion() const {
  Eigen::Quaterniond q(r_);
  q.normalize();
  if (q.w() < 0.0) q.coeffs() *= -1.0;
  return {q.w(), q.x(), q.y(), q.z()};
}

double Rotation3::angle_to(const Rotation3& o) const {
  const double c = ((r_.transpose() * o.r_).trace() - 1.0) / 2.0;
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// ---------------------------------------------------------------------------
// Ellipsoid

EllipsoidClass classify_ellipsoid(const std::array<double, 3>& radii,
                                  double rel_tol) {
  for (double r : radii)
    if (!(r > 0.0) || !std::isfinite(r))
      fail(Err::NonPositiveRadius, "radii must be positive");
  if (!(rel_tol > 0.0) || !(rel_tol < 0.1))
    fail(Err::InvalidInput, "classification tolerance out of range");

  const std::array<double, 3> lam = {1.0 / (radii[0] * radii[0]),
                                     1.0 / (radii[1] * radii[1]),
                                     1.0 / (radii[2] * radii[2])};
  // Pair order: (0,1) leaves axis 2 single, (0,2) leaves 1, (1,2) leaves 0.
  const std::array<std::array<int, 3>, 3> pairs = {
      {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
  int below = 0;
  int single = -1;
  for (const auto& p : pairs) {
    if (rel_gap(lam[p[0]], lam[p[1]]) < rel_tol) {
      ++below;
      single = p[2];
    }
  }
  EllipsoidClass c;
  if (below == 3) {
    c.tag = EllipsoidClass::Tag::Sphere;
  } else if (below == 1) {
    c.tag = EllipsoidClass::Tag::Spheroid;
    c.single_axis = single;
    const int dbl = (single + 1) % 3;
    c.single_less_double = lam[single] < lam[dbl];
  } else {
    c.tag = EllipsoidClass::Tag::Triaxial;
  }
  return c;
}

EllipsoidModel::EllipsoidModel(const Vec3& center, const Rotation3& rotation,
                               const std::array<double, 3>& radii)
    : center_(center), rotation_(rotation), radii_(radii) {
  if (!center.allFinite()) fail(Err::InvalidInput, "non-finite center");
  for (double r : radii)
    if (!(r > 0.0) || !std::isfinite(r))
      fail(Err::NonPositiveRadius, "radii must be positive");
}

std::array<double, 3> EllipsoidModel::shape_eigenvalues() const {
  return {1.0 / (radii_[0] * radii_[0]), 1.0 / (radii_[1] * radii_[1]),
          1.0 / (radii_[2] * radii_[2])};
}

SymMat3 EllipsoidModel::shape_matrix() const {
  const auto lam = shape_eigenvalues();
  const Mat3& r = rotation_.mat();
  return SymMat3::FromMatrix(
      r * Eigen::DiagonalMatrix<double, 3>(lam[0], lam[1], lam[2]) *
      r.transpose());
}

SymMat3 ellipsoid_matrix(const EllipsoidModel& model) {
  return model.shape_matrix();
}

// ---------------------------------------------------------------------------
// Cone

ConeQuadric::ConeQuadric(const Vec3& vertex, const SymMat3& matrix)
    : vertex_(vertex), matrix_(matrix) {
  if (!vertex.allFinite()) fail(Err::InvalidInput, "non-finite vertex");
  Eigen::SelfAdjointEigenSolver<Mat3> es(matrix.mat());
  if (es.info() != Eigen::Success)
    fail(Err::NotACone, "eigendecomposition failed");
  const Vec3 ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || ev.cwiseAbs().minCoeff() < 1e-12 * scale)
    fail(Err::NotACone, "cone matrix is singular or near-singular");

  int pos = 0;
  for (int i = 0; i < 3; ++i) pos += ev[i] > 0.0 ? 1 : 0;
  if (pos == 0 || pos == 3)
    fail(Err::NotACone, "matrix signature is not (2,1) or (1,2)");

  // Same-sign pair first (descending magnitude), opposite-sign eigenvalue
  // last; it carries the interior axis of the cone.
  const bool pair_positive = pos == 2;
  std::array<int, 3> order{};
  int k = 0;
  for (int i = 0; i < 3; ++i)
    if ((ev[i] > 0.0) == pair_positive) order[k++] = i;
  for (int i = 0; i < 3; ++i)
    if ((ev[i] > 0.0) != pair_positive) order[2] = i;
  if (std::abs(ev[order[0]]) < std::abs(ev[order[1]]))
    std::swap(order[0], order[1]);

  Mat3 axes;
  for (int i = 0; i < 3; ++i) {
    eig_[i] = ev[order[i]];
    axes.col(i) = es.eigenvectors().col(order[i]);
  }
  // Deterministic signs: dominant entry of the first two columns positive,
  // third column completes a right-handed frame.
  for (int c = 0; c < 2; ++c) {
    int imax = 0;
    axes.col(c).cwiseAbs().maxCoeff(&imax);
    if (axes(imax, c) < 0.0) axes.col(c) *= -1.0;
  }
  axes.col(2) = axes.col(0).cross(axes.col(1));
  axes_ = Rotation3::FromMatrix(axes);
}

double ConeQuadric::trace() const { return matrix_.trace(); }

double ConeQuadric::det() const { return eig_[0] * eig_[1] * eig_[2]; }

double ConeQuadric::inv_trace() const {
  return 1.0 / eig_[0] + 1.0 / eig_[1] + 1.0 / eig_[2];
}

double ConeQuadric::inv_det() const { return 1.0 / det(); }

ConeClass classify_cone(const ConeQuadric& cone, double rel_tol) {
  if (!(rel_tol > 0.0) || !(rel_tol < 0.1))
    fail(Err::InvalidInput, "classification tolerance out of range");
  const auto& ev = cone.eigenvalues();
  ConeClass c;
  if (rel_gap(ev[0], ev[1]) < rel_tol) {
    c.tag = ConeClass::Tag::Circular;
    c.single_index = 2;
  } else {
    c.tag = ConeClass::Tag::NonCircularElliptic;
    c.single_index = -1;
  }
  return c;
}

ConeClass classify_cone(const SymMat3& matrix, double rel_tol) {
  return classify_cone(ConeQuadric(Vec3::Zero(), matrix), rel_tol);
}

}  // namespace p1e
