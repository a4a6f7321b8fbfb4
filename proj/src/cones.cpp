#include "p1e/cones.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace p1e {

namespace {
constexpr double kPi = 3.14159265358979323846;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kPi);
  if (t < 0.0) t += kPi;
  return t;
}
}  // namespace

EllipseObservation::EllipseObservation(const Eigen::Vector2d& center_px,
                                       double a, double b, double theta) {
  if (!center_px.allFinite() || !std::isfinite(a) || !std::isfinite(b) ||
      !std::isfinite(theta))
    fail(Err::InvalidInput, "non-finite ellipse parameters");
  if (!(a > 0.0) || !(b > 0.0))
    fail(Err::DegenerateEllipse, "semi-axes must be positive");
  center = center_px;
  if (a >= b) {
    semi_major = a;
    semi_minor = b;
    angle = wrap_angle(theta);
  } else {
    semi_major = b;
    semi_minor = a;
    angle = wrap_angle(theta + kPi / 2.0);
  }
}

CameraIntrinsics::CameraIntrinsics(double fx_, double fy_, double cx_,
                                   double cy_)
    : fx(fx_), fy(fy_), cx(cx_), cy(cy_) {
  if (!(fx > 0.0) || !(fy > 0.0)) fail(Err::InvalidInput, "focal lengths must be positive");
}

AlignmentInstance::AlignmentInstance(const SymMat3& a, const SymMat3& bprime,
                                     const Vec3& d, double sigma_, double mu_)
    : A(a), Bprime(bprime), delta(d), sigma(sigma_), mu(mu_) {
  const double expected = 1.0 - A.quad(delta);
  if (std::abs(mu - expected) > 1e-9)
    fail(Err::InvalidInput, "mu is inconsistent with 1 - d^T A d");
}

ConeQuadric projection_cone(const SymMat3& A, const Vec3& C, const Vec3& E) {
  const Vec3 d = E - C;
  const double w = A.quad(d);
  if (!(w > 1.0 + 1e-12))
    fail(Err::CameraInsideEllipsoid,
         "projection center is not strictly outside the ellipsoid");
  const Vec3 ad = A.apply(d);
  const Mat3 b = ad * ad.transpose() - (w - 1.0) * A.mat();
  return ConeQuadric(E, SymMat3::FromMatrix(b));
}

namespace detail {

Mat3 conic_from_ellipse(const Eigen::Vector2d& center, double a, double b,
                        double angle) {
  const Eigen::Vector2d u(std::cos(angle), std::sin(angle));
  const Eigen::Vector2d v(-u.y(), u.x());
  const Eigen::Matrix2d m =
      u * u.transpose() / (a * a) + v * v.transpose() / (b * b);
  Mat3 conic;
  conic.topLeftCorner<2, 2>() = m;
  conic.topRightCorner<2, 1>() = -m * center;
  conic.bottomLeftCorner<1, 2>() = (-m * center).transpose();
  conic(2, 2) = center.dot(m * center) - 1.0;
  return conic;
}

EllipseParams ellipse_from_conic(const Mat3& conic_in) {
  Mat3 conic = 0.5 * (conic_in + conic_in.transpose());
  // Fix the sign so the 2x2 part is positive definite for a real ellipse.
  if (conic.topLeftCorner<2, 2>().trace() < 0.0) conic = -conic;
  const Eigen::Matrix2d m = conic.topLeftCorner<2, 2>();
  const Eigen::Vector2d bvec = conic.topRightCorner<2, 1>();
  const double dm = m.determinant();
  if (!(dm > 0.0)) fail(Err::DegenerateEllipse, "conic is not an ellipse");
  const Eigen::Vector2d center = -m.inverse() * bvec;
  const double s = conic(2, 2) + bvec.dot(center);  // value at the center
  if (!(s < 0.0)) fail(Err::DegenerateEllipse, "conic has no real points");

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
  const double l0 = es.eigenvalues()[0];  // smaller, major axis
  const double l1 = es.eigenvalues()[1];
  if (!(l0 > 0.0)) fail(Err::DegenerateEllipse, "conic is not an ellipse");
  EllipseParams p;
  p.center = center;
  p.semi_major = std::sqrt(-s / l0);
  p.semi_minor = std::sqrt(-s / l1);
  const Eigen::Vector2d major_dir = es.eigenvectors().col(0);
  p.angle = wrap_angle(std::atan2(major_dir.y(), major_dir.x()));
  return p;
}

}  // namespace detail

ConeQuadric backprojection_cone(const EllipseObservation& obs,
                                const CameraIntrinsics& intr) {
  if (obs.semi_minor / intr.fy < 1e-12)
    fail(Err::DegenerateEllipse, "ellipse minor axis collapses");

  // Move the pixel conic onto the normalized plane z = 1 and re-extract the
  // geometric parameters there; with fx != fy a naive axis scaling would not
  // be a similarity.
  const Mat3 conic_px = detail::conic_from_ellipse(
      obs.center, obs.semi_major, obs.semi_minor, obs.angle);
  Mat3 h = Mat3::Identity();
  h(0, 0) = intr.fx;
  h(1, 1) = intr.fy;
  h(0, 2) = intr.cx;
  h(1, 2) = intr.cy;
  const Mat3 conic_n = h.transpose() * conic_px * h;
  const detail::EllipseParams e = detail::ellipse_from_conic(conic_n);

  const Vec3 k(e.center.x(), e.center.y(), 1.0);
  const Vec3 u(std::cos(e.angle), std::sin(e.angle), 0.0);
  const Vec3 v(-std::sin(e.angle), std::cos(e.angle), 0.0);
  const Mat3 m = u * u.transpose() / (e.semi_major * e.semi_major) +
                 v * v.transpose() / (e.semi_minor * e.semi_minor);
  // Vertex at the camera center, plane normal N = e_z, N.(K - E) = 1, so
  // W = e_z and S = I - K e_z^T.
  Mat3 s = Mat3::Identity();
  s.col(2) -= k;
  Mat3 q = Mat3::Zero();
  q(2, 2) = 1.0;
  const Mat3 bprime = s.transpose() * m * s - q;
  return ConeQuadric(Vec3::Zero(), SymMat3::FromMatrix(bprime));
}

double alignment_residual(const SymMat3& A, const SymMat3& Bp,
                          const Vec3& delta, double sigma, double mu) {
  const Vec3 ad = A.apply(delta);
  const Mat3 lhs = ad * ad.transpose() + mu * A.mat() - sigma * Bp.mat();
  const double denom = std::abs(sigma) * Bp.frobenius();
  if (!(denom > 0.0)) fail(Err::InvalidInput, "sigma B' vanishes");
  return lhs.norm() / denom;
}

double alignment_residual(const AlignmentInstance& inst) {
  return alignment_residual(inst.A, inst.Bprime, inst.delta, inst.sigma,
                            inst.mu);
}

double equivalent_residual(const AlignmentInstance& inst) {
  if (inst.sigma == 0.0) fail(Err::InvalidInput, "sigma must be non-zero");
  const double det_b = inst.Bprime.det();
  const double scale = inst.Bprime.frobenius();
  if (std::abs(det_b) < 1e-12 * scale * scale * scale)
    fail(Err::SingularCone, "B' is numerically singular");
  const Mat3 a_inv = inst.A.mat().inverse();
  const Mat3 b_inv = inst.Bprime.mat().inverse();
  const Mat3 lhs = inst.delta * inst.delta.transpose() - a_inv +
                   (inst.mu / inst.sigma) * b_inv;
  return lhs.norm() / a_inv.norm();
}

}  // namespace p1e
