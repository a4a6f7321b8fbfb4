#include "p1e/decoupled.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "internal.hpp"

namespace p1e {

namespace {

// Spectrum of a reconstructed shape matrix must match the known 1/r^2 set;
// anything else means the supplied position is inconsistent.
constexpr double kSpectrumTol = 1e-6;

struct ShapeInvariants {
  std::array<double, 3> lam;
  double tr_a = 0.0;
  double tr_a_inv = 0.0;
  double det_a = 0.0;
};

ShapeInvariants shape_invariants(const std::array<double, 3>& radii) {
  ShapeInvariants s;
  for (int i = 0; i < 3; ++i) {
    if (!(radii[i] > 0.0)) fail(Err::NonPositiveRadius, "radii must be positive");
    s.lam[i] = 1.0 / (radii[i] * radii[i]);
  }
  s.tr_a = s.lam[0] + s.lam[1] + s.lam[2];
  s.tr_a_inv = radii[0] * radii[0] + radii[1] * radii[1] + radii[2] * radii[2];
  s.det_a = s.lam[0] * s.lam[1] * s.lam[2];
  return s;
}

// A_cam = (sigma/mu) (B' - sigma B' d d^T B') for a camera-frame delta.
SymMat3 shape_from_camera_delta(const ConeQuadric& cone, const Vec3& delta,
                                double sigma, double mu) {
  const Mat3 bp = cone.matrix().mat();
  const Vec3 bd = bp * delta;
  const Mat3 a = (sigma / mu) * (bp - sigma * bd * bd.transpose());
  return SymMat3::FromMatrix(a);
}

void check_spectrum(const Eigen::SelfAdjointEigenSolver<Mat3>& es,
                    std::array<double, 3> expected) {
  const Vec3 got = es.eigenvalues();
  if (!(got.minCoeff() > 0.0))
    fail(Err::InconsistentDistance,
         "reconstructed shape matrix is not positive definite");
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < 3; ++i)
    if (rel_gap(got[i], expected[i]) > kSpectrumTol)
      fail(Err::InconsistentDistance,
           "reconstructed shape spectrum does not match the radii");
}

}  // namespace

PoseSolution position_from_orientation(const SymMat3& A_ell,
                                       const Rotation3& cam_R_ell,
                                       const ConeQuadric& cone_cam,
                                       const Vec3& view_normal) {
  const Mat3& r = cam_R_ell.mat();
  const SymMat3 a_cam = SymMat3::FromMatrix(r * A_ell.mat() * r.transpose());
  const auto pairs = generalized_eigen(a_cam, cone_cam.matrix());
  const GevpResult g = identify_sigma(pairs);

  const double tr_a_inv = a_cam.inverse().trace();
  const double k_sq = tr_a_inv - cone_cam.inv_trace() / g.sigma2;
  if (k_sq < 0.0)
    fail(Err::NegativeRadicandK,
         "orientation is inconsistent: negative radicand for the distance");
  const double k = std::sqrt(k_sq);

  Vec3 dir = g.delta1;
  const double along = dir.dot(view_normal);
  if (along == 0.0)
    fail(Err::InvalidInput, "eigenvector is orthogonal to the view axis");
  if (along > 0.0) dir = -dir;

  const Vec3 delta_cam = k * dir;
  const double mu = g.sigma1 / g.sigma2;
  PoseSolution p;
  p.camera_rotation = cam_R_ell.transpose();
  p.camera_position = p.camera_rotation * delta_cam;
  p.residual = alignment_residual(a_cam, cone_cam.matrix(), delta_cam,
                                  g.sigma1, mu);
  return p;
}

OrientationSet orientation_from_position(const Vec3& delta, DeltaFrame frame,
                                         const std::array<double, 3>& radii,
                                         const ConeQuadric& cone_cam,
                                         double cluster_tol) {
  if (!delta.allFinite()) fail(Err::InvalidInput, "non-finite delta");
  const ShapeInvariants inv = shape_invariants(radii);
  const double nd_sq = delta.squaredNorm();
  const double sigma = sigma_from_distance(nd_sq, inv.tr_a_inv, inv.det_a,
                                           cone_cam.inv_trace(), cone_cam.det());
  if (sigma == 0.0)
    fail(Err::InconsistentDistance, "distance sits at the degenerate value");
  const double mu = mu_from_sigma(sigma, inv.det_a, cone_cam.det());
  const EllipsoidClass cls = classify_ellipsoid(radii, cluster_tol);
  const SymMat3 bp = cone_cam.matrix();

  OrientationSet out;

  if (cls.tag == EllipsoidClass::Tag::Sphere) {
    // Pure gauge freedom; the camera-frame instance is fixed.
    const Vec3 delta_cam =
        -std::sqrt(nd_sq) * internal::oriented_cone_axis(cone_cam);
    const SymMat3 a_cam = SymMat3::Diagonal(inv.lam[0], inv.lam[1], inv.lam[2]);
    const double res = alignment_residual(a_cam, bp, delta_cam, sigma, mu);
    if (res > 1e-6)
      fail(Err::InconsistentDistance, "distance inconsistent with the cone");
    out.symmetry = OrientationSet::Symmetry::FullContinuum;
    out.candidates = {Rotation3::Identity()};
    out.chirality_valid = {true};
    out.residuals = {res};
    return out;
  }

  if (frame == DeltaFrame::Camera) {
    const SymMat3 a_cam = shape_from_camera_delta(cone_cam, delta, sigma, mu);
    Eigen::SelfAdjointEigenSolver<Mat3> es(a_cam.mat());
    if (es.info() != Eigen::Success)
      fail(Err::InconsistentDistance, "shape eigendecomposition failed");
    check_spectrum(es, inv.lam);
    const double res =
        alignment_residual(a_cam, bp, delta, sigma, mu);

    if (cls.tag == EllipsoidClass::Tag::Spheroid) {
      int single = 0;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < 3; ++i) {
        const double gap = std::abs(es.eigenvalues()[i] - inv.lam[cls.single_axis]);
        if (gap < best) {
          best = gap;
          single = i;
        }
      }
      out.symmetry = OrientationSet::Symmetry::AxialContinuum;
      out.free_axis = Vec3::Unit(cls.single_axis);
      out.candidates = {internal::axial_representative(
          es.eigenvectors().col(single), cls.single_axis)};
      out.chirality_valid = {true};
      out.residuals = {res};
      return out;
    }

    // Triaxial: columns ordered by matching the known eigenvalues; the four
    // determinant-one sign choices are the ellipsoid's own symmetries.
    Mat3 p;
    for (int i = 0; i < 3; ++i) {
      int best_j = 0;
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < 3; ++j) {
        const double gap = std::abs(es.eigenvalues()[j] - inv.lam[i]);
        if (gap < best) {
          best = gap;
          best_j = j;
        }
      }
      p.col(i) = es.eigenvectors().col(best_j);
    }
    if (p.determinant() < 0.0) p.col(0) = -p.col(0);
    out.symmetry = OrientationSet::Symmetry::FourDiscrete;
    for (const Vec3& s : internal::even_sign_patterns()) {
      out.candidates.push_back(
          Rotation3::FromMatrix(p * s.asDiagonal().toDenseMatrix()));
      out.chirality_valid.push_back(true);
      out.residuals.push_back(res);
    }
    return out;
  }

  // Ellipsoid frame: reconstruct the cone there and match its axes to the
  // observed cone's axes.
  const SymMat3 a_ell = SymMat3::Diagonal(inv.lam[0], inv.lam[1], inv.lam[2]);
  const Vec3 ad = a_ell.apply(delta);
  const Mat3 bp_ell_m =
      (ad * ad.transpose() + mu * a_ell.mat()) / sigma;
  const ConeQuadric cone_ell(Vec3::Zero(), SymMat3::FromMatrix(bp_ell_m));
  for (int i = 0; i < 3; ++i)
    if (rel_gap(cone_ell.eigenvalues()[i], cone_cam.eigenvalues()[i]) >
        kSpectrumTol)
      fail(Err::InconsistentDistance,
           "reconstructed cone spectrum does not match the observation");

  const Mat3 p_cam = cone_cam.axes().mat();
  const Mat3 p_ell = cone_ell.axes().mat();
  std::vector<Rotation3> cands;
  for (const Vec3& s : internal::even_sign_patterns())
    cands.push_back(Rotation3::FromMatrix(
        p_cam * s.asDiagonal().toDenseMatrix() * p_ell.transpose()));

  if (cls.tag == EllipsoidClass::Tag::Spheroid) {
    const Rotation3* rep = nullptr;
    for (const auto& r : cands)
      if ((r * delta).z() < 0.0) {
        rep = &r;
        break;
      }
    if (rep == nullptr)
      fail(Err::InconsistentDistance, "no chirality-consistent orientation");
    const Mat3& r = rep->mat();
    const SymMat3 a_cam =
        SymMat3::FromMatrix(r * a_ell.mat() * r.transpose());
    out.symmetry = OrientationSet::Symmetry::AxialContinuum;
    out.free_axis = Vec3::Unit(cls.single_axis);
    out.candidates = {*rep};
    out.chirality_valid = {true};
    out.residuals = {
        alignment_residual(a_cam, bp, (*rep) * delta, sigma, mu)};
    return out;
  }

  out.symmetry = OrientationSet::Symmetry::FourDiscrete;
  for (const auto& r : cands) {
    const Vec3 delta_cam = r * delta;
    const SymMat3 a_cam =
        SymMat3::FromMatrix(r.mat() * a_ell.mat() * r.mat().transpose());
    out.candidates.push_back(r);
    out.chirality_valid.push_back(delta_cam.z() < 0.0);
    out.residuals.push_back(
        alignment_residual(a_cam, bp, delta_cam, sigma, mu));
  }
  return out;
}

}  // namespace p1e
