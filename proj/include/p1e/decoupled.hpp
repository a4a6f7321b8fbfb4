#pragma once

#include <vector>

#include "p1e/cones.hpp"
#include "p1e/core.hpp"
#include "p1e/spectral.hpp"

namespace p1e {

/// Relative camera pose expressed in the ellipsoid frame: camera_position is
/// the camera center there, camera_rotation the camera axes there (equal to
/// the transpose of the ellipsoid-to-camera rotation).
struct PoseSolution {
  Vec3 camera_position = Vec3::Zero();
  Rotation3 camera_rotation;
  double residual = 0.0;
};

/// Closed-form relative position when the relative orientation is known.
/// cam_R_ell maps ellipsoid-frame vectors into the camera frame; view_normal
/// is the optical axis used for the chirality constraint.
PoseSolution position_from_orientation(const SymMat3& A_ell,
                                       const Rotation3& cam_R_ell,
                                       const ConeQuadric& cone_cam,
                                       const Vec3& view_normal = Vec3(0, 0,
                                                                      1));

/// Which frame the known relative position is expressed in.
enum class DeltaFrame { Camera, Ellipsoid };

/// Orientations compatible with a known relative position, up to the
/// ellipsoid symmetries. Candidates are ellipsoid-to-camera rotations.
struct OrientationSet {
  enum class Symmetry { FourDiscrete, AxialContinuum, FullContinuum };
  Symmetry symmetry = Symmetry::FourDiscrete;
  std::vector<Rotation3> candidates;
  std::vector<bool> chirality_valid;
  std::vector<double> residuals;
  /// AxialContinuum: unit symmetry axis in the ellipsoid frame. Composing a
  /// candidate with any rotation about this axis leaves the camera-frame
  /// instance (and its residual) unchanged.
  Vec3 free_axis = Vec3::UnitZ();
};

/// Triaxial: four discrete candidates (with delta in the ellipsoid frame,
/// exactly two pass the chirality test). Spheroid: one representative plus
/// the free axis. Sphere: full rotational freedom.
OrientationSet orientation_from_position(const Vec3& delta, DeltaFrame frame,
                                         const std::array<double, 3>& radii,
                                         const ConeQuadric& cone_cam,
                                         double cluster_tol = kDefaultClusterTol);

}  // namespace p1e
