#pragma once

#include <cstdint>
#include <vector>

#include "p1e/cones.hpp"
#include "p1e/core.hpp"
#include "p1e/solver.hpp"

namespace p1e {

/// Camera pose as camera-to-world: X_world = rotation * X_cam + position.
struct CameraPose {
  Rotation3 rotation;
  Vec3 position = Vec3::Zero();
};

struct Scene {
  std::vector<EllipsoidModel> ellipsoids;  // world frame
  CameraPose camera;
  CameraIntrinsics intrinsics;
  std::uint64_t seed = 0;
};

struct SynthConfig {
  int count = 6;
  /// Cycled over the objects; empty means all triaxial.
  std::vector<EllipsoidClass::Tag> classes;
  double radius_min = 0.2;
  double radius_max = 5.0;
  double dist_min = 2.0;
  double dist_max = 20.0;
  double max_view_angle_deg = 20.0;
  CameraIntrinsics intrinsics{500.0, 500.0, 320.0, 240.0};
};

/// Exact outline of the ellipsoid under the pinhole camera, via the dual
/// quadric of the ellipsoid. Throws CameraInsideEllipsoid / BehindCamera
/// when the viewpoint is invalid.
EllipseObservation project_ellipsoid(const EllipsoidModel& model,
                                     const CameraPose& camera,
                                     const CameraIntrinsics& intr);

/// Deterministic in the seed; every generated ellipsoid is strictly exterior
/// to the camera center and wholly in front of the image plane.
Scene synth_scene(const SynthConfig& config, std::uint64_t seed);

struct NoiseSpec {
  double center_sigma = 0.0;  // pixels
  double axes_sigma = 0.0;    // relative
  double angle_sigma = 0.0;   // radians
  std::uint64_t seed = 0;
};

/// Additive Gaussian perturbation per field; axes are clamped positive and
/// re-sorted, so the output is always a valid ellipse.
EllipseObservation perturb_observation(const EllipseObservation& obs,
                                       const NoiseSpec& spec);

/// A solution locus together with the known world pose of its ellipsoid, so
/// camera positions can be mapped into the world frame.
struct PositionedLocus {
  const SolutionLocus* locus = nullptr;
  Rotation3 ell_rotation;  // ellipsoid-to-world
  Vec3 ell_center = Vec3::Zero();
};

struct IntersectResult {
  Vec3 estimate = Vec3::Zero();
  double spread = 0.0;
  /// Set when two loci coincide along their whole length (duplicate input).
  bool degenerate = false;
};

/// Point minimizing the distances to every locus, found by sampling each
/// locus and refining the nearest point per locus in its 1-DoF parameter.
/// Throws NoIntersection when the final spread exceeds tol.
IntersectResult intersect_loci(const std::vector<PositionedLocus>& loci,
                               int samples_per_locus, double tol);

/// Camera position of a pose sample mapped into the world frame.
Vec3 camera_position_world(const PositionedLocus& pl, const PoseSolution& pose);

}  // namespace p1e
