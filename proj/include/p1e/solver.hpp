#pragma once

#include <array>
#include <variant>
#include <vector>

#include "p1e/cones.hpp"
#include "p1e/core.hpp"
#include "p1e/decoupled.hpp"
#include "p1e/polynomial.hpp"

namespace p1e {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double x, double tol = 0.0) const {
    return x >= lo - tol && x <= hi + tol;
  }
};

/// Feasible set of the scalar unknown m (m^3 = mu < 0, sigma = d m^2): the
/// values where all three entries of the inverted power-sum system are
/// non-negative. Each entry is an exact cubic in m.
struct FeasibleM {
  std::vector<Interval> intervals;  // within (-inf, 0), ascending
  std::array<Cubic, 3> components;  // squared delta components vs m
  double d = 0.0;                   // cbrt(det A / det B')
  double vandermonde_rcond = 0.0;   // conditioning diagnostic
};

FeasibleM triaxial_feasible_m(const std::array<double, 3>& a_eigs,
                              const ConeQuadric& cone,
                              double cluster_tol = kDefaultClusterTol);

/// Same feasible set computed in the cone frame (inverting the Vandermonde
/// system over the cone eigenvalues). Independent route, used to cross-check
/// the ellipsoid-frame intervals.
std::vector<Interval> triaxial_feasible_m_cone_frame(
    const std::array<double, 3>& a_eigs, const ConeQuadric& cone);

/// All camera poses at a feasible interior m: eight sign choices for the
/// position, each with the two chirality-consistent orientations.
std::vector<PoseSolution> triaxial_poses_at(double m,
                                            const std::array<double, 3>& a_eigs,
                                            const ConeQuadric& cone_cam,
                                            const FeasibleM& feasible);

struct TriaxialLocus {
  std::array<double, 3> a_eigs;
  ConeQuadric cone_cam;
  FeasibleM feasible;
};

struct SpheroidTangentBranch {
  Vec3 delta_cone = Vec3::Zero();
  Vec3 delta_cam = Vec3::Zero();
  SymMat3 a_cam;
  Rotation3 representative;  // ellipsoid-to-camera
  double residual = 0.0;
};

struct SpheroidNonCircularLocus {
  double sigma = 0.0;
  double m = 0.0;
  std::array<SpheroidTangentBranch, 2> branches;  // the two tangent spheroids
  Vec3 free_axis = Vec3::UnitZ();                 // ellipsoid frame
  std::array<double, 3> a_eigs;
  ConeQuadric cone_cam;
};

struct SpheroidCircularLocus {
  double sigma = 0.0;
  double dist = 0.0;     // ||delta||
  Vec3 axis_cam = Vec3::UnitZ();  // coincident revolution axis, camera frame
  Vec3 free_axis = Vec3::UnitZ();
  std::array<double, 3> a_eigs;
  ConeQuadric cone_cam;
  double residual = 0.0;
};

struct SphereLocus {
  double sigma = 0.0;
  double dist = 0.0;
  Vec3 axis_cam = Vec3::UnitZ();
  double radius = 0.0;
  ConeQuadric cone_cam;
  double residual = 0.0;
};

struct SolutionLocus {
  EllipsoidClass ellipsoid_class;
  ConeClass cone_class;
  std::variant<TriaxialLocus, SpheroidNonCircularLocus, SpheroidCircularLocus,
               SphereLocus>
      branch;
};

SolutionLocus spheroid_noncircular_solve(const std::array<double, 3>& radii,
                                         const ConeQuadric& cone_cam,
                                         double cluster_tol = kDefaultClusterTol);

SolutionLocus spheroid_circular_solve(const std::array<double, 3>& radii,
                                      const ConeQuadric& cone_cam,
                                      double cluster_tol = kDefaultClusterTol);

SolutionLocus sphere_solve(double radius, const ConeQuadric& cone_cam,
                           double cluster_tol = kDefaultClusterTol);

struct SolveOptions {
  double cluster_tol = kDefaultClusterTol;
  double residual_tol = kDefaultResidualTol;
};

/// Classifies the ellipsoid and the backprojection cone, rejects the
/// impossible pairings (triaxial with a circular cone, sphere with a
/// non-circular one) and dispatches to the matching closed-form branch.
SolutionLocus solve_p1e(const EllipseObservation& obs,
                        const CameraIntrinsics& intr,
                        const std::array<double, 3>& radii,
                        const SolveOptions& opts = {});

struct LocusSample {
  double parameter = 0.0;  // m for the triaxial branch, angle otherwise
  PoseSolution pose;
};

/// Materializes n parameter samples of the locus: m uniform over the
/// feasible intervals (16 poses each), the axial continua at evenly spaced
/// angles, the sphere via a deterministic low-discrepancy direction sequence.
std::vector<LocusSample> sample_locus_params(const SolutionLocus& locus, int n);
std::vector<PoseSolution> sample_locus(const SolutionLocus& locus, int n);

}  // namespace p1e
