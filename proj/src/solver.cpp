#include "p1e/solver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "internal.hpp"

namespace p1e {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEndpointTol = 1e-10;

struct ScalarInvariants {
  double tr_a, tr_a_inv, det_a;
  double tr_bp, tr_bp_inv, det_bp;
  double d;  // cbrt(det A / det B')
};

ScalarInvariants scalar_invariants(const std::array<double, 3>& a_eigs,
                                   const ConeQuadric& cone) {
  ScalarInvariants s{};
  s.tr_a = a_eigs[0] + a_eigs[1] + a_eigs[2];
  s.tr_a_inv = 1.0 / a_eigs[0] + 1.0 / a_eigs[1] + 1.0 / a_eigs[2];
  s.det_a = a_eigs[0] * a_eigs[1] * a_eigs[2];
  s.tr_bp = cone.trace();
  s.tr_bp_inv = cone.inv_trace();
  s.det_bp = cone.det();
  s.d = std::cbrt(s.det_a / s.det_bp);
  return s;
}

// Power sums of delta against the shape matrix, as polynomials in m:
//   V0 = tr A^-1 - tr(B'^-1) m / d,  V1 = 1 - m^3,  V2 = tr B' d m^2 - tr A m^3.
std::array<Cubic, 3> power_sum_polynomials(const ScalarInvariants& s) {
  std::array<Cubic, 3> v;
  v[0].c = {s.tr_a_inv, -s.tr_bp_inv / s.d, 0.0, 0.0};
  v[1].c = {1.0, 0.0, 0.0, -1.0};
  v[2].c = {0.0, 0.0, s.tr_bp * s.d, -s.tr_a};
  return v;
}

// Assembles the set {m < 0 : all components >= 0} from the components'
// real roots. eval(i, m) returns component i at m.
std::vector<Interval> assemble_feasible_set(
    std::vector<double> roots,
    const std::function<double(int, double)>& eval, int ncomp) {
  std::sort(roots.begin(), roots.end());
  roots.erase(std::remove_if(roots.begin(), roots.end(),
                             [](double r) { return !(r < 0.0); }),
              roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) {
                            return std::abs(a - b) <=
                                   1e-12 * (1.0 + std::abs(a));
                          }),
              roots.end());

  const auto all_nonneg = [&](double m, double tol) {
    for (int i = 0; i < ncomp; ++i)
      if (eval(i, m) < -tol) return false;
    return true;
  };

  // Cell midpoints between consecutive breakpoints (plus the two end cells).
  const int ncells = static_cast<int>(roots.size()) + 1;
  std::vector<bool> feasible(ncells, false);
  for (int c = 0; c < ncells; ++c) {
    double mid;
    if (roots.empty())
      mid = -1.0;
    else if (c == 0)
      mid = roots.front() - 1.0 - std::abs(roots.front());
    else if (c == ncells - 1)
      mid = 0.5 * roots.back();
    else
      mid = 0.5 * (roots[c - 1] + roots[c]);
    feasible[c] = all_nonneg(mid, 0.0);
  }
  if (feasible[0])
    fail(Err::InvalidInput, "feasible set is unbounded toward -infinity");

  std::vector<Interval> out;
  int c = 0;
  while (c < ncells) {
    if (!feasible[c]) {
      // An isolated touching point between two infeasible cells still
      // belongs to the set when every component is non-negative there.
      if (c + 1 < ncells && !feasible[c + 1] &&
          all_nonneg(roots[c], kEndpointTol))
        out.push_back(Interval{roots[c], roots[c]});
      ++c;
      continue;
    }
    int last = c;
    while (last + 1 < ncells && feasible[last + 1]) ++last;
    Interval iv;
    iv.lo = roots[c - 1];  // c >= 1: the unbounded cell was rejected above
    iv.hi = last == ncells - 1 ? 0.0 : roots[last];
    out.push_back(iv);
    c = last + 1;
  }
  return out;
}

Mat3 inverse_vandermonde(const std::array<double, 3>& x, double* rcond) {
  const Mat3 m = internal::vandermonde(x);
  if (rcond != nullptr) {
    Eigen::JacobiSVD<Mat3> svd(m);
    *rcond = svd.singularValues()(2) / svd.singularValues()(0);
  }
  return m.inverse();
}

Vec3 delta_squared_at(const std::array<Cubic, 3>& comp, double m) {
  return Vec3(comp[0].eval(m), comp[1].eval(m), comp[2].eval(m));
}

struct SpheroidAxes {
  int single = -1;  // index of the distinct radius
  double lam_single = 0.0;
  double lam_double = 0.0;
};

SpheroidAxes spheroid_axes(const std::array<double, 3>& a_eigs,
                           const EllipsoidClass& cls) {
  SpheroidAxes s;
  s.single = cls.single_axis;
  s.lam_single = a_eigs[s.single];
  s.lam_double = a_eigs[(s.single + 1) % 3];
  return s;
}

}  // namespace

FeasibleM triaxial_feasible_m(const std::array<double, 3>& a_eigs,
                              const ConeQuadric& cone, double cluster_tol) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (rel_gap(a_eigs[i], a_eigs[j]) < cluster_tol)
        fail(Err::DegenerateVandermonde,
             "repeated shape eigenvalues: reclassify as a spheroid");

  const ScalarInvariants s = scalar_invariants(a_eigs, cone);
  FeasibleM out;
  out.d = s.d;
  const Mat3 inv = inverse_vandermonde(a_eigs, &out.vandermonde_rcond);
  const auto v = power_sum_polynomials(s);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 4; ++k)
      out.components[i].c[k] =
          inv(i, 0) * v[0].c[k] + inv(i, 1) * v[1].c[k] + inv(i, 2) * v[2].c[k];

  std::vector<double> roots;
  for (const auto& comp : out.components)
    for (double r : cubic_real_roots(comp)) roots.push_back(r);
  out.intervals = assemble_feasible_set(
      roots, [&](int i, double m) { return out.components[i].eval(m); }, 3);
  return out;
}

std::vector<Interval> triaxial_feasible_m_cone_frame(
    const std::array<double, 3>& a_eigs, const ConeQuadric& cone) {
  const ScalarInvariants s = scalar_invariants(a_eigs, cone);
  const Mat3 inv = inverse_vandermonde(cone.eigenvalues(), nullptr);
  const auto v = power_sum_polynomials(s);

  // Squared components in the cone frame carry 1/(d m^2) and 1/(d m^2)^2
  // factors; multiplying through by d^2 m^4 > 0 leaves quintics with the
  // same signs for m != 0.
  std::array<std::vector<double>, 3> q;
  for (int i = 0; i < 3; ++i) {
    q[i].assign(6, 0.0);
    // inv(i,0) * V0 * d^2 m^4
    q[i][4] += inv(i, 0) * s.d * s.d * v[0].c[0];
    q[i][5] += inv(i, 0) * s.d * s.d * v[0].c[1];
    // inv(i,1) * V1 * d m^2
    q[i][2] += inv(i, 1) * s.d * v[1].c[0];
    q[i][5] += inv(i, 1) * s.d * v[1].c[3];
    // inv(i,2) * V2
    q[i][2] += inv(i, 2) * v[2].c[2];
    q[i][3] += inv(i, 2) * v[2].c[3];
  }

  std::vector<double> roots;
  for (int i = 0; i < 3; ++i)
    for (double r : poly_real_roots(q[i])) roots.push_back(r);
  const auto eval = [&](int i, double m) {
    double f = 0.0;
    for (int k = 5; k >= 0; --k) f = f * m + q[i][k];
    return f;
  };
  return assemble_feasible_set(roots, eval, 3);
}

std::vector<PoseSolution> triaxial_poses_at(double m,
                                            const std::array<double, 3>& a_eigs,
                                            const ConeQuadric& cone_cam,
                                            const FeasibleM& feasible) {
  Vec3 d_sq = delta_squared_at(feasible.components, m);
  for (int i = 0; i < 3; ++i) {
    if (d_sq[i] < -kEndpointTol)
      fail(Err::InfeasibleM, "m lies outside the feasible set");
    d_sq[i] = std::max(d_sq[i], 0.0);
  }
  const double d = feasible.d;
  const double sigma = d * m * m;
  const double mu = m * m * m;
  const SymMat3 a_ell = SymMat3::Diagonal(a_eigs[0], a_eigs[1], a_eigs[2]);
  const Vec3 base = d_sq.cwiseSqrt();
  const Mat3 p_cam = cone_cam.axes().mat();

  std::vector<PoseSolution> poses;
  poses.reserve(16);
  for (int bits = 0; bits < 8; ++bits) {
    const Vec3 delta_ell(bits & 1 ? -base.x() : base.x(),
                         bits & 2 ? -base.y() : base.y(),
                         bits & 4 ? -base.z() : base.z());
    const Vec3 ad = a_ell.apply(delta_ell);
    const Mat3 bp_ell_m =
        ad * ad.transpose() / (d * m * m) + (m / d) * a_ell.mat();
    const ConeQuadric cone_ell(Vec3::Zero(), SymMat3::FromMatrix(bp_ell_m));
    const Mat3 p_ell = cone_ell.axes().mat();
    for (const Vec3& sgn : internal::even_sign_patterns()) {
      const Rotation3 r = Rotation3::FromMatrix(
          p_cam * sgn.asDiagonal().toDenseMatrix() * p_ell.transpose());
      const Vec3 delta_cam = r * delta_ell;
      if (!(delta_cam.z() < 0.0)) continue;  // ellipsoid behind the camera
      PoseSolution pose;
      pose.camera_position = delta_ell;
      pose.camera_rotation = r.transpose();
      const SymMat3 a_cam = SymMat3::FromMatrix(
          r.mat() * a_ell.mat() * r.mat().transpose());
      pose.residual = alignment_residual(a_cam, cone_cam.matrix(), delta_cam,
                                         sigma, mu);
      poses.push_back(pose);
    }
  }
  // Sign flips of a vanishing component duplicate poses (interval endpoints).
  std::vector<PoseSolution> unique;
  for (const auto& p : poses) {
    bool dup = false;
    for (const auto& u : unique)
      if ((p.camera_position - u.camera_position).norm() <= 1e-10 &&
          p.camera_rotation.angle_to(u.camera_rotation) <= 1e-10)
        dup = true;
    if (!dup) unique.push_back(p);
  }
  return unique;
}

SolutionLocus spheroid_noncircular_solve(const std::array<double, 3>& radii,
                                         const ConeQuadric& cone_cam,
                                         double cluster_tol) {
  const EllipsoidClass cls = classify_ellipsoid(radii, cluster_tol);
  if (cls.tag != EllipsoidClass::Tag::Spheroid)
    fail(Err::WrongClass, "ellipsoid is not a spheroid");
  const ConeClass ccls = classify_cone(cone_cam, cluster_tol);
  if (ccls.tag != ConeClass::Tag::NonCircularElliptic)
    fail(Err::WrongClass, "cone is not a non-circular elliptic cone");

  std::array<double, 3> a_eigs{};
  for (int i = 0; i < 3; ++i) a_eigs[i] = 1.0 / (radii[i] * radii[i]);
  const SpheroidAxes ax = spheroid_axes(a_eigs, cls);
  const auto& lb = cone_cam.eigenvalues();
  const ScalarInvariants s = scalar_invariants(a_eigs, cone_cam);

  // The only admissible sigma; which same-sign eigenvalue enters depends on
  // whether the single shape eigenvalue is below or above the doubled one.
  const int zero_idx = ax.lam_single < ax.lam_double ? 0 : 1;
  const int free_idx = 1 - zero_idx;
  const double sigma = ax.lam_single * lb[zero_idx] / (lb[free_idx] * lb[2]);
  if (!(sigma / s.d >= 0.0))
    fail(Err::InvalidInput, "inconsistent sigma sign");
  const double m = -std::sqrt(sigma / s.d);
  const double mu = m * m * m;

  const Mat3 inv_mb = inverse_vandermonde(lb, nullptr);
  const auto v = power_sum_polynomials(s);
  const Vec3 vp(v[0].eval(m), v[1].eval(m) / (s.d * m * m),
                v[2].eval(m) / (s.d * s.d * m * m * m * m));
  Vec3 d_sq = inv_mb * vp;
  const double scale = d_sq.cwiseAbs().maxCoeff();
  if (std::abs(d_sq[zero_idx]) > 1e-6 * scale)
    fail(Err::InvalidInput, "expected vanishing delta component");
  d_sq[zero_idx] = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (d_sq[i] < -kEndpointTol * std::max(1.0, scale))
      fail(Err::InvalidInput, "negative squared delta component");
    d_sq[i] = std::max(d_sq[i], 0.0);
  }
  if (!(d_sq[2] > 0.0))
    fail(Err::InvalidInput, "delta has no component along the cone axis");

  const Mat3 p_cam = cone_cam.axes().mat();
  SolutionLocus locus;
  locus.ellipsoid_class = cls;
  locus.cone_class = ccls;
  SpheroidNonCircularLocus br;
  br.sigma = sigma;
  br.m = m;
  br.a_eigs = a_eigs;
  br.cone_cam = cone_cam;
  br.free_axis = Vec3::Unit(ax.single);

  for (int k = 0; k < 2; ++k) {
    Vec3 delta_cone = Vec3::Zero();
    delta_cone[free_idx] = (k == 0 ? 1.0 : -1.0) * std::sqrt(d_sq[free_idx]);
    delta_cone[2] = std::sqrt(d_sq[2]);
    Vec3 delta_cam = p_cam * delta_cone;
    if (!(delta_cam.z() < 0.0)) {  // chirality fixes the axis component sign
      delta_cone[2] = -delta_cone[2];
      delta_cam = p_cam * delta_cone;
    }
    const Mat3 bp = cone_cam.matrix().mat();
    const Vec3 bd = bp * delta_cam;
    const SymMat3 a_cam = SymMat3::FromMatrix(
        (sigma / mu) * (bp - sigma * bd * bd.transpose()));
    Eigen::SelfAdjointEigenSolver<Mat3> es(a_cam.mat());
    if (es.info() != Eigen::Success || !(es.eigenvalues().minCoeff() > 0.0))
      fail(Err::InconsistentDistance,
           "reconstructed spheroid is not positive definite");
    int single_col = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
      const double gap = std::abs(es.eigenvalues()[i] - ax.lam_single);
      if (gap < best) {
        best = gap;
        single_col = i;
      }
    }
    SpheroidTangentBranch b;
    b.delta_cone = delta_cone;
    b.delta_cam = delta_cam;
    b.a_cam = a_cam;
    b.representative = internal::axial_representative(
        es.eigenvectors().col(single_col), ax.single);
    b.residual =
        alignment_residual(a_cam, cone_cam.matrix(), delta_cam, sigma, mu);
    br.branches[k] = b;
  }
  locus.branch = br;
  return locus;
}

SolutionLocus spheroid_circular_solve(const std::array<double, 3>& radii,
                                      const ConeQuadric& cone_cam,
                                      double cluster_tol) {
  const EllipsoidClass cls = classify_ellipsoid(radii, cluster_tol);
  if (cls.tag != EllipsoidClass::Tag::Spheroid)
    fail(Err::WrongClass, "ellipsoid is not a spheroid");
  const ConeClass ccls = classify_cone(cone_cam, cluster_tol);
  if (ccls.tag != ConeClass::Tag::Circular)
    fail(Err::WrongClass, "cone is not circular");

  std::array<double, 3> a_eigs{};
  for (int i = 0; i < 3; ++i) a_eigs[i] = 1.0 / (radii[i] * radii[i]);
  const SpheroidAxes ax = spheroid_axes(a_eigs, cls);
  const auto& lb = cone_cam.eigenvalues();
  const double lb_double = 0.5 * (lb[0] + lb[1]);
  const double lb_single = lb[2];

  const double sigma = ax.lam_single / lb_single;
  const double radicand =
      (1.0 - ax.lam_single * lb_double / (ax.lam_double * lb_single)) /
      ax.lam_single;
  if (radicand < 0.0)
    fail(Err::NegativeRadicand, "no real camera distance for this pairing");
  const double dist = std::sqrt(radicand);

  const Vec3 axis_cam = internal::oriented_cone_axis(cone_cam);
  const Vec3 delta_cam = -dist * axis_cam;
  const double mu = 1.0 - ax.lam_single * dist * dist;

  const Rotation3 rep =
      internal::axial_representative(-axis_cam, ax.single);
  const Mat3& r = rep.mat();
  const SymMat3 a_cam = SymMat3::FromMatrix(
      r * Eigen::DiagonalMatrix<double, 3>(a_eigs[0], a_eigs[1], a_eigs[2]) *
      r.transpose());

  SolutionLocus locus;
  locus.ellipsoid_class = cls;
  locus.cone_class = ccls;
  SpheroidCircularLocus br;
  br.sigma = sigma;
  br.dist = dist;
  br.axis_cam = axis_cam;
  br.free_axis = Vec3::Unit(ax.single);
  br.a_eigs = a_eigs;
  br.cone_cam = cone_cam;
  br.residual =
      alignment_residual(a_cam, cone_cam.matrix(), delta_cam, sigma, mu);
  locus.branch = br;
  return locus;
}

SolutionLocus sphere_solve(double radius, const ConeQuadric& cone_cam,
                           double cluster_tol) {
  if (!(radius > 0.0)) fail(Err::NonPositiveRadius, "radius must be positive");
  const ConeClass ccls = classify_cone(cone_cam, cluster_tol);
  if (ccls.tag != ConeClass::Tag::Circular)
    fail(Err::WrongClass, "cone is not circular");

  const double lam = 1.0 / (radius * radius);
  const auto& lb = cone_cam.eigenvalues();
  const double lb_double = 0.5 * (lb[0] + lb[1]);
  const double lb_single = lb[2];
  const double sigma = lam / lb_single;
  const double radicand = (1.0 - lb_double / lb_single) / lam;
  if (radicand < 0.0)
    fail(Err::NegativeRadicand, "no real camera distance");
  const double dist = std::sqrt(radicand);

  const Vec3 axis_cam = internal::oriented_cone_axis(cone_cam);
  const Vec3 delta_cam = -dist * axis_cam;
  const double mu = 1.0 - lam * dist * dist;

  SolutionLocus locus;
  EllipsoidClass cls;
  cls.tag = EllipsoidClass::Tag::Sphere;
  locus.ellipsoid_class = cls;
  locus.cone_class = ccls;
  SphereLocus br;
  br.sigma = sigma;
  br.dist = dist;
  br.axis_cam = axis_cam;
  br.radius = radius;
  br.cone_cam = cone_cam;
  br.residual = alignment_residual(SymMat3::Diagonal(lam, lam, lam),
                                   cone_cam.matrix(), delta_cam, sigma, mu);
  locus.branch = br;
  return locus;
}

SolutionLocus solve_p1e(const EllipseObservation& obs,
                        const CameraIntrinsics& intr,
                        const std::array<double, 3>& radii,
                        const SolveOptions& opts) {
  const EllipsoidClass cls = classify_ellipsoid(radii, opts.cluster_tol);
  const ConeQuadric cone = backprojection_cone(obs, intr);
  const ConeClass ccls = classify_cone(cone, opts.cluster_tol);
  const bool circular = ccls.tag == ConeClass::Tag::Circular;

  switch (cls.tag) {
    case EllipsoidClass::Tag::Triaxial: {
      if (circular)
        fail(Err::ImpossibleCoOccurrence,
             "a triaxial ellipsoid cannot project to a circular cone");
      std::array<double, 3> a_eigs{};
      for (int i = 0; i < 3; ++i) a_eigs[i] = 1.0 / (radii[i] * radii[i]);
      SolutionLocus locus;
      locus.ellipsoid_class = cls;
      locus.cone_class = ccls;
      TriaxialLocus br;
      br.a_eigs = a_eigs;
      br.cone_cam = cone;
      br.feasible = triaxial_feasible_m(a_eigs, cone, opts.cluster_tol);
      locus.branch = br;
      return locus;
    }
    case EllipsoidClass::Tag::Spheroid:
      return circular ? spheroid_circular_solve(radii, cone, opts.cluster_tol)
                      : spheroid_noncircular_solve(radii, cone,
                                                   opts.cluster_tol);
    case EllipsoidClass::Tag::Sphere:
      if (!circular)
        fail(Err::ImpossibleCoOccurrence,
             "a sphere cannot project to a non-circular cone");
      return sphere_solve(radii[0], cone, opts.cluster_tol);
  }
  fail(Err::InvalidInput, "unreachable");
}

std::vector<LocusSample> sample_locus_params(const SolutionLocus& locus,
                                             int n) {
  if (n < 1) fail(Err::InvalidInput, "sample count must be at least 1");
  std::vector<LocusSample> out;

  if (const auto* tri = std::get_if<TriaxialLocus>(&locus.branch)) {
    const auto& ivs = tri->feasible.intervals;
    if (ivs.empty()) fail(Err::EmptyLocus, "no feasible m values");
    double total = 0.0;
    for (const auto& iv : ivs) total += iv.length();
    for (int k = 0; k < n; ++k) {
      double m;
      if (total > 0.0) {
        double t = (k + 0.5) / n * total;
        m = ivs.back().hi;
        for (const auto& iv : ivs) {
          if (t <= iv.length()) {
            m = iv.lo + t;
            break;
          }
          t -= iv.length();
        }
      } else {
        m = ivs[k % ivs.size()].lo;  // isolated touching points
      }
      for (auto& pose :
           triaxial_poses_at(m, tri->a_eigs, tri->cone_cam, tri->feasible))
        out.push_back(LocusSample{m, std::move(pose)});
    }
    return out;
  }

  if (const auto* sp = std::get_if<SpheroidNonCircularLocus>(&locus.branch)) {
    for (int k = 0; k < n; ++k) {
      const int which = k % 2;
      const int per = (n + 1 - which) / 2;
      const double theta = 2.0 * kPi * (k / 2) / std::max(per, 1);
      const auto& b = sp->branches[which];
      const Rotation3 rot =
          b.representative *
          Rotation3::FromAxisAngle(sp->free_axis, theta);
      LocusSample s;
      s.parameter = theta;
      s.pose.camera_rotation = rot.transpose();
      s.pose.camera_position = s.pose.camera_rotation * b.delta_cam;
      s.pose.residual = b.residual;
      out.push_back(s);
    }
    return out;
  }

  if (const auto* sc = std::get_if<SpheroidCircularLocus>(&locus.branch)) {
    const Vec3 delta_cam = -sc->dist * sc->axis_cam;
    int single = 0;
    sc->free_axis.cwiseAbs().maxCoeff(&single);
    // The two signed positions on the coincident axis: the symmetry axis can
    // map to either end of the cone axis.
    const std::array<Rotation3, 2> reps = {
        internal::axial_representative(-sc->axis_cam, single),
        internal::axial_representative(sc->axis_cam, single)};
    for (int k = 0; k < n; ++k) {
      const int which = k % 2;
      const int per = (n + 1 - which) / 2;
      const double theta = 2.0 * kPi * (k / 2) / std::max(per, 1);
      const Rotation3 rot =
          reps[which] * Rotation3::FromAxisAngle(sc->free_axis, theta);
      LocusSample s;
      s.parameter = theta;
      s.pose.camera_rotation = rot.transpose();
      s.pose.camera_position = s.pose.camera_rotation * delta_cam;
      s.pose.residual = sc->residual;
      out.push_back(s);
    }
    return out;
  }

  const auto& sph = std::get<SphereLocus>(locus.branch);
  const Vec3 delta_cam = -sph.dist * sph.axis_cam;
  const Vec3 dir_cam = -sph.axis_cam;
  const double golden = 2.0 * kPi * (1.0 - 1.0 / 1.61803398874989485);
  for (int k = 0; k < n; ++k) {
    const double z = n == 1 ? 1.0 : 1.0 - 2.0 * (k + 0.5) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * k;
    const Vec3 v(rho * std::cos(phi), rho * std::sin(phi), z);
    Rotation3 rot = Rotation3::FromTwoVectors(v, dir_cam);
    rot = Rotation3::FromAxisAngle(dir_cam, golden * k * 0.5) * rot;
    LocusSample s;
    s.parameter = (k + 0.5) / n;
    s.pose.camera_rotation = rot.transpose();
    s.pose.camera_position = s.pose.camera_rotation * delta_cam;
    s.pose.residual = sph.residual;
    out.push_back(s);
  }
  return out;
}

std::vector<PoseSolution> sample_locus(const SolutionLocus& locus, int n) {
  std::vector<PoseSolution> out;
  for (auto& s : sample_locus_params(locus, n)) out.push_back(std::move(s.pose));
  return out;
}

}  // namespace p1e
