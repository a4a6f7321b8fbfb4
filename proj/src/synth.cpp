#include "p1e/synth.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "internal.hpp"

namespace p1e {

namespace {

constexpr double kPi = 3.14159265358979323846;

Rotation3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double w = n(rng), x = n(rng), y = n(rng), z = n(rng);
  while (w * w + x * x + y * y + z * z < 1e-12) {
    w = n(rng);
    x = n(rng);
    y = n(rng);
    z = n(rng);
  }
  return Rotation3::FromQuaternion(w, x, y, z);
}

struct CamFrame {
  SymMat3 a_cam;
  Vec3 c_cam;
};

CamFrame to_camera_frame(const EllipsoidModel& model, const CameraPose& cam) {
  const Mat3 r_wc = cam.rotation.mat();
  CamFrame f;
  f.c_cam = r_wc.transpose() * (model.center() - cam.position);
  f.a_cam = SymMat3::FromMatrix(r_wc.transpose() *
                                model.shape_matrix().mat() * r_wc);
  return f;
}

}  // namespace

EllipseObservation project_ellipsoid(const EllipsoidModel& model,
                                     const CameraPose& camera,
                                     const CameraIntrinsics& intr) {
  const CamFrame f = to_camera_frame(model, camera);
  if (!(f.a_cam.quad(f.c_cam) > 1.0 + 1e-12))
    fail(Err::CameraInsideEllipsoid,
         "camera center is not strictly outside the ellipsoid");
  const Mat3 a_inv = f.a_cam.mat().inverse();
  const double support_z = std::sqrt(a_inv(2, 2));
  if (!(f.c_cam.z() - support_z > 1e-9))
    fail(Err::BehindCamera, "ellipsoid is not wholly in front of the camera");

  // Dual conic of the outline on the normalized plane; the primal conic is
  // its inverse up to scale.
  const Mat3 dual = f.c_cam * f.c_cam.transpose() - a_inv;
  const double det = dual.determinant();
  if (std::abs(det) < 1e-300)
    fail(Err::BehindCamera, "degenerate outline projection");
  const Mat3 conic_n = dual.inverse();

  Mat3 h = Mat3::Identity();
  h(0, 0) = intr.fx;
  h(1, 1) = intr.fy;
  h(0, 2) = intr.cx;
  h(1, 2) = intr.cy;
  const Mat3 h_inv = h.inverse();
  const Mat3 conic_px = h_inv.transpose() * conic_n * h_inv;
  const detail::EllipseParams e = detail::ellipse_from_conic(conic_px);
  return EllipseObservation(e.center, e.semi_major, e.semi_minor, e.angle);
}

Scene synth_scene(const SynthConfig& config, std::uint64_t seed) {
  if (config.count < 1) fail(Err::ConfigError, "object count must be positive");
  if (!(config.radius_min > 0.0) || !(config.radius_max >= config.radius_min))
    fail(Err::ConfigError, "bad radius range");
  if (!(config.dist_min > 0.0) || !(config.dist_max >= config.dist_min))
    fail(Err::ConfigError, "bad distance range");
  if (!(config.max_view_angle_deg > 0.0) || config.max_view_angle_deg > 60.0)
    fail(Err::ConfigError, "view angle out of range");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Scene scene;
  scene.seed = seed;
  scene.intrinsics = config.intrinsics;
  scene.camera.rotation = random_rotation(rng);
  scene.camera.position =
      Vec3(unit(rng) * 6 - 3, unit(rng) * 6 - 3, unit(rng) * 6 - 3);

  const double cos_max = std::cos(config.max_view_angle_deg * kPi / 180.0);
  for (int i = 0; i < config.count; ++i) {
    const EllipsoidClass::Tag tag =
        config.classes.empty()
            ? EllipsoidClass::Tag::Triaxial
            : config.classes[i % config.classes.size()];
    bool placed = false;
    for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
      const double dist =
          config.dist_min + unit(rng) * (config.dist_max - config.dist_min);
      const double cz = cos_max + unit(rng) * (1.0 - cos_max);
      const double az = 2.0 * kPi * unit(rng);
      const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
      const Vec3 dir_cam(sz * std::cos(az), sz * std::sin(az), cz);
      const Vec3 center = scene.camera.position +
                          scene.camera.rotation * (dist * dir_cam);

      const double rmax = std::min(config.radius_max, dist / 4.0);
      if (rmax < config.radius_min) continue;
      const double base =
          config.radius_min + unit(rng) * (rmax - config.radius_min);
      std::array<double, 3> radii{};
      switch (tag) {
        case EllipsoidClass::Tag::Triaxial: {
          bool distinct = false;
          for (int t = 0; t < 20 && !distinct; ++t) {
            for (auto& r : radii) r = base * (0.4 + 0.6 * unit(rng));
            distinct = rel_gap(radii[0], radii[1]) > 0.02 &&
                       rel_gap(radii[0], radii[2]) > 0.02 &&
                       rel_gap(radii[1], radii[2]) > 0.02;
          }
          if (!distinct) continue;
          break;
        }
        case EllipsoidClass::Tag::Spheroid: {
          const double rd = base * (0.4 + 0.6 * unit(rng));
          double rs = rd;
          for (int t = 0; t < 20 && rel_gap(rs, rd) < 0.05; ++t)
            rs = base * (0.4 + 0.6 * unit(rng));
          if (rel_gap(rs, rd) < 0.05) continue;
          const int single = static_cast<int>(unit(rng) * 3.0) % 3;
          radii = {rd, rd, rd};
          radii[single] = rs;
          break;
        }
        case EllipsoidClass::Tag::Sphere:
          radii = {base, base, base};
          break;
      }

      EllipsoidModel model(center, random_rotation(rng), radii);
      const CamFrame f = to_camera_frame(model, scene.camera);
      if (!(f.a_cam.quad(f.c_cam) > 1.5)) continue;
      const double support_z = std::sqrt(f.a_cam.mat().inverse()(2, 2));
      if (!(f.c_cam.z() - support_z > 0.3)) continue;
      try {
        (void)project_ellipsoid(model, scene.camera, scene.intrinsics);
      } catch (const Error&) {
        continue;
      }
      scene.ellipsoids.push_back(model);
      placed = true;
    }
    if (!placed)
      fail(Err::ConfigError, "could not place an object within the bounds");
  }
  return scene;
}

EllipseObservation perturb_observation(const EllipseObservation& obs,
                                       const NoiseSpec& spec) {
  if (spec.center_sigma < 0.0 || spec.axes_sigma < 0.0 || spec.angle_sigma < 0.0)
    fail(Err::ConfigError, "noise sigmas must be non-negative");
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector2d center = obs.center;
  center.x() += spec.center_sigma * n(rng);
  center.y() += spec.center_sigma * n(rng);
  double a = obs.semi_major * (1.0 + spec.axes_sigma * n(rng));
  double b = obs.semi_minor * (1.0 + spec.axes_sigma * n(rng));
  const double angle = obs.angle + spec.angle_sigma * n(rng);
  a = std::max(a, 1e-9);
  b = std::max(b, 1e-9);
  return EllipseObservation(center, a, b, angle);
}

Vec3 camera_position_world(const PositionedLocus& pl,
                           const PoseSolution& pose) {
  return pl.ell_center + pl.ell_rotation * pose.camera_position;
}

namespace {

// Exact distance queries against one locus, with nearest-point refinement in
// the 1-DoF parameter where one exists.
class LocusEvaluator {
 public:
  LocusEvaluator(const PositionedLocus& pl, int samples) : pl_(pl) {
    const auto& locus = *pl.locus;
    if (const auto* tri = std::get_if<TriaxialLocus>(&locus.branch)) {
      tri_ = tri;
      coarse_ = sample_locus_params(locus, std::max(16, samples / 16));
    } else if (const auto* sp =
                   std::get_if<SpheroidNonCircularLocus>(&locus.branch)) {
      sp_ = sp;
    } else if (std::holds_alternative<SpheroidCircularLocus>(locus.branch)) {
      // Two fixed positions on the coincident revolution axis.
      for (const auto& pose : sample_locus(locus, 2))
        points_.push_back(camera_position_world(pl, pose));
    } else if (const auto* sph = std::get_if<SphereLocus>(&locus.branch)) {
      sphere_dist_ = sph->dist;
    }
  }

  // Positions for seeding the global candidate search.
  std::vector<Vec3> seed_points(int target) const {
    std::vector<Vec3> pts;
    if (sphere_dist_ > 0.0) {
      for (const auto& s : sample_locus(*pl_.locus, std::max(8, target)))
        pts.push_back(camera_position_world(pl_, s));
      return pts;
    }
    if (!points_.empty()) return points_;
    if (tri_ != nullptr) {
      for (const auto& s : coarse_)
        pts.push_back(camera_position_world(pl_, s.pose));
      return pts;
    }
    for (const auto& s : sample_locus(*pl_.locus, std::max(8, target)))
      pts.push_back(camera_position_world(pl_, s));
    return pts;
  }

  Vec3 nearest(const Vec3& p) const {
    if (sphere_dist_ > 0.0) {
      const Vec3 c = pl_.ell_center;
      Vec3 dir = p - c;
      if (dir.norm() < 1e-15) dir = Vec3::UnitX();
      return c + sphere_dist_ * dir.normalized();
    }
    if (!points_.empty()) {
      Vec3 best = points_[0];
      for (const auto& q : points_)
        if ((p - q).norm() < (p - best).norm()) best = q;
      return best;
    }
    if (sp_ != nullptr) return nearest_on_circles(p);
    return nearest_triaxial(p);
  }

  double distance(const Vec3& p) const { return (p - nearest(p)).norm(); }

 private:
  Vec3 nearest_on_circles(const Vec3& p) const {
    // Camera circles in the ellipsoid frame: E(theta) = Rot(u, -theta) E0.
    const Vec3 q = pl_.ell_rotation.transpose() * (p - pl_.ell_center);
    const Vec3 u = sp_->free_axis;
    Vec3 best = Vec3::Zero();
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& b : sp_->branches) {
      const Vec3 e0 = b.representative.transpose() * b.delta_cam;
      const double h = e0.dot(u);
      const double rho = (e0 - h * u).norm();
      const Vec3 q_perp = q - q.dot(u) * u;
      Vec3 cand;
      if (q_perp.norm() < 1e-15)
        cand = h * u + rho * internal::any_perpendicular(u);
      else
        cand = h * u + rho * q_perp.normalized();
      if ((q - cand).norm() < best_d) {
        best_d = (q - cand).norm();
        best = cand;
      }
    }
    return pl_.ell_center + pl_.ell_rotation * best;
  }

  Vec3 nearest_triaxial(const Vec3& p) const {
    // Coarse pass over the precomputed samples, then a golden-section
    // refinement of m along the sign branch of the best sample.
    double best_d = std::numeric_limits<double>::infinity();
    double best_m = 0.0;
    Vec3 best_signs = Vec3::Ones();
    Vec3 best_pos = Vec3::Zero();
    for (const auto& s : coarse_) {
      const Vec3 w = camera_position_world(pl_, s.pose);
      const double d = (p - w).norm();
      if (d < best_d) {
        best_d = d;
        best_m = s.parameter;
        best_pos = w;
        for (int i = 0; i < 3; ++i)
          best_signs[i] = s.pose.camera_position[i] < 0.0 ? -1.0 : 1.0;
      }
    }
    // Refine within the interval that contains the best sample.
    const auto& f = tri_->feasible;
    Interval span{best_m, best_m};
    for (const auto& iv : f.intervals)
      if (iv.contains(best_m, 1e-12)) span = iv;
    const auto pos_at = [&](double m) {
      Vec3 d_sq = Vec3(f.components[0].eval(m), f.components[1].eval(m),
                       f.components[2].eval(m))
                      .cwiseMax(0.0);
      const Vec3 e_ell = best_signs.cwiseProduct(d_sq.cwiseSqrt());
      return (pl_.ell_center + pl_.ell_rotation * e_ell).eval();
    };
    double lo = std::max(span.lo, best_m - span.length() / 8.0);
    double hi = std::min(span.hi, best_m + span.length() / 8.0);
    const double gr = 0.61803398874989485;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = (p - pos_at(x1)).norm(), f2 = (p - pos_at(x2)).norm();
    for (int it = 0; it < 80 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = (p - pos_at(x1)).norm();
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = (p - pos_at(x2)).norm();
      }
    }
    const Vec3 refined = pos_at(0.5 * (lo + hi));
    return (p - refined).norm() < best_d ? refined : best_pos;
  }

  PositionedLocus pl_;
  const TriaxialLocus* tri_ = nullptr;
  const SpheroidNonCircularLocus* sp_ = nullptr;
  std::vector<LocusSample> coarse_;
  std::vector<Vec3> points_;
  double sphere_dist_ = 0.0;
};

}  // namespace

IntersectResult intersect_loci(const std::vector<PositionedLocus>& loci,
                               int samples_per_locus, double tol) {
  if (loci.size() < 2)
    fail(Err::InvalidInput, "need at least two loci to intersect");
  if (samples_per_locus < 8)
    fail(Err::InvalidInput, "too few samples per locus");

  std::vector<LocusEvaluator> evals;
  evals.reserve(loci.size());
  for (const auto& pl : loci) evals.emplace_back(pl, samples_per_locus);

  // Global seed: the sample of any locus with the smallest summed distance
  // to all other loci.
  Vec3 best = Vec3::Zero();
  double best_cost = std::numeric_limits<double>::infinity();
  for (size_t li = 0; li < evals.size(); ++li) {
    for (const Vec3& cand : evals[li].seed_points(256)) {
      double cost = 0.0;
      for (size_t lj = 0; lj < evals.size(); ++lj) {
        if (lj == li) continue;
        cost += evals[lj].distance(cand);
        if (cost > best_cost) break;
      }
      if (cost < best_cost) {
        best_cost = cost;
        best = cand;
      }
    }
  }

  // Alternate projections: move to the centroid of the per-locus nearest
  // points until it settles.
  Vec3 x = best;
  for (int it = 0; it < 256; ++it) {
    Vec3 acc = Vec3::Zero();
    for (const auto& e : evals) acc += e.nearest(x);
    const Vec3 next = acc / static_cast<double>(evals.size());
    if ((next - x).norm() < 1e-15) {
      x = next;
      break;
    }
    x = next;
  }

  IntersectResult res;
  res.estimate = x;
  res.spread = 0.0;
  for (const auto& e : evals)
    res.spread = std::max(res.spread, e.distance(x));

  // Duplicate-locus detection: all probes of one locus lying on another.
  for (size_t i = 0; i < evals.size() && !res.degenerate; ++i) {
    const auto probes = evals[i].seed_points(16);
    for (size_t j = 0; j < evals.size(); ++j) {
      if (i == j) continue;
      bool all_close = !probes.empty();
      for (size_t k = 0; k < probes.size() && all_close; k += std::max<size_t>(1, probes.size() / 16))
        all_close = evals[j].distance(probes[k]) <= std::max(tol, 1e-9);
      if (all_close) {
        res.degenerate = true;
        break;
      }
    }
  }

  if (!res.degenerate && res.spread > tol)
    fail(Err::NoIntersection, "loci do not share a common camera position");
  return res;
}

}  // namespace p1e
