#pragma once

#include <array>

#include "p1e/core.hpp"

namespace p1e::internal {

// The four diagonal sign matrices with determinant +1.
inline const std::array<Vec3, 4>& even_sign_patterns() {
  static const std::array<Vec3, 4> k = {Vec3(1, 1, 1), Vec3(1, -1, -1),
                                        Vec3(-1, 1, -1), Vec3(-1, -1, 1)};
  return k;
}

// Vandermonde matrix with rows (1, x, x^2) over the given abscissae.
inline Mat3 vandermonde(const std::array<double, 3>& x) {
  Mat3 m;
  m << 1, 1, 1,
       x[0], x[1], x[2],
       x[0] * x[0], x[1] * x[1], x[2] * x[2];
  return m;
}

inline Vec3 any_perpendicular(const Vec3& v) {
  const Vec3 u = v.normalized();
  const Vec3 probe =
      std::abs(u.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return u.cross(probe).normalized();
}

// Opposite-sign eigenvector of a camera-frame cone, oriented toward the
// viewing half-space (positive z component).
inline Vec3 oriented_cone_axis(const ConeQuadric& cone) {
  Vec3 axis = cone.axes().mat().col(2);
  if (axis.z() < 0.0) axis = -axis;
  return axis;
}

// Ellipsoid-to-camera rotation for an axially symmetric ellipsoid: the
// single-radius axis (index single_axis) maps onto axis_cam, the doubled
// plane onto any orthonormal completion.
inline Rotation3 axial_representative(const Vec3& axis_cam, int single_axis) {
  const Vec3 a = axis_cam.normalized();
  const Vec3 p = any_perpendicular(a);
  const Vec3 q = a.cross(p);
  Mat3 r;
  r.col(single_axis) = a;
  r.col((single_axis + 1) % 3) = p;
  r.col((single_axis + 2) % 3) = q;
  if (r.determinant() < 0.0) r.col((single_axis + 1) % 3) = -p;
  return Rotation3::FromMatrix(r);
}

}  // namespace p1e::internal
