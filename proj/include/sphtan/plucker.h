// Copyright 2026 The sphtan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Lines in projective 3-space as Plucker 6-vectors, spheres, and the
// incidence and tangency forms on them.
//
// Homogeneous coordinate 0 is the homogenizing w; coordinates 1..3 are x, y, z.
// Plucker coordinates are stored in the order (p01, p02, p03, p12, p13, p23)
// with p_ij = x_i y_j - x_j y_i for the two spanning points x, y.

#ifndef SPHTAN_PLUCKER_H_
#define SPHTAN_PLUCKER_H_

#include <Eigen/Dense>

#include <array>
#include <complex>

#include "sphtan/exactpoly.h"

namespace sphtan {

using Point3 = Eigen::Vector3d;
using HomPoint4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using CVec6 = Eigen::Matrix<std::complex<double>, 6, 1>;
// Symmetric 6x6 matrix indexed by the Plucker pairs above.
using Sym6 = Eigen::Matrix<double, 6, 6>;

inline constexpr double kIncidenceTol = 1e-9;
inline constexpr double kResidualTol = 1e-7;

class PluckerLine {
 public:
  // Normalizes by the coordinate of largest magnitude (which becomes 1).
  // Throws CoincidentPoints if every coordinate is below 1e-14 of the scale
  // given, or zero.
  static PluckerLine from_coords(const Vec6& raw);

  const Vec6& coords() const { return p_; }
  double operator[](int i) const { return p_[i]; }

  // p03 p12 - p02 p13 + p01 p23 on the stored representative.
  double relation_residual() const;

  // Affine direction (p01, p02, p03); zero for a line at infinity.
  Eigen::Vector3d direction() const { return p_.head<3>(); }
  // Moment a x d = (p23, -p13, p12) for any affine point a on the line.
  Eigen::Vector3d moment() const { return {p_[5], -p_[4], p_[3]}; }
  bool is_at_infinity() const;
  // Point of the line nearest the origin. Throws LineAtInfinity.
  Point3 nearest_point_to_origin() const;
  Eigen::Vector3d unit_direction() const;

 private:
  explicit PluckerLine(const Vec6& p) : p_(p) {}
  Vec6 p_;
};

struct Sphere {
  Point3 center = Point3::Zero();
  double radius = 1.0;
};

// Plane a0 w + a1 x + a2 y + a3 z = 0.
struct Plane {
  Eigen::Vector4d a;
  Eigen::Vector3d normal() const { return a.tail<3>(); }
  bool is_affine() const;
};

Plane plane_from_normal(const Eigen::Vector3d& n, const Point3& through);

HomPoint4 affine(const Point3& p);
HomPoint4 at_infinity(const Eigen::Vector3d& d);

PluckerLine line_through_points(const HomPoint4& p, const HomPoint4& q);
PluckerLine line_point_direction(const Point3& p, const Eigen::Vector3d& d);

// Unnormalized minors; exposed for complex spanning points.
Vec6 plucker_minors(const HomPoint4& p, const HomPoint4& q);
CVec6 plucker_minors(const Eigen::Vector4cd& p, const Eigen::Vector4cd& q);

double meet_form(const PluckerLine& a, const PluckerLine& b);
double meet_form(const Vec6& a, const Vec6& b);

// Entries of the 6x6 tangency matrix for center (x0, y0, z0) and squared
// radius r2. Generic so the same table serves doubles and rationals.
template <class T>
std::array<std::array<T, 6>, 6> wedge2_entries(const T& x0, const T& y0, const T& z0,
                                               const T& r2) {
  const T o(0), one(1);
  return {{
      {y0 * y0 + z0 * z0 - r2, -x0 * y0, -x0 * z0, y0, z0, o},
      {-x0 * y0, x0 * x0 + z0 * z0 - r2, -y0 * z0, -x0, o, z0},
      {-x0 * z0, -y0 * z0, x0 * x0 + y0 * y0 - r2, o, -x0, -y0},
      {y0, -x0, o, one, o, o},
      {z0, o, -x0, o, one, o},
      {o, z0, -y0, o, o, one},
  }};
}

// p^T M p for a generic entry table.
template <class T, class V>
T quadratic_form6(const std::array<std::array<T, 6>, 6>& m, const V& p) {
  T acc(0);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) acc += p[i] * m[i][j] * p[j];
  }
  return acc;
}

Sym6 wedge2_matrix(const Sphere& s);
double tangency_residual(const PluckerLine& m, const Sphere& s);
// Bilinear (non-Hermitian) evaluation for complex tangents.
std::complex<double> tangency_residual(const CVec6& p, const Sphere& s);

// Throws LineAtInfinity.
double point_line_distance(const Point3& p, const PluckerLine& m);

bool line_in_plane(const PluckerLine& m, const Plane& pl);
bool line_through_point(const PluckerLine& m, const HomPoint4& p);

// Largest violation of the linear conditions behind the predicates above.
double line_in_plane_residual(const PluckerLine& m, const Plane& pl);
double line_through_point_residual(const PluckerLine& m, const HomPoint4& p);

// Affine directions parallel within 1e-9 (unit cross product).
bool lines_parallel(const PluckerLine& a, const PluckerLine& b);

// Distance between unit-normalized 6-vectors, insensitive to sign.
double line_distance(const Vec6& a, const Vec6& b);

}  // namespace sphtan

#endif  // SPHTAN_PLUCKER_H_
