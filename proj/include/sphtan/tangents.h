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


// Finite common-tangent solvers for two spheres (lines in a plane, lines
// through a point), the tangent-line correspondence of a sphere with respect
// to a fixed line, its special points, and the exact quadratic forms behind
// that correspondence.

#ifndef SPHTAN_TANGENTS_H_
#define SPHTAN_TANGENTS_H_

#include <array>
#include <optional>
#include <vector>

#include "sphtan/exactpoly.h"
#include "sphtan/plucker.h"

namespace sphtan {

// Orthonormal chart of an affine plane. When the plane contains the x-axis
// the chart is (x, v) with v = mu*y + lambda*z, mu^2 + lambda^2 = 1.
struct PlaneChart {
  Point3 origin;
  Eigen::Vector3d e1, e2, normal;

  Point3 to_world(double u, double v) const { return origin + u * e1 + v * e2; }
  Eigen::Vector2d to_chart(const Point3& p) const {
    return {(p - origin).dot(e1), (p - origin).dot(e2)};
  }
};

PlaneChart plane_chart(const Plane& pl);

struct PlanarCircle {
  Plane plane;
  PlaneChart chart;
  Eigen::Vector2d center2d;
  // Negative for an imaginary circle, zero for a point circle.
  double radius_sq = 0.0;
};

PlanarCircle intersect_sphere_plane(const Sphere& s, const Plane& pl);

// A point of P^2 (complex) with intersection multiplicity.
struct ConicPoint {
  Eigen::Vector3cd x;
  int multiplicity = 1;
};

// Intersection of two real plane conics x^T A x = 0, x^T B x = 0, counted
// with multiplicity. nullopt when the conics share a component.
std::optional<std::vector<ConicPoint>> intersect_conics(const Eigen::Matrix3d& a,
                                                        const Eigen::Matrix3d& b);

struct TangentLine {
  CVec6 coords;  // normalized so the largest entry is 1
  int multiplicity = 1;
  bool is_real = false;
  std::optional<PluckerLine> line;  // set when is_real
};

struct TangentSet {
  std::vector<TangentLine> lines;
  int real_count = 0;  // distinct real lines

  int total_multiplicity() const;
  int real_multiplicity() const;
};

// Common tangents to s1 and s2 lying in pl.
TangentSet bitangents_in_plane(const Sphere& s1, const Sphere& s2, const Plane& pl);

// Common tangents to s1 and s2 through p.
TangentSet tangents_through_point(const Sphere& s1, const Sphere& s2, const Point3& p);

struct PhiTangent {
  PluckerLine line;
  // The tangent plane at q is parallel to ell; the line meets ell at infinity.
  bool meets_at_infinity = false;
};

// The line tangent to s at q that meets ell.
PhiTangent phi_tangent_at(const Sphere& s, const PluckerLine& ell, const Point3& q);

struct SpecialPoint {
  Eigen::Vector4cd x;  // homogeneous (w, x, y, z)
  bool on_line = false;
  bool tangent_plane_touch = false;
  bool is_real = false;
};

struct SpecialPoints {
  std::vector<SpecialPoint> points;
  int count = 0;  // 1 when ell is tangent to the sphere, else 4

  int real_count() const;
};

SpecialPoints special_points(const Sphere& s, const PluckerLine& ell);

// Roots of a binary quadratic c0 X^2 + c1 X Y + c2 Y^2 as homogeneous (X, Y).
// Throws AllCoefficientsZero.
std::vector<std::pair<Eigen::Vector2cd, int>> solve_binary_quadratic(double c0, double c1,
                                                                     double c2);

// ---------------------------------------------------------------------------
// Exact forms. Homogeneous variables are X = (w, x, y, z).

using RatVec3 = std::array<Rat, 3>;

struct RatSphere {
  RatVec3 center;
  Rat radius_sq;
};

struct RatLine {
  RatVec3 point;
  RatVec3 direction;
};

using Lin4 = std::array<Rat, 4>;

// Quadratic form in X; coef[i][j] (i <= j) multiplies X_i X_j.
struct Quad4 {
  std::array<std::array<Rat, 4>, 4> coef{};

  static Quad4 product(const Lin4& a, const Lin4& b);
  Quad4& operator+=(const Quad4& o);
  Quad4& operator-=(const Quad4& o);
  Rat eval(const std::array<Rat, 4>& x) const;
  double eval(const Eigen::Vector4d& x) const;
  bool is_zero() const;
};

HPoly2 compose(const Lin4& f, const std::array<HPoly2, 4>& nu);
HPoly2 compose(const Quad4& f, const std::array<HPoly2, 4>& nu);

// x^2 + y^2 + z^2 - 2 w c.(x,y,z) + w^2 (|c|^2 - r^2).
Quad4 sphere_form(const RatSphere& s);

// Two independent planes containing the line, as linear forms in X.
std::array<Lin4, 2> planes_through(const RatLine& ell);
// Polar planes of the line's spanning points; they cut out the polar line.
std::array<Lin4, 2> polar_planes(const RatSphere& s, const RatLine& ell);
// Exact test for ell tangent to s.
bool line_tangent_exact(const RatSphere& s, const RatLine& ell);

// Plucker coordinates (order 01, 02, 03, 12, 13, 23) of the tangent line at X
// meeting ell, as quadratic forms in X with the common denominator cleared.
std::array<Quad4, 6> phi_forms(const RatSphere& s, const RatLine& ell);

}  // namespace sphtan

#endif  // SPHTAN_TANGENTS_H_
