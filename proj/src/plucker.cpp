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


#include "sphtan/plucker.h"

#include <algorithm>
#include <cmath>

#include "sphtan/errors.h"

namespace sphtan {

namespace {

// p_ij for any index pair, antisymmetric.
double pij(const Vec6& p, int i, int j) {
  if (i == j) return 0.0;
  if (i > j) return -pij(p, j, i);
  static constexpr int kIndex[4][4] = {
      {-1, 0, 1, 2}, {-1, -1, 3, 4}, {-1, -1, -1, 5}, {-1, -1, -1, -1}};
  return p[kIndex[i][j]];
}

Eigen::Vector4d max_normalized(const Eigen::Vector4d& v) {
  double m = v.cwiseAbs().maxCoeff();
  return m > 0.0 ? Eigen::Vector4d(v / m) : v;
}

}  // namespace

PluckerLine PluckerLine::from_coords(const Vec6& raw) {
  Eigen::Index k = 0;
  double m = raw.cwiseAbs().maxCoeff(&k);
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw Error(Errc::kCoincidentPoints, "all Plucker coordinates vanish");
  }
  return PluckerLine(raw / raw[k]);
}

double PluckerLine::relation_residual() const {
  return p_[2] * p_[3] - p_[1] * p_[4] + p_[0] * p_[5];
}

bool PluckerLine::is_at_infinity() const {
  return direction().norm() <= kIncidenceTol;
}

Point3 PluckerLine::nearest_point_to_origin() const {
  if (is_at_infinity()) throw Error(Errc::kLineAtInfinity, "line has no affine points");
  Eigen::Vector3d d = direction();
  return d.cross(moment()) / d.squaredNorm();
}

Eigen::Vector3d PluckerLine::unit_direction() const {
  if (is_at_infinity()) throw Error(Errc::kLineAtInfinity, "line has no affine direction");
  return direction().normalized();
}

bool Plane::is_affine() const {
  return normal().norm() > 1e-12 * a.cwiseAbs().maxCoeff();
}

Plane plane_from_normal(const Eigen::Vector3d& n, const Point3& through) {
  Plane pl;
  pl.a << -n.dot(through), n;
  return pl;
}

HomPoint4 affine(const Point3& p) { return {1.0, p.x(), p.y(), p.z()}; }
HomPoint4 at_infinity(const Eigen::Vector3d& d) { return {0.0, d.x(), d.y(), d.z()}; }

Vec6 plucker_minors(const HomPoint4& x, const HomPoint4& y) {
  Vec6 p;
  p << x[0] * y[1] - x[1] * y[0], x[0] * y[2] - x[2] * y[0], x[0] * y[3] - x[3] * y[0],
      x[1] * y[2] - x[2] * y[1], x[1] * y[3] - x[3] * y[1], x[2] * y[3] - x[3] * y[2];
  return p;
}

CVec6 plucker_minors(const Eigen::Vector4cd& x, const Eigen::Vector4cd& y) {
  CVec6 p;
  p << x[0] * y[1] - x[1] * y[0], x[0] * y[2] - x[2] * y[0], x[0] * y[3] - x[3] * y[0],
      x[1] * y[2] - x[2] * y[1], x[1] * y[3] - x[3] * y[1], x[2] * y[3] - x[3] * y[2];
  return p;
}

PluckerLine line_through_points(const HomPoint4& p, const HomPoint4& q) {
  HomPoint4 pn = max_normalized(p), qn = max_normalized(q);
  Vec6 raw = plucker_minors(pn, qn);
  if (raw.cwiseAbs().maxCoeff() <= 1e-12) {
    throw Error(Errc::kCoincidentPoints, "points do not span a line");
  }
  return PluckerLine::from_coords(raw);
}

PluckerLine line_point_direction(const Point3& p, const Eigen::Vector3d& d) {
  return line_through_points(affine(p), at_infinity(d));
}

double meet_form(const Vec6& a, const Vec6& b) {
  return a[0] * b[5] - a[1] * b[4] + a[2] * b[3] + a[3] * b[2] - a[4] * b[1] + a[5] * b[0];
}

double meet_form(const PluckerLine& a, const PluckerLine& b) {
  return meet_form(a.coords(), b.coords());
}

Sym6 wedge2_matrix(const Sphere& s) {
  auto e = wedge2_entries(s.center.x(), s.center.y(), s.center.z(), s.radius * s.radius);
  Sym6 m;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) m(i, j) = e[i][j];
  }
  return m;
}

double tangency_residual(const PluckerLine& m, const Sphere& s) {
  const Vec6& p = m.coords();
  return p.dot(wedge2_matrix(s) * p);
}

std::complex<double> tangency_residual(const CVec6& p, const Sphere& s) {
  Sym6 w = wedge2_matrix(s);
  return (p.transpose() * w.cast<std::complex<double>>() * p)(0, 0);
}

double point_line_distance(const Point3& p, const PluckerLine& m) {
  if (m.is_at_infinity()) throw Error(Errc::kLineAtInfinity, "line has no affine points");
  Eigen::Vector3d d = m.direction();
  return (p.cross(d) - m.moment()).norm() / d.norm();
}

double line_in_plane_residual(const PluckerLine& m, const Plane& pl) {
  Eigen::Vector4d a = max_normalized(pl.a);
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    double acc = 0.0;
    for (int j = 0; j < 4; ++j) acc += a[j] * pij(m.coords(), i, j);
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

double line_through_point_residual(const PluckerLine& m, const HomPoint4& p) {
  HomPoint4 x = max_normalized(p);
  const Vec6& c = m.coords();
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      for (int k = j + 1; k < 4; ++k) {
        double v = x[i] * pij(c, j, k) - x[j] * pij(c, i, k) + x[k] * pij(c, i, j);
        worst = std::max(worst, std::abs(v));
      }
    }
  }
  return worst;
}

bool line_in_plane(const PluckerLine& m, const Plane& pl) {
  return line_in_plane_residual(m, pl) <= kIncidenceTol;
}

bool line_through_point(const PluckerLine& m, const HomPoint4& p) {
  return line_through_point_residual(m, p) <= kIncidenceTol;
}

bool lines_parallel(const PluckerLine& a, const PluckerLine& b) {
  if (a.is_at_infinity() || b.is_at_infinity()) return false;
  return a.unit_direction().cross(b.unit_direction()).norm() < kIncidenceTol;
}

double line_distance(const Vec6& a, const Vec6& b) {
  Vec6 u = a.normalized(), v = b.normalized();
  return std::min((u - v).norm(), (u + v).norm());
}

}  // namespace sphtan
