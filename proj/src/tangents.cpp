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


#include "sphtan/tangents.h"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>

#include "sphtan/errors.h"

namespace sphtan {

using cd = std::complex<double>;

// ---------------------------------------------------------------------------
// Charts and sections

PlaneChart plane_chart(const Plane& pl) {
  if (!pl.is_affine()) throw Error(Errc::kDegenerateInput, "plane at infinity has no chart");
  PlaneChart ch;
  const Eigen::Vector3d n = pl.normal();
  ch.normal = n.normalized();
  const Eigen::Vector3d ex = Eigen::Vector3d::UnitX();
  const double a0 = pl.a[0] / n.norm();
  if (std::abs(a0) <= 1e-15 && std::abs(ch.normal.x()) <= 1e-15) {
    ch.origin = Point3::Zero();
    ch.e1 = ex;
  } else {
    ch.origin = -a0 * ch.normal;
    Eigen::Vector3d seed = std::abs(ch.normal.x()) < 0.9 ? ex : Eigen::Vector3d::UnitY();
    ch.e1 = (seed - seed.dot(ch.normal) * ch.normal).normalized();
  }
  ch.e2 = ch.normal.cross(ch.e1);
  return ch;
}

PlanarCircle intersect_sphere_plane(const Sphere& s, const Plane& pl) {
  PlanarCircle c;
  c.plane = pl;
  c.chart = plane_chart(pl);
  const Eigen::Vector3d n = pl.normal();
  const double h = (n.dot(s.center) + pl.a[0]) / n.norm();
  const Point3 foot = s.center - h * c.chart.normal;
  c.center2d = c.chart.to_chart(foot);
  c.radius_sq = s.radius * s.radius - h * h;
  return c;
}

// ---------------------------------------------------------------------------
// Conic intersection

namespace {

using Poly = std::vector<double>;  // ascending powers

Poly pmul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Poly psub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

const std::vector<Eigen::Matrix3d>& trial_rotations() {
  static const std::vector<Eigen::Matrix3d> rots = [] {
    std::vector<Eigen::Matrix3d> r;
    for (int k = 0; k < 16; ++k) {
      Eigen::Matrix3d m = (Eigen::AngleAxisd(0.37 + 0.71 * k, Eigen::Vector3d::UnitZ()) *
                           Eigen::AngleAxisd(0.83 + 0.53 * k, Eigen::Vector3d::UnitY()) *
                           Eigen::AngleAxisd(0.29 + 1.13 * k, Eigen::Vector3d::UnitX()))
                              .toRotationMatrix();
      r.push_back(m);
    }
    return r;
  }();
  return rots;
}

// Both roots of a y^2 + b y + c with a != 0.
std::array<cd, 2> quad_roots(cd a, cd b, cd c) {
  cd disc = std::sqrt(b * b - 4.0 * a * c);
  cd q = std::abs(b + disc) >= std::abs(b - disc) ? -(b + disc) / 2.0 : -(b - disc) / 2.0;
  if (std::abs(q) == 0.0) return {cd(0.0), cd(0.0)};
  return {q / a, c / q};
}

enum class Attempt { kOk, kRetry, kShared };

Attempt try_intersect(const Eigen::Matrix3d& an, const Eigen::Matrix3d& bn,
                      const Eigen::Matrix3d& t, std::vector<ConicPoint>& out,
                      double& quality) {
  const Eigen::Matrix3d a = t.transpose() * an * t;
  const Eigen::Matrix3d b = t.transpose() * bn * t;
  const double a2 = a(2, 2), b2 = b(2, 2);
  quality = std::min(std::abs(a2), std::abs(b2));
  if (quality < 1e-3) return Attempt::kRetry;
  // Coefficients in ascending powers of y1 with y0 = 1.
  const Poly a1{2 * a(0, 2), 2 * a(1, 2)}, b1{2 * b(0, 2), 2 * b(1, 2)};
  const Poly a0{a(0, 0), 2 * a(0, 1), a(1, 1)}, b0{b(0, 0), 2 * b(0, 1), b(1, 1)};
  Poly p(3), l(2);
  for (int k = 0; k < 3; ++k) p[k] = a2 * b0[k] - b2 * a0[k];
  for (int k = 0; k < 2; ++k) l[k] = a2 * b1[k] - b2 * a1[k];
  const Poly c = psub(pmul(a1, b0), pmul(a0, b1));
  const Poly r = psub(pmul(p, p), pmul(l, c));
  double rmax = 0.0;
  for (double v : r) rmax = std::max(rmax, std::abs(v));
  if (rmax <= kZeroCoefficientTol) return Attempt::kShared;
  quality = std::min(quality, std::abs(r[4]) / rmax);
  if (std::abs(r[4]) < 1e-6 * rmax) return Attempt::kRetry;

  const double hi_first[5] = {r[4], r[3], r[2], r[1], r[0]};
  std::vector<ComplexRoot> roots = solve_real_poly(hi_first);
  out.clear();
  for (const auto& root : roots) {
    const cd y1 = root.value;
    const cd qa1 = a1[0] + a1[1] * y1, qa0 = a0[0] + a0[1] * y1 + a0[2] * y1 * y1;
    const cd qb1 = b1[0] + b1[1] * y1, qb0 = b0[0] + b0[1] * y1 + b0[2] * y1 * y1;
    auto ys = quad_roots(a2, qa1, qa0);
    auto resid = [&](cd y) {
      double scale = std::abs(b2) * std::norm(y) + std::abs(qb1) * std::abs(y) + std::abs(qb0);
      return std::abs(b2 * y * y + qb1 * y + qb0) / std::max(scale, 1e-300);
    };
    double r0 = resid(ys[0]), r1 = resid(ys[1]);
    const double sep = std::abs(ys[0] - ys[1]) / (1.0 + std::abs(ys[0]) + std::abs(ys[1]));
    // Two distinct intersection points with the same projection.
    if (sep > 1e-6 && std::max(r0, r1) < 1e-6) return Attempt::kRetry;
    const cd y2 = r0 <= r1 ? ys[0] : ys[1];
    Eigen::Vector3cd yv(1.0, y1, y2);
    Eigen::Vector3cd x = t.cast<cd>() * yv;
    x /= x.norm();
    out.push_back({x, root.multiplicity});
  }
  return Attempt::kOk;
}

}  // namespace

std::optional<std::vector<ConicPoint>> intersect_conics(const Eigen::Matrix3d& a,
                                                        const Eigen::Matrix3d& b) {
  const Eigen::Matrix3d an = a / a.norm(), bn = b / b.norm();
  std::vector<ConicPoint> best, cur;
  double best_q = -1.0;
  for (const auto& t : trial_rotations()) {
    double q = 0.0;
    switch (try_intersect(an, bn, t, cur, q)) {
      case Attempt::kOk:
        return cur;
      case Attempt::kShared:
        return std::nullopt;
      case Attempt::kRetry:
        if (q > best_q && !cur.empty()) {
          best_q = q;
          best = cur;
        }
        break;
    }
  }
  if (!best.empty()) return best;
  throw Error(Errc::kDegenerateInput, "conic intersection did not find a usable chart");
}

std::vector<std::pair<Eigen::Vector2cd, int>> solve_binary_quadratic(double c0, double c1,
                                                                     double c2) {
  const double m = std::max({std::abs(c0), std::abs(c1), std::abs(c2)});
  if (!(m > 0.0)) throw Error(Errc::kAllCoefficientsZero, "binary quadratic vanishes");
  const double hi_first[3] = {c0 / m, c1 / m, c2 / m};
  std::vector<std::pair<Eigen::Vector2cd, int>> out;
  int found = 0;
  for (const auto& r : solve_real_poly(hi_first)) {
    Eigen::Vector2cd v(r.value, 1.0);
    out.push_back({v / v.norm(), r.multiplicity});
    found += r.multiplicity;
  }
  if (found < 2) out.push_back({Eigen::Vector2cd(1.0, 0.0), 2 - found});
  return out;
}

// ---------------------------------------------------------------------------
// Tangent solvers

int TangentSet::total_multiplicity() const {
  int n = 0;
  for (const auto& l : lines) n += l.multiplicity;
  return n;
}

int TangentSet::real_multiplicity() const {
  int n = 0;
  for (const auto& l : lines) n += l.is_real ? l.multiplicity : 0;
  return n;
}

namespace {

TangentLine make_tangent(const CVec6& raw, int mult) {
  Eigen::Index k = 0;
  raw.cwiseAbs().maxCoeff(&k);
  TangentLine t;
  t.coords = raw / raw[k];
  t.multiplicity = mult;
  t.is_real = t.coords.imag().cwiseAbs().maxCoeff() <= 1e-8;
  if (t.is_real) {
    t.coords = t.coords.real().cast<cd>();
    t.line = PluckerLine::from_coords(t.coords.real());
  }
  return t;
}

void finish(TangentSet& ts) {
  ts.real_count = 0;
  for (const auto& l : ts.lines) ts.real_count += l.is_real ? 1 : 0;
}

Eigen::Vector4cd chart_point(const PlaneChart& ch, cd w, cd u, cd v) {
  Eigen::Vector3cd xyz = w * ch.origin.cast<cd>() + u * ch.e1.cast<cd>() + v * ch.e2.cast<cd>();
  return {w, xyz[0], xyz[1], xyz[2]};
}

// Line u U + v V + w = 0 of the chart as a line in space.
CVec6 chart_line(const PlaneChart& ch, const Eigen::Vector3cd& dual) {
  const cd u = dual[0], v = dual[1], w = dual[2];
  Eigen::Vector4cd p1 = std::abs(u) >= std::abs(v) ? chart_point(ch, u, -w, 0.0)
                                                   : chart_point(ch, v, 0.0, -w);
  Eigen::Vector4cd p2 = chart_point(ch, 0.0, -v, u);
  return plucker_minors(p1, p2);
}

Eigen::Matrix3d dual_circle(const Eigen::Vector2d& c, double r2) {
  const double a = c.x(), b = c.y();
  Eigen::Matrix3d d;
  d << a * a - r2, a * b, a, a * b, b * b - r2, b, a, b, 1.0;
  return d;
}

}  // namespace

TangentSet bitangents_in_plane(const Sphere& s1, const Sphere& s2, const Plane& pl) {
  const PlanarCircle c1 = intersect_sphere_plane(s1, pl);
  const PlanarCircle c2 = intersect_sphere_plane(s2, pl);
  const double scale = std::max({1.0, c1.center2d.norm(), c2.center2d.norm(), s1.radius,
                                 s2.radius});
  if ((c1.center2d - c2.center2d).norm() <= 1e-9 * scale &&
      std::abs(c1.radius_sq - c2.radius_sq) <= 1e-9 * scale * scale) {
    throw Error(Errc::kIdenticalSections, "the spheres cut the plane in the same circle");
  }
  const bool pt1 = std::abs(c1.radius_sq) <= 1e-12 * std::max(1.0, s1.radius * s1.radius);
  const bool pt2 = std::abs(c2.radius_sq) <= 1e-12 * std::max(1.0, s2.radius * s2.radius);

  std::vector<std::pair<Eigen::Vector3cd, int>> duals;
  if (pt1 && pt2) {
    Eigen::Vector3d h1(c1.center2d.x(), c1.center2d.y(), 1.0);
    Eigen::Vector3d h2(c2.center2d.x(), c2.center2d.y(), 1.0);
    duals.push_back({h1.cross(h2).cast<cd>(), 4});
  } else if (pt1 || pt2) {
    const Eigen::Vector2d p = pt1 ? c1.center2d : c2.center2d;
    const PlanarCircle& other = pt1 ? c2 : c1;
    Eigen::Matrix<double, 3, 2> lift;
    lift << 1, 0, 0, 1, -p.x(), -p.y();
    const Eigen::Matrix2d m =
        lift.transpose() * dual_circle(other.center2d, other.radius_sq) * lift;
    std::vector<std::pair<Eigen::Vector2cd, int>> roots;
    try {
      roots = solve_binary_quadratic(m(0, 0), 2 * m(0, 1), m(1, 1));
    } catch (const Error&) {
      throw Error(Errc::kDegenerateInput, "point section lies on a degenerate pencil");
    }
    for (const auto& [uv, mult] : roots) {
      Eigen::Vector3cd d(uv[0], uv[1], -(uv[0] * p.x() + uv[1] * p.y()));
      duals.push_back({d, 2 * mult});
    }
  } else {
    auto pts = intersect_conics(dual_circle(c1.center2d, c1.radius_sq),
                                dual_circle(c2.center2d, c2.radius_sq));
    if (!pts) throw Error(Errc::kIdenticalSections, "sections share a component");
    for (const auto& cp : *pts) duals.push_back({cp.x, cp.multiplicity});
  }

  TangentSet ts;
  for (const auto& [d, mult] : duals) ts.lines.push_back(make_tangent(chart_line(c1.chart, d), mult));
  finish(ts);
  return ts;
}

TangentSet tangents_through_point(const Sphere& s1, const Sphere& s2, const Point3& p) {
  auto cone = [&](const Sphere& s) {
    const Eigen::Vector3d d = s.center - p;
    if (std::abs(d.norm() - s.radius) <= 1e-9 * s.radius) {
      throw Error(Errc::kPointOnSphere, "the point lies on a sphere");
    }
    Eigen::Matrix3d k = (d.squaredNorm() - s.radius * s.radius) * Eigen::Matrix3d::Identity() -
                        d * d.transpose();
    return Eigen::Matrix3d(k / k.norm());
  };
  const Eigen::Matrix3d k1 = cone(s1), k2 = cone(s2);
  if ((k1 - k2).norm() <= 1e-10 || (k1 + k2).norm() <= 1e-10) {
    throw Error(Errc::kIdenticalCones, "both spheres have the same tangent cone from the point");
  }
  auto pts = intersect_conics(k1, k2);
  if (!pts) throw Error(Errc::kIdenticalCones, "tangent cones share a component");
  TangentSet ts;
  const Eigen::Vector4cd base = affine(p).cast<cd>();
  for (const auto& cp : *pts) {
    Eigen::Vector4cd dir(0.0, cp.x[0], cp.x[1], cp.x[2]);
    ts.lines.push_back(make_tangent(plucker_minors(base, dir), cp.multiplicity));
  }
  finish(ts);
  return ts;
}

// ---------------------------------------------------------------------------
// Correspondence and special points

PhiTangent phi_tangent_at(const Sphere& s, const PluckerLine& ell, const Point3& q) {
  const Eigen::Vector3d n = q - s.center;
  if (std::abs(n.norm() - s.radius) > 1e-9 * std::max(1.0, s.radius)) {
    throw Error(Errc::kNotOnSphere, "point is not on the sphere");
  }
  Eigen::Vector4d pi;
  pi << -n.dot(q), n;
  const HomPoint4 a = affine(ell.nearest_point_to_origin());
  const HomPoint4 d = at_infinity(ell.unit_direction());
  const HomPoint4 x = pi.dot(d) * a - pi.dot(a) * d;
  const double scale = pi.norm() * a.norm();
  if (x.norm() <= 1e-9 * scale) {
    throw Error(Errc::kSpecialPoint, "the tangent plane contains the line");
  }
  const bool at_inf = std::abs(x[0]) <= 1e-9 * x.norm();
  if (!at_inf) {
    const Point3 meet = x.tail<3>() / x[0];
    if ((meet - q).norm() <= 1e-9 * std::max(1.0, q.norm())) {
      throw Error(Errc::kSpecialPoint, "the point lies on the line");
    }
  }
  HomPoint4 other = x;
  if (at_inf) other[0] = 0.0;
  return {line_through_points(affine(q), other), at_inf};
}

int SpecialPoints::real_count() const {
  int n = 0;
  for (const auto& p : points) n += p.is_real ? 1 : 0;
  return n;
}

namespace {

Eigen::Matrix4d sphere_matrix(const Sphere& s) {
  Eigen::Matrix4d q = Eigen::Matrix4d::Zero();
  q(0, 0) = s.center.squaredNorm() - s.radius * s.radius;
  q.block<1, 3>(0, 1) = -s.center.transpose();
  q.block<3, 1>(1, 0) = -s.center;
  q.block<3, 3>(1, 1) = Eigen::Matrix3d::Identity();
  return q;
}

SpecialPoint make_special(const Eigen::Vector4cd& x, bool on_line, bool touch) {
  SpecialPoint sp;
  Eigen::Index k = 0;
  x.cwiseAbs().maxCoeff(&k);
  sp.x = x / x[k];
  if (std::abs(sp.x[0]) > 1e-12) sp.x /= sp.x[0];
  sp.on_line = on_line;
  sp.tangent_plane_touch = touch;
  sp.is_real = sp.x.imag().cwiseAbs().maxCoeff() <= 1e-9;
  if (sp.is_real) sp.x = sp.x.real().cast<cd>();
  return sp;
}

}  // namespace

SpecialPoints special_points(const Sphere& s, const PluckerLine& ell) {
  SpecialPoints out;
  const Point3 a = ell.nearest_point_to_origin();
  const Eigen::Vector3d d = ell.unit_direction();
  const double dist = point_line_distance(s.center, ell);
  if (std::abs(dist - s.radius) <= 1e-9 * std::max(1.0, s.radius)) {
    const Point3 foot = a + d * d.dot(s.center - a);
    out.points.push_back(make_special(affine(foot).cast<cd>(), true, true));
    out.count = 1;
    return out;
  }
  out.count = 4;
  const Eigen::Vector3d ac = a - s.center;
  for (const auto& [xy, mult] :
       solve_binary_quadratic(1.0, 2 * d.dot(ac), ac.squaredNorm() - s.radius * s.radius)) {
    // xy = (lambda, 1) homogeneously: point a + lambda d.
    Eigen::Vector4cd x = xy[1] * affine(a).cast<cd>() + xy[0] * at_infinity(d).cast<cd>();
    for (int m = 0; m < mult; ++m) out.points.push_back(make_special(x, true, false));
  }
  const Eigen::Matrix4d q = sphere_matrix(s);
  Eigen::Matrix<double, 2, 4> polar;
  polar.row(0) = affine(a).transpose() * q;
  polar.row(1) = at_infinity(d).transpose() * q;
  Eigen::JacobiSVD<Eigen::Matrix<double, 2, 4>> svd(polar, Eigen::ComputeFullV);
  const Eigen::Vector4d u = svd.matrixV().col(2), v = svd.matrixV().col(3);
  for (const auto& [xy, mult] :
       solve_binary_quadratic(u.dot(q * u), 2 * u.dot(q * v), v.dot(q * v))) {
    Eigen::Vector4cd x = xy[0] * u.cast<cd>() + xy[1] * v.cast<cd>();
    for (int m = 0; m < mult; ++m) out.points.push_back(make_special(x, false, true));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact forms

namespace {

Lin4 lin_unit(int k) {
  Lin4 l{Rat(0), Rat(0), Rat(0), Rat(0)};
  l[static_cast<size_t>(k)] = 1;
  return l;
}

Lin4 lin_axpy(const Rat& s, const Lin4& x, const Lin4& y) {
  Lin4 r;
  for (int i = 0; i < 4; ++i) r[i] = s * x[i] + y[i];
  return r;
}

Lin4 lin_zero() { return {Rat(0), Rat(0), Rat(0), Rat(0)}; }

using LinVec3 = std::array<Lin4, 3>;

// k x v for a constant vector k.
LinVec3 cross(const RatVec3& k, const LinVec3& v) {
  LinVec3 r;
  r[0] = lin_axpy(k[1], v[2], lin_axpy(-k[2], v[1], lin_zero()));
  r[1] = lin_axpy(k[2], v[0], lin_axpy(-k[0], v[2], lin_zero()));
  r[2] = lin_axpy(k[0], v[1], lin_axpy(-k[1], v[0], lin_zero()));
  return r;
}

RatVec3 rcross(const RatVec3& a, const RatVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rat rdot(const RatVec3& a, const RatVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

bool rzero(const RatVec3& a) { return sgn(a[0]) == 0 && sgn(a[1]) == 0 && sgn(a[2]) == 0; }

std::array<std::array<Rat, 4>, 4> exact_sphere_matrix(const RatSphere& s) {
  std::array<std::array<Rat, 4>, 4> q;
  for (auto& row : q) row.fill(Rat(0));
  q[0][0] = rdot(s.center, s.center) - s.radius_sq;
  for (int i = 0; i < 3; ++i) {
    q[0][i + 1] = -s.center[i];
    q[i + 1][0] = -s.center[i];
    q[i + 1][i + 1] = 1;
  }
  return q;
}

std::array<Rat, 4> hom(const RatVec3& v, const Rat& w) { return {w, v[0], v[1], v[2]}; }

Rat bilinear(const std::array<std::array<Rat, 4>, 4>& q, const std::array<Rat, 4>& x,
             const std::array<Rat, 4>& y) {
  Rat acc(0);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) acc += x[i] * q[i][j] * y[j];
  }
  return acc;
}

std::array<RatVec3, 2> normals_through(const RatLine& ell) {
  const RatVec3 e[3] = {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
  std::vector<RatVec3> cand;
  for (const auto& ek : e) {
    RatVec3 c = rcross(ell.direction, ek);
    if (!rzero(c)) cand.push_back(c);
  }
  for (size_t i = 0; i < cand.size(); ++i) {
    for (size_t j = i + 1; j < cand.size(); ++j) {
      if (!rzero(rcross(cand[i], cand[j]))) return {cand[i], cand[j]};
    }
  }
  throw Error(Errc::kValidationError, "line direction vanishes");
}

}  // namespace

Quad4 Quad4::product(const Lin4& a, const Lin4& b) {
  Quad4 q;
  for (auto& row : q.coef) row.fill(Rat(0));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) q.coef[std::min(i, j)][std::max(i, j)] += a[i] * b[j];
  }
  return q;
}

Quad4& Quad4::operator+=(const Quad4& o) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) coef[i][j] += o.coef[i][j];
  }
  return *this;
}

Quad4& Quad4::operator-=(const Quad4& o) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) coef[i][j] -= o.coef[i][j];
  }
  return *this;
}

Rat Quad4::eval(const std::array<Rat, 4>& x) const {
  Rat acc(0);
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) acc += coef[i][j] * x[i] * x[j];
  }
  return acc;
}

double Quad4::eval(const Eigen::Vector4d& x) const {
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) acc += coef[i][j].get_d() * x[i] * x[j];
  }
  return acc;
}

bool Quad4::is_zero() const {
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      if (sgn(coef[i][j]) != 0) return false;
    }
  }
  return true;
}

HPoly2 compose(const Lin4& f, const std::array<HPoly2, 4>& nu) {
  HPoly2 acc;
  for (int i = 0; i < 4; ++i) acc = acc + f[i] * nu[i];
  return acc;
}

HPoly2 compose(const Quad4& f, const std::array<HPoly2, 4>& nu) {
  HPoly2 acc;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      if (sgn(f.coef[i][j]) == 0) continue;
      acc = acc + f.coef[i][j] * (nu[i] * nu[j]);
    }
  }
  return acc;
}

Quad4 sphere_form(const RatSphere& s) {
  const auto q = exact_sphere_matrix(s);
  Quad4 f;
  for (int i = 0; i < 4; ++i) {
    f.coef[i][i] = q[i][i];
    for (int j = i + 1; j < 4; ++j) f.coef[i][j] = 2 * q[i][j];
  }
  return f;
}

std::array<Lin4, 2> planes_through(const RatLine& ell) {
  const auto ns = normals_through(ell);
  std::array<Lin4, 2> out;
  for (int k = 0; k < 2; ++k) {
    out[k] = {-rdot(ns[k], ell.point), ns[k][0], ns[k][1], ns[k][2]};
  }
  return out;
}

std::array<Lin4, 2> polar_planes(const RatSphere& s, const RatLine& ell) {
  const auto q = exact_sphere_matrix(s);
  const std::array<Rat, 4> pts[2] = {hom(ell.point, Rat(1)), hom(ell.direction, Rat(0))};
  std::array<Lin4, 2> out;
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 4; ++j) {
      out[k][j] = 0;
      for (int i = 0; i < 4; ++i) out[k][j] += pts[k][i] * q[i][j];
    }
  }
  return out;
}

bool line_tangent_exact(const RatSphere& s, const RatLine& ell) {
  const auto q = exact_sphere_matrix(s);
  const auto a = hom(ell.point, Rat(1)), d = hom(ell.direction, Rat(0));
  const Rat ad = bilinear(q, a, d);
  return sgn(ad * ad - bilinear(q, a, a) * bilinear(q, d, d)) == 0;
}

std::array<Quad4, 6> phi_forms(const RatSphere& s, const RatLine& ell) {
  const auto ns = normals_through(ell);
  const RatVec3& l1 = ns[0];
  const RatVec3& l2 = ns[1];
  const Rat lam1 = rdot(l1, ell.point), lam2 = rdot(l2, ell.point);
  const RatVec3& c = s.center;

  // Tangent plane at X: m . P = mu with m = (x, y, z) - w c.
  LinVec3 m;
  for (int k = 0; k < 3; ++k) m[k] = lin_axpy(-c[k], lin_unit(0), lin_unit(k + 1));
  Lin4 mu{s.radius_sq - rdot(c, c), c[0], c[1], c[2]};

  const RatVec3 l12 = rcross(l1, l2);
  Lin4 det = lin_zero();
  for (int k = 0; k < 3; ++k) det = lin_axpy(l12[k], m[k], det);

  // Cramer numerator: mu (l1 x l2) + lam1 (l2 x m) + lam2 (m x l1).
  const LinVec3 l2m = cross(l2, m), l1m = cross(l1, m);
  std::array<Lin4, 4> p1;
  p1[0] = det;
  for (int k = 0; k < 3; ++k) {
    Lin4 v = lin_axpy(l12[k], mu, lin_zero());
    v = lin_axpy(lam1, l2m[k], v);
    v = lin_axpy(-lam2, l1m[k], v);
    p1[k + 1] = v;
  }

  static constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::array<Quad4, 6> out;
  for (int k = 0; k < 6; ++k) {
    const int i = kPairs[k][0], j = kPairs[k][1];
    out[k] = Quad4::product(lin_unit(i), p1[j]);
    out[k] -= Quad4::product(lin_unit(j), p1[i]);
  }
  return out;
}

}  // namespace sphtan
