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


#include "sphtan/classify.h"

#include <algorithm>
#include <cmath>

#include "sphtan/errors.h"

namespace sphtan {

const char* case_name(Case c) {
  switch (c) {
    case Case::kIa: return "Ia";
    case Case::kIb: return "Ib";
    case Case::kII: return "II";
    case Case::kIII: return "III";
    case Case::kIV: return "IV";
  }
  return "?";
}

bool ClassificationResult::has(Case c) const {
  return std::find(cases.begin(), cases.end(), c) != cases.end();
}

namespace {

// Common line of the centers, if any.
struct CenterLine {
  bool collinear = false;
  Point3 base;
  Eigen::Vector3d u;
  int base_index = 0;
  std::array<double, 3> t{};  // positions of the centers along u
};

CenterLine center_line(const Scene3& sc, double tol) {
  CenterLine cl;
  int bi = 0, bj = 1;
  double best = -1.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double dd = (sc.spheres[j].center - sc.spheres[i].center).norm();
      if (dd > best) {
        best = dd;
        bi = i;
        bj = j;
      }
    }
  }
  if (best <= tol) return cl;  // concentric
  cl.base_index = bi;
  cl.base = sc.spheres[bi].center;
  cl.u = (sc.spheres[bj].center - cl.base) / best;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d v = sc.spheres[k].center - cl.base;
    if (v.cross(cl.u).norm() > tol) return cl;
    cl.t[k] = v.dot(cl.u);
  }
  cl.collinear = true;
  return cl;
}

// Signed offset of the line from a plane with unit normal n through p, and
// the angle defect; both must vanish for the line to lie in the plane.
double line_plane_defect(const PluckerLine& ell, const Eigen::Vector3d& n, const Point3& p) {
  const Point3 a = ell.nearest_point_to_origin();
  return std::max(std::abs(ell.unit_direction().dot(n)), std::abs((a - p).dot(n)));
}

}  // namespace

std::optional<CaseIWitness> check_case_i(const Scene3& sc, double tol) {
  const CenterLine cl = center_line(sc, tol);
  if (!cl.collinear) return std::nullopt;
  const Sphere& s0 = sc.spheres[0];
  std::optional<CaseIWitness> best;
  for (double sign : {1.0, -1.0}) {
    const Point3 p = s0.center + sign * s0.radius * cl.u;
    double resid = 0.0;
    for (const auto& s : sc.spheres) resid = std::max(resid, std::abs((p - s.center).norm() - s.radius));
    if (resid > tol) continue;
    CaseIWitness w;
    w.point = p;
    w.normal = cl.u;
    const double through = point_line_distance(p, sc.ell);
    const double plane = line_plane_defect(sc.ell, cl.u, p);
    w.through_point = through <= tol;
    w.in_plane = plane <= tol;
    if (!w.through_point && !w.in_plane) continue;
    w.residual = std::max(resid, std::min(through, plane));
    if (!best || w.residual < best->residual) best = w;
  }
  return best;
}

std::optional<CaseIIWitness> check_case_ii(const Scene3& sc, double tol, bool projective) {
  const CenterLine cl = center_line(sc, tol);
  if (!cl.collinear) return std::nullopt;
  int bi = 0, bj = 1;
  double spread = -1.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double dr = std::abs(sc.spheres[i].radius - sc.spheres[j].radius);
      if (dr > spread) {
        spread = dr;
        bi = i;
        bj = j;
      }
    }
  }
  if (spread <= tol) {
    if (!projective) return std::nullopt;
    if (sc.ell.unit_direction().cross(cl.u).norm() > tol) return std::nullopt;
    CaseIIWitness w;
    w.apex = cl.base;
    w.axis = cl.u;
    w.cylinder = true;
    w.residual = std::max(spread, sc.ell.unit_direction().cross(cl.u).norm());
    return w;
  }
  const double ri = sc.spheres[bi].radius, rj = sc.spheres[bj].radius;
  const double ti = cl.t[bi], tj = cl.t[bj];
  const double candidates[2] = {(ri * tj - rj * ti) / (ri - rj), (ri * tj + rj * ti) / (ri + rj)};
  std::optional<CaseIIWitness> best;
  for (double ta : candidates) {
    const double k = ri / std::abs(ti - ta);
    double resid = 0.0;
    int side = 0;
    bool ok = true;
    for (int m = 0; m < 3; ++m) {
      const double off = cl.t[m] - ta;
      const int sgn_m = off > 0 ? 1 : -1;
      if (side == 0) side = sgn_m;
      if (sgn_m != side) ok = false;                          // mixed nappes
      if (std::abs(off) <= sc.spheres[m].radius + tol) ok = false;  // apex inside
      resid = std::max(resid, std::abs(sc.spheres[m].radius - k * std::abs(off)));
    }
    if (!ok || resid > tol) continue;
    const Point3 apex = cl.base + ta * cl.u;
    const double on_line = point_line_distance(apex, sc.ell);
    if (on_line > tol) continue;
    CaseIIWitness w;
    w.apex = apex;
    w.axis = cl.u;
    w.half_angle = std::asin(k);
    w.residual = std::max(resid, on_line);
    if (!best || w.residual < best->residual) best = w;
  }
  return best;
}

std::optional<CaseIIIWitness> check_case_iii(const Scene3& sc, double tol) {
  const CenterLine cl = center_line(sc, tol);
  if (!cl.collinear) return std::nullopt;
  const double r0 = sc.spheres[cl.base_index].radius;
  double hmin = 1e300, hmax = -1e300;
  for (int m = 0; m < 3; ++m) {
    if (m == cl.base_index) continue;
    const double tm = cl.t[m];
    if (std::abs(tm) <= tol) return std::nullopt;  // concentric pair
    const double rm = sc.spheres[m].radius;
    const double h = (tm * tm - rm * rm + r0 * r0) / (2.0 * tm);
    hmin = std::min(hmin, h);
    hmax = std::max(hmax, h);
  }
  if (hmax - hmin > tol) return std::nullopt;
  const double h = 0.5 * (hmin + hmax);
  const double rsq = r0 * r0 - h * h;
  if (rsq <= tol) return std::nullopt;
  const Point3 center = cl.base + h * cl.u;
  const double plane = line_plane_defect(sc.ell, cl.u, center);
  if (plane > tol) return std::nullopt;
  CaseIIIWitness w;
  w.circle_center = center;
  w.normal = cl.u;
  w.circle_radius = std::sqrt(rsq);
  w.residual = std::max(hmax - hmin, plane);
  return w;
}

std::optional<CaseIVWitness> check_case_iv(const Scene3& sc, double tol) {
  const CenterLine cl = center_line(sc, tol);
  if (!cl.collinear) return std::nullopt;
  double resid = 0.0;
  for (const auto& s : sc.spheres) {
    resid = std::max(resid, std::abs(point_line_distance(s.center, sc.ell) - s.radius));
  }
  if (resid > tol) return std::nullopt;
  const Eigen::Vector3d d = sc.ell.unit_direction();
  const Eigen::Vector3d w = d.cross(cl.u);
  if (w.norm() <= tol) return std::nullopt;  // parallel: cylinder
  const double gap = std::abs((sc.ell.nearest_point_to_origin() - cl.base).dot(w)) / w.norm();
  if (gap <= tol) return std::nullopt;  // ell meets the axis
  CaseIVWitness wit;
  wit.axis_point = cl.base;
  wit.axis = cl.u;
  wit.residual = resid;
  return wit;
}

ClassificationResult classify(const Scene3& scene, const ClassifyOptions& opts) {
  if (!(opts.tol > 0.0)) throw Error(Errc::kValidationError, "tolerance must be positive");
  Point3 centroid = Point3::Zero();
  for (const auto& s : scene.spheres) centroid += s.center / 3.0;
  double span = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      span = std::max(span, (scene.spheres[i].center - scene.spheres[j].center).norm());
    }
  }
  double scale = span / 2.0;
  if (scale <= 0.0) {
    for (const auto& s : scene.spheres) scale = std::max(scale, s.radius);
  }

  Scene3 n = scene;
  for (auto& s : n.spheres) {
    s.center = (s.center - centroid) / scale;
    s.radius /= scale;
  }
  n.ell = line_point_direction((scene.ell.nearest_point_to_origin() - centroid) / scale,
                               scene.ell.unit_direction());
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if ((n.spheres[i].center - n.spheres[j].center).norm() <= opts.tol &&
          std::abs(n.spheres[i].radius - n.spheres[j].radius) <= opts.tol) {
        throw Error(Errc::kDegenerateScene, "two spheres coincide");
      }
    }
  }

  auto back = [&](const Point3& p) { return Point3(centroid + scale * p); };
  ClassificationResult res;
  if (auto w = check_case_i(n, opts.tol)) {
    w->point = back(w->point);
    res.case_i = w;
    if (w->in_plane) res.cases.push_back(Case::kIb);
    else res.cases.push_back(Case::kIa);
  }
  if (auto w = check_case_ii(n, opts.tol, opts.projective)) {
    w->apex = back(w->apex);
    res.case_ii = w;
    res.cases.push_back(Case::kII);
  }
  if (auto w = check_case_iii(n, opts.tol)) {
    w->circle_center = back(w->circle_center);
    w->circle_radius *= scale;
    res.case_iii = w;
    res.cases.push_back(Case::kIII);
  }
  if (auto w = check_case_iv(n, opts.tol)) {
    w->axis_point = back(w->axis_point);
    res.case_iv = w;
    res.cases.push_back(Case::kIV);
  }
  std::sort(res.cases.begin(), res.cases.end());
  return res;
}

std::vector<ComponentDescriptor> witness_components(const ClassificationResult& r,
                                                   const Scene3& scene) {
  std::vector<ComponentDescriptor> out;
  if (r.case_i) {
    ComponentDescriptor c;
    c.kind = ComponentKind::kPencil;
    c.point = r.case_i->point;
    c.plane = plane_from_normal(r.case_i->normal, r.case_i->point);
    out.push_back(c);
  }
  if (r.case_ii && !r.case_ii->cylinder) {
    ComponentDescriptor c;
    c.kind = ComponentKind::kConeRuling;
    c.apex = r.case_ii->apex;
    c.axis = r.case_ii->axis;
    c.half_angle = r.case_ii->half_angle;
    out.push_back(c);
  }
  if (r.case_iii) {
    ComponentDescriptor c;
    c.kind = ComponentKind::kPlaneCircleTangents;
    c.plane = plane_from_normal(r.case_iii->normal, r.case_iii->circle_center);
    c.circle_center = r.case_iii->circle_center;
    c.circle_radius = r.case_iii->circle_radius;
    out.push_back(c);
  }
  if (r.case_iv) {
    ComponentDescriptor c;
    c.kind = ComponentKind::kHyperboloidRuling;
    c.axis_point = r.case_iv->axis_point;
    c.axis = r.case_iv->axis;
    c.generator = scene.ell;
    out.push_back(c);
  }
  return out;
}

}  // namespace sphtan
