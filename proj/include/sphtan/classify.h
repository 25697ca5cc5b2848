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


// Decides whether infinitely many lines meet a fixed line and are tangent to
// three given spheres, and which configuration produces them.

#ifndef SPHTAN_CLASSIFY_H_
#define SPHTAN_CLASSIFY_H_

#include <array>
#include <optional>
#include <vector>

#include "sphtan/plucker.h"
#include "sphtan/taucurve.h"

namespace sphtan {

struct Scene3 {
  PluckerLine ell;
  std::array<Sphere, 3> spheres;
};

// Ia: spheres tangent at p and ell passes through p (not in the tangent plane).
// Ib: spheres tangent at p and ell lies in the common tangent plane.
// II: spheres inscribed in one cone whose apex lies on ell.
// III: spheres share a circle whose plane contains ell.
// IV: centers on a line m and ell tangent to all spheres, skew to m.
enum class Case { kIa, kIb, kII, kIII, kIV };

const char* case_name(Case c);

struct CaseIWitness {
  Point3 point;
  Eigen::Vector3d normal;  // of the common tangent plane
  bool through_point = false;
  bool in_plane = false;
  double residual = 0.0;
};

struct CaseIIWitness {
  Point3 apex;
  Eigen::Vector3d axis;
  double half_angle = 0.0;
  bool cylinder = false;  // projective mode only; apex at infinity
  double residual = 0.0;
};

struct CaseIIIWitness {
  Point3 circle_center;
  Eigen::Vector3d normal;
  double circle_radius = 0.0;
  double residual = 0.0;
};

struct CaseIVWitness {
  Point3 axis_point;
  Eigen::Vector3d axis;
  double residual = 0.0;
};

struct ClassificationResult {
  std::vector<Case> cases;  // ascending
  std::optional<CaseIWitness> case_i;
  std::optional<CaseIIWitness> case_ii;
  std::optional<CaseIIIWitness> case_iii;
  std::optional<CaseIVWitness> case_iv;

  bool has(Case c) const;
};

inline constexpr double kDefaultClassifyTol = 1e-6;

struct ClassifyOptions {
  double tol = kDefaultClassifyTol;
  bool projective = false;  // accept cylinders with ell parallel to the axis
};

// Works on a copy translated to the centroid of the centers and scaled so the
// largest center distance is 2; witnesses are reported in input coordinates.
// Throws DegenerateScene when two spheres coincide within tol.
ClassificationResult classify(const Scene3& scene, const ClassifyOptions& opts = {});

// Individual predicates in the scene's own units.
std::optional<CaseIWitness> check_case_i(const Scene3& scene, double tol);
std::optional<CaseIIWitness> check_case_ii(const Scene3& scene, double tol, bool projective = false);
std::optional<CaseIIIWitness> check_case_iii(const Scene3& scene, double tol);
std::optional<CaseIVWitness> check_case_iv(const Scene3& scene, double tol);

// Line families certified by the result, for sampling.
std::vector<ComponentDescriptor> witness_components(const ClassificationResult& r,
                                                   const Scene3& scene);

}  // namespace sphtan

#endif  // SPHTAN_CLASSIFY_H_
