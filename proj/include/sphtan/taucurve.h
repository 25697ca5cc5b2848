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


// The curve of common tangents to two spheres that meet a fixed line:
// sampling it over the pencil of planes through the line, estimating its
// degree, recognizing its known low-degree components, and the exact rational
// quartic of the tangent-spheres configuration.

#ifndef SPHTAN_TAUCURVE_H_
#define SPHTAN_TAUCURVE_H_

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sphtan/exactpoly.h"
#include "sphtan/plucker.h"
#include "sphtan/tangents.h"

namespace sphtan {

struct Scene2 {
  PluckerLine ell;
  Sphere s1, s2;
};

// ---------------------------------------------------------------------------
// Rational quartic of two spheres tangent at the origin with the z-axis as
// the fixed line: S1 center (1,0,0) radius 1, S2 center (-r,0,0) radius r.

using RatPlucker = std::array<Rat, 6>;

// Throws ForbiddenRatio for r in {-1, 0, 1} or r < 0, NonSquareRatio when
// sqrt(r) is irrational.
RatPlucker quartic_parametrize(const Rat& r, const Rat& s, const Rat& t);
Vec6 quartic_parametrize(double r, double s, double t);

// The two spanning points (w, x, y, z) of the same line.
std::array<std::array<Rat, 4>, 2> quartic_line_matrix(const Rat& r, const Rat& s, const Rat& t);
std::array<HomPoint4, 2> quartic_line_matrix(double r, double s, double t);

// The defining polynomials of the curve evaluated at a Plucker vector:
// Plucker relation, meeting the z-axis, tangency to S1 and to S2.
struct QuarticIdentities {
  Rat relation, meets_axis, tangent_s1, tangent_s2;
  bool all_zero() const;
};
QuarticIdentities quartic_identities(const Rat& r, const RatPlucker& p);

Scene2 quartic_scene(double r);

// ---------------------------------------------------------------------------
// Pencil tracing

// Plane through ell at pencil angle theta in [0, pi).
Plane pencil_plane(const PluckerLine& ell, double theta);

struct TauLine {
  PluckerLine line;
  int multiplicity = 1;
  int branch = -1;
};

struct TauSample {
  double theta = 0.0;
  std::vector<TauLine> lines;
  bool degenerate = false;  // the plane meets both spheres in one circle
};

// Continuation between lines of two samples; indices into samples/lines.
struct TauLink {
  int sample_a, line_a, sample_b, line_b;
};

struct TauTrace {
  std::vector<TauSample> samples;  // sorted by theta
  std::vector<TauLink> links;
  int branch_count = 0;
};

// Samples n_planes uniform angles plus refined samples near angles where the
// number of real tangents changes. Branches are connected components of the
// nearest-neighbour continuation graph.
TauTrace trace_tau(const Scene2& scene, int n_planes);

int degree_estimate(const Scene2& scene, int trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Components

enum class ComponentKind {
  kPencil,
  kConeRuling,
  kPlaneCircleTangents,
  kHyperboloidRuling,
  kRationalQuartic,
};

const char* component_kind_name(ComponentKind k);

// Fields are meaningful per kind as noted.
struct ComponentDescriptor {
  ComponentKind kind = ComponentKind::kPencil;
  int multiplicity = 1;  // multiplicity in the curve when known

  // Pencil: lines through point lying in plane. PlaneCircleTangents: plane.
  Point3 point = Point3::Zero();
  Plane plane{};

  // ConeRuling.
  Point3 apex = Point3::Zero();
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  double half_angle = 0.0;

  // PlaneCircleTangents: circle center (3D) and radius.
  Point3 circle_center = Point3::Zero();
  double circle_radius = 0.0;

  // HyperboloidRuling: axis through axis_point along axis; the generator is
  // a line of the other ruling.
  Point3 axis_point = Point3::Zero();
  PluckerLine generator = PluckerLine::from_coords(Vec6::Unit(0));

  // RationalQuartic. Frame kind: world = origin + scale * R * frame with
  // R = [ex ey ez]. Symmetric kind: the two spheres and the line.
  bool symmetric = false;
  Point3 origin = Point3::Zero();
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  double scale = 1.0;
  double ratio = 0.0;
  Scene2 scene{PluckerLine::from_coords(Vec6::Unit(0)), {}, {}};
};

struct Membership {
  double residual = 0.0;
  // HyperboloidRuling only: residual against the other ruling.
  double opposite_residual = 0.0;
  bool opposite_ruling = false;
};

Membership component_membership(const PluckerLine& m, const ComponentDescriptor& c);

// Random real lines of the component.
std::vector<PluckerLine> sample_component(const ComponentDescriptor& c, int n,
                                          std::mt19937_64& rng);

struct ComponentReport {
  std::vector<ComponentDescriptor> components;
  bool centers_on_line = false;  // the curve also holds complex special lines
};

ComponentReport detect_components(const Scene2& scene);

// ---------------------------------------------------------------------------
// Proper transform degree

struct RationalCurveOnSphere {
  std::array<HPoly2, 4> nu;  // (w, x, y, z), common degree
};

struct ProperTransform {
  int curve_degree = 0;
  int degree = 0;     // 2d minus the degree of the common factor
  int predicted = 0;  // from multiplicities at special points
  bool line_tangent = false;
  int mult_on_line = 0;    // sum over points of the curve on ell
  int mult_on_polar = 0;   // sum over touch points of planes through ell
  int mult_at_tangency = 0;
};

// Throws NotOnSphere, SpecialLine.
ProperTransform proper_transform_degree(const RationalCurveOnSphere& gamma,
                                        const RatSphere& s, const RatLine& ell);

}  // namespace sphtan

#endif  // SPHTAN_TAUCURVE_H_
