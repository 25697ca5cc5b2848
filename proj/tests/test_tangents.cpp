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


#include <doctest.h>

#include <cmath>
#include <optional>
#include <random>

#include "sphtan/errors.h"
#include "sphtan/tangents.h"
#include "test_util.h"

using namespace sphtan;
using namespace sphtan::testing;

namespace {

// Number of real lines through p tangent to both spheres, counted by sign
// changes along the circle of directions tangent to s1.
int brute_force_point_tangents(const Sphere& s1, const Sphere& s2, const Point3& p) {
  const Eigen::Vector3d w = s1.center - p;
  const double dist = w.norm();
  if (dist <= s1.radius) return 0;
  const Eigen::Vector3d axis = w / dist;
  Eigen::Vector3d e1 = axis.unitOrthogonal(), e2 = axis.cross(e1);
  const double sa = s1.radius / dist, ca = std::sqrt(1 - sa * sa);
  auto f = [&](double phi) {
    const Eigen::Vector3d u = ca * axis + sa * (std::cos(phi) * e1 + std::sin(phi) * e2);
    const double d2 = ref_point_line_distance(s2.center, p, u);
    return d2 - s2.radius;
  };
  const int n = 20000;
  int changes = 0;
  double prev = f(0.0);
  for (int k = 1; k <= n; ++k) {
    const double cur = f(2 * M_PI * k / n);
    if ((prev < 0) != (cur < 0)) ++changes;
    prev = cur;
  }
  return changes;
}

// Real common tangent lines of two coplanar circles in general position.
int classical_tangent_count(double d, double r1, double r2) {
  if (d > r1 + r2) return 4;
  if (d > std::abs(r1 - r2)) return 2;
  return 0;
}

}  // namespace

TEST_CASE("bitangents of unit circles at (+-2, 0)") {
  const Sphere s1{{2, 0, 0}, 1}, s2{{-2, 0, 0}, 1};
  const Plane z0 = plane_from_normal({0, 0, 1}, {0, 0, 0});
  const TangentSet ts = bitangents_in_plane(s1, s2, z0);
  CHECK(ts.total_multiplicity() == 4);
  REQUIRE(ts.real_count == 4);
  // v = +-1 and v = +-u / sqrt(3): unit directions and signed offsets.
  int found = 0;
  for (const auto& t : ts.lines) {
    REQUIRE(t.line);
    const Eigen::Vector3d d = t.line->unit_direction();
    const Point3 q = t.line->nearest_point_to_origin();
    CHECK(std::abs(d.z()) < 1e-12);
    CHECK(std::abs(q.z()) < 1e-12);
    const double slope = d.y() / d.x();
    if (std::abs(slope) < 1e-10) {
      CHECK(std::abs(std::abs(q.y()) - 1.0) < 1e-10);
      ++found;
    } else {
      CHECK(std::abs(std::abs(slope) - 1 / std::sqrt(3.0)) < 1e-10);
      CHECK(q.norm() < 1e-10);
      ++found;
    }
  }
  CHECK(found == 4);
}

TEST_CASE("bitangents: random planes agree with the classical count") {
  std::mt19937_64 rng(21);
  int tested = 0;
  for (int i = 0; i < 300; ++i) {
    const Sphere s1{random_vec(rng, -3, 3), uniform(rng, 0.3, 2)};
    const Sphere s2{random_vec(rng, -3, 3), uniform(rng, 0.3, 2)};
    const Plane pl = plane_from_normal(random_unit(rng), random_vec(rng, -1, 1));
    const TangentSet ts = bitangents_in_plane(s1, s2, pl);
    CHECK(ts.total_multiplicity() == 4);
    const Eigen::Vector3d n = pl.normal().normalized();
    const double off = pl.a[0] / pl.normal().norm();
    const double h1 = n.dot(s1.center) + off, h2 = n.dot(s2.center) + off;
    const double q1 = s1.radius * s1.radius - h1 * h1, q2 = s2.radius * s2.radius - h2 * h2;
    int expected = 0;
    if (q1 > 1e-3 && q2 > 1e-3) {
      const Point3 c1 = s1.center - h1 * n, c2 = s2.center - h2 * n;
      const double d = (c1 - c2).norm(), r1 = std::sqrt(q1), r2 = std::sqrt(q2);
      if (std::abs(d - r1 - r2) < 1e-3 || std::abs(d - std::abs(r1 - r2)) < 1e-3) continue;
      expected = classical_tangent_count(d, r1, r2);
    } else if (q1 > -1e-3 && q2 > -1e-3) {
      continue;  // near a point circle
    }
    CHECK(ts.real_count == expected);
    for (const auto& t : ts.lines) {
      if (!t.is_real) continue;
      CHECK(std::abs(tangency_residual(*t.line, s1)) <= kResidualTol);
      CHECK(std::abs(tangency_residual(*t.line, s2)) <= kResidualTol);
      CHECK(line_in_plane_residual(*t.line, pl) < 1e-9);
    }
    ++tested;
  }
  CHECK(tested > 200);
}

TEST_CASE("plane tangent to one sphere gives doubled lines") {
  const Sphere s1{{0, 0, 1}, 1}, s2{{3, 0, 0}, 1};
  const TangentSet ts = bitangents_in_plane(s1, s2, plane_from_normal({0, 0, 1}, {0, 0, 0}));
  CHECK(ts.total_multiplicity() == 4);
  CHECK(ts.real_count == 2);
  for (const auto& t : ts.lines) {
    CHECK(t.multiplicity == 2);
    CHECK(line_through_point(*t.line, affine({0, 0, 0})));
  }
  // Both sections are the same point: every line in the plane through it.
  const Sphere s3{{0, 0, -2}, 2};
  CHECK_THROWS_AS(bitangents_in_plane(s1, s3, plane_from_normal({0, 0, 1}, {0, 0, 0})), Error);
}

TEST_CASE("identical sections are reported") {
  const Sphere a{{0, 0, 1}, std::sqrt(2.0)}, b{{0, 0, -1}, std::sqrt(2.0)};
  try {
    bitangents_in_plane(a, b, plane_from_normal({0, 0, 1}, {0, 0, 0}));
    FAIL("expected IdenticalSections");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kIdenticalSections);
  }
}

TEST_CASE("tangents through a point agree with a direction scan") {
  std::mt19937_64 rng(8);
  int tested = 0;
  for (int i = 0; i < 150; ++i) {
    const Sphere s1{random_vec(rng, -3, 3), uniform(rng, 0.3, 1.5)};
    const Sphere s2{random_vec(rng, -3, 3), uniform(rng, 0.3, 1.5)};
    const Point3 p = random_vec(rng, -5, 5);
    if ((p - s1.center).norm() < s1.radius + 0.05 || (p - s2.center).norm() < s2.radius + 0.05)
      continue;
    TangentSet ts;
    try {
      ts = tangents_through_point(s1, s2, p);
    } catch (const Error&) {
      continue;
    }
    CHECK(ts.total_multiplicity() == 4);
    bool simple = true;
    for (const auto& t : ts.lines) simple = simple && t.multiplicity == 1;
    if (!simple) continue;
    CHECK(ts.real_count == brute_force_point_tangents(s1, s2, p));
    for (const auto& t : ts.lines) {
      if (!t.is_real) continue;
      CHECK(line_through_point_residual(*t.line, affine(p)) < 1e-9);
      CHECK(std::abs(tangency_residual(*t.line, s1)) <= kResidualTol);
      CHECK(std::abs(tangency_residual(*t.line, s2)) <= kResidualTol);
    }
    ++tested;
  }
  CHECK(tested > 80);
}

TEST_CASE("tangents through a point: degenerate inputs") {
  const Sphere s1{{0, 0, 0}, 1}, s2{{4, 0, 0}, 2};
  auto code = [&](const Point3& p) {
    try {
      tangents_through_point(s1, s2, p);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::kValidationError;
  };
  CHECK(code({1, 0, 0}) == Errc::kPointOnSphere);
  // External centre of similitude: both cones coincide.
  CHECK(code({-4, 0, 0}) == Errc::kIdenticalCones);
}

TEST_CASE("the point-tangent line meets ell and touches the sphere at q") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const Sphere s{random_vec(rng, -2, 2), uniform(rng, 0.5, 2)};
    const auto ell = line_point_direction(random_vec(rng, -4, 4), random_unit(rng));
    const Point3 q = s.center + s.radius * random_unit(rng);
    std::optional<PhiTangent> pt;
    try {
      pt = phi_tangent_at(s, ell, q);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::kSpecialPoint);
      continue;
    }
    CHECK(line_through_point_residual(pt->line, affine(q)) < 1e-8);
    CHECK(std::abs(tangency_residual(pt->line, s)) < 1e-8);
    CHECK(std::abs(meet_form(pt->line, ell)) < 1e-8);
  }
  const Sphere unit{};
  CHECK_THROWS_AS(phi_tangent_at(unit, line_point_direction({0, 0, 2}, {1, 0, 0}), {0, 0, 0.5}),
                  Error);
}

TEST_CASE("special points of a secant line and of a tangent line") {
  const Sphere s{};
  const auto secant = line_point_direction({0, 0, 0}, {1, 0, 0});
  const SpecialPoints sp = special_points(s, secant);
  CHECK(sp.count == 4);
  int on_line = 0;
  for (const auto& p : sp.points) {
    if (!p.on_line) continue;
    ++on_line;
    CHECK(p.is_real);
    const Eigen::Vector3d x = (p.x.tail<3>() / p.x[0]).real();
    CHECK(std::abs(x.norm() - 1.0) < 1e-9);
    CHECK(std::abs(x.y()) + std::abs(x.z()) < 1e-9);
  }
  CHECK(on_line == 2);
  const auto tangent = line_point_direction({0, 1, 0}, {1, 0, 0});
  CHECK(special_points(s, tangent).count == 1);
}

TEST_CASE("binary quadratic roots") {
  auto r = solve_binary_quadratic(1, 0, -1);
  REQUIRE(r.size() == 2);
  for (const auto& [x, m] : r) {
    CHECK(m == 1);
    CHECK(std::abs(x[0] * x[0] - x[1] * x[1]) < 1e-12);
  }
  r = solve_binary_quadratic(0, 2, 3);  // Y (2X + 3Y)
  REQUIRE(r.size() == 2);
  for (const auto& [x, m] : r) CHECK(std::abs(2.0 * x[0] * x[1] + 3.0 * x[1] * x[1]) < 1e-12);
  r = solve_binary_quadratic(1, 2, 1);
  REQUIRE(r.size() == 1);
  CHECK(r[0].second == 2);
  CHECK_THROWS_AS(solve_binary_quadratic(0, 0, 0), Error);
}

TEST_CASE("conic intersection counts four points") {
  // x^2 + y^2 = w^2 and (x - w)^2 + y^2 = w^2 in coordinates (x, y, w).
  Eigen::Matrix3d a = Eigen::Vector3d(1, 1, -1).asDiagonal();
  Eigen::Matrix3d b;
  b << 1, 0, -1, 0, 1, 0, -1, 0, 0;
  const auto pts = intersect_conics(a, b);
  REQUIRE(pts.has_value());
  int total = 0, real_affine = 0;
  for (const auto& p : *pts) {
    total += p.multiplicity;
    const Eigen::Matrix3cd ac = a.cast<std::complex<double>>(), bc = b.cast<std::complex<double>>();
    CHECK(std::abs((p.x.transpose() * (ac * p.x)).value()) < 1e-9);
    CHECK(std::abs((p.x.transpose() * (bc * p.x)).value()) < 1e-9);
    if (p.x.imag().norm() < 1e-9 * p.x.norm() && std::abs(p.x[2]) > 1e-9) ++real_affine;
  }
  CHECK(total == 4);
  CHECK(real_affine == 2);
  CHECK_FALSE(intersect_conics(a, 2.0 * a).has_value());
}

TEST_CASE("exact tangent forms agree with the numeric construction") {
  // Rational points on the sphere via inverse stereographic projection.
  const RatSphere rs{{Rat(1), Rat(-1), Rat(2)}, Rat(9)};
  const Sphere s{{1, -1, 2}, 3};
  const RatLine rl{{Rat(4), Rat(1), Rat(-2)}, {Rat(1), Rat(2), Rat(2)}};
  const auto ell = line_point_direction({4, 1, -2}, {1, 2, 2});
  const auto forms = phi_forms(rs, rl);
  int compared = 0;
  for (int a = -3; a <= 3; ++a) {
    for (int b = -2; b <= 3; ++b) {
      const Rat den(a * a + b * b + 1);
      Rat u0(2 * a, a * a + b * b + 1), u1(2 * b, a * a + b * b + 1),
          u2(a * a + b * b - 1, a * a + b * b + 1);
      u0.canonicalize();
      u1.canonicalize();
      u2.canonicalize();
      const std::array<Rat, 4> x{Rat(1), 1 + 3 * u0, -1 + 3 * u1, 2 + 3 * u2};
      CHECK(sphere_form(rs).eval(x) == 0);
      Vec6 v;
      for (int k = 0; k < 6; ++k) v[k] = forms[static_cast<size_t>(k)].eval(x).get_d();
      const Point3 q(x[1].get_d(), x[2].get_d(), x[3].get_d());
      std::optional<PhiTangent> pt;
      try {
        pt = phi_tangent_at(s, ell, q);
      } catch (const Error&) {
        continue;
      }
      if (v.norm() < 1e-12) continue;
      CHECK(line_distance(v, pt->line.coords()) < 1e-9);
      ++compared;
    }
  }
  CHECK(compared > 30);
}

TEST_CASE("exact tangency test") {
  const RatSphere unit{{Rat(0), Rat(0), Rat(0)}, Rat(1)};
  CHECK(line_tangent_exact(unit, {{Rat(0), Rat(1), Rat(0)}, {Rat(1), Rat(0), Rat(0)}}));
  CHECK_FALSE(line_tangent_exact(unit, {{Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)}}));
}
