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


#include "sphtan/taucurve.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sphtan/errors.h"

namespace sphtan {

// ---------------------------------------------------------------------------
// Rational quartic

namespace {

void check_ratio(const Rat& r) {
  if (sgn(r) <= 0 || r == 1) {
    throw Error(Errc::kForbiddenRatio,
                "ratio must be positive and different from 1, got " + rat_to_string(r));
  }
}

Rat exact_root(const Rat& r) {
  check_ratio(r);
  auto sq = rat_sqrt(r);
  if (!sq) {
    throw Error(Errc::kNonSquareRatio,
                "sqrt(" + rat_to_string(r) + ") is irrational; use the numeric form");
  }
  return *sq;
}

double numeric_root(double r) {
  if (!(r > 0.0) || r == 1.0) throw Error(Errc::kForbiddenRatio, "ratio must be positive and != 1");
  return std::sqrt(r);
}

}  // namespace

RatPlucker quartic_parametrize(const Rat& r, const Rat& s, const Rat& t) {
  const Rat q = exact_root(r);
  const Rat sum = s * s + t * t, diff = s * s - t * t;
  return {2 * q * sum * diff, 4 * q * s * t * sum, (r - 1) * sum * sum, Rat(0),
          2 * r * diff * diff, 4 * r * s * t * diff};
}

Vec6 quartic_parametrize(double r, double s, double t) {
  const double q = numeric_root(r);
  const double sum = s * s + t * t, diff = s * s - t * t;
  Vec6 p;
  p << 2 * q * sum * diff, 4 * q * s * t * sum, (r - 1) * sum * sum, 0.0, 2 * r * diff * diff,
      4 * r * s * t * diff;
  return p;
}

std::array<std::array<Rat, 4>, 2> quartic_line_matrix(const Rat& r, const Rat& s, const Rat& t) {
  const Rat q = exact_root(r);
  const Rat sum = s * s + t * t, diff = s * s - t * t;
  return {{{sum, Rat(0), Rat(0), Rat(-q * diff)},
           {Rat(0), 2 * q * diff, 4 * q * s * t, (r - 1) * sum}}};
}

std::array<HomPoint4, 2> quartic_line_matrix(double r, double s, double t) {
  const double q = numeric_root(r);
  const double sum = s * s + t * t, diff = s * s - t * t;
  return {HomPoint4(sum, 0.0, 0.0, -q * diff),
          HomPoint4(0.0, 2 * q * diff, 4 * q * s * t, (r - 1) * sum)};
}

bool QuarticIdentities::all_zero() const {
  return sgn(relation) == 0 && sgn(meets_axis) == 0 && sgn(tangent_s1) == 0 &&
         sgn(tangent_s2) == 0;
}

QuarticIdentities quartic_identities(const Rat& r, const RatPlucker& p) {
  QuarticIdentities q;
  q.relation = p[2] * p[3] - p[1] * p[4] + p[0] * p[5];
  q.meets_axis = p[3];
  const Rat zero(0), one(1);
  q.tangent_s1 = quadratic_form6(wedge2_entries(one, zero, zero, one), p);
  q.tangent_s2 = quadratic_form6(wedge2_entries(Rat(-r), zero, zero, Rat(r * r)), p);
  return q;
}

Scene2 quartic_scene(double r) {
  Scene2 sc{line_point_direction(Point3::Zero(), Eigen::Vector3d::UnitZ()), {}, {}};
  sc.s1 = {Point3(1, 0, 0), 1.0};
  sc.s2 = {Point3(-r, 0, 0), std::abs(r)};
  return sc;
}

// ---------------------------------------------------------------------------
// Tracing

Plane pencil_plane(const PluckerLine& ell, double theta) {
  const Eigen::Vector3d d = ell.unit_direction();
  Eigen::Index k = 0;
  d.cwiseAbs().minCoeff(&k);
  const Eigen::Vector3d n1 = d.cross(Eigen::Vector3d::Unit(k)).normalized();
  const Eigen::Vector3d n2 = d.cross(n1);
  return plane_from_normal(std::cos(theta) * n1 + std::sin(theta) * n2,
                           ell.nearest_point_to_origin());
}

namespace {

constexpr double kBranchThreshold = 0.2;
constexpr double kSampleMergeDistance = 1e-5;

TauSample eval_plane(const Scene2& sc, double theta) {
  TauSample smp;
  smp.theta = theta;
  TangentSet ts;
  try {
    ts = bitangents_in_plane(sc.s1, sc.s2, pencil_plane(sc.ell, theta));
  } catch (const Error& e) {
    if (e.code() != Errc::kIdenticalSections && e.code() != Errc::kDegenerateInput) throw;
    smp.degenerate = true;
    return smp;
  }
  for (const auto& tl : ts.lines) {
    if (!tl.is_real) continue;
    bool merged = false;
    for (auto& have : smp.lines) {
      if (line_distance(have.line.coords(), tl.line->coords()) < kSampleMergeDistance) {
        have.multiplicity += tl.multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) smp.lines.push_back({*tl.line, tl.multiplicity, -1});
  }
  return smp;
}

int real_mult(const TauSample& s) {
  int n = 0;
  for (const auto& l : s.lines) n += l.multiplicity;
  return n;
}

// Angles approaching the boundary where the real count changes.
void refine_transition(const Scene2& sc, double ta, int ca, double tb, int cb,
                       std::vector<double>& extra) {
  double lo = ta, hi = tb;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const TauSample s = eval_plane(sc, mid);
    if (!s.degenerate && real_mult(s) == ca) lo = mid;
    else hi = mid;
  }
  const bool real_on_a = ca > cb;
  const double edge = real_on_a ? lo : hi;
  const double dir = real_on_a ? -1.0 : 1.0;
  const double h = tb - ta;
  extra.push_back(edge);
  double step = h;
  for (int j = 0; j < 12; ++j) {
    step /= 4.0;
    extra.push_back(edge + dir * step);
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

void link_samples(const std::vector<TauSample>& ss, int a, int b, std::vector<TauLink>& out) {
  struct Cand {
    double dist;
    int i, j;
  };
  std::vector<Cand> cands;
  const auto& la = ss[a].lines;
  const auto& lb = ss[b].lines;
  for (int i = 0; i < static_cast<int>(la.size()); ++i) {
    for (int j = 0; j < static_cast<int>(lb.size()); ++j) {
      const double d = line_distance(la[i].line.coords(), lb[j].line.coords());
      if (d < kBranchThreshold) cands.push_back({d, i, j});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    if (x.dist != y.dist) return x.dist < y.dist;
    return std::make_pair(x.i, x.j) < std::make_pair(y.i, y.j);
  });
  std::vector<int> cap_a, cap_b;
  for (const auto& l : la) cap_a.push_back(l.multiplicity);
  for (const auto& l : lb) cap_b.push_back(l.multiplicity);
  for (const auto& c : cands) {
    if (cap_a[c.i] == 0 || cap_b[c.j] == 0) continue;
    --cap_a[c.i];
    --cap_b[c.j];
    out.push_back({a, c.i, b, c.j});
  }
}

}  // namespace

TauTrace trace_tau(const Scene2& sc, int n_planes) {
  if (n_planes < 2) throw Error(Errc::kValidationError, "need at least 2 planes");
  const double pi = std::acos(-1.0);
  std::vector<TauSample> grid;
  for (int k = 0; k < n_planes; ++k) grid.push_back(eval_plane(sc, k * pi / n_planes));

  std::vector<double> extra;
  for (int k = 0; k < n_planes; ++k) {
    const TauSample& a = grid[k];
    const TauSample& b = grid[(k + 1) % n_planes];
    if (a.degenerate || b.degenerate) continue;
    const int ca = real_mult(a), cb = real_mult(b);
    if (ca == cb) continue;
    const double tb = k + 1 == n_planes ? pi : b.theta;
    refine_transition(sc, a.theta, ca, tb, cb, extra);
  }

  TauTrace tr;
  tr.samples = std::move(grid);
  for (double th : extra) {
    double t = std::fmod(th, pi);
    if (t < 0) t += pi;
    tr.samples.push_back(eval_plane(sc, t));
  }
  std::stable_sort(tr.samples.begin(), tr.samples.end(),
                   [](const TauSample& x, const TauSample& y) { return x.theta < y.theta; });
  tr.samples.erase(std::unique(tr.samples.begin(), tr.samples.end(),
                               [](const TauSample& x, const TauSample& y) {
                                 return x.theta == y.theta;
                               }),
                   tr.samples.end());

  const int ns = static_cast<int>(tr.samples.size());
  for (int k = 0; k < ns; ++k) link_samples(tr.samples, k, (k + 1) % ns, tr.links);

  std::vector<int> offset(static_cast<size_t>(ns) + 1, 0);
  for (int k = 0; k < ns; ++k) offset[k + 1] = offset[k] + static_cast<int>(tr.samples[k].lines.size());
  UnionFind uf(offset[ns]);
  for (const auto& l : tr.links) uf.unite(offset[l.sample_a] + l.line_a, offset[l.sample_b] + l.line_b);
  std::vector<int> compact(static_cast<size_t>(offset[ns]), -1);
  int next = 0;
  for (int k = 0; k < ns; ++k) {
    for (int i = 0; i < static_cast<int>(tr.samples[k].lines.size()); ++i) {
      const int root = uf.find(offset[k] + i);
      if (compact[root] < 0) compact[root] = next++;
      tr.samples[k].lines[i].branch = compact[root];
    }
  }
  tr.branch_count = next;
  return tr;
}

int degree_estimate(const Scene2& sc, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(Errc::kValidationError, "trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Eigen::Vector3d d = sc.ell.unit_direction();
  const Point3 a0 = sc.ell.nearest_point_to_origin();
  const Point3 mid = 0.5 * (sc.s1.center + sc.s2.center);
  const Point3 a = a0 + d * d.dot(mid - a0);
  const double reach = std::max({1.0, (sc.s1.center - a).norm() + sc.s1.radius,
                                 (sc.s2.center - a).norm() + sc.s2.radius});
  int best = 0;
  for (int trial = 0; trial < trials; ++trial) {
    for (int attempt = 0; attempt < 32; ++attempt) {
      const Point3 q = a + d * (reach * uni(rng));
      Eigen::Vector3d m(gauss(rng), gauss(rng), gauss(rng));
      if (m.norm() < 1e-6) continue;
      m.normalize();
      const Eigen::Vector3d n = d.cross(m);
      if (n.norm() < 0.1) continue;
      try {
        const int in_plane =
            bitangents_in_plane(sc.s1, sc.s2, plane_from_normal(n.normalized(), q))
                .total_multiplicity();
        const int through = tangents_through_point(sc.s1, sc.s2, q).total_multiplicity();
        best = std::max(best, in_plane + through);
        break;
      } catch (const Error&) {
        continue;
      }
    }
  }
  return std::min(best, 8);
}

// ---------------------------------------------------------------------------
// Components

const char* component_kind_name(ComponentKind k) {
  switch (k) {
    case ComponentKind::kPencil: return "pencil";
    case ComponentKind::kConeRuling: return "cone_ruling";
    case ComponentKind::kPlaneCircleTangents: return "plane_circle_tangents";
    case ComponentKind::kHyperboloidRuling: return "hyperboloid_ruling";
    case ComponentKind::kRationalQuartic: return "rational_quartic";
  }
  return "unknown";
}

namespace {

constexpr double kLarge = 1e300;

Eigen::Vector3d any_perpendicular(const Eigen::Vector3d& u) {
  Eigen::Index k = 0;
  u.cwiseAbs().minCoeff(&k);
  return u.cross(Eigen::Vector3d::Unit(k)).normalized();
}

// Ruling invariants relative to an axis: distance, |cos| to the axis, twist.
struct RulingInvariants {
  double rho = 0.0, c = 0.0, chi = 0.0;
  bool ok = false;
};

RulingInvariants ruling_invariants(const PluckerLine& m, const Point3& a, const Eigen::Vector3d& u) {
  RulingInvariants ri;
  if (m.is_at_infinity()) return ri;
  const Eigen::Vector3d d = m.unit_direction();
  const Eigen::Vector3d w = d.cross(u);
  if (w.norm() < 1e-12) return ri;
  // Closest point of m to the axis.
  const Point3 p0 = m.nearest_point_to_origin();
  const Eigen::Vector3d diff = p0 - a;
  const double denom = 1.0 - std::pow(d.dot(u), 2);
  const double s = -(diff.dot(d) - diff.dot(u) * d.dot(u)) / denom;
  const Point3 p = p0 + s * d;
  Eigen::Vector3d r = p - a;
  r -= r.dot(u) * u;
  ri.rho = r.norm();
  ri.c = std::abs(d.dot(u));
  ri.chi = d.dot(u) * u.dot(r.cross(d));
  ri.ok = true;
  return ri;
}

// Generator of the ruling opposite to `gen` on its hyperboloid about the axis.
PluckerLine opposite_generator(const PluckerLine& gen, const Point3& a, const Eigen::Vector3d& u) {
  const Eigen::Vector3d d = gen.unit_direction();
  const Point3 p0 = gen.nearest_point_to_origin();
  const Eigen::Vector3d diff = p0 - a;
  const double denom = 1.0 - std::pow(d.dot(u), 2);
  const double s = -(diff.dot(d) - diff.dot(u) * d.dot(u)) / denom;
  const Point3 p = p0 + s * d;
  Eigen::Vector3d e = p - a;
  e -= e.dot(u) * u;
  const Eigen::Vector3d normal = u.cross(e.normalized());
  const Eigen::Vector3d d2 = d - 2.0 * d.dot(normal) * normal;
  return line_point_direction(p, d2);
}

PluckerLine rotate_about(const PluckerLine& l, const Point3& a, const Eigen::Vector3d& u, double phi) {
  const Eigen::Matrix3d rot = Eigen::AngleAxisd(phi, u).toRotationMatrix();
  const Point3 p = l.nearest_point_to_origin();
  return line_point_direction(a + rot * (p - a), rot * l.unit_direction());
}

Vec6 to_frame(const PluckerLine& m, const ComponentDescriptor& c) {
  const Point3 p = m.nearest_point_to_origin();
  const Eigen::Vector3d d = m.unit_direction();
  const Point3 pf = c.rotation.transpose() * (p - c.origin) / c.scale;
  const Eigen::Vector3d df = c.rotation.transpose() * d;
  return plucker_minors(affine(pf), at_infinity(df));
}

PluckerLine from_frame(const std::array<HomPoint4, 2>& rows, const ComponentDescriptor& c) {
  auto map = [&](const HomPoint4& x) {
    HomPoint4 y;
    y[0] = x[0];
    y.tail<3>() = c.rotation * (c.scale * x.tail<3>()) + x[0] * c.origin;
    return y;
  };
  return line_through_points(map(rows[0]), map(rows[1]));
}

double quartic_frame_distance(const Vec6& mf, double ratio, double theta) {
  const Vec6 p = quartic_parametrize(ratio, std::cos(theta), std::sin(theta));
  return line_distance(mf, p);
}

double quartic_frame_membership(const PluckerLine& m, const ComponentDescriptor& c) {
  if (m.is_at_infinity()) return kLarge;
  const Vec6 mf = to_frame(m, c);
  const double pi = std::acos(-1.0);
  constexpr int kGrid = 2048;
  int best = 0;
  double best_d = kLarge;
  for (int k = 0; k < kGrid; ++k) {
    const double d = quartic_frame_distance(mf, c.ratio, k * pi / kGrid);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  // Golden-section refinement on the bracketing cell pair.
  double lo = (best - 1) * pi / kGrid, hi = (best + 1) * pi / kGrid;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = quartic_frame_distance(mf, c.ratio, x1), f2 = quartic_frame_distance(mf, c.ratio, x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = quartic_frame_distance(mf, c.ratio, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = quartic_frame_distance(mf, c.ratio, x2);
    }
  }
  return std::min({best_d, f1, f2});
}

}  // namespace

Membership component_membership(const PluckerLine& m, const ComponentDescriptor& c) {
  Membership out;
  switch (c.kind) {
    case ComponentKind::kPencil:
      out.residual = std::max(line_through_point_residual(m, affine(c.point)),
                              line_in_plane_residual(m, c.plane));
      break;
    case ComponentKind::kConeRuling:
      if (m.is_at_infinity()) {
        out.residual = kLarge;
        break;
      }
      out.residual = line_through_point_residual(m, affine(c.apex)) +
                     std::abs(std::abs(m.unit_direction().dot(c.axis)) - std::cos(c.half_angle));
      break;
    case ComponentKind::kPlaneCircleTangents:
      if (m.is_at_infinity()) {
        out.residual = kLarge;
        break;
      }
      out.residual = line_in_plane_residual(m, c.plane) +
                     std::abs(point_line_distance(c.circle_center, m) - c.circle_radius) /
                         std::max(1.0, c.circle_radius);
      break;
    case ComponentKind::kHyperboloidRuling: {
      const PluckerLine ref = opposite_generator(c.generator, c.axis_point, c.axis);
      const RulingInvariants r0 = ruling_invariants(ref, c.axis_point, c.axis);
      const RulingInvariants rm = ruling_invariants(m, c.axis_point, c.axis);
      if (!rm.ok || !r0.ok) {
        out.residual = out.opposite_residual = kLarge;
        break;
      }
      const double base = std::abs(rm.rho - r0.rho) + std::abs(rm.c - r0.c);
      out.residual = base + std::abs(rm.chi - r0.chi);
      out.opposite_residual = base + std::abs(rm.chi + r0.chi);
      out.opposite_ruling = out.opposite_residual < out.residual;
      break;
    }
    case ComponentKind::kRationalQuartic:
      if (!c.symmetric) {
        out.residual = quartic_frame_membership(m, c);
      } else {
        if (m.is_at_infinity()) {
          out.residual = kLarge;
          break;
        }
        out.residual = std::max({std::abs(meet_form(m, c.scene.ell)),
                                 std::abs(m.unit_direction().dot(c.scene.ell.unit_direction())),
                                 std::abs(tangency_residual(m, c.scene.s1)),
                                 std::abs(tangency_residual(m, c.scene.s2))});
      }
      break;
  }
  return out;
}

std::vector<PluckerLine> sample_component(const ComponentDescriptor& c, int n,
                                          std::mt19937_64& rng) {
  const double pi = std::acos(-1.0);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * pi);
  std::vector<PluckerLine> out;
  int guard = 0;
  while (static_cast<int>(out.size()) < n && guard++ < 100 * n) {
    const double phi = ang(rng);
    switch (c.kind) {
      case ComponentKind::kPencil: {
        const PlaneChart ch = plane_chart(c.plane);
        out.push_back(line_point_direction(c.point, std::cos(phi) * ch.e1 + std::sin(phi) * ch.e2));
        break;
      }
      case ComponentKind::kConeRuling: {
        const Eigen::Vector3d e1 = any_perpendicular(c.axis), e2 = c.axis.cross(e1);
        const Eigen::Vector3d dir = std::cos(c.half_angle) * c.axis +
                                    std::sin(c.half_angle) * (std::cos(phi) * e1 + std::sin(phi) * e2);
        out.push_back(line_point_direction(c.apex, dir));
        break;
      }
      case ComponentKind::kPlaneCircleTangents: {
        const PlaneChart ch = plane_chart(c.plane);
        const Eigen::Vector3d radial = std::cos(phi) * ch.e1 + std::sin(phi) * ch.e2;
        out.push_back(line_point_direction(c.circle_center + c.circle_radius * radial,
                                           ch.normal.cross(radial)));
        break;
      }
      case ComponentKind::kHyperboloidRuling: {
        const PluckerLine ref = opposite_generator(c.generator, c.axis_point, c.axis);
        out.push_back(rotate_about(ref, c.axis_point, c.axis, phi));
        break;
      }
      case ComponentKind::kRationalQuartic: {
        if (!c.symmetric) {
          const double th = 0.5 * phi;
          out.push_back(from_frame(quartic_line_matrix(c.ratio, std::cos(th), std::sin(th)), c));
          break;
        }
        const Eigen::Vector3d d = c.scene.ell.unit_direction();
        const Point3 mid = 0.5 * (c.scene.s1.center + c.scene.s2.center);
        Eigen::Vector3d ex = c.scene.s1.center - mid;
        const double rho = ex.norm();
        ex /= rho;
        const Eigen::Vector3d ey = d.cross(ex);
        const double r = c.scene.s1.radius;
        const double h2 = r * r - rho * rho * std::pow(std::sin(phi), 2);
        if (h2 < 0.0) continue;
        const double z0 = (out.size() % 2 == 0 ? 1.0 : -1.0) * std::sqrt(h2);
        out.push_back(line_point_direction(mid + z0 * d, std::cos(phi) * ex + std::sin(phi) * ey));
        break;
      }
    }
  }
  return out;
}

ComponentReport detect_components(const Scene2& sc) {
  ComponentReport rep;
  const Sphere& s1 = sc.s1;
  const Sphere& s2 = sc.s2;
  const Eigen::Vector3d d = sc.ell.unit_direction();
  const Point3 a = sc.ell.nearest_point_to_origin();
  const double scale = std::max({1.0, s1.center.norm(), s2.center.norm(), s1.radius, s2.radius,
                                 a.norm()});
  const double tol = 1e-9 * scale;
  const Eigen::Vector3d c12 = s2.center - s1.center;
  const double dist = c12.norm();
  if (dist <= tol && std::abs(s1.radius - s2.radius) <= tol) {
    throw Error(Errc::kDegenerateScene, "the spheres coincide");
  }
  const bool on1 = point_line_distance(s1.center, sc.ell) <= tol;
  const bool on2 = point_line_distance(s2.center, sc.ell) <= tol;
  rep.centers_on_line = on1 && on2;
  if (dist <= tol) return rep;  // concentric: no real components recognized
  const Eigen::Vector3d u = c12 / dist;

  // Spheres tangent at a point.
  const bool external = std::abs(dist - (s1.radius + s2.radius)) <= tol;
  const bool internal = !external && std::abs(dist - std::abs(s1.radius - s2.radius)) <= tol;
  if (external || internal) {
    const Point3 p = (external || s1.radius > s2.radius) ? Point3(s1.center + s1.radius * u)
                                                          : Point3(s1.center - s1.radius * u);
    const Plane pi = plane_from_normal(u, p);
    const bool through = point_line_distance(p, sc.ell) <= tol;
    const bool in_plane = line_in_plane(sc.ell, pi);
    if (through || in_plane) {
      ComponentDescriptor cd;
      cd.kind = ComponentKind::kPencil;
      cd.point = p;
      cd.plane = pi;
      cd.multiplicity = through && in_plane ? 4 : 2;
      rep.components.push_back(cd);
    }
    if (through && in_plane && external && std::abs(s1.radius - s2.radius) > tol) {
      ComponentDescriptor cd;
      cd.kind = ComponentKind::kRationalQuartic;
      cd.origin = p;
      const Eigen::Vector3d ex = -u;  // toward the center of s1
      cd.rotation.col(0) = ex;
      cd.rotation.col(2) = d;
      cd.rotation.col(1) = d.cross(ex);
      cd.scale = s1.radius;
      cd.ratio = s2.radius / s1.radius;
      cd.scene = sc;
      rep.components.push_back(cd);
    }
  }

  // Cones with apex at a homothety center on ell.
  std::vector<Point3> apexes;
  if (std::abs(s2.radius - s1.radius) > tol) {
    apexes.push_back((s2.radius * s1.center - s1.radius * s2.center) / (s2.radius - s1.radius));
  }
  apexes.push_back((s2.radius * s1.center + s1.radius * s2.center) / (s1.radius + s2.radius));
  for (const Point3& ap : apexes) {
    if (point_line_distance(ap, sc.ell) > tol) continue;
    const double e1 = (ap - s1.center).norm(), e2 = (ap - s2.center).norm();
    if (e1 <= s1.radius + tol || e2 <= s2.radius + tol) continue;
    ComponentDescriptor cd;
    cd.kind = ComponentKind::kConeRuling;
    cd.apex = ap;
    cd.axis = u;
    cd.half_angle = std::asin(s1.radius / e1);
    rep.components.push_back(cd);
  }

  // Common circle in a plane through ell.
  {
    const double k = (s2.center.squaredNorm() - s1.center.squaredNorm() -
                      s2.radius * s2.radius + s1.radius * s1.radius) / 2.0;
    Plane rad;
    rad.a << -k, c12;
    const double h = (c12.dot(s1.center) - k) / dist;
    const double rsq = s1.radius * s1.radius - h * h;
    if (rsq > tol && line_in_plane(sc.ell, rad)) {
      ComponentDescriptor cd;
      cd.kind = ComponentKind::kPlaneCircleTangents;
      cd.plane = rad;
      cd.circle_center = s1.center - h * u;
      cd.circle_radius = std::sqrt(rsq);
      rep.components.push_back(cd);
    }
  }

  // Hyperboloid of revolution about the center line.
  {
    const bool tangent1 = std::abs(point_line_distance(s1.center, sc.ell) - s1.radius) <= tol;
    const bool tangent2 = std::abs(point_line_distance(s2.center, sc.ell) - s2.radius) <= tol;
    const PluckerLine m = line_point_direction(s1.center, u);
    const bool skew = std::abs(meet_form(m, sc.ell)) > tol && !lines_parallel(m, sc.ell);
    if (tangent1 && tangent2 && skew) {
      ComponentDescriptor cd;
      cd.kind = ComponentKind::kHyperboloidRuling;
      cd.axis_point = s1.center;
      cd.axis = u;
      cd.generator = sc.ell;
      rep.components.push_back(cd);
    }
  }

  // Spheres symmetric about ell.
  {
    const Point3 mid = 0.5 * (s1.center + s2.center);
    if (std::abs(s1.radius - s2.radius) <= tol && point_line_distance(mid, sc.ell) <= tol &&
        std::abs(u.dot(d)) <= 1e-9 && !on1 && !on2) {
      ComponentDescriptor cd;
      cd.kind = ComponentKind::kRationalQuartic;
      cd.symmetric = true;
      cd.scene = sc;
      rep.components.push_back(cd);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Proper transform degree

namespace {

HPoly2 gcd_all(const std::vector<HPoly2>& ps) {
  HPoly2 g;
  for (const auto& p : ps) g = hp_gcd(g, p);
  return g;
}

}  // namespace

ProperTransform proper_transform_degree(const RationalCurveOnSphere& gamma, const RatSphere& s,
                                        const RatLine& ell) {
  ProperTransform out;
  for (const auto& p : gamma.nu) {
    if (!p.is_zero()) out.curve_degree = std::max(out.curve_degree, p.degree());
  }
  for (const auto& p : gamma.nu) {
    if (!p.is_zero() && p.degree() != out.curve_degree) {
      throw Error(Errc::kValidationError, "parametrization is not homogeneous");
    }
  }
  if (!compose(sphere_form(s), gamma.nu).is_zero()) {
    throw Error(Errc::kNotOnSphere, "the curve does not lie on the sphere");
  }
  std::vector<HPoly2> psi;
  for (const auto& f : phi_forms(s, ell)) {
    HPoly2 p = compose(f, gamma.nu);
    if (!p.is_zero()) psi.push_back(p);
  }
  if (psi.empty()) throw Error(Errc::kSpecialLine, "every tangent-line form vanishes on the curve");
  const int d = out.curve_degree;
  out.degree = 2 * d - gcd_all(psi).degree();

  out.line_tangent = line_tangent_exact(s, ell);
  if (!out.line_tangent) {
    const auto lp = planes_through(ell);
    const auto pp = polar_planes(s, ell);
    const HPoly2 g1 = gcd_all({compose(lp[0], gamma.nu), compose(lp[1], gamma.nu)});
    const HPoly2 g2 = gcd_all({compose(pp[0], gamma.nu), compose(pp[1], gamma.nu)});
    if (g1.is_zero() || g2.is_zero()) throw Error(Errc::kSpecialLine, "curve degenerates to a point");
    out.mult_on_line = g1.degree();
    out.mult_on_polar = g2.degree();
    out.predicted = 2 * d - out.mult_on_line - out.mult_on_polar;
  } else {
    // Tangency point: foot of the center on ell.
    RatVec3 diff;
    for (int k = 0; k < 3; ++k) diff[k] = s.center[k] - ell.point[k];
    Rat dd(0), dc(0);
    for (int k = 0; k < 3; ++k) {
      dd += ell.direction[k] * ell.direction[k];
      dc += ell.direction[k] * diff[k];
    }
    std::array<Rat, 4> p{Rat(1), Rat(0), Rat(0), Rat(0)};
    for (int k = 0; k < 3; ++k) p[k + 1] = ell.point[k] + ell.direction[k] * dc / dd;
    std::vector<HPoly2> minors;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        HPoly2 m = p[j] * gamma.nu[i] - p[i] * gamma.nu[j];
        if (!m.is_zero()) minors.push_back(m);
      }
    }
    if (minors.empty()) throw Error(Errc::kSpecialLine, "curve degenerates to a point");
    out.mult_at_tangency = gcd_all(minors).degree();
    out.predicted = 2 * d - 2 * out.mult_at_tangency;
  }
  return out;
}

}  // namespace sphtan
