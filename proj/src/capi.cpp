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


#include "sphtan/sphtan.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sphtan/classify.h"
#include "sphtan/errors.h"
#include "sphtan/exactpoly.h"
#include "sphtan/plucker.h"
#include "sphtan/scene_io.h"
#include "sphtan/tangents.h"
#include "sphtan/taucurve.h"

struct st_scene {
  sphtan::SceneFile file;
};

struct st_report {
  using Record = std::vector<std::pair<std::string, std::string>>;
  std::vector<Record> records;
  std::string text;
};

namespace {

using namespace sphtan;

thread_local std::string g_error;
thread_local std::string g_error_name;

int fail(int status, const std::string& name, const std::string& what) {
  g_error = what;
  g_error_name = name;
  return status;
}

int status_of(Errc code) {
  switch (error_class(code)) {
    case ErrorClass::kValidation: return ST_ERR_VALIDATION;
    case ErrorClass::kDegenerate: return ST_ERR_DEGENERATE;
    case ErrorClass::kIo: return ST_ERR_IO;
  }
  return ST_ERR_INTERNAL;
}

// Runs body and converts exceptions to status codes.
template <class F>
int guarded(F&& body) {
  try {
    body();
    g_error.clear();
    g_error_name.clear();
    return ST_OK;
  } catch (const Error& e) {
    return fail(status_of(e.code()), errc_name(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ST_ERR_INTERNAL, "OutOfMemory", "out of memory");
  } catch (const std::exception& e) {
    return fail(ST_ERR_INTERNAL, "Internal", e.what());
  }
}

std::string num(double x) {
  if (std::abs(x) < 1e-13) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

template <class V>
std::string vec(const V& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += num(v[i]);
  }
  return s;
}

class Builder {
 public:
  Builder& record(const std::string& kind) {
    r_.records.push_back({{"record", kind}});
    return *this;
  }
  Builder& add(const std::string& key, const std::string& value) {
    r_.records.back().emplace_back(key, value);
    return *this;
  }
  Builder& add(const std::string& key, const char* value) { return add(key, std::string(value)); }
  Builder& add(const std::string& key, double v) { return add(key, num(v)); }
  Builder& add(const std::string& key, int v) { return add(key, std::to_string(v)); }
  Builder& add(const std::string& key, bool v) { return add(key, std::string(v ? "1" : "0")); }

  void finish(st_report** out) {
    if (!out) return;
    for (const auto& rec : r_.records) {
      for (std::size_t i = 0; i < rec.size(); ++i) {
        if (i) r_.text += ' ';
        r_.text += rec[i].first + "=" + rec[i].second;
      }
      r_.text += '\n';
    }
    *out = new st_report(std::move(r_));
  }

 private:
  st_report r_;
};

void require(const void* p, const char* what) {
  if (!p) throw Error(Errc::kValidationError, std::string(what) + " is null");
}

void add_tangent_set(Builder& b, const TangentSet& set) {
  b.record("tangents")
      .add("total_multiplicity", set.total_multiplicity())
      .add("real_count", set.real_count)
      .add("real_multiplicity", set.real_multiplicity());
  for (const auto& t : set.lines) {
    b.record("tangent").add("real", t.is_real).add("multiplicity", t.multiplicity);
    if (t.is_real) {
      b.add("plucker", vec(t.line->coords()));
    } else {
      b.add("plucker_re", vec(t.coords.real().eval())).add("plucker_im", vec(t.coords.imag().eval()));
    }
  }
}

void add_component(Builder& b, const ComponentDescriptor& c) {
  b.record("component").add("kind", component_kind_name(c.kind)).add("multiplicity", c.multiplicity);
  switch (c.kind) {
    case ComponentKind::kPencil:
      b.add("point", vec(c.point)).add("plane", vec(c.plane.a));
      break;
    case ComponentKind::kConeRuling:
      b.add("apex", vec(c.apex)).add("axis", vec(c.axis)).add("half_angle", c.half_angle);
      break;
    case ComponentKind::kPlaneCircleTangents:
      b.add("plane", vec(c.plane.a))
          .add("circle_center", vec(c.circle_center))
          .add("circle_radius", c.circle_radius);
      break;
    case ComponentKind::kHyperboloidRuling:
      b.add("axis_point", vec(c.axis_point))
          .add("axis", vec(c.axis))
          .add("generator", vec(c.generator.coords()));
      break;
    case ComponentKind::kRationalQuartic:
      b.add("symmetric", c.symmetric);
      if (!c.symmetric) {
        b.add("origin", vec(c.origin))
            .add("frame_x", vec(c.rotation.col(0).eval()))
            .add("frame_y", vec(c.rotation.col(1).eval()))
            .add("frame_z", vec(c.rotation.col(2).eval()))
            .add("scale", c.scale)
            .add("ratio", c.ratio);
      }
      break;
  }
}

// Deterministic (s, t) parameter pairs; the first three hit the coordinate
// points and the diagonal.
std::vector<std::pair<Rat, Rat>> quartic_params(int n) {
  std::vector<std::pair<Rat, Rat>> out;
  const std::pair<int, int> fixed[] = {{1, 0}, {0, 1}, {1, 1}};
  for (int k = 0; k < n; ++k) {
    if (k < 3) {
      out.emplace_back(Rat(fixed[k].first), Rat(fixed[k].second));
      continue;
    }
    Rat s(k * k - 3 * k + 1, k + 2), t(2 * k - 5, 3);
    s.canonicalize();
    t.canonicalize();
    out.emplace_back(s, t);
  }
  return out;
}

// --- curves on a sphere for the proper-transform degree ---------------------

struct LemmaInstance {
  std::string name;
  RatSphere sphere;
  RatLine line;
  RationalCurveOnSphere curve;
};

HPoly2 hp(std::vector<Rat> c) { return HPoly2(std::move(c)); }

// Inverse stereographic projection of the unit sphere from (0,0,1) applied to
// the plane curve (a, b, c): (a^2+b^2+c^2, 2ac, 2bc, a^2+b^2-c^2).
std::array<HPoly2, 4> inverse_stereo(const HPoly2& a, const HPoly2& b, const HPoly2& c) {
  const HPoly2 a2 = a * a, b2 = b * b, c2 = c * c;
  return {a2 + b2 + c2, Rat(2) * (a * c), Rat(2) * (b * c), a2 + b2 - c2};
}

std::vector<LemmaInstance> builtin_lemma_instances() {
  const RatSphere unit{{Rat(0), Rat(0), Rat(0)}, Rat(1)};
  const RatLine x_axis{{Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)}};
  std::vector<LemmaInstance> out;

  // Circle z = 3/5 on the unit sphere: a conic missing every special point.
  {
    const HPoly2 w = hp({1, 0, 1}), x = hp({Rat(4, 5), 0, Rat(-4, 5)}), y = hp({0, Rat(8, 5), 0}),
                 z = hp({Rat(3, 5), 0, Rat(3, 5)});
    out.push_back({"circle_avoiding", unit, x_axis, {{w, x, y, z}}});
  }
  // Circle through (1, 0, 0), one of the two points where the x-axis meets
  // the sphere.
  {
    const HPoly2 a = HPoly2::s() + HPoly2::t(), b = Rat(2) * HPoly2::s(), c = HPoly2::t();
    out.push_back({"circle_through_one", unit, x_axis, {inverse_stereo(a, b, c)}});
  }
  // Sphere of radius 1 centred at (0,1,0), tangent to the x-axis at the
  // origin. A circle through the origin, then a quartic through it.
  const RatSphere shifted{{Rat(0), Rat(1), Rat(0)}, Rat(1)};
  auto shift = [](std::array<HPoly2, 4> u) {
    // (w, x, y, z) of the unit sphere -> (w, x, w + z, y) on the shifted one.
    return std::array<HPoly2, 4>{u[0], u[1], u[0] + u[3], u[2]};
  };
  {
    const HPoly2 a = HPoly2::s(), b = Rat(2) * HPoly2::s(), c = HPoly2::t();
    out.push_back({"tangent_circle", shifted, x_axis, {shift(inverse_stereo(a, b, c))}});
  }
  {
    const HPoly2 a = HPoly2::s() * HPoly2::s(), b = HPoly2::s() * HPoly2::t(),
                 c = HPoly2::t() * HPoly2::t();
    out.push_back({"tangent_quartic", shifted, x_axis, {shift(inverse_stereo(a, b, c))}});
  }
  return out;
}

Rat json_rat(const nlohmann::json& v, const std::string& where) {
  if (v.is_number_integer()) return Rat(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rat(v.get<std::string>());
    } catch (const Error&) {
      throw Error(Errc::kValidationError, where + ": not a rational number");
    }
  }
  throw Error(Errc::kValidationError, where + ": expected an integer or a rational string");
}

RatVec3 json_vec3(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3)
    throw Error(Errc::kValidationError, where + ": expected 3 entries");
  return {json_rat(v[0], where), json_rat(v[1], where), json_rat(v[2], where)};
}

std::vector<LemmaInstance> load_lemma_instances(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::kParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("instances") || !doc["instances"].is_array())
    throw Error(Errc::kValidationError, "missing instances array");
  std::vector<LemmaInstance> out;
  int k = 0;
  for (const auto& item : doc["instances"]) {
    const std::string where = "instances[" + std::to_string(k++) + "]";
    if (!item.is_object() || !item.contains("sphere") || !item.contains("line") ||
        !item.contains("nu"))
      throw Error(Errc::kValidationError, where + ": needs sphere, line and nu");
    LemmaInstance inst;
    inst.name = item.value("name", where);
    const auto& sp = item["sphere"];
    inst.sphere.center = json_vec3(sp.at("center"), where + ".sphere.center");
    inst.sphere.radius_sq = json_rat(sp.at("radius_sq"), where + ".sphere.radius_sq");
    if (inst.sphere.radius_sq <= 0)
      throw Error(Errc::kValidationError, where + ".sphere.radius_sq must be positive");
    const auto& ln = item["line"];
    inst.line.point = json_vec3(ln.at("point"), where + ".line.point");
    inst.line.direction = json_vec3(ln.at("direction"), where + ".line.direction");
    const auto& nu = item["nu"];
    if (!nu.is_array() || nu.size() != 4)
      throw Error(Errc::kValidationError, where + ".nu: expected 4 coordinate polynomials");
    for (int i = 0; i < 4; ++i) {
      if (!nu[i].is_array() || nu[i].empty())
        throw Error(Errc::kValidationError, where + ".nu: empty coefficient list");
      std::vector<Rat> c;
      for (const auto& x : nu[i]) c.push_back(json_rat(x, where + ".nu"));
      inst.curve.nu[static_cast<std::size_t>(i)] = HPoly2(std::move(c));
    }
    out.push_back(std::move(inst));
  }
  if (out.empty()) throw Error(Errc::kValidationError, "instances array is empty");
  return out;
}

void run_lemma(const std::vector<LemmaInstance>& instances, int* all_agree, st_report** report) {
  Builder b;
  bool ok = true;
  for (const auto& inst : instances) {
    const ProperTransform pt = proper_transform_degree(inst.curve, inst.sphere, inst.line);
    const bool agree = pt.degree == pt.predicted;
    ok = ok && agree;
    b.record("lemma")
        .add("name", inst.name)
        .add("curve_degree", pt.curve_degree)
        .add("degree", pt.degree)
        .add("predicted", pt.predicted)
        .add("agree", agree)
        .add("line_tangent", pt.line_tangent)
        .add("mult_on_line", pt.mult_on_line)
        .add("mult_on_polar", pt.mult_on_polar)
        .add("mult_at_tangency", pt.mult_at_tangency);
  }
  b.record("summary").add("instances", static_cast<int>(instances.size())).add("all_agree", ok);
  if (all_agree) *all_agree = ok ? 1 : 0;
  b.finish(report);
}

Scene2 scene2_of(const st_scene* scene) {
  require(scene, "scene");
  return to_scene2(scene->file);
}

}  // namespace

extern "C" {

const char* st_version(void) { return "1.0.0"; }
const char* st_last_error(void) { return g_error.c_str(); }
const char* st_last_error_name(void) { return g_error_name.c_str(); }

int st_scene_load(const char* path, st_scene** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new st_scene{load_scene(path)};
  });
}

int st_scene_parse(const char* json_text, st_scene** out) {
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    *out = new st_scene{parse_scene(json_text)};
  });
}

int st_scene_create(const double line_point[3], const double line_direction[3],
                    const double* spheres, int n, st_scene** out) {
  return guarded([&] {
    require(line_point, "line_point");
    require(line_direction, "line_direction");
    require(spheres, "spheres");
    require(out, "out");
    if (n != 2 && n != 3) throw Error(Errc::kValidationError, "a scene holds 2 or 3 spheres");
    SceneFile f;
    f.line_a = Eigen::Vector3d(line_point[0], line_point[1], line_point[2]);
    f.line_b = Eigen::Vector3d(line_direction[0], line_direction[1], line_direction[2]);
    if (!(f.line_b.norm() > 0.0)) throw Error(Errc::kValidationError, "line direction is zero");
    for (int i = 0; i < n; ++i) {
      const double* s = spheres + 4 * i;
      if (!(s[3] > 0.0)) throw Error(Errc::kValidationError, "sphere radius must be positive");
      f.spheres.push_back({Point3(s[0], s[1], s[2]), s[3]});
    }
    // Round through the parser so both construction paths validate alike.
    *out = new st_scene{parse_scene(serialize_scene(f))};
  });
}

int st_scene_save(const st_scene* scene, const char* path) {
  return guarded([&] {
    require(scene, "scene");
    require(path, "path");
    save_scene(scene->file, path);
  });
}

int st_scene_serialize(const st_scene* scene, char** out) {
  return guarded([&] {
    require(scene, "scene");
    require(out, "out");
    const std::string s = serialize_scene(scene->file);
    char* buf = new char[s.size() + 1];
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
  });
}

void st_string_free(char* s) { delete[] s; }
void st_scene_free(st_scene* scene) { delete scene; }

int st_scene_sphere_count(const st_scene* scene) {
  return scene ? static_cast<int>(scene->file.spheres.size()) : 0;
}

int st_scene_line(const st_scene* scene, double point[3], double direction[3]) {
  return guarded([&] {
    require(scene, "scene");
    require(point, "point");
    require(direction, "direction");
    const SceneFile& f = scene->file;
    const Eigen::Vector3d d = f.line_by_points ? Eigen::Vector3d(f.line_b - f.line_a) : f.line_b;
    for (int i = 0; i < 3; ++i) {
      point[i] = f.line_a[i];
      direction[i] = d[i];
    }
  });
}

int st_scene_tol(const st_scene* scene, double* tol) {
  if (!scene || !scene->file.tol) return 0;
  if (tol) *tol = *scene->file.tol;
  return 1;
}

int st_scene_seed(const st_scene* scene, uint64_t* seed) {
  if (!scene || !scene->file.seed) return 0;
  if (seed) *seed = *scene->file.seed;
  return 1;
}

int st_classify(const st_scene* scene, double tol, int projective, unsigned* case_mask,
                st_report** report) {
  return guarded([&] {
    require(scene, "scene");
    if (!(tol > 0.0)) throw Error(Errc::kValidationError, "tol must be positive");
    const Scene3 s3 = to_scene3(scene->file);
    const ClassificationResult r = classify(s3, {tol, projective != 0});
    unsigned mask = 0;
    std::string names;
    for (Case c : r.cases) {
      mask |= 1u << static_cast<unsigned>(c);
      if (!names.empty()) names += ",";
      names += case_name(c);
    }
    Builder b;
    b.record("classify").add("cases", names.empty() ? std::string("none") : names).add("tol", tol);
    if (r.case_i && (r.has(Case::kIa) || r.has(Case::kIb))) {
      b.record("witness")
          .add("case", std::string(r.has(Case::kIb) ? "Ib" : "Ia"))
          .add("point", vec(r.case_i->point))
          .add("normal", vec(r.case_i->normal))
          .add("through_point", r.case_i->through_point)
          .add("in_plane", r.case_i->in_plane)
          .add("residual", r.case_i->residual);
    }
    if (r.case_ii && r.has(Case::kII)) {
      b.record("witness")
          .add("case", std::string("II"))
          .add("apex", vec(r.case_ii->apex))
          .add("axis", vec(r.case_ii->axis))
          .add("half_angle", r.case_ii->half_angle)
          .add("cylinder", r.case_ii->cylinder)
          .add("residual", r.case_ii->residual);
    }
    if (r.case_iii && r.has(Case::kIII)) {
      b.record("witness")
          .add("case", std::string("III"))
          .add("circle_center", vec(r.case_iii->circle_center))
          .add("normal", vec(r.case_iii->normal))
          .add("circle_radius", r.case_iii->circle_radius)
          .add("residual", r.case_iii->residual);
    }
    if (r.case_iv && r.has(Case::kIV)) {
      b.record("witness")
          .add("case", std::string("IV"))
          .add("axis_point", vec(r.case_iv->axis_point))
          .add("axis", vec(r.case_iv->axis))
          .add("residual", r.case_iv->residual);
    }
    if (case_mask) *case_mask = mask;
    b.finish(report);
  });
}

int st_tangents_plane(const st_scene* scene, const double plane[4], int* total_multiplicity,
                      st_report** report) {
  return guarded([&] {
    require(plane, "plane");
    const Scene2 s = scene2_of(scene);
    const Plane pl{Eigen::Vector4d(plane[0], plane[1], plane[2], plane[3])};
    const TangentSet set = bitangents_in_plane(s.s1, s.s2, pl);
    Builder b;
    add_tangent_set(b, set);
    if (total_multiplicity) *total_multiplicity = set.total_multiplicity();
    b.finish(report);
  });
}

int st_tangents_pencil(const st_scene* scene, double theta, int* total_multiplicity,
                       st_report** report) {
  return guarded([&] {
    const Scene2 s = scene2_of(scene);
    const Plane pl = pencil_plane(s.ell, theta);
    const TangentSet set = bitangents_in_plane(s.s1, s.s2, pl);
    Builder b;
    b.record("plane").add("theta", theta).add("coefficients", vec(pl.a));
    add_tangent_set(b, set);
    if (total_multiplicity) *total_multiplicity = set.total_multiplicity();
    b.finish(report);
  });
}

int st_tangents_point(const st_scene* scene, const double point[3], int* total_multiplicity,
                      st_report** report) {
  return guarded([&] {
    require(point, "point");
    const Scene2 s = scene2_of(scene);
    const TangentSet set = tangents_through_point(s.s1, s.s2, Point3(point[0], point[1], point[2]));
    Builder b;
    add_tangent_set(b, set);
    if (total_multiplicity) *total_multiplicity = set.total_multiplicity();
    b.finish(report);
  });
}

int st_tau_trace(const st_scene* scene, int planes, int* branch_count, st_report** report) {
  return guarded([&] {
    if (planes < 2) throw Error(Errc::kValidationError, "planes must be at least 2");
    const TauTrace tr = trace_tau(scene2_of(scene), planes);
    Builder b;
    int lines = 0, degenerate = 0;
    for (const auto& smp : tr.samples) {
      lines += static_cast<int>(smp.lines.size());
      degenerate += smp.degenerate ? 1 : 0;
    }
    b.record("tau_trace")
        .add("planes", planes)
        .add("samples", static_cast<int>(tr.samples.size()))
        .add("lines", lines)
        .add("degenerate_samples", degenerate)
        .add("branches", tr.branch_count);
    for (const auto& smp : tr.samples) {
      for (const auto& tl : smp.lines) {
        b.record("tau_line")
            .add("theta", smp.theta)
            .add("branch", tl.branch)
            .add("multiplicity", tl.multiplicity)
            .add("plucker", vec(tl.line.coords()));
      }
    }
    if (branch_count) *branch_count = tr.branch_count;
    b.finish(report);
  });
}

int st_tau_degree(const st_scene* scene, int trials, uint64_t seed, int* degree,
                  st_report** report) {
  return guarded([&] {
    if (trials < 1) throw Error(Errc::kValidationError, "trials must be at least 1");
    const int d = degree_estimate(scene2_of(scene), trials, seed);
    Builder b;
    b.record("tau_degree")
        .add("degree", d)
        .add("trials", trials)
        .add("seed", std::to_string(seed));
    if (degree) *degree = d;
    b.finish(report);
  });
}

int st_detect_components(const st_scene* scene, int* count, st_report** report) {
  return guarded([&] {
    const ComponentReport cr = detect_components(scene2_of(scene));
    Builder b;
    b.record("components")
        .add("count", static_cast<int>(cr.components.size()))
        .add("centers_on_line", cr.centers_on_line);
    for (const auto& c : cr.components) add_component(b, c);
    if (count) *count = static_cast<int>(cr.components.size());
    b.finish(report);
  });
}

int st_envelope(const st_scene* scene, int planes, const double bbox[6], const char* obj_path,
                int* groups, st_report** report) {
  return guarded([&] {
    require(bbox, "bbox");
    if (planes < 2) throw Error(Errc::kValidationError, "planes must be at least 2");
    BBox box;
    for (int i = 0; i < 6; ++i) box[static_cast<std::size_t>(i)] = bbox[i];
    for (int i = 0; i < 3; ++i) {
      if (!(box[static_cast<std::size_t>(i)] < box[static_cast<std::size_t>(i + 3)]))
        throw Error(Errc::kValidationError, "bbox minimum must be below maximum");
    }
    const Scene2 s = scene2_of(scene);
    const ComponentReport cr = detect_components(s);
    std::vector<ComponentDescriptor> pencils;
    for (const auto& c : cr.components) {
      if (c.kind == ComponentKind::kPencil) pencils.push_back(c);
    }
    auto in_pencil = [&](const PluckerLine& m) {
      for (const auto& c : pencils) {
        if (component_membership(m, c).residual <= 1e-7) return true;
      }
      return false;
    };
    const TauTrace tr = trace_tau(s, planes);
    const RuledMesh mesh = envelope_from_trace(tr, box, in_pencil);

    int min_count = -1, max_count = 0;
    for (const auto& smp : tr.samples) {
      if (smp.degenerate) continue;
      int n = 0;
      for (const auto& tl : smp.lines) n += in_pencil(tl.line) ? 0 : 1;
      min_count = min_count < 0 ? n : std::min(min_count, n);
      max_count = std::max(max_count, n);
    }
    if (obj_path) {
      std::ofstream out(obj_path, std::ios::binary);
      if (!out) throw Error(Errc::kIoError, std::string("cannot write ") + obj_path);
      out << mesh_to_obj(mesh);
      if (!out) throw Error(Errc::kIoError, std::string("write failed: ") + obj_path);
    }
    Builder b;
    b.record("envelope")
        .add("groups", static_cast<int>(mesh.groups.size()))
        .add("vertices", mesh.vertex_count())
        .add("faces", mesh.face_count())
        .add("pencil_components", static_cast<int>(pencils.size()))
        .add("lines_per_plane_min", std::max(min_count, 0))
        .add("lines_per_plane_max", max_count);
    if (obj_path) b.add("out", std::string(obj_path));
    for (const auto& g : mesh.groups) {
      b.record("group")
          .add("name", g.name)
          .add("vertices", static_cast<int>(g.vertices.size()))
          .add("faces", static_cast<int>(g.faces.size()));
    }
    if (groups) *groups = static_cast<int>(mesh.groups.size());
    b.finish(report);
  });
}

int st_verify_quartic(const char* r_text, int samples, int* all_hold, st_report** report) {
  return guarded([&] {
    require(r_text, "r");
    if (samples < 1) throw Error(Errc::kValidationError, "samples must be at least 1");
    Rat r;
    try {
      r = parse_rat(r_text);
    } catch (const Error&) {
      throw Error(Errc::kValidationError, std::string("not a rational number: ") + r_text);
    }
    if (r <= 0 || r == 1) throw Error(Errc::kForbiddenRatio, "r must be positive and not 1");
    const bool exact = rat_sqrt(r).has_value();
    const auto params = quartic_params(samples);
    bool ok = true;
    int failures = 0;
    double worst = 0.0;
    if (exact) {
      for (const auto& [s, t] : params) {
        const bool zero = quartic_identities(r, quartic_parametrize(r, s, t)).all_zero();
        failures += zero ? 0 : 1;
      }
    } else {
      const double rd = r.get_d();
      const Sphere s1{Point3(1, 0, 0), 1.0}, s2{Point3(-rd, 0, 0), rd};
      for (const auto& [s, t] : params) {
        const Vec6 p = quartic_parametrize(rd, s.get_d(), t.get_d());
        const PluckerLine m = PluckerLine::from_coords(p);
        const double e = std::max({std::abs(m.relation_residual()), std::abs(m[3]),
                                   std::abs(tangency_residual(m, s1)),
                                   std::abs(tangency_residual(m, s2))});
        worst = std::max(worst, e);
        failures += e <= 1e-10 ? 0 : 1;
      }
    }
    ok = failures == 0;
    Builder b;
    b.record("verify_quartic")
        .add("r", rat_to_string(r))
        .add("mode", std::string(exact ? "exact" : "numeric"))
        .add("samples", samples)
        .add("failures", failures);
    if (!exact) b.add("max_residual", worst);
    b.record("result").add(
        "message", std::string(ok ? (exact ? "all identities exact" : "all identities hold numerically")
                                  : "identities violated"));
    if (all_hold) *all_hold = ok ? 1 : 0;
    b.finish(report);
  });
}

int st_lemma_degree_builtin(int* all_agree, st_report** report) {
  return guarded([&] { run_lemma(builtin_lemma_instances(), all_agree, report); });
}

int st_lemma_degree_file(const char* path, int* all_agree, st_report** report) {
  return guarded([&] {
    require(path, "path");
    run_lemma(load_lemma_instances(path), all_agree, report);
  });
}

size_t st_report_record_count(const st_report* report) {
  return report ? report->records.size() : 0;
}

size_t st_report_field_count(const st_report* report, size_t record) {
  if (!report || record >= report->records.size()) return 0;
  return report->records[record].size();
}

const char* st_report_key(const st_report* report, size_t record, size_t field) {
  if (field >= st_report_field_count(report, record)) return nullptr;
  return report->records[record][field].first.c_str();
}

const char* st_report_value(const st_report* report, size_t record, size_t field) {
  if (field >= st_report_field_count(report, record)) return nullptr;
  return report->records[record][field].second.c_str();
}

const char* st_report_get(const st_report* report, size_t record, const char* key) {
  if (!key) return nullptr;
  for (size_t i = 0; i < st_report_field_count(report, record); ++i) {
    if (report->records[record][i].first == key) return report->records[record][i].second.c_str();
  }
  return nullptr;
}

const char* st_report_text(const st_report* report) { return report ? report->text.c_str() : ""; }

void st_report_free(st_report* report) { delete report; }

}  // extern "C"
