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


#include "sphtan/scene_io.h"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "sphtan/errors.h"

namespace sphtan {

using json = nlohmann::ordered_json;

PluckerLine SceneFile::line() const {
  if (line_by_points) return line_through_points(affine(line_a), affine(line_b));
  return line_point_direction(line_a, line_b);
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::kValidationError, what); }

Eigen::Vector3d vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) invalid(where + " must be an array of 3 numbers");
  Eigen::Vector3d v;
  for (int k = 0; k < 3; ++k) {
    if (!j[k].is_number()) invalid(where + " must be an array of 3 numbers");
    v[k] = j[k].get<double>();
    if (!std::isfinite(v[k])) invalid(where + " has a non-finite component");
  }
  return v;
}

json vec_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace

SceneFile parse_scene(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    auto pos = msg.find("; ");
    throw Error(Errc::kParseError, "at " + line_col(text, e.byte) + ": " +
                                       (pos == std::string::npos ? msg : msg.substr(pos + 2)));
  }
  if (!j.is_object()) invalid("scene must be a JSON object");
  SceneFile f;
  if (!j.contains("version") || !j["version"].is_number_integer()) invalid("version must be 1");
  f.version = j["version"].get<int>();
  if (f.version != 1) invalid("unsupported version " + std::to_string(f.version));

  if (!j.contains("line") || !j["line"].is_object()) invalid("line is required");
  const json& l = j["line"];
  if (l.contains("p1") || l.contains("p2")) {
    if (!l.contains("p1") || !l.contains("p2")) invalid("line needs both p1 and p2");
    f.line_by_points = true;
    f.line_a = vec3(l["p1"], "line.p1");
    f.line_b = vec3(l["p2"], "line.p2");
    const double scale = std::max({1.0, f.line_a.norm(), f.line_b.norm()});
    if ((f.line_a - f.line_b).norm() <= 1e-12 * scale) invalid("line points must be distinct");
  } else {
    if (!l.contains("point") || !l.contains("direction")) {
      invalid("line needs point and direction, or p1 and p2");
    }
    f.line_a = vec3(l["point"], "line.point");
    f.line_b = vec3(l["direction"], "line.direction");
    if (f.line_b.norm() == 0.0) invalid("line direction must be nonzero");
  }

  if (!j.contains("spheres") || !j["spheres"].is_array()) invalid("spheres must be an array");
  const json& ss = j["spheres"];
  if (ss.size() < 2 || ss.size() > 3) invalid("scene needs 2 or 3 spheres");
  for (std::size_t i = 0; i < ss.size(); ++i) {
    const std::string where = "spheres[" + std::to_string(i) + "]";
    if (!ss[i].is_object() || !ss[i].contains("center") || !ss[i].contains("radius")) {
      invalid(where + " needs center and radius");
    }
    Sphere s;
    s.center = vec3(ss[i]["center"], where + ".center");
    if (!ss[i]["radius"].is_number()) invalid(where + ".radius must be a number");
    s.radius = ss[i]["radius"].get<double>();
    if (!(s.radius > 0.0) || !std::isfinite(s.radius)) invalid(where + ".radius must be > 0");
    f.spheres.push_back(s);
  }
  if (j.contains("tol")) {
    if (!j["tol"].is_number() || !(j["tol"].get<double>() > 0.0)) invalid("tol must be > 0");
    f.tol = j["tol"].get<double>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) invalid("seed must be a nonnegative integer");
    f.seed = j["seed"].get<std::uint64_t>();
  }
  return f;
}

SceneFile load_scene(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str());
}

std::string serialize_scene(const SceneFile& f) {
  json j;
  j["version"] = f.version;
  if (f.line_by_points) {
    j["line"] = {{"p1", vec_json(f.line_a)}, {"p2", vec_json(f.line_b)}};
  } else {
    j["line"] = {{"point", vec_json(f.line_a)}, {"direction", vec_json(f.line_b)}};
  }
  j["spheres"] = json::array();
  for (const auto& s : f.spheres) {
    j["spheres"].push_back({{"center", vec_json(s.center)}, {"radius", s.radius}});
  }
  if (f.tol) j["tol"] = *f.tol;
  if (f.seed) j["seed"] = *f.seed;
  return j.dump(2) + "\n";
}

void save_scene(const SceneFile& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIoError, "cannot write " + path);
  out << serialize_scene(f);
  if (!out) throw Error(Errc::kIoError, "write failed for " + path);
}

Scene2 to_scene2(const SceneFile& f) {
  if (f.spheres.size() != 2) invalid("this command needs exactly 2 spheres");
  return {f.line(), f.spheres[0], f.spheres[1]};
}

Scene3 to_scene3(const SceneFile& f) {
  if (f.spheres.size() != 3) invalid("this command needs exactly 3 spheres");
  return {f.line(), {f.spheres[0], f.spheres[1], f.spheres[2]}};
}

// ---------------------------------------------------------------------------
// Meshes

std::optional<std::array<Point3, 2>> clip_line(const PluckerLine& m, const BBox& box) {
  if (m.is_at_infinity()) return std::nullopt;
  const Point3 a = m.nearest_point_to_origin();
  const Eigen::Vector3d d = m.unit_direction();
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    const double lo = box[k], hi = box[k + 3];
    if (std::abs(d[k]) < 1e-15) {
      if (a[k] < lo || a[k] > hi) return std::nullopt;
      continue;
    }
    double ta = (lo - a[k]) / d[k], tb = (hi - a[k]) / d[k];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
  }
  if (!(t1 - t0 > 1e-12)) return std::nullopt;
  return std::array<Point3, 2>{a + t0 * d, a + t1 * d};
}

int RuledMesh::vertex_count() const {
  int n = 0;
  for (const auto& g : groups) n += static_cast<int>(g.vertices.size());
  return n;
}

int RuledMesh::face_count() const {
  int n = 0;
  for (const auto& g : groups) n += static_cast<int>(g.faces.size());
  return n;
}

RuledMesh envelope_mesh(const std::vector<EnvelopeLine>& lines,
                        const std::vector<std::pair<int, int>>& links, const BBox& box) {
  RuledMesh mesh;
  std::map<int, int> group_slot;
  struct Placed {
    int group = -1;
    int first = -1;  // index of the first of two vertices in its group
    Eigen::Vector3d dir;
  };
  std::vector<Placed> placed(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto seg = clip_line(lines[i].line, box);
    if (!seg) continue;
    auto it = group_slot.find(lines[i].group);
    if (it == group_slot.end()) {
      it = group_slot.emplace(lines[i].group, static_cast<int>(mesh.groups.size())).first;
      mesh.groups.push_back({"branch_" + std::to_string(mesh.groups.size()), {}, {}});
    }
    auto& g = mesh.groups[it->second];
    placed[i] = {it->second, static_cast<int>(g.vertices.size()), (*seg)[1] - (*seg)[0]};
    g.vertices.push_back((*seg)[0]);
    g.vertices.push_back((*seg)[1]);
  }
  if (mesh.groups.empty()) throw Error(Errc::kEmptyMesh, "no line meets the bounding box");
  for (const auto& [i, j] : links) {
    const Placed& a = placed[i];
    const Placed& b = placed[j];
    if (a.group < 0 || b.group < 0 || a.group != b.group) continue;
    const bool flip = a.dir.dot(b.dir) < 0.0;
    const int b0 = flip ? b.first + 1 : b.first, b1 = flip ? b.first : b.first + 1;
    mesh.groups[a.group].faces.push_back({{a.first, a.first + 1, b1, b0}});
  }
  return mesh;
}

RuledMesh envelope_from_trace(const TauTrace& trace, const BBox& box,
                              const std::function<bool(const PluckerLine&)>& skip) {
  std::vector<EnvelopeLine> lines;
  std::vector<std::vector<int>> index(trace.samples.size());
  for (std::size_t k = 0; k < trace.samples.size(); ++k) {
    for (const auto& tl : trace.samples[k].lines) {
      if (skip && skip(tl.line)) {
        index[k].push_back(-1);
        continue;
      }
      index[k].push_back(static_cast<int>(lines.size()));
      lines.push_back({tl.line, tl.branch});
    }
  }
  std::vector<std::pair<int, int>> links;
  for (const auto& l : trace.links) {
    const int a = index[l.sample_a][l.line_a], b = index[l.sample_b][l.line_b];
    if (a >= 0 && b >= 0) links.push_back({a, b});
  }
  return envelope_mesh(lines, links, box);
}

std::string mesh_to_obj(const RuledMesh& mesh) {
  std::ostringstream os;
  os.precision(9);
  int base = 1;
  for (const auto& g : mesh.groups) {
    os << "g " << g.name << "\n";
    for (const auto& v : g.vertices) os << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
    for (const auto& f : g.faces) {
      os << "f " << base + f.v[0] << " " << base + f.v[1] << " " << base + f.v[2] << " "
         << base + f.v[3] << "\n";
    }
    base += static_cast<int>(g.vertices.size());
  }
  return os.str();
}

}  // namespace sphtan
