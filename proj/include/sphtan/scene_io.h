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


// Scene files (versioned JSON) and ruled-surface meshes in Wavefront OBJ.
//
// Scene file fields:
//   {"version": 1,
//    "line": {"point": [x,y,z], "direction": [x,y,z]}   or {"p1": [..], "p2": [..]},
//    "spheres": [{"center": [x,y,z], "radius": r}, ...],   // 2 or 3 spheres
//    "tol": 1e-6, "seed": 7}                              // optional

#ifndef SPHTAN_SCENE_IO_H_
#define SPHTAN_SCENE_IO_H_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sphtan/classify.h"
#include "sphtan/plucker.h"
#include "sphtan/taucurve.h"

namespace sphtan {

struct SceneFile {
  int version = 1;
  bool line_by_points = false;
  // point/direction, or p1/p2 when line_by_points.
  Eigen::Vector3d line_a = Eigen::Vector3d::Zero();
  Eigen::Vector3d line_b = Eigen::Vector3d::UnitX();
  std::vector<Sphere> spheres;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;

  PluckerLine line() const;
};

// Throws ParseError (with line:column) or ValidationError.
SceneFile parse_scene(const std::string& text);
// Adds IoError for unreadable files.
SceneFile load_scene(const std::string& path);
std::string serialize_scene(const SceneFile& scene);
void save_scene(const SceneFile& scene, const std::string& path);

// Throw ValidationError when the sphere count does not fit.
Scene2 to_scene2(const SceneFile& f);
Scene3 to_scene3(const SceneFile& f);

using BBox = std::array<double, 6>;  // xmin ymin zmin xmax ymax zmax

// Parametric clip of an infinite line against an axis-aligned box.
std::optional<std::array<Point3, 2>> clip_line(const PluckerLine& m, const BBox& box);

struct RuledMesh {
  struct Face {
    std::array<int, 4> v;  // 0-based vertex indices
  };
  struct Group {
    std::string name;
    std::vector<Point3> vertices;
    std::vector<Face> faces;  // indices into this group's vertices
  };
  std::vector<Group> groups;

  int vertex_count() const;
  int face_count() const;
};

struct EnvelopeLine {
  PluckerLine line;
  int group = 0;
};

// Lines are clipped to the box (lines missing it are dropped); each link
// (i, j) between lines of the same group becomes a quad. Throws EmptyMesh if
// no line meets the box.
RuledMesh envelope_mesh(const std::vector<EnvelopeLine>& lines,
                        const std::vector<std::pair<int, int>>& links, const BBox& box);

// Mesh of a traced curve; `skip` drops lines (e.g. a pencil component).
RuledMesh envelope_from_trace(const TauTrace& trace, const BBox& box,
                              const std::function<bool(const PluckerLine&)>& skip = {});

std::string mesh_to_obj(const RuledMesh& mesh);

}  // namespace sphtan

#endif  // SPHTAN_SCENE_IO_H_
