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


// Command-line front end over the C interface. Results go to stdout as one
// key=value record per line; errors go to stderr.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sphtan/sphtan.h"

namespace {

constexpr int kExitValidation = 2;

int report_error(int status) {
  std::cerr << "error: " << st_last_error() << "\n";
  switch (status) {
    case ST_ERR_VALIDATION:
    case ST_ERR_IO:
      return kExitValidation;
    case ST_ERR_DEGENERATE:
      return 3;
    default:
      return 1;
  }
}

// Owns a scene handle for the duration of one command.
struct SceneHandle {
  st_scene* p = nullptr;
  ~SceneHandle() { st_scene_free(p); }
};

struct ReportHandle {
  st_report* p = nullptr;
  ~ReportHandle() { st_report_free(p); }
};

int emit(int status, const ReportHandle& rep) {
  if (status != ST_OK) return report_error(status);
  std::cout << st_report_text(rep.p);
  return 0;
}

// Loads the scene named on the command line, then runs op on it.
int with_scene(const std::string& path, const std::function<int(st_scene*)>& op) {
  SceneHandle scene;
  if (int st = st_scene_load(path.c_str(), &scene.p); st != ST_OK) {
    std::cerr << "error: " << path << ": " << st_last_error() << "\n";
    return st == ST_ERR_DEGENERATE ? 3 : kExitValidation;
  }
  return op(scene.p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lines tangent to spheres: tangent solvers, the tau curve and case classification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(st_version()));

  std::string scene_path, out_path, r_text, lemma_path;
  double tol = 0.0;
  std::uint64_t seed = 0;
  int trials = 20, planes = 180, samples = 25;
  bool projective = false;
  std::vector<double> bbox{-4, -4, -4, 4, 4, 4};
  std::vector<double> plane_coeffs, point_coords;
  std::optional<double> theta, at;

  auto add_scene = [&](CLI::App* sub) {
    sub->add_option("scene", scene_path, "Scene file (JSON)")->required()->check(CLI::ExistingFile);
  };

  auto* classify = app.add_subcommand("classify", "Classify a line and three spheres");
  add_scene(classify);
  auto* tol_opt = classify->add_option("--tol", tol, "Tolerance on the normalized scene")
                      ->check(CLI::PositiveNumber);
  classify->add_flag("--projective", projective, "Accept cylinders as cones with apex at infinity");

  auto* tplane = app.add_subcommand("tangents-plane", "Common tangents to two spheres in a plane");
  add_scene(tplane);
  auto* plane_opt = tplane->add_option("--plane", plane_coeffs, "Plane a0 a1 a2 a3: a0 + a1 x + a2 y + a3 z = 0")
                        ->expected(4);
  auto* theta_opt = tplane->add_option("--theta", theta, "Plane of the pencil through the scene line");
  plane_opt->excludes(theta_opt);

  auto* tpoint = app.add_subcommand("tangents-point", "Common tangents through a point");
  add_scene(tpoint);
  auto* point_opt = tpoint->add_option("--point", point_coords, "Point x y z")->expected(3);
  auto* at_opt = tpoint->add_option("--at", at, "Point p + t d on the scene line");
  point_opt->excludes(at_opt);

  auto* trace = app.add_subcommand("tau-trace", "Sample the curve of tangents meeting the line");
  add_scene(trace);
  trace->add_option("--planes", planes, "Number of pencil planes over [0, pi)")->check(CLI::Range(2, 1000000));
  trace->add_option("--out", out_path, "Write all records to this file");

  auto* degree = app.add_subcommand("tau-degree", "Estimate the degree of the tangent curve");
  add_scene(degree);
  degree->add_option("--trials", trials, "Random linear sections")->check(CLI::Range(1, 1000000));
  auto* seed_opt = degree->add_option("--seed", seed, "RNG seed (defaults to the scene's)");

  auto* detect = app.add_subcommand("detect-components", "Report known components of the tangent curve");
  add_scene(detect);

  auto* envelope = app.add_subcommand("envelope", "Write the ruled envelope of the tangent curve as OBJ");
  add_scene(envelope);
  envelope->add_option("--planes", planes, "Number of pencil planes over [0, pi)")->check(CLI::Range(2, 1000000));
  envelope->add_option("--bbox", bbox, "xmin ymin zmin xmax ymax zmax")->expected(6);
  envelope->add_option("--out", out_path, "OBJ output path");

  auto* quartic = app.add_subcommand("verify-quartic", "Check the rational quartic family");
  quartic->add_option("--r", r_text, "Radius ratio as p/q")->required();
  quartic->add_option("--samples", samples, "Number of (s, t) pairs")->check(CLI::Range(1, 1000000));

  auto* lemma = app.add_subcommand("lemma-degree", "Degree of the proper transform of curves on a sphere");
  lemma->add_option("file", lemma_path, "Instances file; built-in instances when omitted")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  ReportHandle rep;

  if (*classify) {
    return with_scene(scene_path, [&](st_scene* s) {
      double t = 1e-6;
      if (*tol_opt) {
        t = tol;
      } else {
        st_scene_tol(s, &t);
      }
      return emit(st_classify(s, t, projective ? 1 : 0, nullptr, &rep.p), rep);
    });
  }
  if (*tplane) {
    return with_scene(scene_path, [&](st_scene* s) {
      if (theta) return emit(st_tangents_pencil(s, *theta, nullptr, &rep.p), rep);
      if (plane_coeffs.size() != 4) {
        std::cerr << "error: one of --plane or --theta is required\n";
        return kExitValidation;
      }
      return emit(st_tangents_plane(s, plane_coeffs.data(), nullptr, &rep.p), rep);
    });
  }
  if (*tpoint) {
    return with_scene(scene_path, [&](st_scene* s) {
      double p[3], d[3];
      if (at) {
        if (int st = st_scene_line(s, p, d); st != ST_OK) return report_error(st);
        for (int i = 0; i < 3; ++i) p[i] += *at * d[i];
      } else if (point_coords.size() == 3) {
        for (int i = 0; i < 3; ++i) p[i] = point_coords[static_cast<size_t>(i)];
      } else {
        std::cerr << "error: one of --point or --at is required\n";
        return kExitValidation;
      }
      return emit(st_tangents_point(s, p, nullptr, &rep.p), rep);
    });
  }
  if (*trace) {
    return with_scene(scene_path, [&](st_scene* s) {
      int st = st_tau_trace(s, planes, nullptr, &rep.p);
      if (st != ST_OK) return report_error(st);
      if (out_path.empty()) {
        std::cout << st_report_text(rep.p);
        return 0;
      }
      std::ofstream out(out_path);
      out << st_report_text(rep.p);
      if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitValidation;
      }
      // Summary record only; the per-line records went to the file.
      const std::string text = st_report_text(rep.p);
      std::cout << text.substr(0, text.find('\n') + 1) << "record=output path=" << out_path << "\n";
      return 0;
    });
  }
  if (*degree) {
    return with_scene(scene_path, [&](st_scene* s) {
      std::uint64_t sd = 1;
      if (*seed_opt) {
        sd = seed;
      } else {
        st_scene_seed(s, &sd);
      }
      return emit(st_tau_degree(s, trials, sd, nullptr, &rep.p), rep);
    });
  }
  if (*detect) {
    return with_scene(scene_path,
                      [&](st_scene* s) { return emit(st_detect_components(s, nullptr, &rep.p), rep); });
  }
  if (*envelope) {
    return with_scene(scene_path, [&](st_scene* s) {
      return emit(st_envelope(s, planes, bbox.data(), out_path.empty() ? nullptr : out_path.c_str(),
                              nullptr, &rep.p),
                  rep);
    });
  }
  if (*quartic) {
    int ok = 0;
    int st = st_verify_quartic(r_text.c_str(), samples, &ok, &rep.p);
    if (st != ST_OK) return report_error(st);
    std::cout << st_report_text(rep.p);
    return ok ? 0 : 1;
  }
  if (*lemma) {
    int ok = 0;
    int st = lemma_path.empty() ? st_lemma_degree_builtin(&ok, &rep.p)
                                : st_lemma_degree_file(lemma_path.c_str(), &ok, &rep.p);
    if (st != ST_OK) return report_error(st);
    std::cout << st_report_text(rep.p);
    return ok ? 0 : 1;
  }
  return kExitValidation;
}
