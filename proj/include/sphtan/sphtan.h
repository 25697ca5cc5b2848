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


/* C interface to the sphtan library.
 *
 * Every fallible call returns an st_status. On failure the thread-local
 * st_last_error() / st_last_error_name() describe the cause. Results are
 * returned as reports: ordered records of key=value fields, also available as
 * text with one record per line. Handles are owned by the caller and released
 * with the matching *_free function; NULL is accepted by every *_free. */

#ifndef SPHTAN_SPHTAN_H_
#define SPHTAN_SPHTAN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ST_API __declspec(dllexport)
#else
#define ST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  ST_OK = 0,
  ST_ERR_INTERNAL = 1,
  ST_ERR_VALIDATION = 2, /* bad input: parse errors, invalid values */
  ST_ERR_DEGENERATE = 3, /* degenerate geometry for the requested operation */
  ST_ERR_IO = 4
} st_status;

enum {
  ST_CASE_IA = 1u << 0,
  ST_CASE_IB = 1u << 1,
  ST_CASE_II = 1u << 2,
  ST_CASE_III = 1u << 3,
  ST_CASE_IV = 1u << 4
};

typedef struct st_scene st_scene;
typedef struct st_report st_report;

ST_API const char* st_version(void);
ST_API const char* st_last_error(void);
/* Name of the specific failure, e.g. "IdenticalSections"; "" after success. */
ST_API const char* st_last_error_name(void);

/* Scenes ---------------------------------------------------------------- */

ST_API int st_scene_load(const char* path, st_scene** out);
ST_API int st_scene_parse(const char* json_text, st_scene** out);
/* spheres holds n records of (cx, cy, cz, radius); n is 2 or 3. */
ST_API int st_scene_create(const double line_point[3], const double line_direction[3],
                           const double* spheres, int n, st_scene** out);
ST_API int st_scene_save(const st_scene* scene, const char* path);
/* Serialized JSON; release with st_string_free. */
ST_API int st_scene_serialize(const st_scene* scene, char** out);
ST_API void st_string_free(char* s);
ST_API void st_scene_free(st_scene* scene);

ST_API int st_scene_sphere_count(const st_scene* scene);
/* An affine point of the scene line and its direction. */
ST_API int st_scene_line(const st_scene* scene, double point[3], double direction[3]);
/* Returns 1 and writes the value when the scene file carried one. */
ST_API int st_scene_tol(const st_scene* scene, double* tol);
ST_API int st_scene_seed(const st_scene* scene, uint64_t* seed);

/* Operations. Output pointers other than the scene may be NULL. ---------- */

ST_API int st_classify(const st_scene* scene, double tol, int projective, unsigned* case_mask,
                       st_report** report);
/* plane: a0 w + a1 x + a2 y + a3 z = 0. */
ST_API int st_tangents_plane(const st_scene* scene, const double plane[4],
                             int* total_multiplicity, st_report** report);
ST_API int st_tangents_point(const st_scene* scene, const double point[3],
                             int* total_multiplicity, st_report** report);
/* Tangents in the plane of the pencil through the scene line at theta. */
ST_API int st_tangents_pencil(const st_scene* scene, double theta, int* total_multiplicity,
                              st_report** report);
ST_API int st_tau_trace(const st_scene* scene, int planes, int* branch_count,
                        st_report** report);
ST_API int st_tau_degree(const st_scene* scene, int trials, uint64_t seed, int* degree,
                         st_report** report);
ST_API int st_detect_components(const st_scene* scene, int* count, st_report** report);
/* Traces the curve and writes an OBJ mesh of its envelope to obj_path (may be
 * NULL). Pencil components are left out of the mesh. */
ST_API int st_envelope(const st_scene* scene, int planes, const double bbox[6],
                       const char* obj_path, int* groups, st_report** report);
/* r as "p/q"; exact check when sqrt(r) is rational, numeric otherwise. */
ST_API int st_verify_quartic(const char* r, int samples, int* all_hold, st_report** report);
/* Built-in curves, or curves from a JSON file (see README). */
ST_API int st_lemma_degree_builtin(int* all_agree, st_report** report);
ST_API int st_lemma_degree_file(const char* path, int* all_agree, st_report** report);

/* Reports ---------------------------------------------------------------- */

ST_API size_t st_report_record_count(const st_report* report);
ST_API size_t st_report_field_count(const st_report* report, size_t record);
ST_API const char* st_report_key(const st_report* report, size_t record, size_t field);
ST_API const char* st_report_value(const st_report* report, size_t record, size_t field);
/* Value of the first field named key in the record, or NULL. */
ST_API const char* st_report_get(const st_report* report, size_t record, const char* key);
ST_API const char* st_report_text(const st_report* report);
ST_API void st_report_free(st_report* report);

#ifdef __cplusplus
}
#endif

#endif /* SPHTAN_SPHTAN_H_ */
