/******************************************************************************
 * Copyright 2026 The Panocam Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

/**
 * @file panocam.h
 * @brief C interface of the panocam library.
 *
 * Conventions:
 *  - Every fallible call returns pc_status; on failure pc_last_error()
 *    describes the problem (thread-local, valid until the next call on the
 *    same thread).
 *  - Objects are opaque handles created by *_create / *_load functions and
 *    released by the matching *_free. Freeing NULL is a no-op.
 *  - Strings returned through char** are heap copies owned by the caller;
 *    release them with pc_string_free.
 *  - Angles are degrees: latitude theta in [-90, 90], longitude phi
 *    (normalized to [0, 360)).
 *  - Randomized operations take an explicit 64-bit seed.
 */

#ifndef PANOCAM_PANOCAM_H_
#define PANOCAM_PANOCAM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PC_API __declspec(dllexport)
#else
#define PC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pc_status {
  PC_OK = 0,
  PC_ERR_INVALID_ARGUMENT = 1,
  PC_ERR_OUT_OF_RANGE = 2,
  PC_ERR_IO = 3,
  PC_ERR_PARSE = 4,
  PC_ERR_SCHEMA = 5,
  PC_ERR_DEGENERATE_DATA = 6,
  PC_ERR_INCOMPLETE = 7,
  PC_ERR_STATE = 8,
  PC_ERR_NOT_FOUND = 9,
  PC_ERR_CONFLICT = 10,
  PC_ERR_INTERNAL = 99
} pc_status;

PC_API const char* pc_version(void);
PC_API const char* pc_last_error(void);
PC_API const char* pc_status_name(pc_status status);
PC_API void pc_string_free(char* s);

/** Receives non-fatal warnings; NULL restores printing to stderr. */
typedef void (*pc_warning_fn)(const char* message, void* user);
PC_API void pc_set_warning_callback(pc_warning_fn fn, void* user);

/* ------------------------------------------------------------------------ */
/* Configuration                                                            */

typedef struct pc_config pc_config;

/** `json` may be NULL for defaults; otherwise a full or partial config. */
PC_API pc_status pc_config_create(const char* json, pc_config** out);
PC_API pc_status pc_config_load(const char* path, pc_config** out);
/** Applies a JSON merge patch. */
PC_API pc_status pc_config_merge(pc_config* config, const char* patch_json);
PC_API pc_status pc_config_to_json(const pc_config* config, char** out_json);
/** Returns PC_ERR_NOT_FOUND when the config has no seed. */
PC_API pc_status pc_config_seed(const pc_config* config, uint64_t* out_seed);
PC_API void pc_config_free(pc_config* config);

/* ------------------------------------------------------------------------ */
/* Geometry                                                                 */

PC_API pc_status pc_sphere_to_equirect(double theta, double phi, int width, int height,
                                       double* out_x, double* out_y);
PC_API pc_status pc_equirect_to_sphere(double x, double y, int width, int height,
                                       double* out_theta, double* out_phi);
/** Direction of NFOV pixel (x, y) for a camera looking at (theta, phi). */
PC_API pc_status pc_nfov_pixel_ray(const pc_config* config, double theta, double phi, double x,
                                   double y, double* out_theta, double* out_phi);
/** {"segments": [[[x, y], ...], ...]} in equirect pixels. */
PC_API pc_status pc_fov_outline(double theta, double phi, int width, int height,
                                int samples_per_edge, double hfov, double aspect,
                                char** out_json);

/** Lattice for a video of `duration` seconds under the config's grid. */
PC_API pc_status pc_grid_describe(const pc_config* config, double duration, char** out_json);

/* ------------------------------------------------------------------------ */
/* Feature sets and worthiness models                                       */

typedef struct pc_feature_set pc_feature_set;
typedef struct pc_model pc_model;

PC_API pc_status pc_feature_set_load(const char* path, pc_feature_set** out);
PC_API pc_status pc_feature_set_save(const pc_feature_set* set, const char* path);
PC_API size_t pc_feature_set_size(const pc_feature_set* set);
PC_API void pc_feature_set_free(pc_feature_set* set);

/** Positives plus exactly twice as many seeded negatives from other videos. */
PC_API pc_status pc_assemble_training_set(const pc_feature_set* humancam,
                                          const pc_feature_set* glimpses,
                                          const char* heldout_video, uint64_t seed,
                                          pc_feature_set** out);
/** `out_trace_json` may be NULL. */
PC_API pc_status pc_train_worthiness(const pc_config* config, const pc_feature_set* data,
                                     pc_model** out, char** out_trace_json);
PC_API pc_status pc_model_load(const char* path, pc_model** out);
PC_API pc_status pc_model_save(const pc_model* model, const char* path);
PC_API void pc_model_free(pc_model* model);

/* ------------------------------------------------------------------------ */
/* Score maps                                                               */

typedef struct pc_score_map pc_score_map;

/** The file's lattice must match the config's angles and interval. */
PC_API pc_status pc_score_map_load(const pc_config* config, const char* path,
                                   pc_score_map** out);
PC_API pc_status pc_score_map_save(const pc_score_map* map, const char* path);
PC_API pc_status pc_score_map_dims(const pc_score_map* map, int* out_steps, int* out_lat,
                                   int* out_lon);
/** Stand-in image-statistics scorer over a frame directory. */
PC_API pc_status pc_score_map_standin(const pc_config* config, const char* frames_dir,
                                      const char* video_id, pc_score_map** out);
/** Scores per-glimpse features with a trained model. */
PC_API pc_status pc_score_map_from_model(const pc_config* config, const pc_model* model,
                                         const pc_feature_set* glimpses, double duration,
                                         const char* video_id, pc_score_map** out);
PC_API void pc_score_map_free(pc_score_map* map);

/** Histogram plus per-angle capture-worthy fractions of several maps. */
PC_API pc_status pc_analyze_scores(const pc_score_map* const* maps, size_t count, double hi,
                                   double lo, int bins, char** out_json);

/* ------------------------------------------------------------------------ */
/* Trajectories                                                             */

typedef struct pc_trajectory_set pc_trajectory_set;

PC_API pc_status pc_trajectory_set_load(const char* path, pc_trajectory_set** out);
PC_API pc_status pc_trajectory_set_save(const pc_trajectory_set* set, const char* path);
PC_API pc_status pc_trajectory_set_to_json(const pc_trajectory_set* set, char** out_json);
PC_API size_t pc_trajectory_set_size(const pc_trajectory_set* set);
PC_API void pc_trajectory_set_free(pc_trajectory_set* set);

/** Top-K trajectories under the config's epsilon and K. */
PC_API pc_status pc_solve(const pc_config* config, const pc_score_map* map,
                          pc_trajectory_set** out);
/** Seeded random walks from (0, 0). With `raw` nonzero the unsnapped walk
 *  directions are emitted instead of lattice cells. */
PC_API pc_status pc_baseline_center(const pc_config* config, double duration,
                                    const char* video_id, int count, uint64_t seed, int raw,
                                    pc_trajectory_set** out);
PC_API pc_status pc_baseline_eye_level(const pc_config* config, double duration,
                                       const char* video_id, pc_trajectory_set** out);
PC_API pc_status pc_baseline_no_stitch(const pc_config* config, const pc_score_map* map,
                                       int count, uint64_t seed, pc_trajectory_set** out);
/** Per-frame directions at `fps` for every trajectory of a discrete set. */
PC_API pc_status pc_interpolate(const pc_trajectory_set* discrete, double fps,
                                pc_trajectory_set** out);
/** Renders trajectory `index` of `set` from a frame directory into numbered
 *  PNG frames plus metadata under `out_dir`. Discrete sets are interpolated
 *  at the source frame rate first. `frame_count` < 0 renders everything. */
PC_API pc_status pc_render(const pc_config* config, const char* frames_dir,
                           const pc_trajectory_set* set, size_t index, const char* out_dir,
                           int first_frame, int frame_count);

/* ------------------------------------------------------------------------ */
/* Evaluation. Reports are returned as JSON and, where tabular, as an       */
/* aligned text table (either output pointer may be NULL).                  */

/** Generated sets are grouped by (method, video_id); human sets by video_id. */
PC_API pc_status pc_eval_humanedit(const pc_config* config,
                                   const pc_trajectory_set* const* generated, size_t n_generated,
                                   const pc_trajectory_set* const* humans, size_t n_humans,
                                   char** out_json, char** out_table);
/** Annotator ids come from each set's "annotator_id" field. */
PC_API pc_status pc_eval_consistency(const pc_config* config,
                                     const pc_trajectory_set* const* humans, size_t n_humans,
                                     char** out_json, char** out_table);
PC_API pc_status pc_eval_distinguishability(const pc_config* config, const pc_feature_set* gen,
                                            const pc_feature_set* human, uint64_t seed,
                                            char** out_json);
PC_API pc_status pc_eval_likeness(const pc_config* config, const char* const* method_names,
                                  const pc_feature_set* const* method_sets, size_t n_methods,
                                  const pc_feature_set* human, char** out_json);
PC_API pc_status pc_eval_transferability(const pc_config* config, const pc_feature_set* source,
                                         const pc_feature_set* target, double* out_accuracy);

/* ------------------------------------------------------------------------ */
/* Annotation server                                                        */

typedef struct pc_server pc_server;

/** `static_dir` may be NULL. Port 0 picks a free port. */
PC_API pc_status pc_server_create(const char* videos_dir, const char* out_dir, const char* host,
                                  int port, const char* static_dir, pc_server** out);
/** Serves on a background thread; reports the bound port. */
PC_API pc_status pc_server_start(pc_server* server, int* out_port);
/** Binds the socket and reports the port; pc_server_run then serves. */
PC_API pc_status pc_server_bind(pc_server* server, int* out_port);
/** Serves on the calling thread until pc_server_stop; binds first if needed. */
PC_API pc_status pc_server_run(pc_server* server);
PC_API void pc_server_stop(pc_server* server);
PC_API void pc_server_free(pc_server* server);

#ifdef __cplusplus
}
#endif

#endif  /* PANOCAM_PANOCAM_H_ */
