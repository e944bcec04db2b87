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

#include "panocam/panocam.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <new>
#include <string>

#include "annotation.hpp"
#include "annotation_server.hpp"
#include "baselines.hpp"
#include "config.hpp"
#include "error.hpp"
#include "features.hpp"
#include "json_io.hpp"
#include "metrics.hpp"
#include "render.hpp"
#include "scoring.hpp"
#include "solver.hpp"
#include "trajectory.hpp"

struct pc_config {
  panocam::PipelineConfig value;
};
struct pc_feature_set {
  panocam::FeatureSet value;
};
struct pc_model {
  panocam::WorthinessModel value;
};
struct pc_score_map {
  panocam::ScoreMap value;
};
struct pc_trajectory_set {
  panocam::TrajectorySet value;
};
struct pc_server {
  std::unique_ptr<panocam::AnnotationStore> store;
  std::unique_ptr<panocam::AnnotationServer> server;
  bool bound = false;
};

namespace {

using panocam::ErrorCode;
using panocam::fail;
using Json = nlohmann::ordered_json;

thread_local std::string g_last_error;

pc_status record(pc_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

/// Runs `body`, converting exceptions into a status and pc_last_error().
template <typename F>
pc_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return PC_OK;
  } catch (const panocam::Error& e) {
    return record(static_cast<pc_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(PC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(PC_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(PC_ERR_INTERNAL, "unknown error");
  }
}

template <typename T>
T& need(T* p, const char* what) {
  if (!p) fail(ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
  return *p;
}

void need_out(const void* p) {
  if (!p) fail(ErrorCode::kInvalidArgument, "output pointer must not be NULL");
}

std::string need_str(const char* s, const char* what) {
  if (!s) fail(ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
  return s;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  if (out) *out = copy_string(s);
}

panocam::GlimpseGrid config_grid(const panocam::PipelineConfig& c, double duration) {
  return panocam::build_grid(duration, c.grid.interval_seconds, c.grid.latitudes,
                             c.grid.longitudes);
}

/// Trajectories of a set as per-frame directions at `fps`.
std::vector<panocam::ContinuousTrajectory> at_fps(const panocam::TrajectorySet& set, double fps) {
  std::vector<panocam::ContinuousTrajectory> out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.kind == panocam::TrajectorySet::Kind::kDiscrete) {
      out.push_back(panocam::interpolate_keypoints(set.trajectories[i], fps, set.interval_seconds));
    } else {
      out.push_back(panocam::resample(set.continuous(i), fps));
    }
  }
  return out;
}

/// Truncates every trajectory to the shortest; lattice trajectories end at
/// the last whole interval, which can be shorter than the video.
void truncate_common(std::vector<panocam::ContinuousTrajectory*>& trajs) {
  int n = std::numeric_limits<int>::max();
  for (auto* t : trajs) n = std::min(n, t->size());
  for (auto* t : trajs) t->directions.resize(static_cast<std::size_t>(n));
}

std::mutex g_warning_mutex;
pc_warning_fn g_warning_fn = nullptr;
void* g_warning_user = nullptr;

}  // namespace

extern "C" {

const char* pc_version(void) { return "1.0.0"; }

const char* pc_last_error(void) { return g_last_error.c_str(); }

const char* pc_status_name(pc_status status) {
  switch (status) {
    case PC_OK: return "ok";
    case PC_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case PC_ERR_OUT_OF_RANGE: return "out_of_range";
    case PC_ERR_IO: return "io";
    case PC_ERR_PARSE: return "parse";
    case PC_ERR_SCHEMA: return "schema";
    case PC_ERR_DEGENERATE_DATA: return "degenerate_data";
    case PC_ERR_INCOMPLETE: return "incomplete";
    case PC_ERR_STATE: return "state";
    case PC_ERR_NOT_FOUND: return "not_found";
    case PC_ERR_CONFLICT: return "conflict";
    case PC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void pc_string_free(char* s) { std::free(s); }

void pc_set_warning_callback(pc_warning_fn fn, void* user) {
  std::lock_guard lock(g_warning_mutex);
  g_warning_fn = fn;
  g_warning_user = user;
  if (!fn) {
    panocam::set_warning_handler(nullptr);
    return;
  }
  panocam::set_warning_handler([](const std::string& message) {
    std::lock_guard inner(g_warning_mutex);
    if (g_warning_fn) g_warning_fn(message.c_str(), g_warning_user);
  });
}

/* Configuration ---------------------------------------------------------- */

pc_status pc_config_create(const char* json, pc_config** out) {
  return guard([&] {
    need_out(out);
    auto c = std::make_unique<pc_config>();
    if (json) c->value = panocam::config_from_json(panocam::parse_json(json, "config"), "config");
    *out = c.release();
  });
}

pc_status pc_config_load(const char* path, pc_config** out) {
  return guard([&] {
    need_out(out);
    const std::string p = need_str(path, "path");
    auto c = std::make_unique<pc_config>();
    c->value = panocam::config_from_json(panocam::read_json_file(p), p);
    *out = c.release();
  });
}

pc_status pc_config_merge(pc_config* config, const char* patch_json) {
  return guard([&] {
    auto& c = need(config, "config");
    c.value = panocam::merge_config(c.value,
                                    panocam::parse_json(need_str(patch_json, "patch"), "patch"));
  });
}

pc_status pc_config_to_json(const pc_config* config, char** out_json) {
  return guard([&] {
    need_out(out_json);
    emit(out_json, panocam::dump_json(panocam::config_to_json(need(config, "config").value)));
  });
}

pc_status pc_config_seed(const pc_config* config, uint64_t* out_seed) {
  return guard([&] {
    need_out(out_seed);
    const auto& c = need(config, "config").value;
    if (!c.seed) fail(ErrorCode::kNotFound, "config has no seed");
    *out_seed = *c.seed;
  });
}

void pc_config_free(pc_config* config) { delete config; }

/* Geometry --------------------------------------------------------------- */

pc_status pc_sphere_to_equirect(double theta, double phi, int width, int height, double* out_x,
                                double* out_y) {
  return guard([&] {
    need_out(out_x);
    need_out(out_y);
    const auto px = panocam::sphere_to_equirect_px({width, height}, panocam::Direction(theta, phi));
    *out_x = px.x;
    *out_y = px.y;
  });
}

pc_status pc_equirect_to_sphere(double x, double y, int width, int height, double* out_theta,
                                double* out_phi) {
  return guard([&] {
    need_out(out_theta);
    need_out(out_phi);
    const auto d = panocam::equirect_px_to_sphere({width, height}, {x, y});
    *out_theta = d.theta();
    *out_phi = d.phi();
  });
}

pc_status pc_nfov_pixel_ray(const pc_config* config, double theta, double phi, double x, double y,
                            double* out_theta, double* out_phi) {
  return guard([&] {
    need_out(out_theta);
    need_out(out_phi);
    const auto cam = need(config, "config").value.camera_model();
    const auto d = panocam::nfov_pixel_ray(cam, panocam::Direction(theta, phi), {x, y});
    *out_theta = d.theta();
    *out_phi = d.phi();
  });
}

pc_status pc_fov_outline(double theta, double phi, int width, int height, int samples_per_edge,
                         double hfov, double aspect, char** out_json) {
  return guard([&] {
    need_out(out_json);
    const panocam::CameraModel cam(hfov, aspect);
    Json segments = Json::array();
    for (const auto& line : panocam::fov_outline(cam, panocam::Direction(theta, phi),
                                                 {width, height}, samples_per_edge)) {
      Json points = Json::array();
      for (const auto& p : line) points.push_back({p.x, p.y});
      segments.push_back(std::move(points));
    }
    emit(out_json, panocam::dump_json({{"segments", segments}}));
  });
}

pc_status pc_grid_describe(const pc_config* config, double duration, char** out_json) {
  return guard([&] {
    need_out(out_json);
    const auto grid = config_grid(need(config, "config").value, duration);
    Json j;
    j["duration"] = duration;
    j["interval_seconds"] = grid.interval();
    j["num_steps"] = grid.num_steps();
    j["latitudes"] = grid.latitudes();
    j["longitudes"] = grid.longitudes();
    j["cells_per_step"] = grid.cells_per_step();
    j["total_glimpses"] = grid.size();
    emit(out_json, panocam::dump_json(j));
  });
}

/* Feature sets and models ------------------------------------------------ */

pc_status pc_feature_set_load(const char* path, pc_feature_set** out) {
  return guard([&] {
    need_out(out);
    auto s = std::make_unique<pc_feature_set>();
    s->value = panocam::load_feature_set(need_str(path, "path"));
    *out = s.release();
  });
}

pc_status pc_feature_set_save(const pc_feature_set* set, const char* path) {
  return guard([&] { panocam::save_feature_set(need_str(path, "path"), need(set, "set").value); });
}

size_t pc_feature_set_size(const pc_feature_set* set) { return set ? set->value.size() : 0; }

void pc_feature_set_free(pc_feature_set* set) { delete set; }

pc_status pc_assemble_training_set(const pc_feature_set* humancam, const pc_feature_set* glimpses,
                                   const char* heldout_video, uint64_t seed,
                                   pc_feature_set** out) {
  return guard([&] {
    need_out(out);
    auto s = std::make_unique<pc_feature_set>();
    s->value = panocam::assemble_training_set(need(humancam, "humancam").value,
                                              need(glimpses, "glimpses").value,
                                              heldout_video ? heldout_video : "",
                                              panocam::RngSeed{seed});
    *out = s.release();
  });
}

pc_status pc_train_worthiness(const pc_config* config, const pc_feature_set* data, pc_model** out,
                              char** out_trace_json) {
  return guard([&] {
    need_out(out);
    panocam::LogisticTrace trace;
    auto m = std::make_unique<pc_model>();
    m->value = panocam::train_worthiness(need(data, "data").value,
                                         need(config, "config").value.training.C, &trace);
    if (out_trace_json) {
      Json j;
      j["iterations"] = trace.iterations;
      j["converged"] = trace.converged;
      j["gradient_norm"] = trace.gradient_norm;
      j["loss"] = trace.loss;
      emit(out_trace_json, panocam::dump_json(j));
    }
    *out = m.release();
  });
}

pc_status pc_model_load(const char* path, pc_model** out) {
  return guard([&] {
    need_out(out);
    auto m = std::make_unique<pc_model>();
    m->value = panocam::load_worthiness_model(need_str(path, "path"));
    *out = m.release();
  });
}

pc_status pc_model_save(const pc_model* model, const char* path) {
  return guard(
      [&] { panocam::save_worthiness_model(need_str(path, "path"), need(model, "model").value); });
}

void pc_model_free(pc_model* model) { delete model; }

/* Score maps ------------------------------------------------------------- */

pc_status pc_score_map_load(const pc_config* config, const char* path, pc_score_map** out) {
  return guard([&] {
    need_out(out);
    const auto& c = need(config, "config").value;
    auto map = panocam::load_score_map(need_str(path, "path"));
    const panocam::GlimpseGrid expected(c.grid.latitudes, c.grid.longitudes,
                                        c.grid.interval_seconds, map.grid().num_steps());
    if (!map.grid().same_layout(expected)) {
      fail(ErrorCode::kSchema,
           std::string(path) + ": score map lattice does not match the configured grid");
    }
    *out = new pc_score_map{std::move(map)};
  });
}

pc_status pc_score_map_save(const pc_score_map* map, const char* path) {
  return guard([&] { panocam::save_score_map(need_str(path, "path"), need(map, "map").value); });
}

pc_status pc_score_map_dims(const pc_score_map* map, int* out_steps, int* out_lat, int* out_lon) {
  return guard([&] {
    const auto& g = need(map, "map").value.grid();
    if (out_steps) *out_steps = g.num_steps();
    if (out_lat) *out_lat = g.num_lat();
    if (out_lon) *out_lon = g.num_lon();
  });
}

pc_status pc_score_map_standin(const pc_config* config, const char* frames_dir,
                               const char* video_id, pc_score_map** out) {
  return guard([&] {
    need_out(out);
    const auto& c = need(config, "config").value;
    const panocam::DirectoryFrames frames(need_str(frames_dir, "frames_dir"));
    const auto grid = config_grid(c, frames.metadata().duration());
    *out = new pc_score_map{panocam::standin_score_map(frames, grid, c.camera_model(), c.standin,
                                                       video_id ? video_id : "")};
  });
}

pc_status pc_score_map_from_model(const pc_config* config, const pc_model* model,
                                  const pc_feature_set* glimpses, double duration,
                                  const char* video_id, pc_score_map** out) {
  return guard([&] {
    need_out(out);
    const auto grid = config_grid(need(config, "config").value, duration);
    *out = new pc_score_map{panocam::score_glimpses(need(model, "model").value,
                                                    need(glimpses, "glimpses").value, grid,
                                                    video_id ? video_id : "")};
  });
}

void pc_score_map_free(pc_score_map* map) { delete map; }

pc_status pc_analyze_scores(const pc_score_map* const* maps, size_t count, double hi, double lo,
                            int bins, char** out_json) {
  return guard([&] {
    need_out(out_json);
    if (!maps || count == 0) fail(ErrorCode::kInvalidArgument, "no score maps given");
    std::vector<panocam::ScoreMap> list;
    for (size_t i = 0; i < count; ++i) list.push_back(need(maps[i], "map").value);
    const auto dist = panocam::analyze_scores(list, hi, lo, bins);
    emit(out_json, panocam::dump_json(panocam::score_distribution_to_json(dist)));
  });
}

/* Trajectories ----------------------------------------------------------- */

pc_status pc_trajectory_set_load(const char* path, pc_trajectory_set** out) {
  return guard([&] {
    need_out(out);
    *out = new pc_trajectory_set{panocam::load_trajectory_set(need_str(path, "path"))};
  });
}

pc_status pc_trajectory_set_save(const pc_trajectory_set* set, const char* path) {
  return guard(
      [&] { panocam::save_trajectory_set(need_str(path, "path"), need(set, "set").value); });
}

pc_status pc_trajectory_set_to_json(const pc_trajectory_set* set, char** out_json) {
  return guard([&] {
    need_out(out_json);
    emit(out_json, panocam::dump_json(panocam::trajectory_set_to_json(need(set, "set").value)));
  });
}

size_t pc_trajectory_set_size(const pc_trajectory_set* set) { return set ? set->value.size() : 0; }

void pc_trajectory_set_free(pc_trajectory_set* set) { delete set; }

pc_status pc_solve(const pc_config* config, const pc_score_map* map, pc_trajectory_set** out) {
  return guard([&] {
    need_out(out);
    const auto& c = need(config, "config").value;
    const auto& m = need(map, "map").value;
    const auto trajs = panocam::solve_topk(m, c.solver.epsilon, c.solver.top_k);
    auto set = panocam::TrajectorySet::from_discrete(m.video_id(), "autocam", m.grid().interval(),
                                                     trajs);
    set.extra["epsilon"] = c.solver.epsilon;
    set.extra["distinct_paths"] = panocam::count_distinct_paths(trajs);
    *out = new pc_trajectory_set{std::move(set)};
  });
}

pc_status pc_baseline_center(const pc_config* config, double duration, const char* video_id,
                             int count, uint64_t seed, int raw, pc_trajectory_set** out) {
  return guard([&] {
    need_out(out);
    const auto& c = need(config, "config").value;
    const auto grid = config_grid(c, duration);
    const auto walks =
        panocam::center_walks(grid, count, c.baselines.center_sigma, panocam::RngSeed{seed});
    std::vector<panocam::DiscreteTrajectory> snapped;
    for (const auto& w : walks) snapped.push_back(w.snapped);
    auto set = panocam::TrajectorySet::from_discrete(video_id ? video_id : "", "center",
                                                     grid.interval(), snapped);
    if (raw) {
      for (std::size_t i = 0; i < walks.size(); ++i) set.trajectories[i] = walks[i].raw;
    }
    set.aggregate_scores.assign(set.size(), std::nullopt);
    set.extra["sigma"] = c.baselines.center_sigma;
    set.extra["seed"] = seed;
    set.extra["snapped"] = raw == 0;
    *out = new pc_trajectory_set{std::move(set)};
  });
}

pc_status pc_baseline_eye_level(const pc_config* config, double duration, const char* video_id,
                                pc_trajectory_set** out) {
  return guard([&] {
    need_out(out);
    const auto grid = config_grid(need(config, "config").value, duration);
    auto set = panocam::TrajectorySet::from_discrete(
        video_id ? video_id : "", "eyelevel", grid.interval(), panocam::eye_level_baseline(grid));
    set.aggregate_scores.assign(set.size(), std::nullopt);
    *out = new pc_trajectory_set{std::move(set)};
  });
}

pc_status pc_baseline_no_stitch(const pc_config* config, const pc_score_map* map, int count,
                                uint64_t seed, pc_trajectory_set** out) {
  return guard([&] {
    need_out(out);
    const auto& c = need(config, "config").value;
    const auto& m = need(map, "map").value;
    const auto trajs = panocam::no_stitch_sample(m, count, c.baselines.softmax_temperature,
                                                 panocam::RngSeed{seed});
    auto set = panocam::TrajectorySet::from_discrete(m.video_id(), "nostitch", m.grid().interval(),
                                                     trajs);
    set.extra["temperature"] = c.baselines.softmax_temperature;
    set.extra["seed"] = seed;
    *out = new pc_trajectory_set{std::move(set)};
  });
}

pc_status pc_interpolate(const pc_trajectory_set* discrete, double fps, pc_trajectory_set** out) {
  return guard([&] {
    need_out(out);
    const auto& in = need(discrete, "set").value;
    if (in.kind != panocam::TrajectorySet::Kind::kDiscrete) {
      fail(ErrorCode::kInvalidArgument, "interpolation needs a discrete trajectory set");
    }
    auto set = panocam::TrajectorySet::from_continuous(in.video_id, in.method, at_fps(in, fps));
    set.extra = in.extra;
    set.aggregate_scores = in.aggregate_scores;
    *out = new pc_trajectory_set{std::move(set)};
  });
}

pc_status pc_render(const pc_config* config, const char* frames_dir, const pc_trajectory_set* set,
                    size_t index, const char* out_dir, int first_frame, int frame_count) {
  return guard([&] {
    const auto& c = need(config, "config").value;
    const auto& s = need(set, "set").value;
    if (index >= s.size()) {
      fail(ErrorCode::kOutOfRange, "trajectory index " + std::to_string(index) + " out of range");
    }
    const panocam::DirectoryFrames frames(need_str(frames_dir, "frames_dir"));
    panocam::ContinuousTrajectory traj;
    if (s.kind == panocam::TrajectorySet::Kind::kDiscrete) {
      traj = panocam::interpolate_keypoints(s.trajectories[index], frames.fps(), s.interval_seconds);
    } else {
      traj = s.continuous(index);
    }
    panocam::RenderJob job{&frames, traj, c.camera_model(), first_frame, frame_count,
                           c.render.threads};
    panocam::FrameWriter writer(need_str(out_dir, "out_dir"), frames.fps());
    panocam::render_video(
        job, [&](int i, const panocam::Image& img) { writer.write(i - first_frame, img); });
    writer.finish();
  });
}

/* Evaluation ------------------------------------------------------------- */

pc_status pc_eval_humanedit(const pc_config* config, const pc_trajectory_set* const* generated,
                            size_t n_generated, const pc_trajectory_set* const* humans,
                            size_t n_humans, char** out_json, char** out_table) {
  return guard([&] {
    const auto& c = need(config, "config").value;
    if (n_generated == 0 || n_humans == 0) {
      fail(ErrorCode::kInvalidArgument, "need generated and human trajectory sets");
    }
    std::map<std::string, std::vector<panocam::ContinuousTrajectory>> human_by_video;
    for (size_t i = 0; i < n_humans; ++i) {
      const auto& s = need(humans[i], "human set").value;
      for (auto& t : at_fps(s, c.metrics.fps)) human_by_video[s.video_id].push_back(std::move(t));
    }
    std::map<std::string, panocam::MethodTrajectories> gen_by_method;
    for (size_t i = 0; i < n_generated; ++i) {
      const auto& s = need(generated[i], "generated set").value;
      const std::string method = s.method.empty() ? "unnamed" : s.method;
      for (auto& t : at_fps(s, c.metrics.fps)) {
        gen_by_method[method][s.video_id].push_back(std::move(t));
      }
    }
    // Per video, every trajectory is cut to the shortest one.
    for (auto& [video, hs] : human_by_video) {
      std::vector<panocam::ContinuousTrajectory*> all;
      for (auto& h : hs) all.push_back(&h);
      for (auto& [method, by_video] : gen_by_method) {
        const auto it = by_video.find(video);
        if (it == by_video.end()) continue;
        for (auto& g : it->second) all.push_back(&g);
      }
      truncate_common(all);
    }
    const auto report = panocam::humanedit_report(gen_by_method, human_by_video, c.metrics.fov);
    emit(out_json, panocam::dump_json(report.to_json()));
    emit(out_table, report.to_table());
  });
}

pc_status pc_eval_consistency(const pc_config* config, const pc_trajectory_set* const* humans,
                              size_t n_humans, char** out_json, char** out_table) {
  return guard([&] {
    const auto& c = need(config, "config").value;
    std::map<std::string, std::vector<panocam::AnnotatedTrajectory>> by_video;
    for (size_t i = 0; i < n_humans; ++i) {
      const auto& s = need(humans[i], "human set").value;
      if (!s.extra.contains("annotator_id") || !s.extra["annotator_id"].is_string()) {
        fail(ErrorCode::kSchema, "human trajectory set for video '" + s.video_id +
                                     "' has no annotator_id");
      }
      const std::string annotator = s.extra["annotator_id"].get<std::string>();
      for (auto& t : at_fps(s, c.metrics.fps)) by_video[s.video_id].push_back({annotator, std::move(t)});
    }
    for (auto& [video, hs] : by_video) {
      std::vector<panocam::ContinuousTrajectory*> all;
      for (auto& h : hs) all.push_back(&h.trajectory);
      truncate_common(all);
    }
    const auto report = panocam::consistency_report(by_video, c.metrics.fov);
    emit(out_json, panocam::dump_json(report.to_json()));
    emit(out_table, report.to_table());
  });
}

pc_status pc_eval_distinguishability(const pc_config* config, const pc_feature_set* gen,
                                     const pc_feature_set* human, uint64_t seed,
                                     char** out_json) {
  return guard([&] {
    need_out(out_json);
    const auto& c = need(config, "config").value;
    panocam::ClassifierOptions options;
    options.logistic.C = c.training.C;
    const auto r = panocam::distinguishability(need(gen, "gen").value, need(human, "human").value,
                                               c.metrics.folds, panocam::RngSeed{seed}, options);
    Json j;
    j["metric"] = "distinguishability";
    j["folds"] = c.metrics.folds;
    j["seed"] = seed;
    j["error_rate"] = r.error_rate;
    j["fold_errors"] = r.fold_errors;
    emit(out_json, panocam::dump_json(j));
  });
}

pc_status pc_eval_likeness(const pc_config* config, const char* const* method_names,
                           const pc_feature_set* const* method_sets, size_t n_methods,
                           const pc_feature_set* human, char** out_json) {
  return guard([&] {
    need_out(out_json);
    const auto& c = need(config, "config").value;
    if (!method_names || !method_sets) fail(ErrorCode::kInvalidArgument, "no methods given");
    std::map<std::string, panocam::FeatureSet> methods;
    for (size_t i = 0; i < n_methods; ++i) {
      const std::string name = need_str(method_names[i], "method name");
      if (!methods.emplace(name, need(method_sets[i], "method set").value).second) {
        fail(ErrorCode::kInvalidArgument, "duplicate method '" + name + "'");
      }
    }
    panocam::ClassifierOptions options;
    options.logistic.C = c.training.C;
    const auto r = panocam::humancam_likeness(methods, need(human, "human").value, options);
    Json j;
    j["metric"] = "humancam_likeness";
    j["mean_rank"] = r.mean_rank;
    j["per_video"] = r.per_video;
    emit(out_json, panocam::dump_json(j));
  });
}

pc_status pc_eval_transferability(const pc_config* config, const pc_feature_set* source,
                                  const pc_feature_set* target, double* out_accuracy) {
  return guard([&] {
    need_out(out_accuracy);
    panocam::ClassifierOptions options;
    options.logistic.C = need(config, "config").value.training.C;
    *out_accuracy = panocam::transferability(need(source, "source").value,
                                             need(target, "target").value, options);
  });
}

/* Annotation server ------------------------------------------------------ */

pc_status pc_server_create(const char* videos_dir, const char* out_dir, const char* host, int port,
                           const char* static_dir, pc_server** out) {
  return guard([&] {
    need_out(out);
    auto s = std::make_unique<pc_server>();
    s->store = std::make_unique<panocam::AnnotationStore>(need_str(out_dir, "out_dir"));
    s->store->scan_videos(need_str(videos_dir, "videos_dir"));
    panocam::ServerOptions options;
    if (host) options.host = host;
    options.port = port;
    if (static_dir) options.static_dir = static_dir;
    s->server = std::make_unique<panocam::AnnotationServer>(*s->store, options);
    *out = s.release();
  });
}

pc_status pc_server_start(pc_server* server, int* out_port) {
  return guard([&] {
    auto& s = need(server, "server");
    if (s.bound) fail(ErrorCode::kState, "server already bound");
    const int port = s.server->start();
    s.bound = true;
    if (out_port) *out_port = port;
  });
}

pc_status pc_server_bind(pc_server* server, int* out_port) {
  return guard([&] {
    auto& s = need(server, "server");
    if (s.bound) fail(ErrorCode::kState, "server already bound");
    const int port = s.server->bind();
    s.bound = true;
    if (out_port) *out_port = port;
  });
}

pc_status pc_server_run(pc_server* server) {
  return guard([&] {
    auto& s = need(server, "server");
    if (!s.bound) {
      s.server->bind();
      s.bound = true;
    }
    s.server->run();
  });
}

void pc_server_stop(pc_server* server) {
  if (server && server->server) server->server->stop();
}

void pc_server_free(pc_server* server) {
  if (!server) return;
  pc_server_stop(server);
  delete server;
}

}  // extern "C"
