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

#include "config.hpp"

#include <set>

#include "error.hpp"

namespace panocam {

CameraModel PipelineConfig::camera_model() const {
  return CameraModel(camera.hfov, camera.aspect, camera.width, camera.height);
}

void PipelineConfig::validate() const {
  const auto require = [](bool ok, const std::string& what) {
    if (!ok) fail(ErrorCode::kSchema, "config: " + what);
  };
  require(!grid.latitudes.empty() && !grid.longitudes.empty(), "grid angles must be non-empty");
  require(grid.interval_seconds > 0.0, "grid.interval_seconds must be positive");
  require(solver.epsilon >= 0.0, "solver.epsilon must be >= 0");
  require(solver.top_k >= 1, "solver.top_k must be >= 1");
  require(baselines.center_sigma > 0.0, "baselines.center_sigma must be positive");
  require(baselines.softmax_temperature > 0.0, "baselines.softmax_temperature must be positive");
  require(standin.frame_stride >= 1, "standin.frame_stride must be >= 1");
  require(training.C > 0.0, "training.C must be positive");
  require(metrics.fps > 0.0, "metrics.fps must be positive");
  require(metrics.fov > 0.0, "metrics.fov must be positive");
  require(metrics.folds >= 2, "metrics.folds must be >= 2");
  require(render.threads >= 1, "render.threads must be >= 1");
  try {
    (void)camera_model();
    (void)GlimpseGrid(grid.latitudes, grid.longitudes, grid.interval_seconds, 1);
  } catch (const Error& e) {
    fail(ErrorCode::kSchema, std::string("config: ") + e.what());
  }
}

nlohmann::ordered_json config_to_json(const PipelineConfig& c) {
  nlohmann::ordered_json j;
  j["grid"] = {{"latitudes", c.grid.latitudes},
               {"longitudes", c.grid.longitudes},
               {"interval_seconds", c.grid.interval_seconds}};
  j["camera"] = {{"hfov", c.camera.hfov},
                 {"aspect", c.camera.aspect},
                 {"width", c.camera.width},
                 {"height", c.camera.height}};
  j["solver"] = {{"epsilon", c.solver.epsilon}, {"top_k", c.solver.top_k}};
  j["baselines"] = {{"center_sigma", c.baselines.center_sigma},
                    {"softmax_temperature", c.baselines.softmax_temperature}};
  j["standin"] = {{"alpha", c.standin.alpha},
                  {"beta", c.standin.beta},
                  {"frame_stride", c.standin.frame_stride}};
  j["training"] = {{"C", c.training.C}};
  j["metrics"] = {{"fps", c.metrics.fps}, {"fov", c.metrics.fov}, {"folds", c.metrics.folds}};
  j["render"] = {{"threads", c.render.threads}};
  j["seed"] = c.seed ? nlohmann::ordered_json(*c.seed) : nlohmann::ordered_json(nullptr);
  j["paths"] = {{"frames", c.paths.frames},
                {"score_maps", c.paths.score_maps},
                {"features", c.paths.features},
                {"trajectories", c.paths.trajectories},
                {"reports", c.paths.reports}};
  return j;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  const nlohmann::json* section(const nlohmann::json& root, const std::string& key,
                                const std::set<std::string>& allowed) const {
    if (!root.contains(key)) return nullptr;
    const auto& s = root.at(key);
    if (!s.is_object()) fail(ErrorCode::kSchema, origin_ + ": '" + key + "' must be an object");
    for (const auto& [k, v] : s.items()) {
      if (!allowed.count(k)) fail(ErrorCode::kSchema, origin_ + ": unknown key '" + key + "." + k + "'");
    }
    return &s;
  }

  template <typename T>
  void read(const nlohmann::json* section, const char* key, T& out) const {
    if (!section || !section->contains(key)) return;
    try {
      out = section->at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      fail(ErrorCode::kSchema, origin_ + ": bad value for '" + key + "'");
    }
  }

 private:
  std::string origin_;
};

}  // namespace

PipelineConfig config_from_json(const nlohmann::json& j, const std::string& origin) {
  if (!j.is_object()) fail(ErrorCode::kSchema, origin + ": config must be an object");
  static const std::set<std::string> kSections = {"grid",     "camera",  "solver", "baselines",
                                                  "standin",  "training", "metrics", "render",
                                                  "seed",     "paths"};
  for (const auto& [k, v] : j.items()) {
    if (!kSections.count(k)) fail(ErrorCode::kSchema, origin + ": unknown key '" + k + "'");
  }
  PipelineConfig c;
  const Reader r(origin);
  const auto* grid = r.section(j, "grid", {"latitudes", "longitudes", "interval_seconds"});
  r.read(grid, "latitudes", c.grid.latitudes);
  r.read(grid, "longitudes", c.grid.longitudes);
  r.read(grid, "interval_seconds", c.grid.interval_seconds);
  const auto* cam = r.section(j, "camera", {"hfov", "aspect", "width", "height"});
  r.read(cam, "hfov", c.camera.hfov);
  r.read(cam, "aspect", c.camera.aspect);
  r.read(cam, "width", c.camera.width);
  r.read(cam, "height", c.camera.height);
  const auto* solver = r.section(j, "solver", {"epsilon", "top_k"});
  r.read(solver, "epsilon", c.solver.epsilon);
  r.read(solver, "top_k", c.solver.top_k);
  const auto* base = r.section(j, "baselines", {"center_sigma", "softmax_temperature"});
  r.read(base, "center_sigma", c.baselines.center_sigma);
  r.read(base, "softmax_temperature", c.baselines.softmax_temperature);
  const auto* standin = r.section(j, "standin", {"alpha", "beta", "frame_stride"});
  r.read(standin, "alpha", c.standin.alpha);
  r.read(standin, "beta", c.standin.beta);
  r.read(standin, "frame_stride", c.standin.frame_stride);
  const auto* training = r.section(j, "training", {"C"});
  r.read(training, "C", c.training.C);
  const auto* metrics = r.section(j, "metrics", {"fps", "fov", "folds"});
  r.read(metrics, "fps", c.metrics.fps);
  r.read(metrics, "fov", c.metrics.fov);
  r.read(metrics, "folds", c.metrics.folds);
  const auto* render = r.section(j, "render", {"threads"});
  r.read(render, "threads", c.render.threads);
  if (j.contains("seed") && !j.at("seed").is_null()) {
    if (!j.at("seed").is_number_unsigned()) {
      fail(ErrorCode::kSchema, origin + ": 'seed' must be a non-negative integer");
    }
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  const auto* paths =
      r.section(j, "paths", {"frames", "score_maps", "features", "trajectories", "reports"});
  r.read(paths, "frames", c.paths.frames);
  r.read(paths, "score_maps", c.paths.score_maps);
  r.read(paths, "features", c.paths.features);
  r.read(paths, "trajectories", c.paths.trajectories);
  r.read(paths, "reports", c.paths.reports);
  c.validate();
  return c;
}

PipelineConfig merge_config(const PipelineConfig& config, const nlohmann::json& patch) {
  nlohmann::json base = config_to_json(config);
  base.merge_patch(patch);
  return config_from_json(base, "config override");
}

}  // namespace panocam
