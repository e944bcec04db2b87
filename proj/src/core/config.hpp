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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "scoring.hpp"
#include "sphere_geom.hpp"

namespace panocam {

/// Every tunable of the pipeline. Defaults are the published settings.
struct PipelineConfig {
  struct Grid {
    std::vector<double> latitudes = default_latitudes();
    std::vector<double> longitudes = default_longitudes();
    double interval_seconds = kDefaultIntervalSeconds;
  } grid;

  struct Camera {
    double hfov = kDefaultHfovDeg;
    double aspect = kDefaultAspect;
    int width = 640;
    int height = 480;
  } camera;

  struct Solver {
    double epsilon = 30.0;
    int top_k = 20;
  } solver;

  struct Baselines {
    double center_sigma = 10.0;
    double softmax_temperature = 1.0;
  } baselines;

  StandinParams standin;

  struct Training {
    double C = 1.0;
  } training;

  struct Metrics {
    double fps = 1.0;
    double fov = kDefaultHfovDeg;
    int folds = 5;
  } metrics;

  struct Render {
    int threads = 1;
  } render;

  std::optional<std::uint64_t> seed;

  struct Paths {
    std::string frames;
    std::string score_maps;
    std::string features;
    std::string trajectories;
    std::string reports;
  } paths;

  CameraModel camera_model() const;

  /// Throws kSchema on out-of-range values.
  void validate() const;
};

nlohmann::ordered_json config_to_json(const PipelineConfig& config);

/// Missing keys keep their defaults; unknown keys throw kSchema.
PipelineConfig config_from_json(const nlohmann::json& j, const std::string& origin);

/// Applies `patch` (RFC 7386 merge patch) to `config` and re-validates.
PipelineConfig merge_config(const PipelineConfig& config, const nlohmann::json& patch);

}  // namespace panocam
