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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "glimpse_grid.hpp"
#include "json.hpp"
#include "sphere_geom.hpp"

namespace panocam {

/// One lattice cell per time step t = 0..T-1.
struct DiscreteTrajectory {
  std::vector<STGlimpse> steps;
  double aggregate_score = 0.0;
};

/// One principal direction per output frame; frame i represents the time
/// interval [i / fps, (i + 1) / fps) and is sampled at its center.
struct ContinuousTrajectory {
  double fps = 1.0;
  std::vector<Direction> directions;

  int size() const { return static_cast<int>(directions.size()); }
  double frame_time(int i) const { return (i + 0.5) / fps; }
};

/// Contents of one trajectory file: a list of trajectories of one kind for
/// one video, tagged with the method that produced them.
struct TrajectorySet {
  enum class Kind { kDiscrete, kContinuous };

  std::string video_id;
  std::string method;
  Kind kind = Kind::kDiscrete;
  /// Seconds per discrete step (kDiscrete) or frames per second (kContinuous).
  double interval_seconds = 5.0;
  double fps = 1.0;

  /// Keypoints for discrete sets, per-frame directions for continuous sets.
  std::vector<std::vector<Direction>> trajectories;
  std::vector<std::optional<double>> aggregate_scores;
  /// Free-form extra fields written at the top level (e.g. annotator_id).
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  std::size_t size() const { return trajectories.size(); }

  static TrajectorySet from_discrete(std::string video_id, std::string method,
                                     double interval_seconds,
                                     const std::vector<DiscreteTrajectory>& trajs);
  static TrajectorySet from_continuous(std::string video_id, std::string method,
                                       const std::vector<ContinuousTrajectory>& trajs);

  /// Continuous trajectory i; throws kState for discrete sets.
  ContinuousTrajectory continuous(std::size_t i) const;
  std::vector<ContinuousTrajectory> continuous_all() const;
};

/// Serialization. A single-trajectory document is written with top-level
/// `entries`; multi-trajectory documents use a `trajectories` array whose
/// items carry `entries` and an optional `aggregate_score`. Both shapes are
/// accepted on read. Entries are {t|frame, theta, phi}.
nlohmann::ordered_json trajectory_set_to_json(const TrajectorySet& set);
TrajectorySet trajectory_set_from_json(const nlohmann::json& j, const std::string& origin);

TrajectorySet load_trajectory_set(const std::filesystem::path& path);
void save_trajectory_set(const std::filesystem::path& path, const TrajectorySet& set);

}  // namespace panocam
