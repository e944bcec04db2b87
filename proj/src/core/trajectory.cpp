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

#include "trajectory.hpp"

#include <algorithm>

#include "error.hpp"
#include "json_io.hpp"

namespace panocam {
namespace {

const char* kind_name(TrajectorySet::Kind k) {
  return k == TrajectorySet::Kind::kDiscrete ? "discrete" : "continuous";
}

nlohmann::ordered_json entries_to_json(const TrajectorySet& set,
                                       const std::vector<Direction>& dirs) {
  const char* index_key = set.kind == TrajectorySet::Kind::kDiscrete ? "t" : "frame";
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    nlohmann::ordered_json e;
    e[index_key] = i;
    e["theta"] = dirs[i].theta();
    e["phi"] = dirs[i].phi();
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<Direction> entries_from_json(const nlohmann::json& entries, const char* index_key,
                                         const std::string& origin) {
  if (!entries.is_array()) fail(ErrorCode::kSchema, origin + ": entries must be an array");
  std::vector<Direction> dirs;
  dirs.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.contains(index_key) && e.at(index_key).get<long long>() != static_cast<long long>(i)) {
      fail(ErrorCode::kSchema, origin + ": entry " + std::to_string(i) + " has " +
                                   index_key + " out of sequence");
    }
    dirs.emplace_back(e.at("theta").get<double>(), e.at("phi").get<double>());
  }
  return dirs;
}

}  // namespace

TrajectorySet TrajectorySet::from_discrete(std::string video_id, std::string method,
                                           double interval_seconds,
                                           const std::vector<DiscreteTrajectory>& trajs) {
  TrajectorySet set;
  set.video_id = std::move(video_id);
  set.method = std::move(method);
  set.kind = Kind::kDiscrete;
  set.interval_seconds = interval_seconds;
  for (const auto& tr : trajs) {
    std::vector<Direction> dirs;
    dirs.reserve(tr.steps.size());
    for (const auto& s : tr.steps) dirs.push_back(s.dir);
    set.trajectories.push_back(std::move(dirs));
    set.aggregate_scores.emplace_back(tr.aggregate_score);
  }
  return set;
}

TrajectorySet TrajectorySet::from_continuous(std::string video_id, std::string method,
                                             const std::vector<ContinuousTrajectory>& trajs) {
  TrajectorySet set;
  set.video_id = std::move(video_id);
  set.method = std::move(method);
  set.kind = Kind::kContinuous;
  set.fps = trajs.empty() ? 1.0 : trajs.front().fps;
  for (const auto& tr : trajs) {
    if (tr.fps != set.fps) fail(ErrorCode::kInvalidArgument, "mixed fps in trajectory set");
    set.trajectories.push_back(tr.directions);
    set.aggregate_scores.emplace_back(std::nullopt);
  }
  return set;
}

ContinuousTrajectory TrajectorySet::continuous(std::size_t i) const {
  if (kind != Kind::kContinuous) {
    fail(ErrorCode::kState, "trajectory set is discrete; interpolate it first");
  }
  return ContinuousTrajectory{fps, trajectories.at(i)};
}

std::vector<ContinuousTrajectory> TrajectorySet::continuous_all() const {
  std::vector<ContinuousTrajectory> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(continuous(i));
  return out;
}

nlohmann::ordered_json trajectory_set_to_json(const TrajectorySet& set) {
  nlohmann::ordered_json j;
  j["video_id"] = set.video_id;
  if (!set.method.empty()) j["method"] = set.method;
  j["kind"] = kind_name(set.kind);
  if (set.kind == TrajectorySet::Kind::kDiscrete) {
    j["interval_seconds"] = set.interval_seconds;
  } else {
    j["fps"] = set.fps;
  }
  for (const auto& [key, value] : set.extra.items()) j[key] = value;

  auto score_of = [&](std::size_t i) -> std::optional<double> {
    return i < set.aggregate_scores.size() ? set.aggregate_scores[i] : std::nullopt;
  };
  if (set.size() == 1) {
    j["entries"] = entries_to_json(set, set.trajectories[0]);
    if (auto s = score_of(0)) j["aggregate_score"] = *s;
    return j;
  }
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    nlohmann::ordered_json item;
    if (auto s = score_of(i)) item["aggregate_score"] = *s;
    item["entries"] = entries_to_json(set, set.trajectories[i]);
    list.push_back(std::move(item));
  }
  j["trajectories"] = std::move(list);
  return j;
}

TrajectorySet trajectory_set_from_json(const nlohmann::json& j, const std::string& origin) {
  TrajectorySet set;
  try {
    set.video_id = j.at("video_id").get<std::string>();
    set.method = j.value("method", std::string());
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "discrete") {
      set.kind = TrajectorySet::Kind::kDiscrete;
      set.interval_seconds = j.at("interval_seconds").get<double>();
      if (!(set.interval_seconds > 0.0)) fail(ErrorCode::kSchema, origin + ": interval must be > 0");
    } else if (kind == "continuous") {
      set.kind = TrajectorySet::Kind::kContinuous;
      set.fps = j.at("fps").get<double>();
      if (!(set.fps > 0.0)) fail(ErrorCode::kSchema, origin + ": fps must be > 0");
    } else {
      fail(ErrorCode::kSchema, origin + ": unknown trajectory kind '" + kind + "'");
    }
    const char* index_key = set.kind == TrajectorySet::Kind::kDiscrete ? "t" : "frame";

    auto read_score = [&](const nlohmann::json& obj) -> std::optional<double> {
      if (obj.contains("aggregate_score") && !obj.at("aggregate_score").is_null()) {
        return obj.at("aggregate_score").get<double>();
      }
      return std::nullopt;
    };
    if (j.contains("entries")) {
      set.trajectories.push_back(entries_from_json(j.at("entries"), index_key, origin));
      set.aggregate_scores.push_back(read_score(j));
    } else {
      for (const auto& item : j.at("trajectories")) {
        set.trajectories.push_back(entries_from_json(item.at("entries"), index_key, origin));
        set.aggregate_scores.push_back(read_score(item));
      }
    }
    static const char* known[] = {"video_id", "method", "kind", "interval_seconds", "fps",
                                  "entries", "aggregate_score", "trajectories"};
    for (const auto& [key, value] : j.items()) {
      if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
        set.extra[key] = value;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kSchema, origin + ": " + e.what());
  }
  if (set.trajectories.empty()) fail(ErrorCode::kSchema, origin + ": no trajectories");
  for (const auto& tr : set.trajectories) {
    if (tr.empty()) fail(ErrorCode::kSchema, origin + ": empty trajectory");
  }
  return set;
}

TrajectorySet load_trajectory_set(const std::filesystem::path& path) {
  return trajectory_set_from_json(read_json_file(path), path.string());
}

void save_trajectory_set(const std::filesystem::path& path, const TrajectorySet& set) {
  write_json_file_atomic(path, trajectory_set_to_json(set));
}

}  // namespace panocam
