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

#include "annotation.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "error.hpp"
#include "solver.hpp"

namespace panocam {
namespace fs = std::filesystem;

namespace {

bool is_safe_id(const std::string& id) {
  if (id.empty() || id.size() > 128 || id.front() == '.') return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

fs::path annotation_output_path(const fs::path& out_dir, const std::string& video_id,
                                const std::string& annotator_id, int pass) {
  return out_dir / video_id / (annotator_id + "_pass" + std::to_string(pass) + ".json");
}

AnnotationStore::AnnotationStore(fs::path out_dir) : out_dir_(std::move(out_dir)) {}

void AnnotationStore::scan_videos(const fs::path& videos_dir) {
  std::error_code ec;
  if (!fs::is_directory(videos_dir, ec)) {
    fail(ErrorCode::kIo, "videos directory '" + videos_dir.string() + "' does not exist");
  }
  for (const auto& entry : fs::directory_iterator(videos_dir)) {
    if (!entry.is_directory()) continue;
    if (!fs::exists(entry.path() / kFrameMetadataFile)) continue;
    const std::string id = entry.path().filename().string();
    if (!is_safe_id(id)) {
      warn("skipping video directory with unsupported name '" + id + "'");
      continue;
    }
    add_video({id, entry.path(), read_frame_metadata(entry.path())});
  }
}

void AnnotationStore::add_video(VideoInfo video) {
  if (!is_safe_id(video.video_id)) {
    fail(ErrorCode::kInvalidArgument, "unsupported video id '" + video.video_id + "'");
  }
  std::lock_guard lock(registry_mutex_);
  videos_[video.video_id] = std::move(video);
}

std::vector<VideoInfo> AnnotationStore::videos() const {
  std::lock_guard lock(registry_mutex_);
  std::vector<VideoInfo> out;
  for (const auto& [id, v] : videos_) out.push_back(v);
  return out;
}

VideoInfo AnnotationStore::video(const std::string& video_id) const {
  std::lock_guard lock(registry_mutex_);
  const auto it = videos_.find(video_id);
  if (it == videos_.end()) fail(ErrorCode::kNotFound, "unknown video '" + video_id + "'");
  return it->second;
}

std::string AnnotationStore::create_session(const std::string& video_id,
                                            const std::string& annotator_id,
                                            double center_longitude, int pass) {
  if (pass != 1 && pass != 2) {
    fail(ErrorCode::kInvalidArgument, "pass must be 1 or 2, got " + std::to_string(pass));
  }
  if (!is_safe_id(annotator_id)) {
    fail(ErrorCode::kInvalidArgument, "unsupported annotator id '" + annotator_id + "'");
  }
  if (!std::isfinite(center_longitude)) {
    fail(ErrorCode::kInvalidArgument, "center longitude must be finite");
  }

  std::lock_guard lock(registry_mutex_);
  if (!videos_.count(video_id)) fail(ErrorCode::kNotFound, "unknown video '" + video_id + "'");
  const auto key = std::make_tuple(annotator_id, video_id, pass);
  const fs::path output = annotation_output_path(out_dir_, video_id, annotator_id, pass);
  if (claimed_.count(key) || fs::exists(output)) {
    fail(ErrorCode::kConflict, "annotator '" + annotator_id + "' already has pass " +
                                   std::to_string(pass) + " for video '" + video_id + "'");
  }

  char id[32];
  std::snprintf(id, sizeof(id), "session-%06llu",
                static_cast<unsigned long long>(next_session_++));
  auto session = std::make_shared<Session>();
  session->info = {id, video_id, annotator_id, normalize_longitude(center_longitude), pass, 0,
                   true, output};
  sessions_[id] = session;
  claimed_.insert(key);
  return id;
}

std::shared_ptr<AnnotationStore::Session> AnnotationStore::find(const std::string& session_id) const {
  std::lock_guard lock(registry_mutex_);
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) fail(ErrorCode::kNotFound, "unknown session '" + session_id + "'");
  return it->second;
}

std::size_t AnnotationStore::record_samples(const std::string& session_id,
                                            const std::vector<AnnotationSample>& batch) {
  auto session = find(session_id);
  std::lock_guard lock(session->mutex);
  if (!session->info.open) fail(ErrorCode::kState, "session '" + session_id + "' is closed");

  // Validate everything before touching the buffer.
  std::vector<Direction> dirs;
  dirs.reserve(batch.size());
  double last = session->times.empty() ? -std::numeric_limits<double>::infinity()
                                       : session->times.back();
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto& s = batch[i];
    if (!std::isfinite(s.t) || s.t < 0.0) {
      fail(ErrorCode::kInvalidArgument, "sample " + std::to_string(i) + ": bad timestamp");
    }
    if (!(s.t > last)) {
      fail(ErrorCode::kInvalidArgument,
           "sample " + std::to_string(i) + ": timestamps must be strictly increasing");
    }
    try {
      dirs.emplace_back(s.theta, s.phi);
    } catch (const Error& e) {
      fail(e.code(), "sample " + std::to_string(i) + ": " + e.what());
    }
    last = s.t;
  }
  for (std::size_t i = 0; i < batch.size(); ++i) {
    session->times.push_back(batch[i].t);
    session->directions.push_back(dirs[i]);
  }
  session->info.sample_count = session->times.size();
  return session->times.size();
}

TrajectorySet AnnotationStore::finalize(const std::string& session_id, double fps) {
  if (!(fps > 0.0) || !std::isfinite(fps)) fail(ErrorCode::kInvalidArgument, "fps must be positive");
  auto session = find(session_id);
  const VideoInfo info = video(session->info.video_id);
  std::lock_guard lock(session->mutex);
  if (!session->info.open) fail(ErrorCode::kState, "session '" + session_id + "' is closed");

  const auto& times = session->times;
  if (times.size() < 2) {
    fail(ErrorCode::kIncomplete, "need at least 2 samples to finalize, have " +
                                     std::to_string(times.size()));
  }
  const double duration = info.duration();
  if (times.front() > kCoverageToleranceSeconds ||
      times.back() < duration - kCoverageToleranceSeconds) {
    fail(ErrorCode::kIncomplete, "samples cover [" + std::to_string(times.front()) + ", " +
                                     std::to_string(times.back()) + "] s of a " +
                                     std::to_string(duration) + " s video");
  }

  const int frames = std::max(1, static_cast<int>(std::lround(duration * fps)));
  const ContinuousTrajectory traj = resample_timed(times, session->directions, fps, frames);
  TrajectorySet set = TrajectorySet::from_continuous(info.video_id, "humanedit", {traj});
  set.extra["annotator_id"] = session->info.annotator_id;
  set.extra["pass"] = session->info.pass;
  set.extra["center_longitude"] = session->info.center_longitude;
  set.extra["sample_count"] = times.size();

  fs::create_directories(session->info.output.parent_path());
  save_trajectory_set(session->info.output, set);
  session->info.open = false;
  return set;
}

SessionInfo AnnotationStore::session(const std::string& session_id) const {
  auto session = find(session_id);
  std::lock_guard lock(session->mutex);
  return session->info;
}

}  // namespace panocam
