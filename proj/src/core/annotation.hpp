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
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "image.hpp"
#include "sphere_geom.hpp"
#include "trajectory.hpp"

namespace panocam {

/// A 360 video available for annotation: a frame directory with metadata.
struct VideoInfo {
  std::string video_id;
  std::filesystem::path dir;
  FrameMetadata metadata;

  double duration() const { return metadata.duration(); }
};

struct AnnotationSample {
  double t = 0.0;  // media time, seconds
  double theta = 0.0;
  double phi = 0.0;
};

struct SessionInfo {
  std::string session_id;
  std::string video_id;
  std::string annotator_id;
  double center_longitude = 0.0;
  int pass = 1;
  std::size_t sample_count = 0;
  bool open = true;
  std::filesystem::path output;
};

/// Files are written to <out_dir>/<video_id>/<annotator_id>_pass<p>.json.
std::filesystem::path annotation_output_path(const std::filesystem::path& out_dir,
                                             const std::string& video_id,
                                             const std::string& annotator_id, int pass);

/// Sample collection for human-edited trajectories. Thread-safe: each
/// session's state is guarded by its own mutex, so requests for different
/// sessions never contend beyond a short registry lookup.
class AnnotationStore {
 public:
  explicit AnnotationStore(std::filesystem::path out_dir);

  /// Registers every immediate subdirectory of `videos_dir` that holds a
  /// frame metadata sidecar; the directory name is the video id.
  void scan_videos(const std::filesystem::path& videos_dir);
  void add_video(VideoInfo video);

  std::vector<VideoInfo> videos() const;
  /// Throws kNotFound.
  VideoInfo video(const std::string& video_id) const;

  /// Throws kNotFound for an unknown video, kInvalidArgument for a pass
  /// outside {1, 2} or a malformed annotator id, kConflict when the
  /// (annotator, video, pass) triple already has a session or a file.
  /// `center_longitude` is normalized to [0, 360).
  std::string create_session(const std::string& video_id, const std::string& annotator_id,
                             double center_longitude, int pass);

  /// Appends a batch. Timestamps must be finite, non-negative, and strictly
  /// increasing, also relative to the buffer's last sample; directions must
  /// be valid. Any violation rejects the whole batch (kInvalidArgument or
  /// kOutOfRange). Throws kState for a closed session, kNotFound for an
  /// unknown one. Returns the buffer length.
  std::size_t record_samples(const std::string& session_id,
                             const std::vector<AnnotationSample>& batch);

  /// Resamples the buffer onto frame centers (i + 0.5) / fps for
  /// round(duration * fps) frames, writes the trajectory file atomically,
  /// and closes the session. Requires two or more samples with the first no
  /// later than 1 s and the last no earlier than duration - 1 s (kIncomplete).
  TrajectorySet finalize(const std::string& session_id, double fps);

  SessionInfo session(const std::string& session_id) const;

  const std::filesystem::path& out_dir() const { return out_dir_; }

 private:
  struct Session {
    std::mutex mutex;
    SessionInfo info;
    std::vector<double> times;
    std::vector<Direction> directions;
  };

  std::shared_ptr<Session> find(const std::string& session_id) const;

  std::filesystem::path out_dir_;
  mutable std::mutex registry_mutex_;
  std::map<std::string, VideoInfo> videos_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::set<std::tuple<std::string, std::string, int>> claimed_;
  std::uint64_t next_session_ = 1;
};

/// Coverage tolerance at either end of the video, seconds.
inline constexpr double kCoverageToleranceSeconds = 1.0;

}  // namespace panocam
