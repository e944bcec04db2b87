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

#include "glimpse_grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"
#include "render.hpp"

namespace panocam {

std::vector<double> default_latitudes() {
  return {-75, -45, -30, -20, -10, 0, 10, 20, 30, 45, 75};
}

std::vector<double> default_longitudes() {
  std::vector<double> lons;
  for (int phi = 0; phi < 360; phi += 20) lons.push_back(phi);
  return lons;
}

GlimpseGrid::GlimpseGrid(std::vector<double> latitudes, std::vector<double> longitudes,
                         double interval_seconds, int num_steps)
    : latitudes_(std::move(latitudes)),
      longitudes_(std::move(longitudes)),
      interval_(interval_seconds),
      num_steps_(num_steps) {
  if (latitudes_.empty() || longitudes_.empty()) {
    fail(ErrorCode::kInvalidArgument, "glimpse grid needs latitudes and longitudes");
  }
  if (!(interval_ > 0.0) || !std::isfinite(interval_)) {
    fail(ErrorCode::kInvalidArgument, "glimpse interval must be positive");
  }
  if (num_steps_ < 1) fail(ErrorCode::kInvalidArgument, "glimpse grid needs T >= 1");
  for (double theta : latitudes_) {
    if (!(theta >= -90.0 && theta <= 90.0)) {
      fail(ErrorCode::kOutOfRange, "grid latitude outside [-90, 90]");
    }
  }
  for (double& phi : longitudes_) {
    if (!std::isfinite(phi)) fail(ErrorCode::kOutOfRange, "grid longitude not finite");
    phi = normalize_longitude(phi);
  }
  std::sort(latitudes_.begin(), latitudes_.end());
  std::sort(longitudes_.begin(), longitudes_.end());
  if (std::adjacent_find(latitudes_.begin(), latitudes_.end()) != latitudes_.end() ||
      std::adjacent_find(longitudes_.begin(), longitudes_.end()) != longitudes_.end()) {
    fail(ErrorCode::kInvalidArgument, "glimpse grid angles must be distinct");
  }
}

std::size_t GlimpseGrid::index(int t, int lat_index, int lon_index) const {
  if (t < 0 || t >= num_steps_ || lat_index < 0 || lat_index >= num_lat() ||
      lon_index < 0 || lon_index >= num_lon()) {
    fail(ErrorCode::kOutOfRange, "glimpse cell out of range");
  }
  return (static_cast<std::size_t>(t) * num_lat() + lat_index) * num_lon() + lon_index;
}

STGlimpse GlimpseGrid::glimpse(std::size_t index) const {
  if (index >= size()) fail(ErrorCode::kOutOfRange, "glimpse index out of range");
  const auto per_step = static_cast<std::size_t>(cells_per_step());
  const int t = static_cast<int>(index / per_step);
  const auto rem = index % per_step;
  return glimpse(t, static_cast<int>(rem / num_lon()), static_cast<int>(rem % num_lon()));
}

STGlimpse GlimpseGrid::glimpse(int t, int lat_index, int lon_index) const {
  (void)index(t, lat_index, lon_index);  // range check
  return STGlimpse{t, lat_index, lon_index, direction(lat_index, lon_index)};
}

Direction GlimpseGrid::direction(int lat_index, int lon_index) const {
  return Direction(latitudes_.at(lat_index), longitudes_.at(lon_index));
}

int GlimpseGrid::find_latitude(double theta) const {
  const auto it = std::find(latitudes_.begin(), latitudes_.end(), theta);
  return it == latitudes_.end() ? -1 : static_cast<int>(it - latitudes_.begin());
}

int GlimpseGrid::find_longitude(double phi) const {
  const double p = normalize_longitude(phi);
  const auto it = std::find(longitudes_.begin(), longitudes_.end(), p);
  return it == longitudes_.end() ? -1 : static_cast<int>(it - longitudes_.begin());
}

int GlimpseGrid::nearest_latitude(double theta) const {
  int best = 0;
  for (int i = 1; i < num_lat(); ++i) {
    // Sorted ascending, so strict < keeps the smaller value on ties.
    if (std::fabs(latitudes_[i] - theta) < std::fabs(latitudes_[best] - theta)) best = i;
  }
  return best;
}

int GlimpseGrid::nearest_longitude(double phi) const {
  auto dist = [&](double lon) {
    const double d = std::fabs(lon - normalize_longitude(phi));
    return std::min(d, 360.0 - d);
  };
  int best = 0;
  for (int i = 1; i < num_lon(); ++i) {
    if (dist(longitudes_[i]) < dist(longitudes_[best])) best = i;
  }
  return best;
}

bool GlimpseGrid::same_layout(const GlimpseGrid& other) const {
  return latitudes_ == other.latitudes_ && longitudes_ == other.longitudes_ &&
         interval_ == other.interval_;
}

GlimpseGrid build_grid(double video_duration, double interval,
                       std::vector<double> latitudes, std::vector<double> longitudes) {
  if (!(interval > 0.0)) fail(ErrorCode::kInvalidArgument, "interval must be positive");
  if (!(video_duration >= interval)) {
    std::ostringstream os;
    os << "video duration " << video_duration << " s is shorter than one "
       << interval << " s interval; grid would be empty";
    fail(ErrorCode::kInvalidArgument, os.str());
  }
  const int steps = static_cast<int>(std::floor(video_duration / interval + 1e-9));
  return GlimpseGrid(std::move(latitudes), std::move(longitudes), interval, steps);
}

FrameSpan frames_for_step(const GlimpseGrid& grid, int t, double fps) {
  if (!(fps > 0.0)) fail(ErrorCode::kInvalidArgument, "fps must be positive");
  auto first_center_at_or_after = [&](double seconds) {
    return static_cast<int>(std::ceil(seconds * fps - 0.5 - 1e-9));
  };
  const int first = first_center_at_or_after(grid.step_start(t));
  const int end = first_center_at_or_after(grid.step_end(t));
  return {first, end - first};
}

std::vector<Image> glimpse_clip(const FrameSource& frames, const GlimpseGrid& grid,
                                const STGlimpse& g, const CameraModel& cam) {
  const FrameSpan span = frames_for_step(grid, g.t, frames.fps());
  if (span.first + span.count > frames.size()) {
    std::ostringstream os;
    os << "glimpse at step " << g.t << " needs frames [" << span.first << ", "
       << span.first + span.count << ") but the source has " << frames.size();
    fail(ErrorCode::kIncomplete, os.str());
  }
  std::vector<Image> clip;
  clip.reserve(span.count);
  for (int i = 0; i < span.count; ++i) {
    clip.push_back(render_frame(frames.frame(span.first + i), cam, g.dir));
  }
  return clip;
}

}  // namespace panocam
